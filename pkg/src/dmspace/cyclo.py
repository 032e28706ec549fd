"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are residues modulo the N-th cyclotomic polynomial with Fraction
coefficients.  Only the operations needed for exact quasi-polynomial
verification are implemented: ring arithmetic, inversion, and linear solves.
"""

from fractions import Fraction
from functools import lru_cache

from .errors import SolveFailed


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(num, den):
    num = [Fraction(x) for x in num]
    den = [Fraction(x) for x in den]
    _poly_trim(num)
    _poly_trim(den)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    while len(num) >= len(den):
        shift = len(num) - len(den)
        factor = num[-1] / den[-1]
        q[shift] = factor
        for i, d in enumerate(den):
            num[shift + i] -= factor * d
        _poly_trim(num)
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Coefficients (ascending) of the n-th cyclotomic polynomial."""
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]  # x^n - 1
    den = [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, list(cyclotomic_polynomial(d)))
    q, rem = _poly_divmod(num, den)
    assert not rem
    assert all(c.denominator == 1 for c in q)
    return tuple(q)


class CycloField:
    """The field Q(zeta_N) as Q[x] modulo the N-th cyclotomic polynomial."""

    def __init__(self, n):
        self.n = n
        self.modulus = list(cyclotomic_polynomial(n))
        self.degree = len(self.modulus) - 1

    def element(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        if len(cs) >= len(self.modulus):
            _, cs = _poly_divmod(cs, self.modulus)
        cs = cs + [Fraction(0)] * (self.degree - len(cs))
        return CycloNum(self, tuple(cs[:self.degree]))

    def zero(self):
        return self.element([])

    def one(self):
        return self.element([1])

    def from_rational(self, x):
        return self.element([Fraction(x)])

    def zeta_power(self, k):
        """zeta_N to the power k (any integer)."""
        k %= self.n
        return self.element([0] * k + [1])


class CycloNum:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, CycloNum):
            return other
        return self.field.from_rational(other)

    def __add__(self, other):
        o = self._coerce(other)
        return CycloNum(self.field,
                        tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNum(self.field, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        prod = _poly_mul(list(self.coeffs), list(o.coeffs))
        return self.field.element(prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        return isinstance(other, CycloNum) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def inverse(self):
        """Inverse via the extended Euclidean algorithm modulo Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        r0, r1 = list(self.field.modulus), _poly_trim(list(self.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            q, r = _poly_divmod(r0, r1)
            if not r:
                break
            s = [Fraction(0)] * max(len(s0), len(q) + len(s1) - 1)
            qs1 = _poly_mul(q, s1)
            for i, x in enumerate(s0):
                s[i] += x
            for i, x in enumerate(qs1):
                s[i] -= x
            r0, r1 = r1, r
            s0, s1 = s1, _poly_trim(s)
        assert len(r1) == 1  # gcd is a unit: the modulus is irreducible
        inv = [c / r1[0] for c in s1]
        return self.field.element(inv)

    def as_rational(self):
        """The element as a Fraction, or None when not rational."""
        if any(c != 0 for c in self.coeffs[1:]):
            return None
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __repr__(self):
        return f"Cyclo{self.field.n}{self.coeffs}"


def solve_square(rows, rhs):
    """Solve a square linear system over a cyclotomic field.

    Raises SolveFailed when the matrix is singular.
    """
    n = len(rows)
    M = [list(r) + [b] for r, b in zip(rows, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if not M[r][c].is_zero()), None)
        if piv is None:
            raise SolveFailed("singular system in cyclotomic solve")
        M[c], M[piv] = M[piv], M[c]
        inv = M[c][c].inverse()
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and not M[r][c].is_zero():
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [M[i][n] for i in range(n)]
