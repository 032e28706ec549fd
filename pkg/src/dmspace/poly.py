"""Multivariate polynomials with exact coefficients.

Coefficients may be Fractions or any value supporting +, *, and == 0
(cyclotomic numbers in particular); exponents are tuples of nonnegative
integers.  Only the operations needed for differential cocircuit systems
are provided.
"""

from fractions import Fraction


class Polynomial:
    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars, coeffs=None):
        self.nvars = nvars
        self.coeffs = {}
        if coeffs:
            for e, c in coeffs.items():
                if not _is_zero(c):
                    self.coeffs[tuple(e)] = c

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, nvars, exponents, c=Fraction(1)):
        return cls(nvars, {tuple(exponents): c})

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            cur = out.get(e)
            out[e] = c if cur is None else cur + c
        return Polynomial(self.nvars, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        return Polynomial(self.nvars, {e: c * k for e, c in self.coeffs.items()})

    def directional_derivative(self, v):
        """Derivative along the rational vector v."""
        out = {}
        for e, c in self.coeffs.items():
            for j, vj in enumerate(v):
                if vj == 0 or e[j] == 0:
                    continue
                e2 = e[:j] + (e[j] - 1,) + e[j + 1:]
                term = c * (e[j] * Fraction(vj))
                cur = out.get(e2)
                out[e2] = term if cur is None else cur + term
        return Polynomial(self.nvars, out)

    def derivative_list(self, vectors):
        p = self
        for v in vectors:
            p = p.directional_derivative(v)
        return p

    def evaluate(self, point):
        total = None
        for e, c in self.coeffs.items():
            term = c
            for j, ej in enumerate(e):
                if ej:
                    term = term * (Fraction(point[j]) ** ej)
            total = term if total is None else total + term
        if total is None:
            return Fraction(0)
        return total

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return max((sum(e) for e in self.coeffs), default=-1)

    def monomials(self):
        return sorted(self.coeffs, key=lambda e: (sum(e), e))

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in self.monomials():
            c = self.coeffs[e]
            mono = "*".join(f"x{j}^{k}" if k > 1 else f"x{j}"
                            for j, k in enumerate(e) if k)
            parts.append(f"({c})" + ("*" + mono if mono else ""))
        return " + ".join(parts)


def _is_zero(c):
    try:
        return c == 0
    except TypeError:
        return False


def monomials_up_to(nvars, max_degree):
    """All exponent tuples of total degree at most max_degree, graded order."""
    out = [()]
    for _ in range(nvars):
        out = [e + (k,) for e in out for k in range(max_degree + 1)]
    out = [e for e in out if sum(e) <= max_degree]
    out.sort(key=lambda e: (sum(e), e))
    return out
