"""Integer-valued functions on the group with cone-structured support.

The building blocks are shifted products of discrete Heaviside functions,
evaluated by bounded search along a strictly positive rational functional.
Translation and difference operators act formally on the term structure, so
every evaluation stays exact.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import fm
from .errors import (ConvolutionDiverges, EmptyStep, FaceVanishes,
                     UndeterminedValue, UnpointedCone)


class GammaFunction:
    """Base class: a memoized integer-valued function on the group."""

    def __init__(self, group):
        self.group = group
        self._cache = {}

    def value(self, elem):
        v = self._cache.get(elem)
        if v is None:
            v = self._value(elem)
            self._cache[elem] = v
        return v

    def _value(self, elem):
        raise NotImplementedError

    def translate(self, gamma):
        """The function x -> f(x - gamma)."""
        if gamma.is_zero():
            return self
        return TranslateView(self, gamma)

    def table(self, window):
        """Dense value table over a window (zeros included)."""
        return {p: self.value(p) for p in window.points()}

    def __add__(self, other):
        return combination([(1, self), (1, other)])

    def __sub__(self, other):
        return combination([(1, self), (-1, other)])

    def __neg__(self):
        return combination([(-1, self)])

    def __rmul__(self, k):
        return combination([(k, self)])


class TableFunction(GammaFunction):
    """Explicit values; zero outside when no domain window is declared.

    With a domain window the function is only known there, and evaluation
    outside raises UndeterminedValue instead of silently extrapolating.
    """

    def __init__(self, group, data, domain=None):
        super().__init__(group)
        self.data = {k: v for k, v in data.items() if v != 0}
        self.domain = domain

    def _value(self, elem):
        v = self.data.get(elem)
        if v is not None:
            return v
        if self.domain is not None and not self.domain.contains(elem):
            raise UndeterminedValue("value requested outside the table window")
        return 0

    def translate(self, gamma):
        if gamma.is_zero():
            return self
        if self.domain is None:
            return TableFunction(self.group,
                                 {k + gamma: v for k, v in self.data.items()})
        return TranslateView(self, gamma)

    def support(self):
        return set(self.data)

    def is_finite(self):
        return self.domain is None


def delta_function(group, gamma=None):
    if gamma is None:
        gamma = group.zero()
    return TableFunction(group, {gamma: 1})


class TranslateView(GammaFunction):
    """Shifted view sharing the base function's value cache."""

    def __init__(self, base, offset):
        super().__init__(base.group)
        if isinstance(base, TranslateView):
            offset = base.offset + offset
            base = base.base
        self.base = base
        self.offset = offset

    def _value(self, elem):
        return self.base.value(elem - self.offset)

    def translate(self, gamma):
        if gamma.is_zero():
            return self
        return TranslateView(self.base, self.offset + gamma)


class Combination(GammaFunction):
    """Integer linear combination of other functions."""

    def __init__(self, group, terms):
        super().__init__(group)
        self.terms = tuple(terms)

    def _value(self, elem):
        return sum(c * f.value(elem) for c, f in self.terms)

    def translate(self, gamma):
        if gamma.is_zero():
            return self
        return Combination(self.group,
                           [(c, f.translate(gamma)) for c, f in self.terms])


def combination(terms):
    """Flatten nested combinations and drop zero coefficients."""
    flat = []
    group = None

    def push(coeff, f):
        nonlocal group
        group = f.group if group is None else group
        if coeff == 0:
            return
        if isinstance(f, Combination):
            for c2, f2 in f.terms:
                push(coeff * c2, f2)
        else:
            flat.append((coeff, f))

    for coeff, f in terms:
        push(coeff, f)
    if group is None:
        raise ValueError("empty combination")
    if not flat:
        return TableFunction(group, {})
    if len(flat) == 1 and flat[0][0] == 1:
        return flat[0][1]
    return Combination(group, flat)


class HeavisideProduct(GammaFunction):
    """Shifted convolution of Heaviside functions along a pointed cone list.

    The value at x counts the nonnegative integer decompositions of
    x - shift over the cone list; a strictly positive functional on the
    list bounds the search exactly.
    """

    def __init__(self, group, cone, shift=None, functional=None):
        super().__init__(group)
        self.cone = tuple(cone)
        self.shift = shift if shift is not None else group.zero()
        s = group.free_rank
        if functional is None:
            functional = fm.pointed_functional([c.bar for c in self.cone], s)
            if functional is None:
                raise UnpointedCone("cone list admits no positive functional")
        self.functional = tuple(Fraction(x) for x in functional)
        self.levels = [self._pair(c.bar) for c in self.cone]
        assert all(l > 0 for l in self.levels) or not self.cone
        self._count_cache = {}

    def _pair(self, bar):
        return sum(u * b for u, b in zip(self.functional, bar))

    def _value(self, elem):
        target = elem - self.shift
        if self._pair(target.bar) < 0:
            return 0
        return self._count(0, target)

    def _count(self, i, residual):
        key = (i, residual)
        hit = self._count_cache.get(key)
        if hit is not None:
            return hit
        level = self._pair(residual.bar)
        if level < 0:
            result = 0
        elif i == len(self.cone):
            result = 1 if residual.is_zero() else 0
        else:
            step = self.levels[i]
            c = self.cone[i]
            result = 0
            m = 0
            while m * step <= level:
                result += self._count(i + 1, residual - m * c)
                m += 1
        self._count_cache[key] = result
        return result


def heaviside(group, elements):
    """Convolution of the Heaviside functions of the given elements."""
    elems = tuple(elements)
    for a in elems:
        if not a.has_infinite_order():
            raise UnpointedCone("Heaviside factors must have infinite order")
    return HeavisideProduct(group, elems)


class PullbackFunction(GammaFunction):
    """Composition with a group homomorphism (functions lifted from a quotient)."""

    def __init__(self, hom, base):
        super().__init__(hom.source)
        self.hom = hom
        self.base = base

    def _value(self, elem):
        return self.base.value(self.hom(elem))


class SubgroupExtension(GammaFunction):
    """A function on a subgroup extended by zero to the whole group."""

    def __init__(self, sub, inner):
        super().__init__(sub.parent.group)
        self.sub = sub
        self.inner = inner

    def _value(self, elem):
        y = self.sub.project(elem)
        return 0 if y is None else self.inner.value(y)


class Restriction(GammaFunction):
    """A function on the parent group viewed on a subgroup presentation."""

    def __init__(self, sub, outer):
        super().__init__(sub.group)
        self.sub = sub
        self.outer = outer

    def _value(self, elem):
        return self.outer.value(self.sub.embed(elem))


class ConeConvolution(GammaFunction):
    """Convolution of a shifted Heaviside cone with a subgroup-supported
    function; fibers are finite because the certificate functional vanishes
    on the subgroup and is positive on the cone."""

    def __init__(self, group, coeff, shift, cone, sub, inner, functional):
        super().__init__(group)
        self.coeff = coeff
        self.shift = shift
        self.cone = tuple(cone)
        self.sub = sub
        self.inner = inner
        self.functional = tuple(Fraction(x) for x in functional)
        self.levels = [self._pair(c.bar) for c in self.cone]
        assert all(l > 0 for l in self.levels)

    def _pair(self, bar):
        return sum(u * b for u, b in zip(self.functional, bar))

    def _value(self, elem):
        target = elem - self.shift
        total = self._fiber(0, target)
        return self.coeff * total

    def _fiber(self, i, residual):
        level = self._pair(residual.bar)
        if level < 0:
            return 0
        if i == len(self.cone):
            if level != 0:
                return 0
            y = self.sub.project(residual)
            return 0 if y is None else self.inner.value(y)
        step = self.levels[i]
        c = self.cone[i]
        total = 0
        m = 0
        while m * step <= level:
            total += self._fiber(i + 1, residual - m * c)
            m += 1
        return total


# ---------------------------------------------------------------------------
# difference operators


def translate(f, gamma):
    return f.translate(gamma)


def nabla_stencil(group, Y):
    """Collapsed stencil of the product of difference operators over Y.

    Returns a list of (coefficient, shift) with f |-> sum c * f(x - shift).
    """
    shifts = {group.zero(): 1}
    for a in Y:
        nxt = dict(shifts)
        for sh, c in shifts.items():
            key = sh + a
            nxt[key] = nxt.get(key, 0) - c
        shifts = {k: v for k, v in nxt.items() if v != 0}
    return sorted(shifts.items(), key=lambda kv: (kv[0].free, kv[0].torsion))


def nabla_value(f, Y, x, stencil=None):
    if stencil is None:
        stencil = nabla_stencil(f.group, Y)
    return sum(c * f.value(x - sh) for sh, c in stencil)


def nabla(f, Y):
    """The difference operator applied to f, as a new function."""
    stencil = nabla_stencil(f.group, list(Y))
    return combination([(c, f.translate(sh)) for sh, c in stencil])


# ---------------------------------------------------------------------------
# faces and the signed cone inverses


@dataclass(frozen=True)
class FaceSelector:
    """A rational functional separating a list into positive/negative parts."""

    functional: tuple

    def pair(self, bar):
        return sum(Fraction(u) * b for u, b in zip(self.functional, bar))

    def split(self, X, r):
        """Positive and negative parts of the list outside the subspace."""
        A, B = [], []
        for a in X.elements:
            if r.contains(a.bar):
                continue
            v = self.pair(a.bar)
            if v > 0:
                A.append(a)
            elif v < 0:
                B.append(a)
            else:
                raise FaceVanishes("functional vanishes on a list element")
        return A, B

    def negated(self):
        return FaceSelector(tuple(-Fraction(u) for u in self.functional))


def face_for_subspace(X, r, seed=0):
    """Deterministic face selector orthogonal to r and generic for X minus r.

    The draw is re-seeded until the projection is nonzero on every element
    outside the subspace.
    """
    from .chars import generic_functional

    s = X.s
    basis = [list(row) for row in r.basis]
    outside = [a.bar for a in X.elements if not r.contains(a.bar)]
    for attempt in range(64):
        u = generic_functional(X, seed=seed + attempt)
        if basis:
            # subtract the orthogonal projection onto the subspace
            gram = [[Fraction(sum(bi * bj for bi, bj in zip(b1, b2)))
                     for b2 in basis] for b1 in basis]
            rhs = [sum(Fraction(b[j]) * u[j] for j in range(s)) for b in basis]
            coeffs = _solve_sym(gram, rhs)
            proj = [sum(coeffs[i] * basis[i][j] for i in range(len(basis)))
                    for j in range(s)]
            u = tuple(ui - pj for ui, pj in zip(u, proj))
        if all(sum(ui * vi for ui, vi in zip(u, v)) != 0 for v in outside):
            return FaceSelector(u)
    raise FaceVanishes("no generic face found for the subspace")


def _solve_sym(M, rhs):
    from .linalg import solve

    sol = solve(M, rhs)
    assert sol is not None
    return sol


def _sum_elements(group, elems):
    total = group.zero()
    for e in elems:
        total = total + e
    return total


def p_face(X, r, F):
    """The signed Heaviside convolution inverting the difference product of
    the list outside r, supported on the face's shifted pointed cone."""
    group = X.group
    A, B = F.split(X, r)
    shift = -_sum_elements(group, B)
    cone = list(A) + [-b for b in B]
    sign = -1 if len(B) % 2 else 1
    hp = HeavisideProduct(group, cone, shift=shift)
    return combination([(sign, hp)])


def orientation_sign(r, t, bar):
    """Sign of the orientation induced on t by (basis of r, bar)."""
    from .linalg import det

    rows = []
    for row in r.basis:
        c = t.coordinates(row)
        assert c is not None
        rows.append(list(c))
    c = t.coordinates(bar)
    assert c is not None
    rows.append(list(c))
    d = det(rows)
    assert d != 0
    sign = 1 if d > 0 else -1
    return sign * r.orientation * t.orientation


def q_step(X, r, t):
    """Difference of the two opposite-face cone inverses for one flag step."""
    group = X.group
    elems = [a for a in X.elements if t.contains(a.bar) and not r.contains(a.bar)]
    if not elems:
        raise EmptyStep("no element crosses the smaller subspace")
    A = [a for a in elems if orientation_sign(r, t, a.bar) > 0]
    B = [a for a in elems if orientation_sign(r, t, a.bar) < 0]
    sign_plus = -1 if len(B) % 2 else 1
    plus = HeavisideProduct(group, list(A) + [-b for b in B],
                            shift=-_sum_elements(group, B))
    sign_minus = -1 if len(A) % 2 else 1
    minus = HeavisideProduct(group, list(B) + [-a for a in A],
                             shift=-_sum_elements(group, A))
    return combination([(sign_plus, plus), (-sign_minus, minus)])


def q_flag(X, flag):
    """Convolution of the step functions along a complete oriented flag."""
    group = X.group
    acc = delta_function(group)
    for r, t in zip(flag, flag[1:]):
        try:
            step = q_step(X, r, t)
        except EmptyStep:
            continue
        acc = convolve(acc, step)
    return acc


# ---------------------------------------------------------------------------
# convolution dispatch


def convolve(f, g):
    """Convolution product, allowed only with a finiteness certificate."""
    if isinstance(f, Combination):
        return combination([(c, convolve(t, g)) for c, t in f.terms])
    if isinstance(g, Combination):
        return combination([(c, convolve(f, t)) for c, t in g.terms])
    if isinstance(f, TranslateView):
        return convolve(f.base, g).translate(f.offset)
    if isinstance(g, TranslateView):
        return convolve(f, g.base).translate(g.offset)
    if isinstance(f, TableFunction) and f.is_finite():
        return combination([(v, g.translate(k)) for k, v in f.data.items()]
                           or [(1, TableFunction(g.group, {}))])
    if isinstance(g, TableFunction) and g.is_finite():
        return convolve(g, f)
    if isinstance(f, HeavisideProduct) and isinstance(g, HeavisideProduct):
        try:
            return HeavisideProduct(f.group, f.cone + g.cone,
                                    shift=f.shift + g.shift)
        except UnpointedCone as exc:
            raise ConvolutionDiverges(str(exc)) from exc
    if isinstance(f, SubgroupExtension) and isinstance(g, HeavisideProduct):
        return convolve(g, f)
    if isinstance(f, HeavisideProduct) and isinstance(g, SubgroupExtension):
        functional = _vanishing_functional(f, g.sub)
        return ConeConvolution(f.group, 1, f.shift, f.cone, g.sub, g.inner,
                               functional)
    raise ConvolutionDiverges("no support certificate for this convolution")


def _vanishing_functional(hp, sub):
    """A functional vanishing on the subgroup's subspace and positive on the
    cone list of the Heaviside product."""
    s = hp.group.free_rank
    cons = [(tuple(c.bar), 1, False) for c in hp.cone]
    for row in sub.subspace.basis:
        cons.append((tuple(row), 0, False))
        cons.append((tuple(-x for x in row), 0, False))
    u = fm.feasible_point(cons, s)
    if u is None:
        raise ConvolutionDiverges("no separating functional certificate")
    return u
