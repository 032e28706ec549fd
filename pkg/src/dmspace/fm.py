"""Exact linear feasibility via Fourier-Motzkin elimination.

A constraint is a triple (coeffs, rhs, strict) meaning

    sum(coeffs[i] * x[i]) >= rhs      (or > rhs when strict is True)

with all data rational.  Elimination is exact; no tolerances exist.
"""

from fractions import Fraction
from math import gcd

from .linalg import rref


def _normalize(coeffs, rhs, strict):
    """Scale to integer coefficients with gcd 1; rhs stays rational."""
    cs = [Fraction(c) for c in coeffs]
    r = Fraction(rhs)
    lcm = 1
    for f in cs + [r]:
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    ints = [int(c * lcm) for c in cs]
    ri = r * lcm
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
        ri = ri / g
    return tuple(ints), ri, strict


def _prune(cons):
    """Keep only the strongest constraint per direction; drop trivial ones.

    Returns None when a constraint is plainly infeasible (0 >= positive).
    """
    best = {}
    for coeffs, rhs, strict in cons:
        coeffs, rhs, strict = _normalize(coeffs, rhs, strict)
        if all(c == 0 for c in coeffs):
            if rhs > 0 or (strict and rhs == 0):
                return None
            continue
        cur = best.get(coeffs)
        if cur is None or rhs > cur[0] or (rhs == cur[0] and strict and not cur[1]):
            best[coeffs] = (rhs, strict)
    return [(c, rhs, strict) for c, (rhs, strict) in best.items()]


def eliminate(cons, var):
    """Project the system onto the complement of variable `var`."""
    lowers, uppers, rest = [], [], []
    for coeffs, rhs, strict in cons:
        c = coeffs[var]
        if c > 0:
            lowers.append((coeffs, rhs, strict, c))
        elif c < 0:
            uppers.append((coeffs, rhs, strict, c))
        else:
            rest.append((coeffs, rhs, strict))
    for lc, lr, ls, la in lowers:
        for uc, ur, us, ua in uppers:
            # add (-ua) times the lower bound to la times the upper bound;
            # the coefficient of the eliminated variable cancels exactly
            coeffs = tuple(-ua * a + la * b for a, b in zip(lc, uc))
            rhs = -ua * lr + la * ur
            rest.append((coeffs, rhs, ls or us))
    out = []
    for coeffs, rhs, strict in rest:
        coeffs = tuple(0 if i == var else c for i, c in enumerate(coeffs))
        out.append((coeffs, rhs, strict))
    return out


def feasible_point(cons, nvars, order=None):
    """An exact rational solution of the system, or None when infeasible."""
    cons = _prune([(tuple(c) + (0,) * (nvars - len(c)), r, s) for c, r, s in cons])
    if cons is None:
        return None
    if order is None:
        order = list(range(nvars))
    return _solve(cons, nvars, list(order))


def _solve(cons, nvars, order):
    if not order:
        return (Fraction(0),) * nvars
    var = order[-1]
    reduced = _prune(eliminate(cons, var))
    if reduced is None:
        return None
    sub = _solve(reduced, nvars, order[:-1])
    if sub is None:
        return None
    lo = hi = None
    lo_strict = hi_strict = False
    for coeffs, rhs, strict in cons:
        c = coeffs[var]
        if c == 0:
            continue
        rest = sum(a * b for a, b in zip(coeffs, sub)) - c * sub[var]
        bound = Fraction(rhs - rest, c)
        if c > 0:
            if lo is None or bound > lo or (bound == lo and strict):
                lo, lo_strict = bound, strict
        else:
            if hi is None or bound < hi or (bound == hi and strict):
                hi, hi_strict = bound, strict
    if lo is None and hi is None:
        val = Fraction(0)
    elif hi is None:
        val = lo + 1 if lo_strict else lo
    elif lo is None:
        val = hi - 1 if hi_strict else hi
    else:
        if lo > hi or (lo == hi and (lo_strict or hi_strict)):
            return None
        val = lo if lo == hi else (lo + hi) / 2
    out = list(sub)
    out[var] = val
    return tuple(out)


def feasible(cons, nvars):
    return feasible_point(cons, nvars) is not None


def project(cons, nvars, drop_vars):
    """Eliminate the listed variables, returning the projected system."""
    current = _prune([(tuple(c) + (0,) * (nvars - len(c)), r, s) for c, r, s in cons])
    if current is None:
        return None
    for var in drop_vars:
        current = _prune(eliminate(current, var))
        if current is None:
            return None
    return current


def substitute_equalities(eqs, cons, nvars):
    """Substitute the equalities sum(e[i] x[i]) = rhs into the constraints.

    Returns (new_cons, free_vars, lift) where new_cons range over the free
    variables only (indexed by position in free_vars) and lift maps a free
    assignment back to a full assignment.  Returns None when the equalities
    are inconsistent.
    """
    rows = [list(e) + [r] for e, r in eqs]
    red, pivots = rref(rows)
    for row in red:
        if all(x == 0 for x in row[:nvars]) and row[nvars] != 0:
            return None
    pivots = [p for p in pivots if p < nvars]
    free = [v for v in range(nvars) if v not in pivots]
    # x[p] = red_row[nvars] - sum over free of red_row[f] * x[f]
    expr = {}
    for r, p in enumerate(pivots):
        expr[p] = (red[r][nvars], {f: -red[r][f] for f in free if red[r][f] != 0})
    new_cons = []
    for coeffs, rhs, strict in cons:
        const = Fraction(rhs)
        acc = {f: Fraction(coeffs[f]) for f in free}
        for p in pivots:
            cp = coeffs[p]
            if cp == 0:
                continue
            c0, lin = expr[p]
            const -= cp * c0
            for f, cf in lin.items():
                acc[f] += cp * cf
        new_cons.append((tuple(acc[f] for f in free), const, strict))

    def lift(free_point):
        full = [Fraction(0)] * nvars
        for i, f in enumerate(free):
            full[f] = Fraction(free_point[i])
        for p in pivots:
            c0, lin = expr[p]
            full[p] = c0 + sum(cf * full[f] for f, cf in lin.items())
        return tuple(full)

    return new_cons, free, lift


def in_cone(point, generators):
    """Exact test: is `point` a nonnegative rational combination of generators?"""
    gens = list(generators)
    k = len(gens)
    dim = len(point)
    if k == 0:
        return all(x == 0 for x in point)
    eqs = []
    for j in range(dim):
        eqs.append((tuple(g[j] for g in gens), Fraction(point[j])))
    cons = [(tuple(1 if i == t else 0 for i in range(k)), 0, False)
            for t in range(k)]
    sub = substitute_equalities(eqs, cons, k)
    if sub is None:
        return False
    new_cons, free, _ = sub
    return feasible(new_cons, len(free))


def pointed_functional(vectors, dim):
    """A rational u with u.v >= 1 for every v, or None (cone not pointed)."""
    vecs = [v for v in vectors]
    if not vecs:
        return (Fraction(0),) * dim
    cons = [(tuple(v), 1, False) for v in vecs]
    return feasible_point(cons, dim)
