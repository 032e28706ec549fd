"""Vector partition functions and their big-cell quasi-polynomials.

Counting is a depth-first enumeration pruned by a strictly positive
functional; it is deliberately independent of the Heaviside convolution
evaluator so the two can cross-check each other exactly.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import fm, linalg
from .chars import delta, zonotope_inequalities
from .dm import DMElement, dm_basis, is_member_dm
from .errors import FitInconsistent, TorsionPresent, UnpointedCone
from .series import combination


def _positive_functional(X):
    if X.group.torsion_orders:
        raise TorsionPresent("partition counting requires a torsion-free group")
    u = fm.pointed_functional(X.bars(), X.s)
    if u is None:
        raise UnpointedCone("cone of the list is not pointed")
    return u


def partition_count(X, lam):
    """Number of ways to write lam as a nonnegative combination of the list.

    Depth-first search over multiplicities, largest functional value first,
    pruning on the exact functional level.
    """
    u = _positive_functional(X)
    elems = sorted(X.elements,
                   key=lambda a: -sum(ui * bi for ui, bi in zip(u, a.bar)))
    levels = [sum(ui * bi for ui, bi in zip(u, a.bar)) for a in elems]
    group = X.group

    memo = {}

    def count(i, residual):
        level = sum(ui * bi for ui, bi in zip(u, residual.bar))
        if level < 0:
            return 0
        if i == len(elems):
            return 1 if residual.is_zero() else 0
        key = (i, residual)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = 0
        m = 0
        while m * levels[i] <= level:
            total += count(i + 1, residual - m * elems[i])
            m += 1
        memo[key] = total
        return total

    return count(0, lam if hasattr(lam, "free") else group.element(lam))


def _closed_constraints(cell):
    return [(n, 0, sg) for n, sg in [(w[0], w[1]) for w in cell.walls]]


def _point_in_cell_closure(cell, v):
    for n, sg in cell.walls:
        if sg * linalg.dot(n, v) < 0:
            return False
    return True


def _point_in_cell_open(cell, v):
    for n, sg in cell.walls:
        if sg * linalg.dot(n, v) <= 0:
            return False
    return True


def _deep_points(X, cell, count, start_scale=1, exclude=()):
    """Lattice points well inside the cell: the whole shifted zonotope around
    them stays inside the cell closure."""
    bars = X.bars()
    s = X.s
    vertex_sums = [tuple(0 for _ in range(s))]
    for b in bars:
        vertex_sums = [v for v in vertex_sums] + \
                      [tuple(x + y for x, y in zip(v, b)) for v in vertex_sums]
    vertex_sums = sorted(set(vertex_sums))
    ip = cell.interior_point
    found = []
    seen = set(exclude)
    scale = start_scale
    while len(found) < count and scale < 64 * (start_scale + count):
        center = [x * scale for x in ip]
        radius = 2
        lo = [int(c) - radius for c in center]
        hi = [int(c) + radius for c in center]
        from itertools import product

        for lam in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
            if lam in seen:
                continue
            if not _point_in_cell_open(cell, lam):
                continue
            deep = all(
                _point_in_cell_closure(cell,
                                       tuple(x - y for x, y in zip(lam, vs)))
                for vs in vertex_sums)
            if deep:
                seen.add(lam)
                found.append(lam)
                if len(found) == count:
                    break
        scale += 1
    return found


def cell_quasipoly(X, cell, window=None):
    """The unique solution-space element matching the count on a big cell.

    Fitted on a deep sample by an exact solve over the explicit basis, then
    verified against fresh counts on a disjoint deeper sample.
    """
    _positive_functional(X)  # validates pointedness and torsion-freeness
    group = X.group
    basis = dm_basis(X)
    need = max(2 * len(basis), len(basis) + 2)
    sample = _deep_points(X, cell, need)
    if len(sample) < len(basis) + 1:
        raise FitInconsistent("not enough deep sample points in the cell")
    half = max(len(basis), len(sample) // 2)
    fit_pts, hold_pts = sample[:half], sample[half:]
    rows = [[b.value(group.element(lam)) for b in basis] for lam in fit_pts]
    rhs = [partition_count(X, group.element(lam)) for lam in fit_pts]
    sol = linalg.solve(rows, [Fraction(v) for v in rhs])
    if sol is None:
        raise FitInconsistent("deep sample admits no consistent fit")
    if linalg.rank(rows) < len(basis):
        extra = _deep_points(X, cell, 2 * len(basis), start_scale=3,
                             exclude=set(fit_pts) | set(hold_pts))
        fit_pts = fit_pts + extra
        rows = [[b.value(group.element(lam)) for b in basis] for lam in fit_pts]
        rhs = [partition_count(X, group.element(lam)) for lam in fit_pts]
        sol = linalg.solve(rows, [Fraction(v) for v in rhs])
        if sol is None or linalg.rank(rows) < len(basis):
            raise FitInconsistent("fit coefficients are not pinned by the cell")
    if not all(c.denominator == 1 for c in sol):
        raise FitInconsistent("fit coefficients are not integral")
    func = combination([(int(c), b.func) for c, b in zip(sol, basis)])
    for lam in hold_pts:
        if func.value(group.element(lam)) != partition_count(X, group.element(lam)):
            raise FitInconsistent("held-out deep sample disagrees with the fit")
    cert = is_member_dm(func, X, window) if window is not None else \
        is_member_dm(func, X)
    assert cert.ok  # a combination of basis elements solves the equations
    return DMElement(func, provenance={
        "cell": cell, "coefficients": tuple(int(c) for c in sol),
        "fit_points": tuple(fit_pts), "holdout_points": tuple(hold_pts)})
