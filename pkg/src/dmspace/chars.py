"""Combinatorics of a finite character list.

Everything here is derived from the projected vector list in the weight
lattice: rational subspaces and their canonical saturated bases, cocircuits,
bases with their subgroup indices, zonotope point sets, the finite set of
special torsion points, and the big-cell decomposition of the cone.
"""

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import ceil, floor, gcd

from . import fm, linalg
from .abelian import (GroupPresentation, _canonical_quotient, coset_reps,
                      index_of_subgroup, smith_normal_form)
from .errors import (DegenerateList, NonGeneric, TorsionPresent,
                     UnpointedCone)

BIG_PRIME = 1000003


@dataclass(frozen=True)
class CharacterList:
    """An ordered list of group elements; infinite order before torsion."""

    group: GroupPresentation
    elements: tuple

    def __post_init__(self):
        infinite = [a for a in self.elements if a.has_infinite_order()]
        finite = [a for a in self.elements if not a.has_infinite_order()]
        object.__setattr__(self, "elements", tuple(infinite + finite))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    @property
    def s(self):
        return self.group.free_rank

    def bars(self):
        return [a.bar for a in self.elements]

    def spans(self):
        return linalg.rank(self.bars()) == self.s

    def sublist(self, indices):
        return CharacterList(self.group, tuple(self.elements[i] for i in indices))

    def without_index(self, i):
        elems = self.elements[:i] + self.elements[i + 1:]
        return CharacterList(self.group, elems)

    def key(self):
        """Stable content key used to seed deterministic draws."""
        payload = repr((self.group.free_rank, self.group.torsion_orders,
                        tuple((a.free, a.torsion) for a in self.elements)))
        return hashlib.sha256(payload.encode()).digest()


@dataclass(frozen=True)
class RationalSubspace:
    """A subspace spanned by part of the list, with its saturated lattice.

    `basis` rows are the Hermite-canonical basis of the saturation, so two
    equal subspaces compare equal structurally.  The row order fixes the
    orientation; `orientation` flips it.
    """

    dim: int
    basis: tuple  # rows, each a tuple of ints of length s
    member_indices: tuple
    orientation: int = 1

    def contains(self, vec):
        if self.dim == 0:
            return all(x == 0 for x in vec)
        return linalg.solve(linalg.transpose(self.basis), list(vec)) is not None

    def coordinates(self, vec):
        """Coordinates of vec in the basis rows (None if outside the span)."""
        if self.dim == 0:
            return () if all(x == 0 for x in vec) else None
        sol = linalg.solve(linalg.transpose(self.basis), list(vec))
        return None if sol is None else tuple(sol)

    def flipped(self):
        return RationalSubspace(self.dim, self.basis, self.member_indices,
                                -self.orientation)

    def is_full(self, s):
        return self.dim == s


def subspace_spanned(X, vectors):
    """The canonical rational subspace spanned by the given bar vectors."""
    s = X.s
    basis = linalg.saturation_rows(list(vectors), s)
    members = []
    probe = RationalSubspace(len(basis), basis, ())
    for i, a in enumerate(X.elements):
        if probe.contains(a.bar):
            members.append(i)
    return RationalSubspace(len(basis), basis, tuple(members))


def rational_subspaces(X):
    """All subspaces spanned by sublists, keyed by dimension."""
    s = X.s
    distinct = []
    seen_bars = set()
    for a in X.elements:
        if any(a.bar) and a.bar not in seen_bars:
            seen_bars.add(a.bar)
            distinct.append(a.bar)
    found = {}
    for size in range(0, s + 1):
        for combo in combinations(distinct, size):
            if linalg.rank(list(combo)) != size:
                continue
            sub = subspace_spanned(X, combo)
            found.setdefault(sub.basis, sub)
    by_dim = {}
    for sub in found.values():
        by_dim.setdefault(sub.dim, []).append(sub)
    for dim in by_dim:
        by_dim[dim].sort(key=lambda r: r.basis)
    return by_dim


def zero_subspace(X):
    return subspace_spanned(X, [])


def full_subspace(X):
    sub = subspace_spanned(X, X.bars())
    if sub.dim != X.s:
        raise DegenerateList("list does not span the ambient space")
    return sub


def cocircuits(X):
    """Complements of the rational hyperplanes, as element sublists."""
    s = X.s
    if not X.spans():
        raise DegenerateList("list does not span the ambient space")
    if s == 0:
        return []
    out = []
    for sub in rational_subspaces(X).get(s - 1, []):
        member = set(sub.member_indices)
        out.append(tuple(X.elements[i] for i in range(len(X)) if i not in member))
    return out


def cocircuit_indices(X):
    s = X.s
    if not X.spans():
        raise DegenerateList("list does not span the ambient space")
    if s == 0:
        return []
    out = []
    for sub in rational_subspaces(X).get(s - 1, []):
        member = set(sub.member_indices)
        out.append(tuple(i for i in range(len(X)) if i not in member))
    return out


def bases(X):
    """All independent s-element sublists with their subgroup indices.

    The index d is that of (torsion) x Z<sublist> in the whole group,
    computed through the Smith normal form.
    """
    s = X.s
    g = X.group
    torsion_gens = [g.torsion_gen(i) for i in range(len(g.torsion_orders))]
    out = []
    for combo in combinations(range(len(X)), s):
        vecs = [X.elements[i].bar for i in combo]
        if linalg.rank(vecs) != s:
            continue
        d = index_of_subgroup(g, [X.elements[i] for i in combo] + torsion_gens)
        assert d is not None
        out.append((combo, d))
    return out


def delta(X):
    """Sum of the basis indices; the normalized volume of the zonotope."""
    return sum(d for _, d in bases(X))


def _draw_numbers(key, seed, count):
    out = []
    counter = 0
    while len(out) < count:
        h = hashlib.sha256(key + seed.to_bytes(8, "big", signed=True)
                           + counter.to_bytes(8, "big")).digest()
        for i in range(0, len(h) - 3, 4):
            n = int.from_bytes(h[i:i + 4], "big") % (BIG_PRIME - 1) + 1
            out.append(n)
            if len(out) == count:
                break
        counter += 1
    return out


def generic_functional(X, seed=0, avoid=()):
    """Deterministic rational vector u with u.v nonzero for all given v.

    Components are N_i / BIG_PRIME with N_i drawn from a hash of the list;
    the seed is incremented until every nonzero vector in `avoid` pairs to
    a nonzero value.
    """
    s = X.s
    key = X.key()
    vectors = [v for v in avoid if any(v)]
    for attempt in range(64):
        nums = _draw_numbers(key, seed + attempt, s)
        u = tuple(Fraction(n, BIG_PRIME) for n in nums)
        if all(sum(ui * vi for ui, vi in zip(u, v)) != 0 for v in vectors):
            return u
    raise NonGeneric("no generic functional found within the retry budget")


# ---------------------------------------------------------------------------
# zonotope


def zonotope_inequalities(X):
    """Closed half-space description of the zonotope of the bar vectors.

    Computed by exact Fourier-Motzkin projection of the parameter cube
    {0 <= t_a <= 1} under t -> sum t_a bar(a).
    """
    bars = [a.bar for a in X.elements if any(a.bar)]
    s = X.s
    k = len(bars)
    nvars = k + s
    box = []
    for i in range(k):
        e = tuple(1 if t == i else 0 for t in range(nvars))
        box.append((e, 0, False))
        box.append((tuple(-x for x in e), -1, False))
    if linalg.rank(bars) == s:
        # full-dimensional: substitute the equalities (pivots land on the
        # parameter block because it has full row rank), then project the
        # leftover parameters
        eqs = []
        for j in range(s):
            coeff = [Fraction(bars[i][j]) for i in range(k)] + \
                    [Fraction(-1) if jj == j else Fraction(0)
                     for jj in range(s)]
            eqs.append((tuple(coeff), Fraction(0)))
        sub = fm.substitute_equalities(eqs, box, nvars)
        assert sub is not None
        new_cons, free, _ = sub
        assert all(v >= k for v in free[-s:])
        drop = [pos for pos, v in enumerate(free) if v < k]
        projected = fm.project(new_cons, len(free), drop)
        assert projected is not None
        keep = {pos: free[pos] - k for pos, v in enumerate(free) if v >= k}
        out = []
        for coeffs, rhs, _ in projected:
            w_coeffs = [Fraction(0)] * s
            for pos, j in keep.items():
                w_coeffs[j] = Fraction(coeffs[pos])
            out.append((tuple(w_coeffs), Fraction(rhs)))
        return out
    # degenerate span: keep the equalities as inequality pairs so the
    # projection retains the span constraints
    cons = list(box)
    for j in range(s):
        coeff = tuple(bars[i][j] for i in range(k)) + \
            tuple(-1 if jj == j else 0 for jj in range(s))
        cons.append((coeff, 0, False))
        cons.append((tuple(-x for x in coeff), 0, False))
    projected = fm.project(cons, nvars, list(range(k)))
    assert projected is not None
    out = []
    for coeffs, rhs, _ in projected:
        out.append((tuple(Fraction(c) for c in coeffs[k:]), Fraction(rhs)))
    return out


def _membership(ineqs, v):
    """(inside_closed, on_boundary) for a rational point and H-description."""
    inside = True
    tight = False
    for coeffs, rhs in ineqs:
        val = sum(c * x for c, x in zip(coeffs, v))
        if val < rhs:
            return False, False
        if val == rhs and any(c != 0 for c in coeffs):
            tight = True
    return inside, tight


def zonotope_points(X, u=None, seed=0, retries=16):
    """All group elements whose image lies in u minus the zonotope.

    When u is omitted it is drawn deterministically from the list; a u that
    puts a lattice point on the zonotope boundary is re-drawn (perturbed)
    deterministically, and NonGeneric is raised after the retry budget.
    """
    s = X.s
    g = X.group
    ineqs = zonotope_inequalities(X)
    bars = X.bars()
    lo = [sum(min(b[j], 0) for b in bars) for j in range(s)]
    hi = [sum(max(b[j], 0) for b in bars) for j in range(s)]
    for attempt in range(retries):
        if u is None:
            u_try = generic_functional(X, seed=seed + attempt)
        elif attempt == 0:
            u_try = tuple(Fraction(x) for x in u)
        else:
            eps = _draw_numbers(X.key(), seed + attempt, s)
            u_try = tuple(Fraction(x) + Fraction(n, BIG_PRIME ** (attempt + 1))
                          for x, n in zip(u, eps))
        free_points = []
        degenerate = False
        ranges = []
        for j in range(s):
            ranges.append(range(ceil(u_try[j] - hi[j]), floor(u_try[j] - lo[j]) + 1))
        for lam in product(*ranges):
            v = tuple(u_try[j] - lam[j] for j in range(s))
            inside, tight = _membership(ineqs, v)
            if inside and tight:
                degenerate = True
                break
            if inside:
                free_points.append(lam)
        if degenerate:
            continue
        torsions = g.torsion_elements()
        return [g.element(lam, t.torsion)
                for lam in sorted(free_points) for t in torsions]
    raise NonGeneric("no generic translation vector found")


# ---------------------------------------------------------------------------
# torsion points


def _reduce_mod_one(x):
    f = Fraction(x)
    return Fraction(f.numerator % f.denominator, f.denominator)


@dataclass(frozen=True)
class TorsionPoint:
    """A finite-order point of the dual group: a hom to Q/Z on generators."""

    group: GroupPresentation
    values: tuple  # one Fraction in [0,1) per stored generator

    def __post_init__(self):
        vals = tuple(_reduce_mod_one(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        g = self.group
        if len(vals) != g.ngens:
            raise ValueError("one value per generator required")
        for i, d in enumerate(g.torsion_orders):
            if _reduce_mod_one(d * vals[g.free_rank + i]) != 0:
                raise ValueError("value incompatible with torsion order")

    def pair(self, elem):
        """The pairing value p(a) in Q/Z."""
        raw = elem.raw()
        return _reduce_mod_one(sum(v * c for v, c in zip(self.values, raw)))

    def kills(self, elem):
        return self.pair(elem) == 0

    @property
    def order(self):
        n = 1
        for v in self.values:
            n = n * v.denominator // gcd(n, v.denominator)
        return n

    def is_trivial(self):
        return all(v == 0 for v in self.values)


def _annihilator_points(group, elements):
    """All finite-order points killing the given elements (duals of the
    finite quotient by the subgroup they generate)."""
    n = group.ngens
    cols = [e.raw() for e in elements] + group.relation_columns()
    if n == 0:
        return [TorsionPoint(group, ())]
    if not cols:
        raise ValueError("quotient is not finite")
    rows = [[col[i] for col in cols] for i in range(n)]
    U, D, _ = smith_normal_form(rows)
    m = len(cols)
    diag = [D[i][i] if i < m else 0 for i in range(n)]
    if any(d == 0 for d in diag):
        raise ValueError("quotient is not finite")
    points = []
    for ks in product(*[range(d) for d in diag]):
        vals = [Fraction(0)] * n
        for i, k in enumerate(ks):
            if k == 0:
                continue
            for j in range(n):
                vals[j] += Fraction(k * U[i][j], diag[i])
        points.append(TorsionPoint(group, tuple(vals)))
    return points


@dataclass(frozen=True)
class SubgroupDescriptor:
    """A positive-dimensional annihilator subgroup, described by the sublist
    it kills and the canonical presentation of its character group."""

    indices: tuple
    characters: GroupPresentation  # quotient of the group by the sublist


def special_points(X, codim=0):
    """Annihilator data of independent sublists of size s - codim.

    For codim 0 this is the finite set of torsion points killing some basis
    (duplicates removed); for larger codim the subgroups are described by
    their character groups.
    """
    s = X.s
    size = s - codim
    if size < 0:
        return []
    if codim == 0:
        seen = {}
        for combo, _ in bases(X):
            for p in _annihilator_points(X.group, [X.elements[i] for i in combo]):
                seen.setdefault(p.values, p)
        return sorted(seen.values(), key=lambda p: p.values)
    out = []
    n = X.group.ngens
    for combo in combinations(range(len(X)), size):
        vecs = [X.elements[i].bar for i in combo]
        if linalg.rank(vecs) != size:
            continue
        cols = [X.elements[i].raw() for i in combo] + X.group.relation_columns()
        pres, _ = _canonical_quotient(n, cols)
        out.append(SubgroupDescriptor(combo, pres))
    return out


def fixed_sublist(X, p):
    """The sublist of elements paired to zero by the torsion point."""
    return CharacterList(X.group, tuple(a for a in X.elements if p.kills(a)))


# ---------------------------------------------------------------------------
# subgroup restriction


@dataclass(frozen=True)
class SubgroupContext:
    """The subgroup of elements whose image lies in a rational subspace,
    presented abstractly, with the sublist living on it."""

    parent: CharacterList
    subspace: RationalSubspace
    list: CharacterList
    quotient_rows: tuple = field(default=(), repr=False)

    @property
    def group(self):
        return self.list.group

    def embed(self, elem):
        g = self.parent.group
        basis = self.subspace.basis
        free = [0] * g.free_rank
        for c, row in zip(elem.free, basis):
            for j in range(g.free_rank):
                free[j] += c * row[j]
        return g.element(free, elem.torsion)

    def project(self, elem):
        """Coordinates in the subgroup, or None when outside it."""
        coords = self.subspace.coordinates(elem.bar)
        if coords is None:
            return None
        assert all(c.denominator == 1 for c in coords)
        return self.group.element([int(c) for c in coords], elem.torsion)

    def coset_label(self, elem):
        """Coordinates of the element in the free quotient by the subgroup."""
        return tuple(sum(r * c for r, c in zip(row, elem.bar))
                     for row in self.quotient_rows)


def subgroup_characters(X, r):
    """Restrict the list to a rational subspace r (elements with image in r)."""
    g = X.group
    sub_group = GroupPresentation(r.dim, g.torsion_orders)
    members = []
    for i in r.member_indices:
        a = X.elements[i]
        coords = r.coordinates(a.bar)
        assert coords is not None and all(c.denominator == 1 for c in coords)
        members.append(sub_group.element([int(c) for c in coords], a.torsion))
    sub_list = CharacterList(sub_group, tuple(members))
    cols = [list(row) for row in r.basis]
    _, rows = _canonical_quotient(g.free_rank, cols) if g.free_rank else (None, ())
    quotient_rows = tuple(rows[:g.free_rank - r.dim]) if g.free_rank else ()
    return SubgroupContext(X, r, sub_list, quotient_rows)


# ---------------------------------------------------------------------------
# big cells


@dataclass(frozen=True)
class BigCell:
    """A connected piece of the cone obtained by removing all cones of
    non-spanning sublists; carries an exact rational interior point."""

    interior_point: tuple
    walls: tuple  # (integer normal, sign) pairs bounding the cell


def cone_facets(bars, s):
    """Facet normals n (primitive, inward) of the cone of the given vectors."""
    nonzero = [b for b in bars if any(b)]
    if s == 1:
        out = set()
        for b in nonzero:
            out.add((1,) if b[0] > 0 else (-1,))
        return sorted(out)
    normals = set()
    for combo in combinations(nonzero, s - 1):
        if linalg.rank(list(combo)) != s - 1:
            continue
        null = linalg.nullspace(list(combo), ncols=s)
        if len(null) != 1:
            continue
        n = linalg.clear_denominators(null[0])
        for cand in (n, tuple(-x for x in n)):
            if all(linalg.dot(cand, b) >= 0 for b in nonzero) and \
                    any(linalg.dot(cand, b) > 0 for b in nonzero):
                normals.add(cand)
    return sorted(normals)


def _hyperplane_normals(X):
    s = X.s
    out = []
    for sub in rational_subspaces(X).get(s - 1, []):
        if s == 1:
            out.append(((1,), sub))
            continue
        null = linalg.nullspace(list(sub.basis), ncols=s)
        assert len(null) == 1
        out.append((linalg.canon_direction(null[0]), sub))
    return out


def _chambers(normals, base_cons, s):
    """Full-dimensional sign chambers of the arrangement inside the base."""
    leaves = [((), base_cons)]
    for n, _ in normals:
        nxt = []
        for signs, cons in leaves:
            for sg in (1, -1):
                c2 = cons + [(tuple(sg * x for x in n), 1, False)]
                if fm.feasible(c2, s):
                    nxt.append((signs + (sg,), c2))
        leaves = nxt
    out = []
    for signs, cons in leaves:
        pt = fm.feasible_point(cons, s)
        assert pt is not None
        out.append((signs, pt))
    return out


def _cone_h_in_coords(gen_coords, d):
    """Valid facet inequalities of a cone given by generators in R^d."""
    if d == 1:
        out = set()
        for g in gen_coords:
            if any(g):
                out.add((1,) if g[0] > 0 else (-1,))
        if len(out) == 2:
            return []  # the cone is the whole line
        return sorted(out)
    normals = set()
    for combo in combinations(gen_coords, d - 1):
        if linalg.rank(list(combo)) != d - 1:
            continue
        null = linalg.nullspace(list(combo), ncols=d)
        if len(null) != 1:
            continue
        n = linalg.clear_denominators(null[0])
        for cand in (n, tuple(-x for x in n)):
            if all(linalg.dot(cand, g) >= 0 for g in gen_coords):
                normals.add(cand)
    return sorted(normals)


def _wall_escape(shared_cons, hyper_sub, wall_bars, s):
    """A point of the shared face that avoids the wall cone, or None."""
    basis = hyper_sub.basis
    d = hyper_sub.dim
    # work in coordinates of the hyperplane: w = y . basis
    coord_cons = []
    for coeffs, rhs, strict in shared_cons:
        yc = tuple(linalg.dot(coeffs, row) for row in basis)
        coord_cons.append((yc, rhs, strict))
    gen_coords = []
    for b in wall_bars:
        c = hyper_sub.coordinates(b)
        assert c is not None
        gen_coords.append(tuple(c))
    if linalg.rank([list(g) for g in gen_coords]) < d:
        # wall spans a proper subspace of the hyperplane: escape sideways
        null = linalg.nullspace([list(g) for g in gen_coords], ncols=d)
        m = linalg.clear_denominators(null[0])
        for sg in (1, -1):
            probe = coord_cons + [(tuple(sg * x for x in m), 1, False)]
            y = fm.feasible_point(probe, d)
            if y is not None:
                return tuple(sum(y[i] * basis[i][j] for i in range(d))
                             for j in range(s))
        return None
    for facet in _cone_h_in_coords(gen_coords, d):
        probe = coord_cons + [(tuple(-x for x in facet), 1, False)]
        y = fm.feasible_point(probe, d)
        if y is not None:
            return tuple(sum(y[i] * basis[i][j] for i in range(d))
                         for j in range(s))
    return None


def big_cells(X):
    """Connected components of the open cone minus all singular sub-cones."""
    g = X.group
    if g.torsion_orders:
        raise TorsionPresent("big cells require a torsion-free group")
    s = X.s
    bars = X.bars()
    if fm.pointed_functional(bars, s) is None:
        raise UnpointedCone("cone of the list is not pointed")
    if not X.spans():
        return []
    facets = cone_facets(bars, s)
    base_cons = [(f, 1, False) for f in facets]
    normals = _hyperplane_normals(X)
    chambers = _chambers(normals, base_cons, s)
    m = len(normals)
    parent = list(range(len(chambers)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        parent[find(i)] = find(j)

    for i, j in combinations(range(len(chambers)), 2):
        si, sj = chambers[i][0], chambers[j][0]
        diff = [k for k in range(m) if si[k] != sj[k]]
        if len(diff) != 1:
            continue
        k = diff[0]
        n, sub = normals[k]
        shared = list(base_cons)
        for t in range(m):
            if t == k:
                continue
            nt = normals[t][0]
            shared.append((tuple(si[t] * x for x in nt), 1, False))
        shared.append((n, 0, False))
        shared.append((tuple(-x for x in n), 0, False))
        if not fm.feasible(shared, s):
            continue
        wall_bars = [X.elements[t].bar for t in sub.member_indices
                     if any(X.elements[t].bar)]
        w = _wall_escape(shared, sub, wall_bars, s)
        if w is not None:
            union(i, j)

    groups = {}
    for idx, (signs, pt) in enumerate(chambers):
        groups.setdefault(find(idx), []).append(idx)
    cells = []
    for members in groups.values():
        rep = min(members, key=lambda i: chambers[i][0])
        signs, pt = chambers[rep]
        walls = [(f, 1) for f in facets]
        for k in range(m):
            if len({chambers[i][0][k] for i in members}) == 1:
                walls.append((normals[k][0], signs[k]))
        cells.append(BigCell(tuple(pt), tuple(walls)))
    cells.sort(key=lambda c: c.interior_point)
    return cells
