"""Finitely generated abelian groups in canonical form.

A group is Z^s plus a torsion part Z/d1 x ... x Z/dk with d1 | d2 | ... | dk.
Elements are integer vectors over the s + k stored generators, with torsion
coordinates reduced modulo their orders.  All quotient and index computations
go through the Smith normal form, so everything is exact.
"""

from dataclasses import dataclass, field

from . import linalg
from .errors import FiniteOrderElement, InfiniteIndex


def smith_normal_form(M):
    """Smith normal form with transforms: returns (U, D, V), U @ M @ V = D.

    D is diagonal with nonnegative entries in a divisor chain; U and V are
    unimodular.  M may be any integer matrix, including empty.
    """
    A = [list(row) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = linalg.identity(m)
    V = linalg.identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    k = 0
    while k < min(m, n):
        # choose the smallest nonzero entry of the remaining block as pivot
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(k, best[0])
        swap_cols(k, best[1])
        if A[k][k] < 0:
            negate_row(k)
        while True:
            clean = True
            for i in range(k + 1, m):
                if A[i][k]:
                    q = A[i][k] // A[k][k]
                    add_row(k, i, -q)
                    if A[i][k]:
                        swap_rows(k, i)
                        if A[k][k] < 0:
                            negate_row(k)
                        clean = False
            for j in range(k + 1, n):
                if A[k][j]:
                    q = A[k][j] // A[k][k]
                    add_col(k, j, -q)
                    if A[k][j]:
                        swap_cols(k, j)
                        clean = False
            if clean:
                break
        # enforce divisibility of the remaining block by the pivot
        offender = None
        for i in range(k + 1, m):
            for j in range(k + 1, n):
                if A[i][j] % A[k][k] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, k, 1)
            continue
        k += 1
    return U, A, V


@dataclass(frozen=True)
class GroupPresentation:
    """Z^free_rank plus cyclic factors whose orders form a divisor chain."""

    free_rank: int
    torsion_orders: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion_orders", tuple(self.torsion_orders))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        orders = self.torsion_orders
        for d in orders:
            if d < 2:
                raise ValueError("torsion orders must be at least 2")
        for a, b in zip(orders, orders[1:]):
            if b % a != 0:
                raise ValueError("torsion orders must form a divisor chain")

    @property
    def ngens(self):
        return self.free_rank + len(self.torsion_orders)

    @property
    def torsion_size(self):
        size = 1
        for d in self.torsion_orders:
            size *= d
        return size

    def zero(self):
        return GroupElement(self, (0,) * self.free_rank,
                            (0,) * len(self.torsion_orders))

    def element(self, free, torsion=()):
        return GroupElement(self, tuple(free), tuple(torsion))

    def free_gen(self, i):
        free = tuple(1 if j == i else 0 for j in range(self.free_rank))
        return self.element(free, (0,) * len(self.torsion_orders))

    def torsion_gen(self, i):
        tors = tuple(1 if j == i else 0 for j in range(len(self.torsion_orders)))
        return self.element((0,) * self.free_rank, tors)

    def torsion_elements(self):
        """All elements of the torsion subgroup, in lexicographic order."""
        elems = [self.zero()]
        for i, d in enumerate(self.torsion_orders):
            gen = self.torsion_gen(i)
            elems = [e + k * gen for e in elems for k in range(d)]
        # rebuild in a deterministic lexicographic order
        elems.sort(key=lambda e: e.torsion)
        return elems

    def relation_columns(self):
        """Columns d_i * e_(s+i) generating the kernel of Z^ngens -> group."""
        n = self.ngens
        cols = []
        for i, d in enumerate(self.torsion_orders):
            col = [0] * n
            col[self.free_rank + i] = d
            cols.append(col)
        return cols


@dataclass(frozen=True)
class GroupElement:
    group: GroupPresentation = field(repr=False)
    free: tuple = ()
    torsion: tuple = ()

    def __post_init__(self):
        g = self.group
        free = tuple(int(x) for x in self.free)
        tors = tuple(int(t) % d for t, d in zip(self.torsion, g.torsion_orders))
        if len(free) != g.free_rank or len(self.torsion) != len(g.torsion_orders):
            raise ValueError("element does not match presentation")
        object.__setattr__(self, "free", free)
        object.__setattr__(self, "torsion", tors)

    def __add__(self, other):
        assert self.group == other.group
        return GroupElement(self.group,
                            tuple(a + b for a, b in zip(self.free, other.free)),
                            tuple(a + b for a, b in zip(self.torsion, other.torsion)))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return GroupElement(self.group,
                            tuple(-a for a in self.free),
                            tuple(-a for a in self.torsion))

    def __rmul__(self, k):
        return GroupElement(self.group,
                            tuple(k * a for a in self.free),
                            tuple(k * a for a in self.torsion))

    def __hash__(self):
        return hash((self.free, self.torsion))

    def __eq__(self, other):
        return (isinstance(other, GroupElement)
                and self.free == other.free and self.torsion == other.torsion
                and self.group == other.group)

    @property
    def bar(self):
        """Image in the weight lattice: the free coordinates."""
        return self.free

    def is_zero(self):
        return all(x == 0 for x in self.free) and all(t == 0 for t in self.torsion)

    def has_infinite_order(self):
        return any(x != 0 for x in self.free)

    def raw(self):
        """Coordinates over all stored generators, torsion lifted to Z."""
        return list(self.free) + list(self.torsion)


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism stored as an integer matrix over raw generator coords.

    Row i of `matrix` gives the i-th raw coordinate of the image.  The data
    is explicit (no closures) so homs can be serialized and composed.
    """

    source: GroupPresentation
    target: GroupPresentation
    matrix: tuple  # rows: target raw coords, columns: source raw coords

    def __call__(self, elem):
        assert elem.group == self.source
        raw = elem.raw()
        out = [sum(row[j] * raw[j] for j in range(len(raw))) for row in self.matrix]
        s = self.target.free_rank
        return self.target.element(out[:s], out[s:])


def _canonical_quotient(n, relation_cols):
    """Present Z^n / (column span) canonically.

    Returns (presentation, proj_rows) where proj_rows map raw coordinates in
    Z^n to raw coordinates of the canonical presentation (free rows first).
    """
    if relation_cols:
        M = [[col[i] for col in relation_cols] for i in range(n)]
        U, D, _ = smith_normal_form(M)
        diag = [D[i][i] if i < len(D[0]) else 0 for i in range(n)]
    else:
        U = linalg.identity(n)
        diag = [0] * n
    free_rows = [i for i in range(n) if diag[i] == 0]
    torsion_rows = [i for i in range(n) if diag[i] > 1]
    torsion_rows.sort(key=lambda i: diag[i])
    pres = GroupPresentation(len(free_rows), tuple(diag[i] for i in torsion_rows))
    rows = [tuple(U[i]) for i in free_rows] + [tuple(U[i]) for i in torsion_rows]
    return pres, tuple(rows)


def quotient_by_element(group, a):
    """The quotient by the infinite cyclic subgroup generated by a.

    Returns (quotient, proj) where proj is a GroupHom with kernel exactly
    the multiples of a.  Raises FiniteOrderElement when a has finite order.
    """
    if not a.has_infinite_order():
        raise FiniteOrderElement("quotient requires an element of infinite order")
    n = group.ngens
    cols = group.relation_columns() + [a.raw()]
    pres, rows = _canonical_quotient(n, cols)
    return pres, GroupHom(group, pres, rows)


def _subgroup_matrix(group, gens):
    cols = [g.raw() for g in gens] + group.relation_columns()
    n = group.ngens
    if not cols:
        return [[0] for _ in range(n)] if n else []
    return [[col[i] for col in cols] for i in range(n)]


def index_of_subgroup(group, gens):
    """Index of the subgroup generated by gens, or None when infinite."""
    n = group.ngens
    if n == 0:
        return 1
    M = _subgroup_matrix(group, gens)
    _, D, _ = smith_normal_form(M)
    diag = [D[i][i] if i < len(D[0]) else 0 for i in range(n)]
    if any(d == 0 for d in diag):
        return None
    idx = 1
    for d in diag:
        idx *= d
    return idx


def coset_reps(group, gens):
    """A complete set of coset representatives of the subgroup <gens>.

    Raises InfiniteIndex when the subgroup has infinite index.
    """
    n = group.ngens
    if n == 0:
        return [group.zero()]
    M = _subgroup_matrix(group, gens)
    U, D, _ = smith_normal_form(M)
    diag = [D[i][i] if i < len(D[0]) else 0 for i in range(n)]
    if any(d == 0 for d in diag):
        raise InfiniteIndex("subgroup has infinite index")
    uinv = linalg.int_inverse(U)
    reps = []
    ys = [()]
    for d in diag:
        ys = [y + (v,) for y in ys for v in range(d)]
    s = group.free_rank
    for y in ys:
        x = [sum(uinv[i][j] * y[j] for j in range(n)) for i in range(n)]
        reps.append(group.element(x[:s], x[s:]))
    return reps


def in_subgroup(group, gens, elem):
    """Exact membership of elem in the subgroup generated by gens."""
    cols = [g.raw() for g in gens] + group.relation_columns()
    n = group.ngens
    if n == 0:
        return True
    if not cols:
        return elem.is_zero()
    rows = [[col[i] for col in cols] for i in range(n)]
    # v lies in the column lattice iff U v is divisible by the SNF diagonal
    U, D, _ = smith_normal_form(rows)
    y = linalg.mat_vec(U, elem.raw())
    m = len(cols)
    for i in range(n):
        d = D[i][i] if i < m else 0
        if d == 0:
            if y[i] != 0:
                return False
        elif y[i] % d != 0:
            return False
    return True
