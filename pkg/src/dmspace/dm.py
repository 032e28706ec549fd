"""The solution space of the cocircuit difference equations.

Membership tests, the explicit translated-flag basis, window ranks, the
deletion/restriction exact sequence, the polynomial counterpart under
differential cocircuit equations, and the exact local decomposition into
quasi-polynomial pieces at the special torsion points.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import cyclo, linalg
from .abelian import coset_reps, quotient_by_element
from .chars import (CharacterList, bases, cocircuits, delta,
                    rational_subspaces, special_points, fixed_sublist,
                    full_subspace, subspace_spanned, zero_subspace,
                    zonotope_points)
from .errors import (DegenerateList, FiniteOrderElement, NotInDM,
                     SolveFailed, WindowTooSmall)
from .poly import Polynomial, monomials_up_to
from .series import (PullbackFunction, nabla, nabla_stencil, nabla_value,
                     q_flag)
from .windows import Window, default_window


@dataclass
class DMElement:
    """A member of the solution space together with its provenance."""

    func: object
    provenance: dict = field(default_factory=dict)

    def value(self, elem):
        return self.func.value(elem)


@dataclass
class MembershipCertificate:
    ok: bool
    violation: tuple = None  # (cocircuit index, point, value)
    checked_points: int = 0

    def __bool__(self):
        return self.ok


def _stencil_box(group, stencil):
    s = group.free_rank
    lo = [min(sh.free[j] for sh, _ in stencil) for j in range(s)]
    hi = [max(sh.free[j] for sh, _ in stencil) for j in range(s)]
    return lo, hi


def _fitting_points(window, stencil):
    """Window points where every stencil shift stays inside the window."""
    group = window.group
    s = group.free_rank
    lo, hi = _stencil_box(group, stencil)
    r = window.radius
    out = []
    for p in window.points():
        if all(-r <= p.free[j] - hi[j] and p.free[j] - lo[j] <= r
               for j in range(s)):
            out.append(p)
    return out


def is_member_dm(f, X, window=None):
    """Does f satisfy every cocircuit equation wherever the stencil fits?

    Returns a certificate carrying the first violation when membership
    fails.  For a degenerate list the space is zero, so membership means
    vanishing on the window.
    """
    if window is None:
        window = default_window(X)
    group = X.group
    if X.s > 0 and not X.spans():
        for p in window.points():
            if f.value(p) != 0:
                return MembershipCertificate(False, (None, p, f.value(p)))
        return MembershipCertificate(True, checked_points=len(window))
    needed = delta(X) * group.torsion_size
    total = 0
    for ci, Y in enumerate(cocircuits(X)):
        stencil = nabla_stencil(group, list(Y))
        pts = _fitting_points(window, stencil)
        if len(pts) < needed:
            raise WindowTooSmall(
                f"cocircuit stencil fits at {len(pts)} < {needed} points")
        for p in pts:
            v = nabla_value(f, Y, p, stencil)
            if v != 0:
                return MembershipCertificate(False, (ci, p, v))
            total += 1
    return MembershipCertificate(True, checked_points=total)


# ---------------------------------------------------------------------------
# the translated-flag basis


def _basis_sublist_indices(X, combo):
    """Indices of elements kept in the sublist attached to one basis.

    An element stays exactly when its image is independent of the basis
    elements strictly preceding it in the list order (torsion elements stay
    vacuously).  This is the set the deletion induction factors through.
    """
    out = []
    for pos, c in enumerate(X.elements):
        if not any(c.bar):
            out.append(pos)
            continue
        head = [X.elements[i].bar for i in combo if i < pos]
        if linalg.rank(head + [list(c.bar)]) > linalg.rank(head):
            out.append(pos)
    return out


def _flag_for(X, combo):
    flag = [zero_subspace(X)]
    for i in range(1, len(combo) + 1):
        vecs = [X.elements[j].bar for j in combo[:i]]
        flag.append(subspace_spanned(X, vecs))
    return flag


def dm_basis(X):
    """The basis of translated flag elements, one per (basis, coset rep).

    Counts delta(X) times the torsion size in total; the reps over the
    torsion subgroup times the basis sublattice realize the module
    structure explicitly.
    """
    group = X.group
    if X.s > 0 and not X.spans():
        raise DegenerateList("no basis for a degenerate list")
    out = []
    for combo, d in bases(X):
        sub_idx = _basis_sublist_indices(X, combo)
        Xb = X.sublist(sub_idx)
        flag = _flag_for(X, combo)
        Q = q_flag(Xb, flag)
        reps = coset_reps(group, [X.elements[i] for i in combo])
        for rep in reps:
            out.append(DMElement(Q.translate(rep), provenance={
                "basis": combo,
                "index": d,
                "sublist": tuple(sub_idx),
                "rep": rep,
            }))
    return out


def value_matrix(funcs, points):
    return [[f.value(p) for p in points] for f in funcs]


def initial_value_matrix(X, basis=None, u=None, seed=0):
    """Values of the basis on a generic zonotope point set (square matrix)."""
    if basis is None:
        basis = dm_basis(X)
    pts = zonotope_points(X, u=u, seed=seed)
    return value_matrix([b.func for b in basis], pts), pts


# ---------------------------------------------------------------------------
# window rank


DENSE_LIMIT = 140


def _window_solution_dim_dense(X, window):
    group = X.group
    pts = window.points()
    index = {p: i for i, p in enumerate(pts)}
    rows = []
    for Y in cocircuits(X):
        stencil = nabla_stencil(group, list(Y))
        for p in _fitting_points(window, stencil):
            row = [0] * len(pts)
            for sh, c in stencil:
                row[index[p - sh]] += c
            rows.append(row)
    if not rows:
        return len(pts)
    return len(pts) - linalg.rank(rows)


def _window_solution_dim(X, window):
    group = X.group
    pts = window.points()
    if len(pts) <= DENSE_LIMIT:
        return _window_solution_dim_dense(X, window)
    # propagation: initial values on a zonotope point set determine every
    # window value through the recursions, bounding the dimension above;
    # the explicit basis bounds it below.
    init = zonotope_points(X)
    if not all(window.contains(p) for p in init):
        raise WindowTooSmall("window does not contain the initial value set")
    known = set(init)
    point_set = set(pts)
    equations = []
    for Y in cocircuits(X):
        stencil = nabla_stencil(group, list(Y))
        for p in _fitting_points(window, stencil):
            equations.append(tuple(p - sh for sh, _ in stencil))
    changed = True
    while changed:
        changed = False
        for eq in equations:
            unknown = [q for q in eq if q not in known]
            if len(unknown) == 1:
                known.add(unknown[0])
                changed = True
    if not point_set <= known:
        raise WindowTooSmall("recursion does not determine the whole window")
    basis = dm_basis(X)
    M = value_matrix([b.func for b in basis], init)
    if linalg.rank(M) != len(init):
        raise SolveFailed("explicit basis not independent on initial values")
    return len(init)


def dm_rank(X, window=None):
    """Dimension of the window solution space over the torsion size.

    Computed on two nested windows; disagreement raises WindowTooSmall.
    """
    if X.s > 0 and not X.spans():
        return 0
    if window is None:
        window = default_window(X)
    d1 = _window_solution_dim(X, window)
    d2 = _window_solution_dim(X, window.widen(1))
    if d1 != d2:
        raise WindowTooSmall("rank did not stabilize between nested windows")
    t = X.group.torsion_size
    if d1 % t != 0:
        raise WindowTooSmall("window dimension incompatible with torsion")
    return d1 // t


# ---------------------------------------------------------------------------
# deletion / restriction


@dataclass
class ExactSequenceReport:
    removed: object
    quotient_group: object
    delta_X: int
    delta_Z: int
    delta_Zt: int
    rank_identity_ok: bool
    composite_zero_ok: bool
    lifted_in_dm_ok: bool
    images_in_dm_ok: bool
    images_span_ok: bool
    kernel_rank_ok: bool
    lifted_basis: list = field(default_factory=list, repr=False)
    image_basis: list = field(default_factory=list, repr=False)

    def ok(self):
        return (self.rank_identity_ok and self.composite_zero_ok
                and self.lifted_in_dm_ok and self.images_in_dm_ok
                and self.images_span_ok and self.kernel_rank_ok)


def deletion_restriction(X, index, window=None):
    """Verify the deletion/restriction exact sequence at one list element."""
    group = X.group
    a = X.elements[index]
    if not a.has_infinite_order():
        raise FiniteOrderElement("deletion requires an infinite-order element")
    if window is None:
        window = default_window(X)
    Z = X.without_index(index)
    qgroup, proj = quotient_by_element(group, a)
    Zt = CharacterList(qgroup, tuple(proj(z) for z in Z.elements))

    dX = delta(X)
    dZ = delta(Z) if Z.spans() or Z.s == 0 else 0
    dZt = delta(Zt) if Zt.spans() or Zt.s == 0 else 0
    tX = group.torsion_size
    tQ = qgroup.torsion_size
    rank_ok = dX * tX == dZ * tX + dZt * tQ

    # lift the quotient basis and check it lands in the kernel of nabla_a
    lifted = [PullbackFunction(proj, b.func) for b in dm_basis(Zt)]
    lifted_ok = all(is_member_dm(f, X, window).ok for f in lifted)
    composite_ok = True
    for f in lifted:
        for p in window.shrink(_one_norm(a)).points():
            if nabla_value(f, [a], p) != 0:
                composite_ok = False
                break
        if not composite_ok:
            break

    basis_X = dm_basis(X)
    images = [nabla(b.func, [a]) for b in basis_X]
    if dZ == 0:
        inner = window.shrink(_one_norm(a))
        images_ok = all(all(g.value(p) == 0 for p in inner.points())
                        for g in images)
        span_ok = images_ok
    else:
        images_ok = all(is_member_dm(g, Z, window).ok for g in images)
        zpts = zonotope_points(Z)
        M = value_matrix(images, zpts)
        span_ok = linalg.rank(M) == len(zpts)
        if span_ok:
            _, D, _ = _snf_of(M)
            inv = [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]
            span_ok = all(d == 1 for d in inv[:len(zpts)])

    # exactness in the middle: kernel of nabla_a inside the span has the
    # dimension of the lifted space
    wpts = window.shrink(_one_norm(a)).points()
    MW = value_matrix(images, wpts)
    img_rank = linalg.rank(MW)
    kernel_ok = len(basis_X) - img_rank == dZt * tQ

    return ExactSequenceReport(
        removed=a, quotient_group=qgroup,
        delta_X=dX, delta_Z=dZ, delta_Zt=dZt,
        rank_identity_ok=rank_ok, composite_zero_ok=composite_ok,
        lifted_in_dm_ok=lifted_ok, images_in_dm_ok=images_ok,
        images_span_ok=span_ok, kernel_rank_ok=kernel_ok,
        lifted_basis=lifted, image_basis=images)


def _one_norm(a):
    return sum(abs(x) for x in a.bar)


def _snf_of(M):
    from .abelian import smith_normal_form

    return smith_normal_form(M)


# ---------------------------------------------------------------------------
# the polynomial space


@dataclass
class PolynomialSpaceBasis:
    polynomials: list
    nvars: int

    def __len__(self):
        return len(self.polynomials)

    def __iter__(self):
        return iter(self.polynomials)


def d_space_basis(X):
    """Polynomial solutions of the differential cocircuit system.

    Exact linear algebra on coefficients up to the degree bound; the basis
    size equals the number of bases in the list.
    """
    s = X.s
    if s > 0 and not X.spans():
        raise DegenerateList("no polynomial space for a degenerate list")
    if s == 0:
        return PolynomialSpaceBasis([Polynomial.constant(0, Fraction(1))], 0)
    max_deg = max(len(X) - s, 0)
    monos = monomials_up_to(s, max_deg)
    eqs = []
    for Y in cocircuits(X):
        bars = [a.bar for a in Y]
        images = [Polynomial.monomial(s, e).derivative_list(bars) for e in monos]
        targets = sorted({e2 for img in images for e2 in img.coeffs})
        for t in targets:
            eqs.append([img.coeffs.get(t, Fraction(0)) for img in images])
    basis_vecs = linalg.nullspace(eqs, ncols=len(monos)) if eqs else \
        [[Fraction(1) if i == j else Fraction(0) for j in range(len(monos))]
         for i in range(len(monos))]
    red, _ = linalg.rref(basis_vecs)
    polys = []
    for vec in red:
        polys.append(Polynomial(s, {monos[i]: vec[i] for i in range(len(monos))}))
    return PolynomialSpaceBasis(polys, s)


# ---------------------------------------------------------------------------
# local decomposition at the special points


@dataclass
class QuasiPolynomial:
    """A finite sum of torsion-point twists of polynomials.

    Evaluation computes sum over p of p^(-gamma) q_p(image of gamma) in the
    cyclotomic field and asserts exact integrality.
    """

    group: object
    field_order: int
    terms: list  # (TorsionPoint, Polynomial with cyclotomic coefficients)

    def evaluate(self, elem):
        K = cyclo.CycloField(self.field_order)
        total = K.zero()
        for p, q in self.terms:
            val = p.pair(elem)
            k = -int(val * self.field_order)
            total = total + K.zeta_power(k) * _cyclo_eval(q, elem.bar, K)
        rat = total.as_rational()
        if rat is None or rat.denominator != 1:
            raise SolveFailed("quasi-polynomial value is not an integer")
        return int(rat)


def _cyclo_eval(q, point, K):
    total = K.zero()
    for e, c in q.coeffs.items():
        term = c
        for j, ej in enumerate(e):
            if ej:
                term = term * (Fraction(point[j]) ** ej)
        total = total + term
    return total


def local_decomposition(f, X, window=None):
    """Write a solution as a sum over special points of twisted polynomials.

    The coefficients are solved exactly in a cyclotomic field on a zonotope
    point set and verified against f at every window point.
    """
    if window is None:
        window = default_window(X)
    cert = is_member_dm(f, X, window)
    if not cert.ok:
        raise NotInDM(f"not a solution: violation {cert.violation}")
    points = special_points(X, 0)
    N = 1
    for p in points:
        N = N * p.order // gcd(N, p.order)
    K = cyclo.CycloField(N)
    columns = []  # (point, basis polynomial)
    for p in points:
        Xp = fixed_sublist(X, p)
        for q in d_space_basis(Xp):
            columns.append((p, q))
    sample = zonotope_points(X)
    if len(sample) != len(columns):
        raise SolveFailed(
            f"local multiplicity mismatch: {len(sample)} initial values vs "
            f"{len(columns)} coefficients")
    rows = []
    rhs = []
    for gamma in sample:
        row = []
        for p, q in columns:
            k = -int(p.pair(gamma) * N)
            row.append(K.zeta_power(k) * Fraction(q.evaluate(gamma.bar)))
        rows.append(row)
        rhs.append(K.from_rational(f.value(gamma)))
    coeffs = cyclo.solve_square(rows, rhs)
    combined = {}
    for (p, q), c in zip(columns, coeffs):
        if c.is_zero():
            continue
        scaled = Polynomial(q.nvars, {e: c * v for e, v in q.coeffs.items()})
        cur = combined.get(p.values)
        combined[p.values] = scaled if cur is None else cur + scaled
    term_list = [(p, combined[p.values]) for p in points if p.values in combined]
    qp = QuasiPolynomial(X.group, N, term_list)
    # exact verification on the full window and on the defining equations
    for gamma in window.points():
        if qp.evaluate(gamma) != f.value(gamma):
            raise SolveFailed("reassembly mismatch on the window")
    for p, q in term_list:
        Xp = fixed_sublist(X, p)
        for Y in cocircuits(Xp):
            dq = q.derivative_list([a.bar for a in Y])
            if not all(_cyclo_is_zero(c) for c in dq.coeffs.values()):
                raise SolveFailed("local polynomial violates its equations")
    return qp


def _cyclo_is_zero(c):
    if isinstance(c, cyclo.CycloNum):
        return c.is_zero()
    return c == 0
