"""Named verification suites over randomized and fixed instances.

Each suite runs a family of exact checks (tolerance zero everywhere) and
returns a structured report; the command-line `verify` subcommand and the
acceptance tests both call these functions.  Randomness is a seeded PRNG,
so reports are reproducible.
"""

import random
from fractions import Fraction
from math import factorial

from . import fm, linalg
from .abelian import GroupPresentation
from .chars import (CharacterList, big_cells, cocircuits, delta,
                    rational_subspaces, special_points, zonotope_points)
from .dm import (dm_basis, dm_rank, deletion_restriction, is_member_dm,
                 local_decomposition)
from .errors import WindowTooSmall
from .filtration import f_decompose, generators_F, reassemble
from .partition import cell_quasipoly, partition_count
from .series import (FaceSelector, TableFunction, combination, delta_function,
                     face_for_subspace, heaviside, nabla_stencil, nabla_value,
                     p_face)
from .windows import Window, default_window, snug_window


def _check(checks, name, ok, detail=""):
    checks.append({"name": name, "pass": bool(ok), "detail": detail})
    return ok


def _report(name, checks):
    return {"suite": name, "checks": checks,
            "pass": all(c["pass"] for c in checks)}


def _random_list(rng, s_choices=(1, 2), max_extra=3, max_entry=2,
                 torsion_choices=((),), require_span=True,
                 require_pointed=False, max_delta=None):
    while True:
        s = rng.choice(s_choices)
        orders = rng.choice(torsion_choices)
        G = GroupPresentation(s, orders)
        n = rng.randint(max(s, 1), s + max_extra)
        elems = []
        for _ in range(n):
            v = tuple(rng.randint(-max_entry, max_entry) for _ in range(s))
            if require_pointed:
                v = tuple(abs(x) for x in v)
            if not any(v):
                continue
            t = tuple(rng.randint(0, d - 1) for d in orders)
            elems.append(G.element(v, t))
        if not elems:
            continue
        X = CharacterList(G, tuple(elems))
        if require_span and not X.spans():
            continue
        if require_pointed and fm.pointed_functional(X.bars(), s) is None:
            continue
        if max_delta is not None:
            d = delta(X)
            if d == 0 or d * G.torsion_size > max_delta:
                continue
        return X


def _window_for(X, margin=2):
    w = snug_window(X, margin)
    for _ in range(6):
        try:
            is_member_dm(delta_function(X.group), X, w)
            return w
        except WindowTooSmall:
            w = w.widen(2)
    return w


# ---------------------------------------------------------------------------


def suite_rank6(seed=0):
    """The mixed-torsion two-character example with free rank six."""
    checks = []
    G = GroupPresentation(1, (2,))
    a1 = G.element((1,), (1,))
    a2 = G.element((2,), (1,))
    X = CharacterList(G, (a1, a2))
    _check(checks, "delta equals 3", delta(X) == 3, f"delta={delta(X)}")
    w = default_window(X)
    r = dm_rank(X, w)
    _check(checks, "rank times torsion equals 6", r * G.torsion_size == 6,
           f"rank={r}")
    basis = dm_basis(X)
    _check(checks, "basis has 6 elements", len(basis) == 6,
           f"count={len(basis)}")
    ok = all(is_member_dm(b.func, X, w).ok for b in basis)
    _check(checks, "every basis element solves the equations", ok)
    return _report("rank6", checks)


def suite_homothety(seed=0):
    """Repeated single character: polynomial solutions of bounded degree."""
    checks = []
    G = GroupPresentation(1)
    one = G.element((1,))
    for k in range(1, 5):
        X = CharacterList(G, (one,) * (k + 1))
        w = default_window(X)
        r = dm_rank(X, w)
        _check(checks, f"k={k}: rank equals {k + 1}", r == k + 1, f"rank={r}")
        data = {}
        for n in range(-w.radius - 1, w.radius + 2):
            num = 1
            for i in range(1, k + 1):
                num *= n + i
            assert num % factorial(k) == 0
            data[G.element((n,))] = num // factorial(k)
        f = TableFunction(G, data, domain=w.widen(1))
        _check(checks, f"k={k}: binomial coefficient function is a solution",
               is_member_dm(f, X, w).ok)
    return _report("homothety", checks)


def suite_zonotope(seed=0, instances=25):
    """Zonotope volume against generic initial-value point counts."""
    checks = []
    rng = random.Random(1000 + seed)
    for i in range(instances):
        X = _random_list(rng, s_choices=(1, 2, 2, 3), max_extra=3, max_entry=3,
                         torsion_choices=((), (), (2,), (3,)),
                         require_span=False)
        d = delta(X) * X.group.torsion_size
        ok = True
        for j in range(3):
            pts = zonotope_points(X, seed=seed + 17 * j + 1)
            if len(pts) != d:
                ok = False
                break
        _check(checks, f"instance {i}: point count equals delta times torsion",
               ok, f"delta*t={d}")
    return _report("zonotope", checks)


def suite_exact_seq(seed=0, instances=15):
    """Deletion/restriction exact sequence on random lists."""
    checks = []
    rng = random.Random(2000 + seed)
    for i in range(instances):
        X = _random_list(rng, s_choices=(1, 1, 2), max_extra=2, max_entry=2,
                         torsion_choices=((), (2,)), max_delta=8)
        w = _window_for(X)
        all_ok = True
        detail = []
        for idx, a in enumerate(X.elements):
            if not a.has_infinite_order():
                continue
            rep = deletion_restriction(X, idx, window=w)
            if not rep.ok():
                all_ok = False
                detail.append(f"element {idx}: {rep}")
        _check(checks, f"instance {i}: sequence exact at every deletion",
               all_ok, "; ".join(detail))
    return _report("exact-seq", checks)


def suite_labas(seed=0, instances=10):
    """Determinant one for basis values on initial-value points."""
    checks = []
    rng = random.Random(3000 + seed)
    for i in range(instances):
        X = _random_list(rng, s_choices=(1, 2, 2, 3), max_extra=2, max_entry=2,
                         max_delta=12)
        basis = dm_basis(X)
        pts = zonotope_points(X, seed=seed)
        M = [[b.value(p) for p in pts] for b in basis]
        det = linalg.det(M)
        _check(checks, f"instance {i}: initial-value determinant is a unit",
               abs(det) == 1, f"det={det}, size={len(pts)}")
    return _report("labas", checks)


def suite_partition_oracle(seed=0, instances=10, samples=200):
    """Depth-first counting equals Heaviside convolution evaluation."""
    checks = []
    rng = random.Random(4000 + seed)
    for i in range(instances):
        X = _random_list(rng, s_choices=(1, 2), max_extra=3, max_entry=2,
                         require_pointed=True, require_span=False)
        H = heaviside(X.group, list(X.elements))
        ok = True
        bound = 6
        for _ in range(samples):
            lam = X.group.element(
                tuple(rng.randint(-bound, bound) for _ in range(X.s)))
            if partition_count(X, lam) != H.value(lam):
                ok = False
                break
        _check(checks, f"instance {i}: counts agree at {samples} points", ok)
    return _report("partition-oracle", checks)


def suite_big_cell(seed=0, instances=8):
    """Each big cell carries one solution matching the counting function."""
    checks = []
    rng = random.Random(5000 + seed)
    for i in range(instances):
        X = _random_list(rng, s_choices=(1, 2, 2), max_extra=2, max_entry=2,
                         require_pointed=True, max_delta=10)
        w = _window_for(X)
        cells = big_cells(X)
        ok = len(cells) > 0
        detail = f"{len(cells)} cells"
        for cell in cells:
            q = cell_quasipoly(X, cell, window=w)
            member = is_member_dm(q.func, X, w)
            if not member.ok:
                ok = False
                detail += "; membership failed"
                break
        _check(checks, f"instance {i}: every cell fits and verifies", ok,
               detail)
    return _report("big-cell", checks)


def suite_localize(seed=0, instances=8):
    """Exact quasi-polynomial decomposition of every basis element."""
    checks = []
    rng = random.Random(6000 + seed)
    done = 0
    while done < instances:
        X = _random_list(rng, s_choices=(1, 1, 2), max_extra=1, max_entry=3,
                         torsion_choices=((), (2,)), max_delta=6)
        points = special_points(X, 0)
        if len(points) < 2:
            continue
        w = _window_for(X)
        ok = True
        for b in dm_basis(X):
            try:
                qp = local_decomposition(b.func, X, w)
            except Exception as exc:  # any exact failure is a suite failure
                ok = False
                detail = repr(exc)
                break
        else:
            detail = f"{len(points)} special points"
        _check(checks, f"instance {done}: basis decomposes and reassembles",
               ok, detail)
        done += 1
    return _report("localize", checks)


def suite_filtration(seed=0, instances=10):
    """Decompose then reassemble random members of the filtered space."""
    checks = []
    rng = random.Random(7000 + seed)
    for i in range(instances):
        X = _random_list(rng, s_choices=(1, 1, 2), max_extra=2, max_entry=2,
                         max_delta=6)
        from .filtration import _max_stencil_diameter

        w = _window_for(X, margin=_max_stencil_diameter(X) + 3)
        gens = generators_F(X)
        basis = dm_basis(X)
        parts = []
        for g in gens:
            parts.append((rng.randint(-2, 2), g))
        for b in basis:
            parts.append((rng.randint(-2, 2), b.func))
        parts = [(c, g) for c, g in parts if c != 0]
        if not parts:
            parts = [(1, gens[0])]
        f = combination(parts)
        dec = f_decompose(f, X, window=w)
        re = reassemble(dec, X)
        ok = all(re.value(p) == f.value(p) for p in dec.core.points())
        _check(checks, f"instance {i}: reassembly is the identity on the core",
               ok, f"core radius {dec.core.radius}")
    return _report("filtration", checks)


def suite_pface(seed=0, instances=10):
    """The face inverses satisfy their defining difference equation."""
    checks = []
    rng = random.Random(8000 + seed)
    for i in range(instances):
        X = _random_list(rng, s_choices=(1, 2), max_extra=2, max_entry=2,
                         torsion_choices=((), (2,)), max_delta=None)
        w = snug_window(X, margin=2)
        group = X.group
        ok = True
        for dim, subs in sorted(rational_subspaces(X).items()):
            if dim == X.s:
                continue
            for r in subs:
                F = face_for_subspace(X, r, seed=seed)
                for face in (F, F.negated()):
                    P = p_face(X, r, face)
                    Y = [X.elements[j] for j in range(len(X))
                         if j not in set(r.member_indices)]
                    stencil = nabla_stencil(group, Y)
                    from .dm import _fitting_points

                    for pt in _fitting_points(w, stencil):
                        expect = 1 if pt.is_zero() else 0
                        if nabla_value(P, Y, pt, stencil) != expect:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                break
        _check(checks, f"instance {i}: difference of face inverse is delta",
               ok)
    return _report("pface", checks)


SUITES = {
    "rank6": suite_rank6,
    "homothety": suite_homothety,
    "zonotope": suite_zonotope,
    "exact-seq": suite_exact_seq,
    "labas": suite_labas,
    "partition-oracle": suite_partition_oracle,
    "big-cell": suite_big_cell,
    "localize": suite_localize,
    "filtration": suite_filtration,
    "pface": suite_pface,
}


def run_suite(name, seed=0):
    if name == "all":
        return [SUITES[n](seed=seed) for n in SUITES]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choices: {sorted(SUITES)} + all")
    return [SUITES[name](seed=seed)]


def print_report(reports, echo=print):
    total = passed = 0
    for rep in reports:
        for c in rep["checks"]:
            total += 1
            passed += bool(c["pass"])
            mark = "PASS" if c["pass"] else "FAIL"
            detail = f"  [{c['detail']}]" if c.get("detail") else ""
            echo(f"{mark} {rep['suite']}: {c['name']}{detail}")
    echo(f"{passed}/{total} checks passed")
    return passed == total
