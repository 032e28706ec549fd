"""The support-filtered function spaces above the difference-equation kernel.

Membership produces a per-subspace certificate of where each cocircuit
difference is supported; the split decomposition peels one filtration layer
at a time by convolving extracted components back with the face inverses.
"""

from dataclasses import dataclass, field

from .chars import (full_subspace, rational_subspaces, subgroup_characters,
                    zero_subspace)
from .dm import is_member_dm
from .errors import ComponentNotInDM, NotInF, ZeroBarElement
from .series import (Restriction, SubgroupExtension, combination, convolve,
                     face_for_subspace, nabla_stencil, nabla_value, p_face)
from .windows import Window, default_window
from . import fm


@dataclass
class SubspaceEvidence:
    subspace: object
    table: dict                  # nonzero values of the cocircuit difference
    translates: tuple            # observed coset labels of the support
    strict_ok: bool


@dataclass
class FiltrationCertificate:
    mode: str
    window: object
    per_subspace: dict = field(default_factory=dict)
    ok: bool = True

    def __bool__(self):
        return self.ok


def _proper_subspaces(X):
    by_dim = rational_subspaces(X)
    out = []
    for dim in sorted(by_dim):
        if dim == X.s:
            continue
        out.extend(by_dim[dim])
    return out


def is_member_F(f, X, window=None, mode="strict"):
    """Certify that every cocircuit difference is supported on its subspace.

    In strict mode the support must lie on the subspace itself; in
    translated mode the certificate records the finite translate set seen
    on the window (a window-relative semi-decision).
    """
    if mode not in ("strict", "translated"):
        raise ValueError("mode must be 'strict' or 'translated'")
    if window is None:
        window = default_window(X)
    group = X.group
    cert = FiltrationCertificate(mode=mode, window=window)
    for r in _proper_subspaces(X):
        ctx = subgroup_characters(X, r)
        Y = [X.elements[i] for i in range(len(X)) if i not in set(r.member_indices)]
        stencil = nabla_stencil(group, Y)
        table = {}
        labels = set()
        from .dm import _fitting_points

        for p in _fitting_points(window, stencil):
            v = nabla_value(f, Y, p, stencil)
            if v != 0:
                table[p] = v
                labels.add(ctx.coset_label(p))
        strict_ok = all(all(x == 0 for x in lab) for lab in labels)
        cert.per_subspace[r] = SubspaceEvidence(
            subspace=r, table=table,
            translates=tuple(sorted(labels)), strict_ok=strict_ok)
        if mode == "strict" and not strict_ok:
            cert.ok = False
    return cert


def generators_F(X):
    """One signed cone inverse per open chamber of the central arrangement."""
    for a in X.elements:
        if not any(a.bar):
            raise ZeroBarElement("every element must have nonzero image")
    s = X.s
    r0 = zero_subspace(X)
    normals = []
    seen = set()
    for a in X.elements:
        from .linalg import canon_direction

        n = canon_direction(a.bar)
        if n not in seen:
            seen.add(n)
            normals.append(n)
    faces = []
    stack = [((), [])]
    for n in normals:
        nxt = []
        for signs, cons in stack:
            for sg in (1, -1):
                c2 = cons + [(tuple(sg * x for x in n), 1, False)]
                if fm.feasible(c2, s):
                    nxt.append((signs + (sg,), c2))
        stack = nxt
    out = []
    for signs, cons in stack:
        u = fm.feasible_point(cons, s)
        assert u is not None
        from .series import FaceSelector

        out.append(p_face(X, r0, FaceSelector(u)))
    return out


@dataclass
class Decomposition:
    components: dict          # subspace -> function on the subgroup
    remainder: object         # member of the solution space
    faces: dict               # subspace -> face selector used
    window: object
    core: object


def f_decompose(f, X, faces=None, window=None):
    """Peel the filtration: extract one component per proper subspace.

    Each component is the cocircuit difference restricted to its subgroup,
    verified to solve the restricted equations, then convolved back with
    the face inverse and subtracted.  The remainder must be a solution for
    the full list.
    """
    if window is None:
        window = default_window(X)
    cert = is_member_F(f, X, window, mode="strict")
    if not cert.ok:
        raise NotInF("cocircuit differences are not supported on their subspaces")
    if faces is None:
        faces = {}
    group = X.group
    subspaces = _proper_subspaces(X)
    diameter = _max_stencil_diameter(X)
    core = window.shrink(diameter)
    current = f
    components = {}
    used_faces = {}
    for r in subspaces:
        ctx = subgroup_characters(X, r)
        Y = [X.elements[i] for i in range(len(X)) if i not in set(r.member_indices)]
        from .series import nabla

        g_full = nabla(current, Y)
        g_r = Restriction(ctx, g_full)
        sub_window = Window(ctx.group, window.radius)
        member = is_member_dm(g_r, ctx.list, sub_window)
        if not member.ok:
            raise ComponentNotInDM(
                f"component at dim {r.dim} violates its equations: "
                f"{member.violation}")
        components[r] = g_r
        F = faces.get(r)
        if F is None:
            F = face_for_subspace(X, r)
        used_faces[r] = F
        back = convolve(p_face(X, r, F), SubgroupExtension(ctx, g_r))
        current = combination([(1, current), (-1, back)])
    final = is_member_dm(current, X, core)
    if not final.ok:
        raise ComponentNotInDM(
            f"remainder violates the full equations: {final.violation}")
    return Decomposition(components=components, remainder=current,
                         faces=used_faces, window=window, core=core)


def reassemble(dec, X):
    """Rebuild the function from its decomposition data."""
    terms = [(1, dec.remainder)]
    for r, g_r in dec.components.items():
        ctx = subgroup_characters(X, r)
        terms.append((1, convolve(p_face(X, r, dec.faces[r]),
                                  SubgroupExtension(ctx, g_r))))
    return combination(terms)


def _max_stencil_diameter(X):
    from .chars import cocircuits
    from .series import nabla_stencil as _st

    group = X.group
    best = 0
    for Y in cocircuits(X):
        stencil = _st(group, list(Y))
        s = group.free_rank
        for j in range(s):
            vals = [sh.free[j] for sh, _ in stencil]
            best = max(best, max(vals) - min(vals))
    return best
