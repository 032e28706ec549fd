"""JSON serialization for every external surface.

Groups, elements, lists, tables, subspaces, cells and quasi-polynomials all
round-trip through plain JSON; rationals are written as "num/den" strings
so nothing ever passes through floating point.
"""

from fractions import Fraction

from .abelian import GroupElement, GroupHom, GroupPresentation, _canonical_quotient
from .chars import BigCell, CharacterList, TorsionPoint
from .series import TableFunction
from .windows import Window


def frac_str(x):
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def parse_frac(s):
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(s)


def group_to_json(g):
    return {"free_rank": g.free_rank, "torsion": list(g.torsion_orders)}


def group_from_json(obj):
    free_rank = int(obj.get("free_rank", 0))
    orders = [int(d) for d in obj.get("torsion", [])]
    chain = all(b % a == 0 for a, b in zip(orders, orders[1:]))
    if chain and all(d >= 2 for d in orders):
        return GroupPresentation(free_rank, tuple(orders)), None
    # non-canonical torsion: canonicalize through the quotient machinery
    n = free_rank + len(orders)
    cols = []
    for i, d in enumerate(orders):
        col = [0] * n
        col[free_rank + i] = d
        cols.append(col)
    pres, rows = _canonical_quotient(n, cols)
    return pres, rows


def element_to_json(e):
    return {"free": list(e.free), "torsion": list(e.torsion)}


def element_from_json(group, obj, conversion_rows=None):
    free = [int(x) for x in obj.get("free", [])]
    torsion = [int(x) for x in obj.get("torsion", [])]
    if conversion_rows is None:
        return group.element(free, torsion)
    raw = free + torsion
    out = [sum(r * c for r, c in zip(row, raw)) for row in conversion_rows]
    s = group.free_rank
    return group.element(out[:s], out[s:])


def charlist_to_json(X):
    return {"group": group_to_json(X.group),
            "X": [element_to_json(a) for a in X.elements]}


def charlist_from_json(obj):
    group, rows = group_from_json(obj["group"])
    elems = tuple(element_from_json(group, e, rows) for e in obj.get("X", []))
    return CharacterList(group, elems)


def load_problem(obj):
    """Parse a problem file: list plus optional window radius and seed."""
    X = charlist_from_json(obj)
    window = None
    if obj.get("window") is not None:
        window = Window(X.group, int(obj["window"]))
    seed = int(obj.get("seed", 0))
    return X, window, seed


def subspace_to_json(r):
    return {"dim": r.dim,
            "basis": [list(row) for row in r.basis],
            "members": list(r.member_indices),
            "orientation": r.orientation}


def torsion_point_to_json(p):
    return {"values": [frac_str(v) for v in p.values]}


def torsion_point_from_json(group, obj):
    return TorsionPoint(group, tuple(parse_frac(v) for v in obj["values"]))


def cell_to_json(c):
    return {"interior_point": [frac_str(x) for x in c.interior_point],
            "walls": [{"normal": list(n), "sign": sg} for n, sg in c.walls]}


def table_to_json(f, window):
    values = []
    for p in window.points():
        values.append([element_to_json(p), f.value(p)])
    return {"window": {"radius": window.radius}, "values": values}


def table_from_json(group, obj):
    window = Window(group, int(obj["window"]["radius"]))
    data = {}
    for e_obj, v in obj["values"]:
        data[element_from_json(group, e_obj)] = int(v)
    return TableFunction(group, data, domain=window), window


def quasipolynomial_to_json(qp):
    terms = []
    for p, q in qp.terms:
        poly = []
        for e in q.monomials():
            c = q.coeffs[e]
            coeffs = getattr(c, "coeffs", None)
            if coeffs is None:
                coeffs = (Fraction(c),)
            poly.append({"exponents": list(e),
                         "coefficient": [frac_str(x) for x in coeffs]})
        terms.append({"point": torsion_point_to_json(p), "polynomial": poly})
    return {"cyclotomic_order": qp.field_order, "terms": terms}


def certificate_to_json(cert):
    out = {"ok": cert.ok, "checked_points": cert.checked_points}
    if cert.violation is not None:
        ci, p, v = cert.violation
        out["violation"] = {"cocircuit": ci, "point": element_to_json(p),
                            "value": v}
    return out


def filtration_certificate_to_json(cert):
    per = []
    for r, ev in cert.per_subspace.items():
        per.append({
            "subspace": subspace_to_json(r),
            "strict": ev.strict_ok,
            "translates": [list(t) for t in ev.translates],
            "support": [[element_to_json(p), v] for p, v in sorted(
                ev.table.items(), key=lambda kv: (kv[0].free, kv[0].torsion))],
        })
    return {"ok": cert.ok, "mode": cert.mode, "per_subspace": per}
