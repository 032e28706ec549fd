"""Exact linear algebra over the integers and rationals.

Matrices are lists of row tuples/lists; no floating point is used anywhere.
"""

from fractions import Fraction
from math import gcd


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if k else 0
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def mat_vec(A, v):
    return [sum(A[i][j] * v[j] for j in range(len(v))) for i in range(len(A))]


def transpose(A):
    return [list(col) for col in zip(*A)]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def det(A):
    """Exact determinant via fraction-free style elimination over Fraction."""
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    sign = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            sign = -sign
        for r in range(c + 1, n):
            if M[r][c]:
                f = M[r][c] / M[c][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    result = Fraction(sign)
    for i in range(n):
        result *= M[i][i]
    return result


def rref(rows):
    """Reduced row echelon form over Fraction.

    Returns (reduced rows, pivot column list). Input rows are not modified.
    """
    M = [[Fraction(x) for x in row] for row in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows):
    return len(rref(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of the right nullspace {x : rows @ x = 0}, over Fraction."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """One solution of rows @ x = rhs over Fraction, or None if inconsistent."""
    if not rows:
        return [] if all(b == 0 for b in rhs) else None
    ncols = len(rows[0])
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    for row in red:
        if all(x == 0 for x in row[:ncols]) and row[ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        if p == ncols:
            return None
        x[p] = red[r][ncols]
    return x


def int_inverse(U):
    """Inverse of a unimodular integer matrix, as an integer matrix."""
    n = len(U)
    sol = []
    for j in range(n):
        e = [Fraction(1) if i == j else Fraction(0) for i in range(n)]
        col = solve(U, e)
        assert col is not None
        sol.append(col)
    inv = [[sol[j][i] for j in range(n)] for i in range(n)]
    out = []
    for row in inv:
        assert all(x.denominator == 1 for x in row)
        out.append([int(x) for x in row])
    return out


def hnf_rows(rows):
    """Canonical (row-style Hermite) basis of the lattice spanned by rows.

    Pivots are positive, entries above each pivot are reduced into [0, pivot).
    """
    M = [list(r) for r in rows if any(r)]
    if not M:
        return []
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        while True:
            live = [i for i in range(r, len(M)) if M[i][c] != 0]
            if not live:
                break
            i0 = min(live, key=lambda i: abs(M[i][c]))
            M[r], M[i0] = M[i0], M[r]
            if M[r][c] < 0:
                M[r] = [-x for x in M[r]]
            done = True
            for i in range(r + 1, len(M)):
                if M[i][c]:
                    q = M[i][c] // M[r][c]
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
                    if M[i][c]:
                        done = False
            if done:
                break
        if r < len(M) and M[r][c]:
            for i in range(r):
                q = M[i][c] // M[r][c]
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
            r += 1
            if r == len(M):
                break
    return [tuple(row) for row in M[:r]]


def primitive(vec):
    """Divide an integer vector by the gcd of its entries (direction kept)."""
    g = 0
    for x in vec:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(vec)
    return tuple(x // g for x in vec)


def canon_direction(vec):
    """Primitive integer vector, first nonzero entry positive (for dedupe).

    Accepts rational input; denominators are cleared first.
    """
    v = clear_denominators(vec)
    for x in v:
        if x != 0:
            return v if x > 0 else tuple(-y for y in v)
    return v


def clear_denominators(vec):
    """Scale a rational vector to a primitive integer vector (same direction)."""
    fracs = [Fraction(x) for x in vec]
    lcm = 1
    for f in fracs:
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in fracs]
    return primitive(ints)


def saturation_rows(gen_rows, ncols):
    """Canonical basis of the saturation of the lattice spanned by gen_rows.

    The saturation is the intersection of the rational row span with Z^ncols;
    the returned rows are its Hermite-canonical basis.
    """
    from .abelian import smith_normal_form

    rows = [list(r) for r in gen_rows if any(r)]
    if not rows:
        return ()
    _, D, V = smith_normal_form(rows)
    r = sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i] != 0)
    vinv = int_inverse(V)
    return tuple(hnf_rows([vinv[i] for i in range(r)]))
