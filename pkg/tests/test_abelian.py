"""Group arithmetic tests with independent oracles.

The Smith form oracle uses determinantal divisors (gcds of k x k minors),
which shares no code with the reduction algorithm; coset statements are
checked by sieving windows of elements.
"""

import random
from itertools import combinations, product
from math import gcd

import pytest

from dmspace import linalg
from dmspace.abelian import (GroupPresentation, coset_reps, in_subgroup,
                             index_of_subgroup, quotient_by_element,
                             smith_normal_form)
from dmspace.errors import FiniteOrderElement, InfiniteIndex


def minor_gcd_invariants(M):
    """Invariant factors via determinantal divisors: d_k = gcd of k-minors."""
    m, n = len(M), len(M[0])
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                sub = [[M[i][j] for j in cols] for i in rows]
                g = gcd(g, abs(int(linalg.det(sub))))
        divisors.append(g)
        if g == 0:
            break
    factors = []
    for k in range(1, len(divisors)):
        if divisors[k] == 0:
            break
        factors.append(divisors[k] // divisors[k - 1])
    return [f for f in factors if f != 0]


def test_snf_trivial_cases():
    _, D, _ = smith_normal_form([[2]])
    assert D == [[2]]
    _, D, _ = smith_normal_form([[1, 0], [0, 1]])
    assert D == [[1, 0], [0, 1]]


def test_snf_derived_example():
    M = [[2, 4], [6, 8]]
    assert minor_gcd_invariants(M) == [2, 4]  # frozen via the minor oracle
    U, D, V = smith_normal_form(M)
    assert [D[0][0], D[1][1]] == [2, 4]
    assert linalg.mat_mul(linalg.mat_mul(U, M), V) == D


def test_snf_random_matrices_match_oracle():
    rng = random.Random(42)
    for _ in range(120):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        M = [[rng.randint(-10, 10) for _ in range(n)] for _ in range(m)]
        U, D, V = smith_normal_form(M)
        assert linalg.mat_mul(linalg.mat_mul(U, M), V) == D
        assert abs(linalg.det(U)) == 1
        assert abs(linalg.det(V)) == 1
        diag = [D[i][i] for i in range(min(m, n))]
        nonzero = [d for d in diag if d != 0]
        assert diag == nonzero + [0] * (len(diag) - len(nonzero))
        for a, b in zip(nonzero, nonzero[1:]):
            assert b % a == 0
        assert nonzero == minor_gcd_invariants(M)


def test_element_arithmetic_is_abelian_group():
    G = GroupPresentation(2, (2, 4))
    rng = random.Random(3)

    def rand_elem():
        return G.element((rng.randint(-5, 5), rng.randint(-5, 5)),
                         (rng.randint(0, 1), rng.randint(0, 3)))

    for _ in range(50):
        a, b, c = rand_elem(), rand_elem(), rand_elem()
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a + (-a) == G.zero()
        assert 3 * a == a + a + a


def test_presentation_validates_divisor_chain():
    with pytest.raises(ValueError):
        GroupPresentation(1, (3, 2))
    with pytest.raises(ValueError):
        GroupPresentation(1, (1,))
    GroupPresentation(1, (2, 4, 8))


def test_quotient_z_by_two():
    G = GroupPresentation(1)
    Q, proj = quotient_by_element(G, G.element((2,)))
    assert Q.free_rank == 0 and Q.torsion_orders == (2,)
    # kernel is exactly the even integers, on a window
    for n in range(-10, 11):
        img = proj(G.element((n,)))
        assert img.is_zero() == (n % 2 == 0)


def test_quotient_coordinate_projection():
    G = GroupPresentation(2)
    Q, proj = quotient_by_element(G, G.element((1, 0)))
    assert Q.free_rank == 1 and Q.torsion_orders == ()
    for a in range(-4, 5):
        for b in range(-4, 5):
            img = proj(G.element((a, b)))
            assert img.is_zero() == (b == 0)


def test_quotient_mixed_torsion():
    # Z x Z/2 modulo the cyclic subgroup through (1, 1) leaves Z/2
    G = GroupPresentation(1, (2,))
    a = G.element((1,), (1,))
    Q, proj = quotient_by_element(G, a)
    assert Q.free_rank == 0 and Q.torsion_orders == (2,)
    # oracle: the kernel is {(n, n mod 2)}
    for n in range(-6, 7):
        for t in (0, 1):
            e = G.element((n,), (t,))
            assert proj(e).is_zero() == (t == n % 2)


def test_quotient_proj_is_homomorphism():
    G = GroupPresentation(2, (2,))
    a = G.element((1, 2), (1,))
    _, proj = quotient_by_element(G, a)
    rng = random.Random(9)
    for _ in range(40):
        x = G.element((rng.randint(-4, 4), rng.randint(-4, 4)),
                      (rng.randint(0, 1),))
        y = G.element((rng.randint(-4, 4), rng.randint(-4, 4)),
                      (rng.randint(0, 1),))
        assert proj(x + y) == proj(x) + proj(y)


def test_quotient_rejects_finite_order():
    G = GroupPresentation(1, (2,))
    with pytest.raises(FiniteOrderElement):
        quotient_by_element(G, G.element((0,), (1,)))


def test_index_examples():
    G2 = GroupPresentation(2)
    e1, e2 = G2.free_gen(0), G2.free_gen(1)
    # |det| oracle for the full-rank sublattice
    assert abs(int(linalg.det([[1, 1], [0, 2]]))) == 2
    assert index_of_subgroup(G2, [e1, e1 + 2 * e2]) == 2
    G1 = GroupPresentation(1)
    assert index_of_subgroup(G1, [G1.element((1,))]) == 1
    assert index_of_subgroup(G1, []) is None
    # mixed-torsion case from the basis-index convention
    G = GroupPresentation(1, (2,))
    b = G.element((2,), (1,))
    assert index_of_subgroup(G, [b, G.torsion_gen(0)]) == 2


def _coset_sieve(G, gens, window, radius=6):
    """Oracle: identify cosets by bounded-combination membership."""
    span_bound = radius
    members = set()
    for coeffs in product(range(-span_bound, span_bound + 1),
                          repeat=len(gens)):
        acc = G.zero()
        for c, g in zip(coeffs, gens):
            acc = acc + c * g
        members.add(acc)
    labels = {}
    for p in window:
        rep = next((q for q in labels if (p - q) in members), None)
        labels[p] = labels[rep] if rep is not None else len(labels)
    return labels


def test_coset_reps_hit_every_coset_once():
    G2 = GroupPresentation(2)
    e1, e2 = G2.free_gen(0), G2.free_gen(1)
    gens = [e1, e1 + 2 * e2]
    reps = coset_reps(G2, gens)
    assert len(reps) == 2
    window = [G2.element((a, b)) for a in range(-3, 4) for b in range(-3, 4)]
    labels = _coset_sieve(G2, gens, window + reps)
    assert len({labels[r] for r in reps}) == len(reps)
    assert {labels[p] for p in window} == {labels[r] for r in reps}

    G1 = GroupPresentation(1)
    assert len(coset_reps(G1, [G1.element((1,))])) == 1
    reps2 = coset_reps(G1, [G1.element((2,))])
    assert sorted(r.free[0] % 2 for r in reps2) == [0, 1]


def test_coset_reps_infinite_index():
    G2 = GroupPresentation(2)
    with pytest.raises(InfiniteIndex):
        coset_reps(G2, [G2.free_gen(0)])


def test_index_matches_rep_count_randomized():
    rng = random.Random(17)
    for _ in range(25):
        s = rng.randint(1, 2)
        orders = rng.choice([(), (2,), (3,)])
        G = GroupPresentation(s, orders)
        gens = []
        for _ in range(rng.randint(1, 3)):
            gens.append(G.element(
                tuple(rng.randint(-3, 3) for _ in range(s)),
                tuple(rng.randint(0, d - 1) for d in orders)))
        idx = index_of_subgroup(G, gens)
        if idx is None:
            with pytest.raises(InfiniteIndex):
                coset_reps(G, gens)
            continue
        reps = coset_reps(G, gens)
        assert len(reps) == idx
        # pairwise distinct modulo the subgroup
        for i, r1 in enumerate(reps):
            for r2 in reps[i + 1:]:
                assert not in_subgroup(G, gens, r1 - r2)
