"""Counting functions: exact values, oracle equivalence and big-cell fits."""

import random
from itertools import product

import pytest

from dmspace.abelian import GroupPresentation
from dmspace.chars import CharacterList, big_cells
from dmspace.dm import is_member_dm
from dmspace.errors import TorsionPresent, UnpointedCone
from dmspace.partition import partition_count, cell_quasipoly, _deep_points
from dmspace.series import heaviside, nabla_value
from dmspace.windows import Window, snug_window


def G(s):
    return GroupPresentation(s)


def brute_partitions(elems, target, bound=12):
    hits = 0
    for ms in product(range(bound + 1), repeat=len(elems)):
        acc = target.group.zero()
        for m, e in zip(ms, elems):
            acc = acc + m * e
        if acc == target:
            hits += 1
    return hits


def test_count_examples():
    g = G(1)
    one = g.element((1,))
    X = CharacterList(g, (one, one))
    assert partition_count(X, g.element((3,))) == 4
    assert partition_count(X, g.element((0,))) == 1
    assert partition_count(X, g.element((-2,))) == 0
    g2 = G(2)
    e1, e2 = g2.free_gen(0), g2.free_gen(1)
    X2 = CharacterList(g2, (e1, e2, e1 + e2))
    assert partition_count(X2, g2.element((2, 1))) == 2 == \
        brute_partitions([e1, e2, e1 + e2], g2.element((2, 1)))


def test_count_guards():
    gm = GroupPresentation(1, (2,))
    with pytest.raises(TorsionPresent):
        partition_count(CharacterList(gm, (gm.element((1,), (0,)),)),
                        gm.element((1,), (0,)))
    g = G(1)
    with pytest.raises(UnpointedCone):
        partition_count(CharacterList(g, (g.element((1,)), g.element((-1,)))),
                        g.element((0,)))


def test_count_equals_heaviside_randomized():
    rng = random.Random(6)
    for _ in range(6):
        s = rng.choice([1, 2])
        g = G(s)
        elems = []
        for _ in range(rng.randint(1, 4)):
            v = tuple(abs(rng.randint(-2, 2)) for _ in range(s))
            if any(v):
                elems.append(g.element(v))
        if not elems:
            continue
        X = CharacterList(g, tuple(elems))
        H = heaviside(g, list(X.elements))
        for _ in range(60):
            lam = g.element(tuple(rng.randint(-4, 7) for _ in range(s)))
            assert partition_count(X, lam) == H.value(lam)


def test_difference_of_counting_function_is_delta():
    g2 = G(2)
    e1, e2 = g2.free_gen(0), g2.free_gen(1)
    X = CharacterList(g2, (e1, e2, e1 + e2))
    H = heaviside(g2, list(X.elements))
    for p in Window(g2, 3).points():
        assert nabla_value(H, list(X.elements), p) == \
            (1 if p.is_zero() else 0)


def test_deletion_identity_on_counts():
    g = G(1)
    X = CharacterList(g, (g.element((1,)), g.element((2,))))
    H = heaviside(g, list(X.elements))
    for idx, a in enumerate(X.elements):
        Z = X.without_index(idx)
        HZ = heaviside(g, list(Z.elements))
        for n in range(-4, 10):
            p = g.element((n,))
            assert nabla_value(H, [a], p) == HZ.value(p)


def test_cell_quasipoly_interval():
    g = G(1)
    one = g.element((1,))
    X = CharacterList(g, (one, one))
    (cell,) = big_cells(X)
    q = cell_quasipoly(X, cell)
    for n in range(0, 10):
        assert q.value(g.element((n,))) == n + 1


def test_cell_quasipoly_triangle_cells():
    g2 = G(2)
    e1, e2 = g2.free_gen(0), g2.free_gen(1)
    X = CharacterList(g2, (e1, e2, e1 + e2))
    cells = big_cells(X)
    assert len(cells) == 2
    w = Window(g2, 6)
    for cell in cells:
        q = cell_quasipoly(X, cell, window=w)
        assert is_member_dm(q.func, X, w).ok
        # inside its own cell the fit equals the count: min + 1 here
        for lam in _deep_points(X, cell, 4):
            assert q.value(g2.element(lam)) == min(lam) + 1


def test_cell_quasipoly_unique_quadrant():
    g2 = G(2)
    e1, e2 = g2.free_gen(0), g2.free_gen(1)
    X = CharacterList(g2, (e1, e2))
    (cell,) = big_cells(X)
    q = cell_quasipoly(X, cell, window=Window(g2, 4))
    for a in range(0, 4):
        for b in range(0, 4):
            assert q.value(g2.element((a, b))) == 1


def test_cell_quasipoly_matches_counts_on_holdout():
    rng = random.Random(44)
    g2 = G(2)
    done = 0
    while done < 3:
        elems = []
        for _ in range(rng.randint(2, 4)):
            v = (rng.randint(0, 2), rng.randint(0, 2))
            if any(v):
                elems.append(g2.element(v))
        X = CharacterList(g2, tuple(elems))
        if not X.spans():
            continue
        w = snug_window(X, 2)
        for cell in big_cells(X):
            q = cell_quasipoly(X, cell, window=w)
            for lam in q.provenance["holdout_points"]:
                assert q.value(g2.element(lam)) == \
                    partition_count(X, g2.element(lam))
        done += 1
