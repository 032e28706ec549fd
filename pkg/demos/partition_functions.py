#!/usr/bin/env python3
"""Vector partition functions and their chamber quasi-polynomials.

Counts for the planar list [e1, e2, e1+e2] and the piecewise solution
attached to each big cell of the cone.
"""

from dmspace import (CharacterList, GroupPresentation, Window, big_cells,
                     cell_quasipoly, heaviside, partition_count)

G = GroupPresentation(2)
e1, e2 = G.element((1, 0)), G.element((0, 1))
X = CharacterList(G, (e1, e2, e1 + e2))

print("counts on the diagonal band:")
for lam in [(0, 0), (1, 0), (2, 1), (3, 1), (3, 3), (5, 2)]:
    print(f"  count{lam} =", partition_count(X, G.element(lam)))

# the counting function and the Heaviside convolution are two independent
# evaluators of the same function
H = heaviside(G, list(X.elements))
assert all(partition_count(X, G.element((a, b))) == H.value(G.element((a, b)))
           for a in range(-1, 6) for b in range(-1, 6))
print("counting agrees with the convolution evaluator on a window")

cells = big_cells(X)
print(f"{len(cells)} big cells inside the cone")
w = Window(G, 6)
for i, cell in enumerate(cells):
    q = cell_quasipoly(X, cell, window=w)
    ip = tuple(str(x) for x in cell.interior_point)
    print(f"  cell {i}: interior point {ip}, "
          f"coefficients over the basis {q.provenance['coefficients']}")
    deep = q.provenance["holdout_points"]
    print(f"    held-out checks at {list(deep)[:3]}: ",
          [q.value(G.element(lam)) for lam in list(deep)[:3]])

# on the cell where the first coordinate dominates the count is lam2 + 1
cell = cells[1]
for lam in [(4, 2), (5, 1), (6, 3)]:
    assert partition_count(X, G.element(lam)) == lam[1] + 1
print("counts on the dominant cell equal the second coordinate plus one")
