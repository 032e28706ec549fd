"""Finite verification windows.

A window is the box of group elements whose free coordinates have max-norm
at most `radius`, crossed with the full torsion subgroup.  All window-based
checks in the library quantify over these point sets.
"""

from dataclasses import dataclass
from itertools import product


@dataclass(frozen=True)
class Window:
    group: object
    radius: int

    def points(self):
        g = self.group
        r = self.radius
        tors = g.torsion_elements()
        pts = []
        for free in product(range(-r, r + 1), repeat=g.free_rank):
            for t in tors:
                pts.append(g.element(free, t.torsion))
        return pts

    def __len__(self):
        return (2 * self.radius + 1) ** self.group.free_rank * self.group.torsion_size

    def contains(self, elem):
        return all(abs(x) <= self.radius for x in elem.free)

    def shrink(self, k):
        return Window(self.group, max(self.radius - k, 0))

    def widen(self, k):
        return Window(self.group, self.radius + k)


def default_window(X):
    """Box of max-norm radius (sum of one-norms of the images) + 2."""
    radius = sum(sum(abs(c) for c in a.bar) for a in X.elements) + 2
    return Window(X.group, radius)


def snug_window(X, margin=2):
    """Smallest per-coordinate box that still fits every stencil and the
    zonotope initial-value sets, plus a margin."""
    s = X.group.free_rank
    if s == 0:
        return Window(X.group, 0)
    radius = max(sum(abs(a.bar[j]) for a in X.elements) for j in range(s))
    return Window(X.group, radius + margin)
