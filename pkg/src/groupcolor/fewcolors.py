"""Few colors method: color each group as a greedy set cover over colors.

For a group at input u, every color not held by another group at u
defines a subset of the group's edges, namely those whose output does not
yet use that color.  Greedy cover picks the color covering the most
uncolored edges.  A group that cannot be covered within its budget is
rolled back and given one brand-new color.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .core import Coloring, GroupGraph

ADAPTIVE = "adaptive"


@dataclass
class SetCoverInstance:
    base: frozenset
    subsets: Sequence[frozenset]

    @property
    def t(self) -> int:
        return len(self.base)

    @property
    def p(self) -> int:
        return len(self.subsets)

    @property
    def q(self) -> int:
        """Largest number of subsets missing any one element."""
        if not self.base:
            return 0
        return max(sum(1 for s in self.subsets if a not in s) for a in self.base)


@dataclass
class CoverResult:
    chosen: list[int]
    uncovered: set

    @property
    def complete(self) -> bool:
        return not self.uncovered


def greedy_set_cover(inst: SetCoverInstance, limit: Optional[int] = None) -> CoverResult:
    """Repeatedly take the subset covering the most uncovered elements.

    Ties go to the lower subset index.  Stops when everything is covered,
    when no subset adds anything, or after ``limit`` picks.
    """
    left = set(inst.base)
    chosen: list[int] = []
    while left and (limit is None or len(chosen) < limit):
        best, gain = -1, 0
        for idx, s in enumerate(inst.subsets):
            n = len(left & s)
            if n > gain:
                best, gain = idx, n
        if best < 0:
            break
        chosen.append(best)
        left -= inst.subsets[best]
    return CoverResult(chosen, left)


def cover_hypothesis(p: int, q: int, t: int, k: int) -> bool:
    """Hypothesis of the greedy cover bound: p > q * t**(1/k)."""
    return p > q * t ** (1.0 / k)


def eligible_colors(col: Coloring, g: GroupGraph) -> range:
    """Colors numbered up to max(D_i, Delta_o) plus every color used so far.

    Colors are handed out densely, so the union is always a prefix.
    """
    return range(1, max(g.D_i, g.Delta_o, col.allocated) + 1)


def fewcolors_bound(D_i: int, Delta_o: int, n_o: int, k: int) -> float:
    """Worst-case color count of the few colors method with fixed k."""
    return (D_i - 1) * k + (Delta_o - 1) * n_o ** (1.0 / k) + 1


def best_k(D_i: int, Delta_o: int, n_o: int) -> int:
    """k in 1..ceil(log2 n_o)+2 minimizing :func:`fewcolors_bound`."""
    top = math.ceil(math.log2(max(n_o, 2))) + 2
    return min(range(1, top + 1), key=lambda k: (fewcolors_bound(D_i, Delta_o, n_o, k), k))


def group_order(g: GroupGraph, order: str = "size") -> list[int]:
    if order == "size":
        return sorted(range(len(g.groups)), key=lambda gid: (-len(g.groups[gid]), gid))
    if order == "declared":
        return list(range(len(g.groups)))
    raise ValueError(f"unknown group order {order!r}")


def _cover_group(g: GroupGraph, col: Coloring, gid: int, budget: int) -> bool:
    grp = g.groups[gid]
    u = grp.input
    colors = [c for c in eligible_colors(col, g) if not col.groups_using(u, c)]
    subsets = [frozenset(e for e in grp.edges if col.viable_at_output(e, c)) for c in colors]
    result = greedy_set_cover(SetCoverInstance(frozenset(grp.edges), subsets), limit=budget)
    if not result.complete:
        return False
    for idx in result.chosen:
        c = colors[idx]
        for e in subsets[idx]:
            if not col.color[e]:
                col.assign(e, c)
    return True


def color_fewcolors(g: GroupGraph, k: Union[int, str] = ADAPTIVE,
                    order: str = "size") -> Coloring:
    """Color whole groups at a time using at most k colors each.

    ``k`` is a fixed per-group budget or ``"adaptive"``, in which case a
    group at input u may use ceil(eligible / d(u)) colors, evaluated when
    the group is reached.  Groups go largest first unless ``order`` is
    ``"declared"``.
    """
    if k != ADAPTIVE and (not isinstance(k, int) or k < 1):
        raise ValueError(f"k must be a positive integer or {ADAPTIVE!r}")
    col = Coloring(g)
    for gid in group_order(g, order):
        grp = g.groups[gid]
        if k == ADAPTIVE:
            budget = math.ceil(len(eligible_colors(col, g)) / len(g.in_groups[grp.input]))
        else:
            budget = k
        if not _cover_group(g, col, gid, budget):
            fresh = col.new_color()
            for e in grp.edges:
                col.assign(e, fresh)
    return col
