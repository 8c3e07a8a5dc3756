"""Menu methods.

Every group gets a menu of colors, with menus at one input kept pairwise
disjoint.  The edges at an output are then colored by a matching between
their groups and the colors on those groups' menus (the menu graph of the
output).  When every menu graph has a complete matching the result is a
valid coloring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Optional, Sequence

import numpy as np

from .core import Coloring, ContractError, GraphError, GroupGraph

DEFAULT_ATTEMPTS = 20


class IncompleteMatching(Exception):
    """Some output's menu graph has no complete matching."""

    def __init__(self, output: int, matched: int, needed: int):
        super().__init__(f"output {output}: matched {matched} of {needed} edges")
        self.output = output


@dataclass
class MenuAssignment:
    menus: list[set[int]]  # indexed by group id
    palette: int

    def check_disjoint(self, g: GroupGraph) -> None:
        for u in range(g.n_i):
            seen: dict[int, int] = {}
            for gid in g.in_groups[u]:
                for c in self.menus[gid]:
                    if c in seen:
                        raise ContractError(
                            f"color {c} is on the menus of groups {seen[c]} and {gid} "
                            f"at input {g.input_names[u]}")
                    seen[c] = gid

    def dump(self) -> str:
        return "".join(f"{gid}: [{','.join(map(str, sorted(m)))}]\n"
                       for gid, m in enumerate(self.menus))


def augment(adj: Mapping[Hashable, Sequence[int]], match: dict, owner: dict,
            node: Hashable) -> bool:
    """Try to match ``node`` along an augmenting path (Kuhn's DFS).

    ``match`` maps nodes to colors and ``owner`` colors to nodes; both are
    updated in place.  Nodes that were matched stay matched.
    """
    seen: set[int] = set()

    def dfs(x) -> bool:
        for c in adj[x]:
            if c in seen:
                continue
            seen.add(c)
            y = owner.get(c)
            if y is None or dfs(y):
                match[x] = c
                owner[c] = x
                return True
        return False

    return dfs(node)


def max_matching(adj: Mapping[Hashable, Sequence[int]]) -> dict:
    """Maximum matching of a bipartite graph given as node -> colors.

    Nodes are tried in mapping order and colors in the listed order, so the
    result is deterministic.
    """
    match: dict = {}
    owner: dict = {}
    for x in adj:
        augment(adj, match, owner, x)
    return match


def menu_graph(g: GroupGraph, menus: Sequence[Iterable[int]], v: int) -> dict[int, list[int]]:
    """Menu graph of output ``v``: each incident edge (standing for its
    group) linked to the colors on its group's menu."""
    return {e: sorted(menus[g.edge_group[e]]) for e in g.out_edges[v]}


def color_from_menus(g: GroupGraph, m: MenuAssignment) -> Coloring:
    """Color every output from a complete matching of its menu graph.

    Raises :class:`IncompleteMatching` naming the first output that has no
    complete matching.
    """
    m.check_disjoint(g)
    assignment = [0] * g.m
    for v in range(g.n_o):
        adj = menu_graph(g, m.menus, v)
        match = max_matching(adj)
        if len(match) < len(adj):
            raise IncompleteMatching(v, len(match), len(adj))
        for e, c in match.items():
            assignment[e] = c
    return Coloring.from_assignment(g, assignment)


def menu_k(Delta_o: int, n_o: int) -> int:
    """Smallest k with k >= 2 * sqrt(ln x / ln ln x), x = 2 * Delta_o * n_o."""
    if Delta_o < 1 or n_o < 1:
        raise GraphError("Delta_o and n_o must be positive")
    x = 2 * Delta_o * n_o
    if x <= math.e:
        raise GraphError(f"ln ln(2*Delta_o*n_o) is not positive for Delta_o={Delta_o}, n_o={n_o}")
    bound = 2 * math.sqrt(math.log(x) / math.log(math.log(x)))
    return math.ceil(bound - 1e-12)


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def groups_by_size(g: GroupGraph, gids: Iterable[int]) -> list[int]:
    return sorted(gids, key=lambda gid: (-len(g.groups[gid]), gid))


def palette_size(g: GroupGraph, k: int) -> int:
    return k * max(g.D_i, g.Delta_o)


def random_menus(g: GroupGraph, palette: int, rng) -> MenuAssignment:
    """Deal a random permutation of 1..palette round-robin to each input's
    groups, largest group first, so sizes differ by at most one."""
    rng = _rng(rng)
    menus: list[set[int]] = [set() for _ in g.groups]
    for u in range(g.n_i):
        order = groups_by_size(g, g.in_groups[u])
        if not order:
            continue
        perm = (rng.permutation(palette) + 1).tolist()
        for r, c in enumerate(perm):
            menus[order[r % len(order)]].add(c)
    return MenuAssignment(menus, palette)


def random_menu_attempt(g: GroupGraph, palette: int, rng) -> Optional[Coloring]:
    """One draw of random menus; the coloring if every matching is complete."""
    return _attempt(g, palette, rng)[0]


def _attempt(g: GroupGraph, palette: int, rng) -> tuple[Optional[Coloring], MenuAssignment]:
    m = random_menus(g, palette, rng)
    try:
        return color_from_menus(g, m), m
    except IncompleteMatching:
        return None, m


@dataclass
class RandomMenuRun:
    coloring: Coloring
    palette: int
    attempts: int
    menus: Optional[MenuAssignment] = None


GROW_COLOR = "color"
GROW_K = "k"


def run_random_menu(g: GroupGraph, k: int = 2, max_attempts: int = DEFAULT_ATTEMPTS,
                    seed=0, grow: str = GROW_COLOR) -> RandomMenuRun:
    """Redraw random menus until every menu graph matches completely.

    The palette starts at k * max(D_i, Delta_o).  After ``max_attempts``
    failures it grows by one color (``grow="color"``) or by another
    max(D_i, Delta_o) colors (``grow="k"``).  Once every menu holds
    Delta_o colors matching cannot fail, so the loop ends.
    """
    if k < 1 or max_attempts < 1:
        raise ValueError("k and max_attempts must be positive")
    if grow not in (GROW_COLOR, GROW_K):
        raise ValueError(f"grow must be {GROW_COLOR!r} or {GROW_K!r}")
    rng = _rng(seed)
    palette = palette_size(g, k)
    step = 1 if grow == GROW_COLOR else max(g.D_i, g.Delta_o, 1)
    total = 0
    if g.m == 0:
        return RandomMenuRun(Coloring(g), palette, 0)
    while True:
        for _ in range(max_attempts):
            total += 1
            col, menus = _attempt(g, palette, rng)
            if col is not None:
                return RandomMenuRun(col.compacted(), palette, total, menus)
        palette += step


def color_random_menu(g: GroupGraph, k: int = 2, max_attempts: int = DEFAULT_ATTEMPTS,
                      seed=0, grow: str = GROW_COLOR) -> Coloring:
    return run_random_menu(g, k, max_attempts, seed, grow).coloring


class GreedyMenuState:
    """Menus plus a maximum matching for every menu graph.

    Matchings are only ever grown by augmenting paths, so a matched group
    node never becomes unmatched when another group's menu changes.
    """

    def __init__(self, g: GroupGraph):
        self.g = g
        self.menus: list[set[int]] = [set() for _ in g.groups]
        self._sorted: dict[int, list[int]] = {gid: [] for gid in range(len(g.groups))}
        self.owner_at_input: list[dict[int, int]] = [{} for _ in range(g.n_i)]
        self.match: list[dict[int, int]] = [{} for _ in range(g.n_o)]  # edge -> color
        self.holder: list[dict[int, int]] = [{} for _ in range(g.n_o)]  # color -> edge
        self.allocated = max(g.D_i, g.Delta_o)

    def eligible(self) -> int:
        return self.allocated

    def _adj(self, v: int) -> dict[int, list[int]]:
        return {e: self._sorted[self.g.edge_group[e]] for e in self.g.out_edges[v]}

    def deficit(self, gid: int) -> int:
        return sum(1 for e in self.g.groups[gid].edges
                   if e not in self.match[self.g.edges[e][1]])

    def gain(self, gid: int, c: int) -> int:
        n = 0
        for e in self.g.groups[gid].edges:
            v = self.g.edges[e][1]
            if e not in self.match[v] and c not in self.holder[v]:
                n += 1
        return n

    def _rematch(self, v: int) -> None:
        adj = self._adj(v)
        for e in self.g.out_edges[v]:
            if e not in self.match[v] and adj[e]:
                augment(adj, self.match[v], self.holder[v], e)

    def add_color(self, gid: int, c: int) -> None:
        u = self.g.groups[gid].input
        if self.owner_at_input[u].get(c, gid) != gid:
            raise ContractError(f"color {c} already on another menu at input {u}")
        self.menus[gid].add(c)
        self._sorted[gid] = sorted(self.menus[gid])
        self.owner_at_input[u][c] = gid
        for e in self.g.groups[gid].edges:
            self._rematch(self.g.edges[e][1])

    def replace_with_fresh(self, gid: int) -> int:
        """Empty the menu of ``gid`` and give it a single new color."""
        grp = self.g.groups[gid]
        for c in self.menus[gid]:
            del self.owner_at_input[grp.input][c]
        self.allocated += 1
        fresh = self.allocated
        self.menus[gid] = {fresh}
        self._sorted[gid] = [fresh]
        self.owner_at_input[grp.input][fresh] = gid
        for e in grp.edges:
            v = self.g.edges[e][1]
            old = self.match[v].pop(e, None)
            if old is not None:
                del self.holder[v][old]
            self.match[v][e] = fresh
            self.holder[v][fresh] = e
        for e in grp.edges:
            self._rematch(self.g.edges[e][1])
        return fresh

    def assignment(self) -> MenuAssignment:
        return MenuAssignment([set(m) for m in self.menus], self.allocated)

    def coloring(self) -> Coloring:
        assignment = [0] * self.g.m
        for v in range(self.g.n_o):
            for e, c in self.match[v].items():
                assignment[e] = c
        return Coloring.from_assignment(self.g, assignment)


def greedy_menu_state(g: GroupGraph) -> GreedyMenuState:
    """Run the greedy menu method and return its final state.

    Groups are handled largest first.  A group at input u adds the
    eligible color of largest gain (ties: lowest index) while it still has
    a deficit, its menu is below ceil(eligible / d(u)) colors, and some
    color has positive gain.  A group still short after that drops its
    menu for one new color.
    """
    st = GreedyMenuState(g)
    for gid in groups_by_size(g, range(len(g.groups))):
        u = g.groups[gid].input
        k_g = math.ceil(st.eligible() / len(g.in_groups[u]))
        owners = st.owner_at_input[u]
        while st.deficit(gid) and len(st.menus[gid]) < k_g:
            best, best_gain = 0, 0
            for c in range(1, st.eligible() + 1):
                if c in owners:
                    continue
                n = st.gain(gid, c)
                if n > best_gain:
                    best, best_gain = c, n
            if not best_gain:
                break
            st.add_color(gid, best)
        if st.deficit(gid):
            st.replace_with_fresh(gid)
    return st


def color_greedy_menu(g: GroupGraph) -> Coloring:
    st = greedy_menu_state(g)
    leftover = [gid for gid in range(len(g.groups)) if st.deficit(gid)]
    if leftover:
        raise AssertionError(f"groups {leftover} still have a deficit")
    return st.coloring().compacted()
