"""Layering heuristics.

A layer holds at most one group per input.  Since a layer never puts two
groups of the same input together, its edges can be colored output by
output with ``thickness`` colors, where thickness is the largest number of
layer edges meeting at one output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .core import INPUT, OUTPUT, Coloring, ContractError, GroupGraph


@dataclass
class Layer:
    members: list[int] = field(default_factory=list)  # group ids, one per input
    thickness: int = 0


def thickness(g: GroupGraph, gids) -> int:
    load: dict[int, int] = {}
    for gid in gids:
        for e in g.groups[gid].edges:
            v = g.edges[e][1]
            load[v] = load.get(v, 0) + 1
    return max(load.values(), default=0)


def basic_layers(g: GroupGraph) -> list[Layer]:
    """Phase p takes the p-th declared group of every input that has one."""
    layers = []
    for p in range(g.D_i):
        gids = [g.in_groups[u][p] for u in range(g.n_i) if p < len(g.in_groups[u])]
        layers.append(Layer(gids, thickness(g, gids)))
    return layers


def thin_layers(g: GroupGraph) -> Iterator[Layer]:
    """Layers built input by input, each time adding the group that keeps
    the thickness lowest (ties go to the lower group id)."""
    remaining = [list(gs) for gs in g.in_groups]
    while any(remaining):
        load: dict[int, int] = {}
        layer = Layer()
        for u in range(g.n_i):
            if not remaining[u]:
                continue
            best, best_t = None, None
            for gid in remaining[u]:
                t = layer.thickness
                for e in g.groups[gid].edges:
                    t = max(t, load.get(g.edges[e][1], 0) + 1)
                if best_t is None or t < best_t:
                    best, best_t = gid, t
            remaining[u].remove(best)
            for e in g.groups[best].edges:
                v = g.edges[e][1]
                load[v] = load.get(v, 0) + 1
            layer.members.append(best)
            layer.thickness = best_t
        yield layer


def _color_fresh_block(g: GroupGraph, col: Coloring, layer: Layer) -> None:
    # smallest block color still free at each output
    first = col.allocated + 1
    for _ in range(layer.thickness):
        col.new_color()
    for gid in layer.members:
        for e in g.groups[gid].edges:
            v = g.edges[e][1]
            c = first
            while col.edge_at_output(v, c) is not None:
                c += 1
            col.assign(e, c)


def color_basic(g: GroupGraph) -> Coloring:
    col = Coloring(g)
    for layer in basic_layers(g):
        _color_fresh_block(g, col, layer)
    return col


def color_thin(g: GroupGraph) -> Coloring:
    col = Coloring(g)
    for layer in thin_layers(g):
        _color_fresh_block(g, col, layer)
    return col


def _group_colors(g: GroupGraph, col: Coloring, e: int) -> list[int]:
    u, _ = g.edges[e]
    gid = g.edge_group[e]
    return sorted(c for c in col.colors_at_input(u) if gid in col.groups_using(u, c))


def _reuse_color(g: GroupGraph, col: Coloring, e: int) -> Optional[int]:
    """Cases 1 and 2: a viable color of e's own group, else any viable
    previously used color.  Smallest index wins in both."""
    for c in _group_colors(g, col, e):
        if col.viable(e, c):
            return c
    for c in range(1, col.allocated + 1):
        if col.viable(e, c):
            return c
    return None


def color_mincolor(g: GroupGraph) -> Coloring:
    """Thin layers, but each edge reuses an old color whenever one is viable."""
    col = Coloring(g)
    for layer in thin_layers(g):
        for gid in layer.members:
            for e in g.groups[gid].edges:
                c = _reuse_color(g, col, e)
                col.assign(e, c if c is not None else col.new_color())
    return col


@dataclass
class AugPath:
    i: int
    j: int
    vertices: list[tuple[str, int]]
    edges: list[int]

    def __len__(self) -> int:
        return len(self.edges)


def _other_end(g: GroupGraph, e: int, side: str) -> tuple[str, int]:
    u, v = g.edges[e]
    return (OUTPUT, v) if side == INPUT else (INPUT, u)


def _edges_with(g: GroupGraph, col: Coloring, x: tuple[str, int], c: int) -> list[int]:
    side, idx = x
    if side == OUTPUT:
        e = col.edge_at_output(idx, c)
        return [] if e is None else [e]
    return [e for e in g.in_edges[idx] if col.color[e] == c]


def find_aug_path(g: GroupGraph, col: Coloring, e: int, i: int, j: int) -> Optional[AugPath]:
    """Walk the i/j alternating path from e's output.

    Requires i viable for e at its input, j viable at its output, and
    neither viable at both.  Every intermediate vertex must see exactly the
    two path edges in colors i and j, from different groups; the walk stops
    at a vertex where the i/j edges all belong to one group (or only one of
    the colors is present).  Anything else, a repeated vertex, or reaching
    e's own input, means there is no path.
    """
    if col.color[e]:
        raise ContractError(f"edge {e} is already colored")
    if i == j:
        raise ContractError("path colors must differ")
    if not col.viable_at_input(e, i) or not col.viable_at_output(e, j):
        raise ContractError(f"need {i} viable at the input and {j} viable at the output")
    if col.viable(e, i) or col.viable(e, j):
        raise ContractError(f"{i} or {j} is already viable for edge {e}")

    u, v = g.edges[e]
    start = (OUTPUT, v)
    first = col.edge_at_output(v, i)
    vertices = [start]
    edges = [first]
    visited = {start, (INPUT, u)}
    prev = first
    x = _other_end(g, first, OUTPUT)
    while True:
        if x in visited:
            return None
        visited.add(x)
        vertices.append(x)
        pc = col.color[prev]
        nc = j if pc == i else i
        same = [f for f in _edges_with(g, col, x, pc) if f != prev]
        nxt = _edges_with(g, col, x, nc)
        if not nxt:
            return AugPath(i, j, vertices, edges)
        if not same and len(nxt) == 1 and g.edge_group[nxt[0]] != g.edge_group[prev]:
            prev = nxt[0]
            edges.append(prev)
            x = _other_end(g, prev, x[0])
            continue
        gids = {g.edge_group[f] for f in [prev, *same, *nxt]}
        if len(gids) == 1:
            return AugPath(i, j, vertices, edges)
        return None


def reverse_path(col: Coloring, path: AugPath) -> None:
    """Swap colors i and j along the path."""
    swap = {path.i: path.j, path.j: path.i}
    old = [col.color[f] for f in path.edges]
    for f in path.edges:
        col.unassign(f)
    for f, c in zip(path.edges, old):
        col.assign(f, swap[c])


def _recolor_case(g: GroupGraph, col: Coloring, e: int) -> Optional[int]:
    u, v = g.edges[e]
    used_at_v = set(col.colors_at_output(v))
    free_at_v = [c for c in range(1, col.allocated + 1) if c not in used_at_v]
    own = _group_colors(g, col, e)
    free_at_u = [c for c in range(1, col.allocated + 1) if not col.groups_using(u, c)]
    for candidates in (own, free_at_u):
        for i in candidates:
            for j in free_at_v:
                if j == i:
                    continue
                path = find_aug_path(g, col, e, i, j)
                if path is None:
                    continue
                reverse_path(col, path)
                if col.viable(e, i):
                    return i
                reverse_path(col, path)
    return None


def color_recolor(g: GroupGraph) -> Coloring:
    """Min color with augmenting-path recoloring before any new color.

    When no old color is viable for e = (u, v), look for an i/j path from v,
    first with i taken from e's own group, then with i unused at u; colors
    are scanned in increasing (i, j) order.  Reversing the path frees i at v.
    """
    col = Coloring(g)
    for layer in thin_layers(g):
        for gid in layer.members:
            for e in g.groups[gid].edges:
                c = _reuse_color(g, col, e)
                if c is None:
                    c = _recolor_case(g, col, e)
                col.assign(e, c if c is not None else col.new_color())
    return col
