"""Group graphs, colorings, validity checks and the exact oracle.

A group graph is bipartite: edges run from inputs to outputs and the edges
at each input are partitioned into groups.  Two edges that share an endpoint
must get different colors unless they belong to the same group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

INPUT = "in"
OUTPUT = "out"

DEFAULT_EXACT_CAP = 24


class GraphError(ValueError):
    """Malformed group graph or unknown vertex."""


class ContractError(RuntimeError):
    """An operation was called with its precondition violated."""


class InstanceTooLarge(ValueError):
    """The exact solver refuses instances above its edge cap."""


@dataclass(frozen=True)
class Group:
    gid: int
    input: int
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


class GroupGraph:
    """Immutable bipartite group graph.

    Edge ids are dense and assigned in group declaration order; within a
    group the edges are sorted by output id, so iterating a group's edges
    visits its outputs in ascending order.
    """

    def __init__(
        self,
        n_i: int,
        n_o: int,
        groups: Sequence[tuple[int, Iterable[int]]],
        input_names: Optional[Sequence[str]] = None,
        output_names: Optional[Sequence[str]] = None,
        allow_parallel: bool = False,
    ):
        if n_i < 0 or n_o < 0:
            raise GraphError("vertex counts must be non-negative")
        self.n_i = n_i
        self.n_o = n_o
        self.input_names = tuple(input_names) if input_names is not None else tuple(
            f"i{u}" for u in range(n_i))
        self.output_names = tuple(output_names) if output_names is not None else tuple(
            f"o{v}" for v in range(n_o))
        if len(self.input_names) != n_i or len(self.output_names) != n_o:
            raise GraphError("name lists do not match vertex counts")
        self.allow_parallel = allow_parallel

        edges: list[tuple[int, int]] = []
        edge_group: list[int] = []
        built: list[Group] = []
        seen: set[tuple[int, int]] = set()
        for gid, (u, outs) in enumerate(groups):
            outs = sorted(outs)
            if not 0 <= u < n_i:
                raise GraphError(f"group {gid}: input {u} out of range")
            if not outs:
                raise GraphError(f"group {gid}: empty group")
            if len(set(outs)) != len(outs):
                raise GraphError(f"group {gid}: output repeated within a group")
            ids = []
            for v in outs:
                if not 0 <= v < n_o:
                    raise GraphError(f"group {gid}: output {v} out of range")
                if (u, v) in seen and not allow_parallel:
                    raise GraphError(
                        f"duplicate edge ({self.input_names[u]},{self.output_names[v]})")
                seen.add((u, v))
                ids.append(len(edges))
                edges.append((u, v))
                edge_group.append(gid)
            built.append(Group(gid, u, tuple(ids)))

        self.edges: tuple[tuple[int, int], ...] = tuple(edges)
        self.edge_group: tuple[int, ...] = tuple(edge_group)
        self.groups: tuple[Group, ...] = tuple(built)

        in_edges: list[list[int]] = [[] for _ in range(n_i)]
        out_edges: list[list[int]] = [[] for _ in range(n_o)]
        in_groups: list[list[int]] = [[] for _ in range(n_i)]
        for e, (u, v) in enumerate(edges):
            in_edges[u].append(e)
            out_edges[v].append(e)
        for grp in built:
            in_groups[grp.input].append(grp.gid)
        self.in_edges = tuple(tuple(x) for x in in_edges)
        self.out_edges = tuple(tuple(x) for x in out_edges)
        self.in_groups = tuple(tuple(x) for x in in_groups)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def Delta_o(self) -> int:
        return max((len(x) for x in self.out_edges), default=0)

    @property
    def Delta_i(self) -> int:
        return max((len(x) for x in self.in_edges), default=0)

    @property
    def D_i(self) -> int:
        return max((len(x) for x in self.in_groups), default=0)

    @property
    def D(self) -> int:
        return max(self.D_i, self.Delta_o)

    def group_of(self, e: int) -> Group:
        return self.groups[self.edge_group[e]]

    def input_index(self, name: str) -> int:
        try:
            return self.input_names.index(name)
        except ValueError:
            raise GraphError(f"unknown input {name!r}") from None

    def output_index(self, name: str) -> int:
        try:
            return self.output_names.index(name)
        except ValueError:
            raise GraphError(f"unknown output {name!r}") from None

    def __repr__(self) -> str:
        return (f"GroupGraph(n_i={self.n_i}, n_o={self.n_o}, m={self.m}, "
                f"groups={len(self.groups)})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupGraph):
            return NotImplemented
        return (self.n_i, self.n_o, self.edges, self.edge_group,
                self.input_names, self.output_names) == (
            other.n_i, other.n_o, other.edges, other.edge_group,
            other.input_names, other.output_names)

    __hash__ = None  # type: ignore[assignment]


def _check_vertex(g: GroupGraph, vertex: tuple[str, int]) -> None:
    side, idx = vertex
    if side == INPUT:
        ok = 0 <= idx < g.n_i
    elif side == OUTPUT:
        ok = 0 <= idx < g.n_o
    else:
        ok = False
    if not ok:
        raise GraphError(f"unknown vertex {vertex!r}")


def degree(g: GroupGraph, vertex: tuple[str, int]) -> int:
    _check_vertex(g, vertex)
    side, idx = vertex
    return len(g.in_edges[idx] if side == INPUT else g.out_edges[idx])


def group_count(g: GroupGraph, vertex: tuple[str, int]) -> int:
    """Number of distinct groups with an edge at ``vertex``.

    ``vertex`` is ``(INPUT, u)`` or ``(OUTPUT, v)``.  For an output this is
    its degree, since every edge at an output comes from a different group.
    """
    _check_vertex(g, vertex)
    side, idx = vertex
    if side == INPUT:
        return len(g.in_groups[idx])
    return len({g.edge_group[e] for e in g.out_edges[idx]})


class Coloring:
    """Partial edge coloring of a group graph.

    Keeps per-vertex indexes so viability tests are O(1).  Colors are
    positive integers; 0 means uncolored.
    """

    def __init__(self, g: GroupGraph):
        self.g = g
        self.color: list[int] = [0] * g.m
        self.allocated = 0
        # input u -> color -> {gid: edge count}
        self._at_in: list[dict[int, dict[int, int]]] = [{} for _ in range(g.n_i)]
        # output v -> color -> edge
        self._at_out: list[dict[int, int]] = [{} for _ in range(g.n_o)]

    @classmethod
    def from_assignment(cls, g: GroupGraph, assignment: Sequence[int]) -> "Coloring":
        """Build from a raw list; conflicting assignments are kept as-is."""
        col = cls(g)
        for e, c in enumerate(assignment):
            if c:
                col._store(e, c)
        return col

    def copy(self) -> "Coloring":
        return Coloring.from_assignment(self.g, self.color).with_allocated(self.allocated)

    def with_allocated(self, allocated: int) -> "Coloring":
        self.allocated = max(self.allocated, allocated)
        return self

    def new_color(self) -> int:
        self.allocated += 1
        return self.allocated

    def _store(self, e: int, c: int) -> None:
        if c < 1:
            raise ValueError(f"colors are positive integers, got {c}")
        u, v = self.g.edges[e]
        self.color[e] = c
        groups = self._at_in[u].setdefault(c, {})
        gid = self.g.edge_group[e]
        groups[gid] = groups.get(gid, 0) + 1
        # keep the lowest edge id when an invalid coloring repeats a color
        self._at_out[v].setdefault(c, e)
        self.allocated = max(self.allocated, c)

    def assign(self, e: int, c: int) -> None:
        if self.color[e]:
            raise ContractError(f"edge {e} is already colored")
        self._store(e, c)

    def unassign(self, e: int) -> None:
        c = self.color[e]
        if not c:
            return
        u, v = self.g.edges[e]
        gid = self.g.edge_group[e]
        groups = self._at_in[u][c]
        groups[gid] -= 1
        if not groups[gid]:
            del groups[gid]
            if not groups:
                del self._at_in[u][c]
        if self._at_out[v].get(c) == e:
            del self._at_out[v][c]
            for other in self.g.out_edges[v]:
                if other != e and self.color[other] == c:
                    self._at_out[v][c] = other
                    break
        self.color[e] = 0

    def recolor(self, e: int, c: int) -> None:
        self.unassign(e)
        self._store(e, c)

    def groups_using(self, u: int, c: int) -> dict[int, int]:
        """Groups at input ``u`` holding color ``c``, with edge counts."""
        return self._at_in[u].get(c, {})

    def edge_at_output(self, v: int, c: int) -> Optional[int]:
        return self._at_out[v].get(c)

    def colors_at_input(self, u: int) -> Iterable[int]:
        return self._at_in[u].keys()

    def colors_at_output(self, v: int) -> Iterable[int]:
        return self._at_out[v].keys()

    def viable_at_input(self, e: int, c: int) -> bool:
        u, _ = self.g.edges[e]
        users = self._at_in[u].get(c)
        if not users:
            return True
        gid = self.g.edge_group[e]
        return len(users) == 1 and gid in users

    def viable_at_output(self, e: int, c: int) -> bool:
        _, v = self.g.edges[e]
        other = self._at_out[v].get(c)
        return other is None or other == e

    def viable(self, e: int, c: int) -> bool:
        return self.viable_at_input(e, c) and self.viable_at_output(e, c)

    def colors_used(self) -> set[int]:
        return {c for c in self.color if c}

    @property
    def num_colors(self) -> int:
        return len(self.colors_used())

    def is_total(self) -> bool:
        return all(self.color)

    def compacted(self) -> "Coloring":
        """Relabel used colors densely as 1..k, preserving their order."""
        remap = {c: i for i, c in enumerate(sorted(self.colors_used()), start=1)}
        col = Coloring.from_assignment(self.g, [remap.get(c, 0) for c in self.color])
        col.allocated = len(remap)
        return col

    def __repr__(self) -> str:
        done = sum(1 for c in self.color if c)
        return f"Coloring({done}/{len(self.color)} edges, {self.num_colors} colors)"


def is_viable(g: GroupGraph, col: Coloring, e: int, c: int) -> bool:
    """True when ``c`` can be given to the uncolored edge ``e``.

    ``c`` must be unused by differently-grouped edges at the input and
    unused by every other edge at the output.
    """
    if col.g is not g:
        raise ContractError("coloring belongs to a different graph")
    if col.color[e]:
        raise ContractError(f"edge {e} is already colored")
    return col.viable(e, c)


@dataclass
class ValidityReport:
    conflicts: list[tuple[int, int]] = field(default_factory=list)
    uncolored: list[int] = field(default_factory=list)
    num_colors: int = 0

    @property
    def valid(self) -> bool:
        return not self.conflicts and not self.uncolored

    def __bool__(self) -> bool:
        return self.valid


def check_valid(g: GroupGraph, col: Coloring | Sequence[int],
                require_total: bool = True) -> ValidityReport:
    """List every conflicting edge pair and, optionally, every uncolored edge.

    Works from the raw color list only, so it does not trust the indexes
    kept by :class:`Coloring`.
    """
    colors = col.color if isinstance(col, Coloring) else list(col)
    if len(colors) != g.m:
        raise ContractError(f"coloring has {len(colors)} entries for {g.m} edges")
    report = ValidityReport()
    for u in range(g.n_i):
        es = g.in_edges[u]
        for a in range(len(es)):
            for b in range(a + 1, len(es)):
                e1, e2 = es[a], es[b]
                if (colors[e1] and colors[e1] == colors[e2]
                        and g.edge_group[e1] != g.edge_group[e2]):
                    report.conflicts.append((e1, e2))
    for v in range(g.n_o):
        es = g.out_edges[v]
        for a in range(len(es)):
            for b in range(a + 1, len(es)):
                e1, e2 = es[a], es[b]
                if colors[e1] and colors[e1] == colors[e2]:
                    report.conflicts.append((e1, e2))
    if require_total:
        report.uncolored = [e for e, c in enumerate(colors) if not c]
    report.num_colors = len({c for c in colors if c})
    return report


@dataclass(frozen=True)
class Bounds:
    lower: int
    trivial_upper: int
    generator_upper: Optional[int] = None


def bounds(g: GroupGraph, chi: Optional[int] = None) -> Bounds:
    """Trivial bounds: max(D_i, Delta_o) <= optimum <= D_i * Delta_o."""
    lower = max(g.D_i, g.Delta_o)
    return Bounds(lower, g.D_i * g.Delta_o, chi)


def conflict_lists(g: GroupGraph) -> list[list[int]]:
    """For each edge, the edges that must get a different color."""
    nbrs: list[set[int]] = [set() for _ in range(g.m)]
    for u in range(g.n_i):
        es = g.in_edges[u]
        for e1 in es:
            for e2 in es:
                if e1 != e2 and g.edge_group[e1] != g.edge_group[e2]:
                    nbrs[e1].add(e2)
    for v in range(g.n_o):
        es = g.out_edges[v]
        for e1 in es:
            for e2 in es:
                if e1 != e2:
                    nbrs[e1].add(e2)
    return [sorted(x) for x in nbrs]


def _try_color(nbrs: list[list[int]], k: int) -> Optional[list[int]]:
    """Backtracking k-coloring of the conflict graph.

    Branches on the uncolored edge with the most distinct neighbor colors
    (ties: most neighbors, then lowest id) and opens a new color only after
    all lower ones are in use.
    """
    n = len(nbrs)
    color = [0] * n
    # forbidden[e][c] counts colored neighbors of e holding c
    forbidden = [[0] * (k + 1) for _ in range(n)]
    saturation = [0] * n

    def place(e: int, c: int) -> None:
        color[e] = c
        for f in nbrs[e]:
            row = forbidden[f]
            if row[c] == 0:
                saturation[f] += 1
            row[c] += 1

    def remove(e: int, c: int) -> None:
        color[e] = 0
        for f in nbrs[e]:
            row = forbidden[f]
            row[c] -= 1
            if row[c] == 0:
                saturation[f] -= 1

    def solve(done: int, used: int) -> bool:
        if done == n:
            return True
        best = -1
        best_key = None
        for e in range(n):
            if color[e]:
                continue
            key = (saturation[e], len(nbrs[e]))
            if best_key is None or key > best_key:
                best, best_key = e, key
        row = forbidden[best]
        for c in range(1, min(used + 1, k) + 1):
            if row[c]:
                continue
            place(best, c)
            if solve(done + 1, max(used, c)):
                return True
            remove(best, c)
        return False

    if solve(0, 0):
        return color
    return None


def exact_color(g: GroupGraph, max_colors: Optional[int] = None,
                cap: int = DEFAULT_EXACT_CAP) -> Optional[Coloring]:
    """Optimal coloring by backtracking, or None if more than ``max_colors``
    colors would be needed.

    Tries color budgets upward from the lower bound, so the first success
    is optimal.  Refuses graphs with more than ``cap`` edges.
    """
    if g.m > cap:
        raise InstanceTooLarge(f"{g.m} edges exceeds exact solver cap {cap}")
    b = bounds(g)
    top = b.trivial_upper if max_colors is None else min(max_colors, b.trivial_upper)
    if g.m == 0:
        return Coloring(g)
    nbrs = conflict_lists(g)
    for k in range(b.lower, top + 1):
        found = _try_color(nbrs, k)
        if found is not None:
            col = Coloring.from_assignment(g, found)
            col.allocated = max(found)
            return col
    return None
