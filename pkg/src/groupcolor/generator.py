"""Instance generators: random chi-colorable group graphs, the reduction
from vertex coloring, and fixed example graphs.

Randomness comes from numpy's PCG64 generator seeded with the caller's
integer seed, so instances reproduce across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from typing import Optional

import networkx as nx
import numpy as np

from .core import GraphError, GroupGraph
from .textio import parse_graph

EXAMPLE_TEXT = """\
[a: (f i l) (g k) (e)]
[b: (i l) (h j) (g k)]
[c: (f h j) (e) (g h)]
[d: (f i) (e j) (k l)]
"""

# A known 4-coloring of the example graph.
EXAMPLE_4_COLORING = """\
1: a(f i.) b(h j) c(e) d(k l)
2: a(g k) b(i l) c(h j.) d(f.)
3: a(l.) b(g.) c(f.) d(e j)
4: a(e) b(k.) c(g h) d(i.)
"""

SWAPS_PER_EDGE = 10


@dataclass(frozen=True)
class GenParams:
    n_i: int
    n_o: int
    D_i: int
    Delta_o: int
    chi: int
    seed: int = 0

    @property
    def Delta_i(self) -> int:
        return self.Delta_o * self.n_o // self.n_i

    @property
    def m(self) -> int:
        return self.n_o * self.Delta_o

    def validate(self) -> None:
        if min(self.n_i, self.n_o, self.D_i, self.Delta_o, self.chi) < 1:
            raise GraphError(f"all generator parameters must be positive: {self}")
        if (self.Delta_o * self.n_o) % self.n_i:
            raise GraphError("Delta_o * n_o must be divisible by n_i")
        if self.chi < max(self.D_i, self.Delta_o):
            raise GraphError("chi must be at least max(D_i, Delta_o)")
        if self.Delta_o > self.n_i or self.Delta_i > self.n_o:
            raise GraphError("degrees too large for a simple bipartite graph")


def _rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_biregular(n_i: int, n_o: int, d_in: int, d_out: int,
                     rng: np.random.Generator,
                     swaps: Optional[int] = None) -> list[list[int]]:
    """Random simple bipartite graph with every input of degree ``d_in`` and
    every output of degree ``d_out``.

    Starts from a circulant layout (input u covers outputs u*d_in .. u*d_in +
    d_in - 1 modulo n_o) and mixes it with degree-preserving double-edge
    swaps.  Returns the sorted neighbor list of each input.
    """
    if n_i * d_in != n_o * d_out:
        raise GraphError("degree sums of the two sides differ")
    if d_in > n_o or d_out > n_i:
        raise GraphError("degree sequence is not realizable by a simple graph")
    edges = [[u, (u * d_in + t) % n_o] for u in range(n_i) for t in range(d_in)]
    m = len(edges)
    present = {(u, v) for u, v in edges}
    if swaps is None:
        swaps = SWAPS_PER_EDGE * m
    if m >= 2 and swaps:
        picks = rng.integers(0, m, size=(swaps, 2))
        for a, b in picks.tolist():
            u1, v1 = edges[a]
            u2, v2 = edges[b]
            if u1 == u2 or v1 == v2:
                continue
            if (u1, v2) in present or (u2, v1) in present:
                continue
            present.difference_update(((u1, v1), (u2, v2)))
            present.update(((u1, v2), (u2, v1)))
            edges[a][1] = v2
            edges[b][1] = v1
    adj: list[list[int]] = [[] for _ in range(n_i)]
    for u, v in edges:
        adj[u].append(v)
    for row in adj:
        row.sort()
    return adj


def generate(p: GenParams) -> GroupGraph:
    """Random group graph that is guaranteed chi-colorable.

    1. random biregular bipartite graph with the requested degrees;
    2. each output gives its edges distinct random colors from 1..chi;
    3. at each input, edges sharing a color form a group, and random pairs
       of groups are merged until at most D_i remain; groups are listed
       in random order.

    The witnessing coloring is thrown away.
    """
    p.validate()
    rng = _rng(p.seed)
    adj = random_biregular(p.n_i, p.n_o, p.Delta_i, p.Delta_o, rng)

    at_output: list[list[int]] = [[] for _ in range(p.n_o)]
    for u, row in enumerate(adj):
        for v in row:
            at_output[v].append(u)
    color: dict[tuple[int, int], int] = {}
    for v in range(p.n_o):
        picks = rng.choice(p.chi, size=len(at_output[v]), replace=False) + 1
        for u, c in zip(at_output[v], picks.tolist()):
            color[(u, v)] = c

    groups: list[tuple[int, list[int]]] = []
    for u, row in enumerate(adj):
        classes: dict[int, list[int]] = {}
        for v in row:
            classes.setdefault(color[(u, v)], []).append(v)
        parts = [classes[c] for c in sorted(classes)]
        while len(parts) > p.D_i:
            a, b = sorted(rng.choice(len(parts), size=2, replace=False).tolist())
            merged = parts[a] + parts.pop(b)
            parts[a] = merged
        # declaration order is random so layer p of the basic method does not
        # line up with the output numbering
        for idx in rng.permutation(len(parts)).tolist():
            groups.append((u, sorted(parts[idx])))

    return GroupGraph(p.n_i, p.n_o, groups,
                      [f"i{u}" for u in range(p.n_i)],
                      [f"o{v}" for v in range(p.n_o)])


def reduce_from_vertex_coloring(h: nx.Graph, k: int) -> GroupGraph:
    """Group graph that is k-colorable exactly when ``h`` is k-vertex-colorable.

    Each vertex of ``h`` becomes an input and each edge of ``h`` an output
    joined to both its endpoints; the edges at a vertex form one group.
    Every input also gets k-1 stub outputs, each a singleton group, which
    leave a single color for the main group.
    """
    if k < 1:
        raise GraphError("k must be at least 1")
    if any(a == b for a, b in h.edges()):
        raise GraphError("h must not have self-loops")
    nodes = sorted(h.nodes(), key=str)
    index = {x: i for i, x in enumerate(nodes)}
    hedges = sorted((min(index[a], index[b]), max(index[a], index[b])) for a, b in h.edges())

    output_names = [f"e{a}_{b}" for a, b in hedges]
    main: list[list[int]] = [[] for _ in nodes]
    for v, (a, b) in enumerate(hedges):
        main[a].append(v)
        main[b].append(v)
    groups: list[tuple[int, list[int]]] = []
    for u in range(len(nodes)):
        if main[u]:
            groups.append((u, main[u]))
        for s in range(k - 1):
            output_names.append(f"s{u}_{s}")
            groups.append((u, [len(output_names) - 1]))
    return GroupGraph(len(nodes), len(output_names), groups,
                      [f"x{u}" for u in range(len(nodes))], output_names)


def fixture(name: str) -> GroupGraph:
    """Named graphs: ``example`` (a small 4-input instance) and ``d2chi3``
    (D = 2, yet three colors are needed).

    ``example`` repeats the edge (c, h) in two different groups, so it is
    built with parallel edges allowed.
    """
    if name == "example":
        return parse_graph(EXAMPLE_TEXT, allow_parallel=True)
    if name == "d2chi3":
        text = resources.files("groupcolor.data").joinpath("d2chi3.txt").read_text()
        return parse_graph(text)
    raise KeyError(f"unknown fixture {name!r}; choose 'example' or 'd2chi3'")


FIXTURES = ("example", "d2chi3")


def ceil_chi(factor: float, base: int) -> int:
    """Smallest integer >= factor*base, guarding against float fuzz."""
    return math.ceil(round(factor * base, 9))
