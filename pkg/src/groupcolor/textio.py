"""Line-oriented text formats for group graphs and colorings.

Graph, one line per input::

    [a: (f i l) (g k) (e)]

Coloring, one line per color; a trailing period marks a fragment that holds
only part of its group::

    1: a(f i.) b(h j) c(e) d(k l)
"""

from __future__ import annotations

import re
from typing import Optional

from .core import Coloring, GraphError, GroupGraph

NAME = r"[A-Za-z0-9_]+"
_LINE = re.compile(rf"^\[\s*({NAME})\s*:(.*)\]$")
_GROUP = re.compile(r"\(([^()]*)\)")
_COLOR_LINE = re.compile(r"^(\d+)\s*:(.*)$")
_FRAGMENT = re.compile(rf"({NAME})\s*\(([^()]*)\)")
_NAME_RE = re.compile(rf"^{NAME}$")


class ParseError(GraphError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def natural_key(name: str):
    """Sort key that orders ``o2`` before ``o10``."""
    return [(0, int(t), "") if t.isdigit() else (1, 0, t)
            for t in re.findall(r"\d+|\D+", name)]


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_graph(text: str, allow_parallel: bool = False) -> GroupGraph:
    """Parse the bracketed graph format.

    Inputs keep their line order; outputs are numbered in natural name
    order.  Errors carry the offending line number.
    """
    rows: list[tuple[int, str, list[list[str]]]] = []
    for lineno, line in _content_lines(text):
        m = _LINE.match(line)
        if not m:
            raise ParseError(lineno, f"expected '[name: (out ...) ...]', got {line!r}")
        name, body = m.group(1), m.group(2)
        groups = _GROUP.findall(body)
        if _GROUP.sub("", body).strip():
            raise ParseError(lineno, "unexpected text outside parentheses")
        parsed = []
        for grp in groups:
            outs = grp.split()
            if not outs:
                raise ParseError(lineno, "empty group")
            for o in outs:
                if not _NAME_RE.match(o):
                    raise ParseError(lineno, f"bad output name {o!r}")
            parsed.append(outs)
        rows.append((lineno, name, parsed))

    input_names: list[str] = []
    seen_inputs: dict[str, int] = {}
    for lineno, name, _ in rows:
        if name in seen_inputs:
            raise ParseError(lineno, f"input {name!r} listed twice")
        seen_inputs[name] = len(input_names)
        input_names.append(name)
    output_names = sorted({o for _, _, gs in rows for grp in gs for o in grp},
                          key=natural_key)
    out_index = {o: i for i, o in enumerate(output_names)}

    groups = []
    pairs: set[tuple[int, int]] = set()
    for lineno, name, gs in rows:
        u = seen_inputs[name]
        for grp in gs:
            vs = [out_index[o] for o in grp]
            if len(set(vs)) != len(vs):
                raise ParseError(lineno, f"duplicate edge within group ({' '.join(grp)})")
            for v in vs:
                if (u, v) in pairs and not allow_parallel:
                    raise ParseError(lineno, f"duplicate edge ({name},{output_names[v]})")
                pairs.add((u, v))
            groups.append((u, vs))
    return GroupGraph(len(input_names), len(output_names), groups,
                      input_names, output_names, allow_parallel=allow_parallel)


def _inputs_by_name(g: GroupGraph) -> list[int]:
    return sorted(range(g.n_i), key=lambda u: natural_key(g.input_names[u]))


def _outs(g: GroupGraph, edges) -> list[str]:
    vs = sorted((g.edges[e][1] for e in edges),
                key=lambda v: natural_key(g.output_names[v]))
    return [g.output_names[v] for v in vs]


def emit_graph(g: GroupGraph) -> str:
    lines = []
    for u in _inputs_by_name(g):
        parts = [f"({' '.join(_outs(g, g.groups[gid].edges))})" for gid in g.in_groups[u]]
        body = " " + " ".join(parts) if parts else ""
        lines.append(f"[{g.input_names[u]}:{body}]")
    return "\n".join(lines) + ("\n" if lines else "")


def emit_coloring(g: GroupGraph, col: Coloring) -> str:
    """One line per color in use, ascending.

    Inputs appear in name order, groups in declaration order and outputs
    in name order; fragments that do not cover their whole group end with
    a period.
    """
    colors = col.color if isinstance(col, Coloring) else col
    lines = []
    for c in sorted({c for c in colors if c}):
        frags = []
        for u in _inputs_by_name(g):
            for gid in g.in_groups[u]:
                grp = g.groups[gid]
                part = [e for e in grp.edges if colors[e] == c]
                if not part:
                    continue
                dot = "." if len(part) < len(grp.edges) else ""
                frags.append(f"{g.input_names[u]}({' '.join(_outs(g, part))}{dot})")
        lines.append(f"{c}: " + " ".join(frags))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_coloring(g: GroupGraph, text: str) -> Coloring:
    """Read a coloring listing back against ``g``.

    A fragment is matched to the first group at its input that contains all
    its outputs on still-uncolored edges; a fragment without a period must
    be a whole group.  This settles the ambiguity parallel edges create.
    """
    assignment = [0] * g.m
    in_index = {n: i for i, n in enumerate(g.input_names)}
    out_index = {n: i for i, n in enumerate(g.output_names)}
    for lineno, line in _content_lines(text):
        m = _COLOR_LINE.match(line)
        if not m:
            raise ParseError(lineno, f"expected '<color>: ...', got {line!r}")
        c = int(m.group(1))
        if c < 1:
            raise ParseError(lineno, "colors are positive integers")
        body = m.group(2)
        if _FRAGMENT.sub("", body).strip():
            raise ParseError(lineno, "unexpected text outside fragments")
        for name, inner in _FRAGMENT.findall(body):
            inner = inner.strip()
            partial = inner.endswith(".")
            outs = inner.rstrip(".").split()
            if name not in in_index:
                raise ParseError(lineno, f"unknown input {name!r}")
            u = in_index[name]
            try:
                vs = [out_index[o] for o in outs]
            except KeyError as exc:
                raise ParseError(lineno, f"unknown output {exc.args[0]!r}") from None
            chosen = _match_fragment(g, assignment, u, vs, partial)
            if chosen is None:
                raise ParseError(lineno, f"no group at {name} matches ({inner})")
            for e in chosen:
                assignment[e] = c
    return Coloring.from_assignment(g, assignment)


def _match_fragment(g: GroupGraph, assignment: list[int], u: int, vs: list[int],
                    partial: bool) -> Optional[list[int]]:
    for gid in g.in_groups[u]:
        grp = g.groups[gid]
        by_out = {g.edges[e][1]: e for e in grp.edges}
        if not all(v in by_out and not assignment[by_out[v]] for v in vs):
            continue
        if not partial and len(vs) != len(grp.edges):
            continue
        return [by_out[v] for v in vs]
    return None
