"""MSG text format: line-oriented ASCII for graphs with coordinates.

Grammar (one record per line, '#' starts a comment):

    v <id> <x> <y>     vertex; ids are consecutive from 0 in file order
    e <i> <j>          edge between existing vertex ids
    n <id> <string>    optional vertex name

Coordinates serialize with up to 17 significant digits so that
write -> read -> write is bit-exact.
"""

from __future__ import annotations

from .geometry import Embedding, Graph


class MsgFormatError(ValueError):
    """Violation of the MSG grammar."""


def read_msg(text: str) -> tuple[Graph, Embedding, dict[str, int]]:
    positions: list[tuple[float, float]] = []
    edges: list[tuple[int, int]] = []
    names: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "v":
            if len(parts) != 4:
                raise MsgFormatError(f"line {lineno}: vertex line needs 'v id x y'")
            vid = int(parts[1])
            if vid != len(positions):
                if 0 <= vid < len(positions):
                    raise MsgFormatError(f"line {lineno}: duplicate vertex id {vid}")
                raise MsgFormatError(f"line {lineno}: vertex ids must be consecutive from 0, got {vid}")
            positions.append((float(parts[2]), float(parts[3])))
        elif tag == "e":
            if len(parts) != 3:
                raise MsgFormatError(f"line {lineno}: edge line needs 'e i j'")
            i, j = int(parts[1]), int(parts[2])
            if not (0 <= i < len(positions) and 0 <= j < len(positions)):
                raise MsgFormatError(f"line {lineno}: edge ({i}, {j}) references unknown vertex")
            edges.append((i, j))
        elif tag == "n":
            if len(parts) < 3:
                raise MsgFormatError(f"line {lineno}: name line needs 'n id string'")
            vid = int(parts[1])
            if not 0 <= vid < len(positions):
                raise MsgFormatError(f"line {lineno}: name references unknown vertex {vid}")
            names[" ".join(parts[2:])] = vid
        else:
            raise MsgFormatError(f"line {lineno}: unknown directive {tag!r}")
    if not positions:
        raise MsgFormatError("no vertices")
    return Graph(len(positions), edges), Embedding(positions), names


def write_msg(graph: Graph, emb: Embedding, names: dict[str, int] | None = None) -> str:
    if emb.n_vertices != graph.n_vertices:
        raise MsgFormatError("embedding size does not match graph")
    lines = []
    for v in range(graph.n_vertices):
        x, y = (float(c) for c in emb.coords[v])
        lines.append(f"v {v} {x!r} {y!r}")
    for i, j in graph.edges:
        lines.append(f"e {i} {j}")
    for name in sorted(names or {}):
        lines.append(f"n {(names or {})[name]} {name}")
    return "\n".join(lines) + "\n"
