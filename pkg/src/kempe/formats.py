"""Reading and writing graphs, colorings, sequences and decompositions.

Vertices are 0-based everywhere except in DIMACS and PACE files, which are
1-based on disk.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .core import Coloring, Graph, KempeMove, ListAssignment, MoveSequence
from .errors import InvalidDecomposition, InvalidGraph
from .treewidth import TreeDecomposition


def _load(path) -> Any:
    with open(path) as fh:
        return json.load(fh)


def _dump(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=1) + "\n")


# graphs

def graph_to_dict(g: Graph) -> dict:
    out: dict = {"n": g.n, "edges": [list(e) for e in g.edges()]}
    if g.labels is not None:
        out["labels"] = list(g.labels)
    return out


def graph_from_dict(d: dict) -> Graph:
    try:
        n = int(d["n"])
        edges = [(int(u), int(v)) for u, v in d["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidGraph(f"malformed graph JSON: {exc}") from exc
    labels = d.get("labels")
    return Graph.from_edges(n, edges, tuple(labels) if labels is not None else None)


def parse_dimacs(text: str) -> Graph:
    n = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) < 4 or parts[1] not in ("edge", "col"):
                raise InvalidGraph(f"line {lineno}: bad problem line")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise InvalidGraph(f"line {lineno}: edge before problem line")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            if u != v:
                edges.append((min(u, v), max(u, v)))
        else:
            raise InvalidGraph(f"line {lineno}: unknown line type {parts[0]!r}")
    if n is None:
        raise InvalidGraph("no problem line")
    return Graph.from_edges(n, sorted(set(edges)))


def read_graph(path) -> Graph:
    p = Path(path)
    if p.suffix in (".col", ".dimacs"):
        return parse_dimacs(p.read_text())
    return graph_from_dict(_load(p))


def write_graph(g: Graph, path) -> None:
    _dump(graph_to_dict(g), path)


# colorings

def coloring_to_dict(col: Coloring) -> dict:
    return {"k": col.k, "colors": list(col.colors)}


def coloring_from_obj(obj, k: int | None = None) -> Coloring:
    """Accepts ``{"k": k, "colors": [...]}`` or a bare list of colors."""
    if isinstance(obj, dict):
        colors = tuple(int(c) for c in obj["colors"])
        return Coloring(colors, int(obj.get("k", k if k is not None else max(colors, default=1))))
    colors = tuple(int(c) for c in obj)
    return Coloring(colors, k if k is not None else max(colors, default=1))


def read_coloring(path, k: int | None = None) -> Coloring:
    col = coloring_from_obj(_load(path), k)
    if k is not None and col.k != k:
        col = Coloring(col.colors, k)
    return col


def write_coloring(col: Coloring, path) -> None:
    _dump(coloring_to_dict(col), path)


# sequences

def sequence_to_dict(start: Coloring, seq: MoveSequence) -> dict:
    return {
        "start": coloring_to_dict(start),
        "moves": [{"v": m.vertex, "c": m.color} for m in seq],
        "provenance": seq.provenance,
    }


def sequence_from_dict(d: dict) -> tuple[Coloring | None, MoveSequence]:
    start = coloring_from_obj(d["start"]) if d.get("start") is not None else None
    moves = tuple(KempeMove(int(m["v"]), int(m["c"])) for m in d["moves"])
    return start, MoveSequence(moves, d.get("provenance", ""))


def read_sequence(path) -> tuple[Coloring | None, MoveSequence]:
    return sequence_from_dict(_load(path))


def write_sequence(start: Coloring, seq: MoveSequence, path) -> None:
    _dump(sequence_to_dict(start, seq), path)


# lists and layerings

def read_lists(path) -> ListAssignment:
    obj = _load(path)
    if isinstance(obj, dict):
        obj = obj["lists"]
    return ListAssignment(tuple(frozenset(int(c) for c in lst) for lst in obj))


def write_lists(lists: ListAssignment, path) -> None:
    _dump({"lists": [sorted(lst) for lst in lists]}, path)


def read_layers(path) -> list[list[int]]:
    obj = _load(path)
    layers = obj["layers"] if isinstance(obj, dict) else obj
    return [[int(v) for v in layer] for layer in layers]


def write_layers(layers, path) -> None:
    _dump({"layers": [sorted(int(v) for v in layer) for layer in layers]}, path)


# PACE tree decompositions

def parse_td(text: str, n: int | None = None) -> TreeDecomposition:
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "s":
            if len(parts) != 5 or parts[1] != "td":
                raise InvalidDecomposition(f"line {lineno}: bad solution line")
            header = tuple(int(x) for x in parts[2:])
        elif parts[0] == "b":
            bags[int(parts[1])] = frozenset(int(x) - 1 for x in parts[2:])
        else:
            if len(parts) != 2:
                raise InvalidDecomposition(f"line {lineno}: expected a tree edge")
            edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
    if header is None:
        raise InvalidDecomposition("missing 's td' line")
    num_bags, _, num_vertices = header
    if sorted(bags) != list(range(1, num_bags + 1)):
        raise InvalidDecomposition("bag ids must be 1..#bags")
    if n is not None and num_vertices != n:
        raise InvalidDecomposition(f"decomposition is for {num_vertices} vertices, graph has {n}")
    return TreeDecomposition(tuple(bags[i] for i in range(1, num_bags + 1)), tuple(edges))


def read_td(path, n: int | None = None) -> TreeDecomposition:
    return parse_td(Path(path).read_text(), n)


def format_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, 1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]))
    lines += [f"{a + 1} {b + 1}" for a, b in td.tree_edges]
    return "\n".join(lines) + "\n"


def write_report(report: dict, path) -> None:
    _dump(report, path)

