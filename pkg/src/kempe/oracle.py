"""Brute-force reconfiguration graphs for desk-scale instances."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .core import Coloring, Graph, KempeMove, MoveSequence
from .errors import BudgetExceeded


@dataclass(frozen=True)
class Budget:
    max_vertices: int = 10
    max_colors: int = 4
    max_colorings: int = 200_000


DEFAULT_BUDGET = Budget()


def enumerate_colorings(g: Graph, k: int, budget: Budget = DEFAULT_BUDGET) -> list[Coloring]:
    """All proper k-colorings in lexicographic order of the color vectors."""
    if g.n > budget.max_vertices or k > budget.max_colors:
        raise BudgetExceeded(
            f"n={g.n}, k={k} exceeds budget n<={budget.max_vertices}, k<={budget.max_colors}")
    out: list[Coloring] = []
    cols = [0] * g.n
    earlier = [[w for w in g.adj[v] if w < v] for v in range(g.n)]

    def rec(v):
        if v == g.n:
            if len(out) >= budget.max_colorings:
                raise BudgetExceeded(f"more than {budget.max_colorings} colorings")
            out.append(Coloring(tuple(cols), k))
            return
        for c in range(1, k + 1):
            if all(cols[w] != c for w in earlier[v]):
                cols[v] = c
                rec(v + 1)
        cols[v] = 0

    rec(0)
    return out


@dataclass
class ReconfGraph:
    """Nodes are proper k-colorings, edges single Kempe changes."""

    graph: Graph
    k: int
    nodes: list[Coloring]
    adjacency: list[list[int]]
    class_of: list[int]

    def __post_init__(self):
        self.index = {c.colors: i for i, c in enumerate(self.nodes)}

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, nb in enumerate(self.adjacency) for j in nb if i < j]

    @property
    def num_classes(self) -> int:
        return len(set(self.class_of))

    def class_members(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, c in enumerate(self.class_of):
            out.setdefault(c, []).append(i)
        return out

    def node(self, col: Coloring | tuple) -> int:
        key = col.colors if isinstance(col, Coloring) else tuple(col)
        return self.index[key]

    def same_class(self, a, b) -> bool:
        return self.class_of[self.node(a)] == self.class_of[self.node(b)]

    def distances_from(self, i: int) -> dict[int, int]:
        dist = {i: 0}
        queue = deque([i])
        while queue:
            x = queue.popleft()
            for y in self.adjacency[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def diameters(self) -> dict[int, int]:
        out = {}
        for cls, members in self.class_members().items():
            out[cls] = max(max(self.distances_from(i).values()) for i in members)
        return out


def _kempe_neighbours(nbr_mask: list[int], colors: tuple[int, ...], k: int) -> set[tuple[int, ...]]:
    """Colorings one Kempe change away, one per bichromatic component."""
    n = len(colors)
    cls = [0] * (k + 1)
    for v, c in enumerate(colors):
        cls[c] |= 1 << v
    out = set()
    for a, b in itertools.combinations(range(1, k + 1), 2):
        rest = cls[a] | cls[b]
        while rest:
            comp = frontier = rest & -rest
            while frontier:
                v = frontier.bit_length() - 1
                frontier ^= 1 << v
                new = nbr_mask[v] & rest & ~comp
                comp |= new
                frontier |= new
            rest &= ~comp
            cols = list(colors)
            for v in range(n):
                if comp >> v & 1:
                    cols[v] = b if cols[v] == a else a
            out.add(tuple(cols))
    return out


def build_reconf(g: Graph, k: int, budget: Budget = DEFAULT_BUDGET) -> ReconfGraph:
    nodes = enumerate_colorings(g, k, budget)
    index = {c.colors: i for i, c in enumerate(nodes)}
    nbr_mask = [sum(1 << w for w in g.adj[v]) for v in range(g.n)]
    adjacency = [sorted(index[t] for t in _kempe_neighbours(nbr_mask, col.colors, k)) for col in nodes]
    class_of = [-1] * len(nodes)
    cls = 0
    for s in range(len(nodes)):
        if class_of[s] >= 0:
            continue
        class_of[s] = cls
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adjacency[x]:
                if class_of[y] < 0:
                    class_of[y] = cls
                    queue.append(y)
        cls += 1
    return ReconfGraph(g, k, nodes, adjacency, class_of)


def is_frozen(g: Graph, col: Coloring) -> bool:
    """Every subgraph induced by two color classes of the palette is connected."""
    for a, b in itertools.combinations(range(1, col.k + 1), 2):
        members = [v for v in range(g.n) if col[v] in (a, b)]
        if len(g.components(members)) > 1:
            return False
    return True


def shortest_path(rg: ReconfGraph, a, b) -> int | None:
    i, j = rg.node(a), rg.node(b)
    if rg.class_of[i] != rg.class_of[j]:
        return None
    return rg.distances_from(i)[j]


def path_moves(rg: ReconfGraph, a, b) -> MoveSequence | None:
    """A shortest Kempe-change sequence from a to b, or None across classes."""
    i, j = rg.node(a), rg.node(b)
    parent = {i: None}
    queue = deque([i])
    while queue and j not in parent:
        x = queue.popleft()
        for y in rg.adjacency[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    if j not in parent:
        return None
    path = [j]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    moves = []
    for x, y in zip(path, path[1:]):
        cx, cy = rg.nodes[x].colors, rg.nodes[y].colors
        v = min(u for u in range(rg.graph.n) if cx[u] != cy[u])
        moves.append(KempeMove(v, cy[v]))
    return MoveSequence(tuple(moves), "oracle-bfs")


def oracle_report(g: Graph, k: int, budget: Budget = DEFAULT_BUDGET) -> dict:
    rg = build_reconf(g, k, budget)
    members = rg.class_members()
    diam = rg.diameters()
    ordered = sorted(members)
    return {
        "num_colorings": len(rg.nodes),
        "num_classes": rg.num_classes,
        "class_sizes": [len(members[c]) for c in ordered],
        "diameter_per_class": [diam[c] for c in ordered],
        "frozen": [i for i, col in enumerate(rg.nodes) if is_frozen(g, col)],
    }

