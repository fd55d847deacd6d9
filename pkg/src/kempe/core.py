"""Graphs, colorings and Kempe chains.

Vertices are the integers ``0..n-1`` and colors the integers ``1..k``.
Everything here is immutable; :func:`apply_move` hands back a fresh
:class:`Coloring`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    ColorOutOfRange,
    DegenerateChain,
    ImproperIntermediate,
    InternalInvariantBroken,
    InvalidGraph,
    InvalidMove,
    PreconditionViolated,
)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on the vertices ``0..n-1``."""

    n: int
    adj: tuple[frozenset[int], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise InvalidGraph("adjacency must have one entry per vertex")
        for v, nbrs in enumerate(self.adj):
            if v in nbrs:
                raise InvalidGraph(f"self-loop at {v}")
            for w in nbrs:
                if not 0 <= w < self.n:
                    raise InvalidGraph(f"vertex {w} out of range")
                if v not in self.adj[w]:
                    raise InvalidGraph(f"asymmetric adjacency {v}-{w}")
        if self.labels is not None and len(self.labels) != self.n:
            raise InvalidGraph("one label per vertex expected")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], labels=None) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise InvalidGraph(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraph(f"edge {u}-{v} out of range")
            if v in nbrs[u]:
                raise InvalidGraph(f"duplicate edge {u}-{v}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs),
                   tuple(labels) if labels is not None else None)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(self.adj[v]))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def is_regular(self) -> bool:
        return len({len(a) for a in self.adj}) <= 1

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def restrict(self, vertices: Iterable[int]) -> "Graph":
        """Same vertex set, keeping only the edges with both ends in ``vertices``."""
        keep = frozenset(vertices)
        return Graph(self.n, tuple(
            (self.adj[v] & keep) if v in keep else frozenset() for v in range(self.n)
        ), self.labels)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Relabelled induced subgraph and the map new id -> old id."""
        old = sorted(set(vertices))
        new_of = {v: i for i, v in enumerate(old)}
        adj = tuple(frozenset(new_of[w] for w in self.adj[v] if w in new_of) for v in old)
        labels = tuple(self.label(v) for v in old) if self.labels else None
        return Graph(len(old), adj, labels), old

    def with_edges(self, extra: Iterable[Sequence[int]]) -> "Graph":
        nbrs = [set(a) for a in self.adj]
        for u, v in extra:
            if u == v:
                raise InvalidGraph(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return Graph(self.n, tuple(frozenset(s) for s in nbrs), self.labels)

    def components(self, vertices: Iterable[int] | None = None) -> list[list[int]]:
        """Connected components of the subgraph induced by ``vertices``."""
        allowed = set(range(self.n)) if vertices is None else set(vertices)
        seen: set[int] = set()
        comps = []
        for s in sorted(allowed):
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.adj[x]:
                    if y in allowed and y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


@dataclass(frozen=True)
class Coloring:
    """Total map vertex -> color in ``1..k``; properness is checked separately."""

    colors: tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        for v, c in enumerate(self.colors):
            if not 1 <= c <= self.k:
                raise ColorOutOfRange(f"vertex {v} has color {c} outside 1..{self.k}")

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __len__(self) -> int:
        return len(self.colors)

    def __iter__(self) -> Iterator[int]:
        return iter(self.colors)

    def palette(self) -> range:
        return range(1, self.k + 1)

    def recolored(self, changes: dict[int, int]) -> "Coloring":
        cols = list(self.colors)
        for v, c in changes.items():
            cols[v] = c
        return Coloring(tuple(cols), self.k)

    def subset(self, old_ids: Sequence[int]) -> "Coloring":
        """Coloring of an induced subgraph given its new -> old vertex map."""
        return Coloring(tuple(self.colors[v] for v in old_ids), self.k)

    def class_partition(self) -> frozenset[frozenset[int]]:
        classes: dict[int, set[int]] = {}
        for v, c in enumerate(self.colors):
            classes.setdefault(c, set()).add(v)
        return frozenset(frozenset(s) for s in classes.values())


@dataclass(frozen=True)
class ListAssignment:
    lists: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "lists", tuple(frozenset(s) for s in self.lists))
        for v, lst in enumerate(self.lists):
            if not lst:
                raise PreconditionViolated(f"empty list at vertex {v}")
            if min(lst) < 1:
                raise ColorOutOfRange(f"list of vertex {v} contains a color below 1")

    @classmethod
    def uniform(cls, n: int, k: int) -> "ListAssignment":
        full = frozenset(range(1, k + 1))
        return cls(tuple(full for _ in range(n)))

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.lists[v]

    def __len__(self) -> int:
        return len(self.lists)

    def palette_size(self) -> int:
        return max(max(lst) for lst in self.lists) if self.lists else 0

    def subset(self, old_ids: Sequence[int]) -> "ListAssignment":
        return ListAssignment(tuple(self.lists[v] for v in old_ids))


ORDERING_KINDS = ("degeneracy", "peo", "layer-refined", "arbitrary")


@dataclass(frozen=True)
class VertexOrdering:
    """A permutation ``v_1 < ... < v_n`` of the vertices.

    ``greater(g, v)`` and ``smaller(g, v)`` are the neighbours of ``v`` after and
    before it in the order.
    """

    order: tuple[int, ...]
    kind: str = "arbitrary"
    position: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        if sorted(self.order) != list(range(len(self.order))):
            raise PreconditionViolated("ordering must be a permutation of 0..n-1")
        if self.kind not in ORDERING_KINDS:
            raise ValueError(f"unknown ordering kind {self.kind!r}")
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        object.__setattr__(self, "position", tuple(pos))

    @classmethod
    def identity(cls, n: int) -> "VertexOrdering":
        return cls(tuple(range(n)))

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self) -> Iterator[int]:
        return iter(self.order)

    def pos(self, v: int) -> int:
        return self.position[v]

    def greater(self, g: Graph, v: int) -> list[int]:
        p = self.position
        return sorted((w for w in g.adj[v] if p[w] > p[v]), key=p.__getitem__)

    def smaller(self, g: Graph, v: int) -> list[int]:
        p = self.position
        return sorted((w for w in g.adj[v] if p[w] < p[v]), key=p.__getitem__)


class KempeMove(NamedTuple):
    """Swap the chain of ``vertex`` for the colors {current color, ``color``}."""

    vertex: int
    color: int


@dataclass(frozen=True)
class MoveSequence:
    moves: tuple[KempeMove, ...] = ()
    provenance: str = ""

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(KempeMove(int(v), int(c)) for v, c in self.moves))

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self) -> Iterator[KempeMove]:
        return iter(self.moves)

    def __getitem__(self, i):
        return self.moves[i]

    def __add__(self, other: "MoveSequence") -> "MoveSequence":
        return MoveSequence(self.moves + other.moves, self.provenance or other.provenance)


def chain_of(adj: Sequence[Iterable[int]], colors: Sequence[int], v: int, c: int) -> set[int]:
    """Unchecked chain computation on raw adjacency and color arrays."""
    a = colors[v]
    chain = {v}
    queue = [v]
    while queue:
        x = queue.pop()
        want = c if colors[x] == a else a
        for y in adj[x]:
            if y not in chain and colors[y] == want:
                chain.add(y)
                queue.append(y)
    return chain


def swap_chain(colors: list[int], chain: Iterable[int], a: int, b: int) -> None:
    for x in chain:
        colors[x] = b if colors[x] == a else a


def split_swap(adj, colors: list[int], vertices: Iterable[int], a: int, b: int) -> list["KempeMove"]:
    """Swap colors a and b on ``vertices`` through the chains of ``adj`` they split into.

    ``vertices`` must be a union of {a, b}-chains of ``adj``.  One move per
    chain is returned, ordered by smallest vertex; ``colors`` is updated.
    """
    remaining = set(vertices)
    out = []
    while remaining:
        y = min(remaining)
        other = b if colors[y] == a else a
        comp = chain_of(adj, colors, y, other)
        if not comp <= remaining:
            raise InternalInvariantBroken("a chain leaves the vertex set being swapped")
        out.append(KempeMove(y, other))
        swap_chain(colors, comp, a, b)
        remaining -= comp
    return out


def _check_move(col: Coloring, v: int, c: int) -> None:
    if not 1 <= c <= col.k:
        raise ColorOutOfRange(f"color {c} outside palette 1..{col.k}")
    if c == col[v]:
        raise DegenerateChain(f"vertex {v} already has color {c}")


def kempe_chain(g: Graph, col: Coloring, v: int, c: int) -> frozenset[int]:
    """Vertices of the {col(v), c}-component of ``g`` that contains ``v``."""
    _check_move(col, v, c)
    return frozenset(chain_of(g.adj, col.colors, v, c))


def apply_move(g: Graph, col: Coloring, m: KempeMove) -> Coloring:
    v, c = m
    _check_move(col, v, c)
    a = col[v]
    cols = list(col.colors)
    swap_chain(cols, chain_of(g.adj, cols, v, c), a, c)
    return Coloring(tuple(cols), col.k)


def is_proper(g: Graph, col: Coloring, lists: ListAssignment | None = None) -> bool:
    cols = col.colors
    if len(cols) != g.n:
        return False
    for u, v in g.edges():
        if cols[u] == cols[v]:
            return False
    if lists is not None:
        return all(cols[v] in lists[v] for v in range(g.n))
    return True


def degeneracy_ordering(g: Graph) -> tuple[VertexOrdering, int]:
    """Min-degree peeling, ties broken by smallest vertex id."""
    deg = [len(a) for a in g.adj]
    removed = [False] * g.n
    order = []
    d = 0
    for _ in range(g.n):
        v = min((u for u in range(g.n) if not removed[u]), key=lambda u: (deg[u], u))
        d = max(d, deg[v])
        order.append(v)
        removed[v] = True
        for w in g.adj[v]:
            if not removed[w]:
                deg[w] -= 1
    return VertexOrdering(tuple(order), "degeneracy"), d


def degeneracy(g: Graph) -> int:
    return degeneracy_ordering(g)[1]


def replay(g: Graph, start: Coloring, seq: Iterable[KempeMove],
           lists: ListAssignment | None = None) -> list[Coloring]:
    """Every coloring visited by ``seq``, start included, with validity checks."""
    cur = start
    visited = [cur]
    for i, m in enumerate(seq):
        try:
            cur = apply_move(g, cur, m)
        except (DegenerateChain, ColorOutOfRange) as exc:
            raise InvalidMove(f"move {i} {tuple(m)}: {exc}", index=i) from exc
        except IndexError as exc:
            raise InvalidMove(f"move {i} {tuple(m)}: vertex out of range", index=i) from exc
        if not is_proper(g, cur, lists):
            raise ImproperIntermediate(f"coloring after move {i} is not proper", index=i)
        visited.append(cur)
    return visited


def verify_sequence(g: Graph, start: Coloring, seq: MoveSequence | Iterable[KempeMove],
                    lists: ListAssignment | None = None) -> Coloring:
    """Replay ``seq`` from ``start`` and return the final coloring."""
    if not is_proper(g, start, lists):
        raise ImproperIntermediate("start coloring is not proper", index=-1)
    return replay(g, start, seq, lists)[-1]


def invert_sequence(g: Graph, start: Coloring, seq: MoveSequence) -> MoveSequence:
    """Moves leading from the end of ``seq`` back to ``start``.

    A Kempe change is undone by the change on the same chain, named by the
    moved vertex and the color it had before.
    """
    inverse = []
    cur = start
    for m in seq:
        inverse.append(KempeMove(m.vertex, cur[m.vertex]))
        cur = apply_move(g, cur, m)
    return MoveSequence(tuple(reversed(inverse)), seq.provenance)
