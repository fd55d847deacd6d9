"""Recoloring graphs of bounded maximum average degree, layer by layer.

Vertices are peeled into layers V_1, ..., V_t so that each vertex has at most
k-1 neighbours in its own layer or above.  A Kempe change inside one layer is
lifted to the whole graph by first freeing the lower layers (vertices that
could glue the chain to unrelated vertices of the upper layers are pushed to
a fresh color, recursively), then swapping.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .core import (
    Coloring,
    Graph,
    KempeMove,
    ListAssignment,
    MoveSequence,
    VertexOrdering,
    chain_of,
    is_proper,
    swap_chain,
)
from .degenerate import RecolorSetting, equalize
from .errors import (
    InternalInvariantBroken,
    LayeringFailed,
    NotAChain,
    PreconditionViolated,
    TooLarge,
)

MAD_EXACT_LIMIT = 20


@dataclass(frozen=True)
class Layering:
    """Ordered partition into layers; ``level[v]`` is 1-based."""

    layers: tuple[tuple[int, ...], ...]
    level: tuple[int, ...]
    degree_bound: int

    @classmethod
    def from_layers(cls, n: int, layers: Sequence[Iterable[int]], degree_bound: int) -> "Layering":
        level = [0] * n
        out = []
        for i, layer in enumerate(layers, start=1):
            layer = tuple(sorted(layer))
            for v in layer:
                if level[v]:
                    raise PreconditionViolated(f"vertex {v} appears in two layers")
                level[v] = i
            out.append(layer)
        if not all(level):
            raise PreconditionViolated("layers do not cover every vertex")
        return cls(tuple(out), tuple(level), degree_bound)

    @property
    def t(self) -> int:
        return len(self.layers)

    def rank(self) -> tuple[int, ...]:
        """Position in the layer-major, id-minor total order."""
        return self.ordering().position

    def ordering(self) -> VertexOrdering:
        return VertexOrdering(tuple(v for layer in self.layers for v in layer), "layer-refined")

    def upper(self, i: int) -> frozenset[int]:
        """Vertex set of G_i, the layers i and above."""
        return frozenset(v for v, lv in enumerate(self.level) if lv >= i)

    def validate(self, g: Graph) -> None:
        for v in range(g.n):
            up = sum(1 for w in g.adj[v] if self.level[w] >= self.level[v])
            if up > self.degree_bound:
                raise InternalInvariantBroken(
                    f"vertex {v} has {up} neighbours in G_{self.level[v]} > {self.degree_bound}")


def compute_layering(g: Graph, k: int) -> Layering:
    """Peel every vertex of current degree <= k-1 at once, layer after layer."""
    remaining = set(range(g.n))
    deg = [g.degree(v) for v in range(g.n)]
    layers = []
    while remaining:
        layer = sorted(v for v in remaining if deg[v] <= k - 1)
        if not layer:
            raise LayeringFailed(
                f"residual graph on {len(remaining)} vertices has minimum degree >= {k}")
        layers.append(layer)
        for v in layer:
            remaining.discard(v)
        for v in layer:
            for w in g.adj[v]:
                if w in remaining:
                    deg[w] -= 1
    lay = Layering.from_layers(g.n, layers, k - 1)
    lay.validate(g)
    return lay


def mad_oracle(g: Graph, limit: int = MAD_EXACT_LIMIT) -> Fraction:
    """Exact maximum average degree by enumerating every vertex subset."""
    n = g.n
    if n > limit:
        raise TooLarge(f"exact mad limited to {limit} vertices, got {n}")
    if n == 0:
        return Fraction(0)
    masks = [sum(1 << w for w in g.adj[v]) for v in range(n)]
    edges = np.zeros(1 << n, dtype=np.int32)
    sizes = np.zeros(1 << n, dtype=np.int32)
    for i in range(n):
        lo = np.arange(1 << i, dtype=np.int64)
        gained = np.bitwise_count(lo & masks[i]).astype(np.int32)
        edges[1 << i: 1 << (i + 1)] = edges[: 1 << i] + gained
        sizes[1 << i: 1 << (i + 1)] = sizes[: 1 << i] + 1
    best = Fraction(0)
    for s in range(1, n + 1):
        m = int(edges[sizes == s].max())
        best = max(best, Fraction(2 * m, s))
    return best


# -- problematic vertices ---------------------------------------------------

def problematic_vertices(g: Graph, lay: Layering, cols: Sequence[int], v: int, c: int) -> list[int]:
    """Vertices u reached from v by a level-decreasing path inside K_{v,c}
    having at least two chain neighbours at level >= level(u)."""
    if cols[v] == c:
        return []
    level = lay.level
    chain = chain_of(g.adj, cols, v, c)
    reach = set()
    stack = [v]
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if y in chain and level[y] < level[x] and y not in reach:
                reach.add(y)
                stack.append(y)
    return sorted(u for u in reach
                  if sum(1 for w in g.adj[u] if w in chain and level[w] >= level[u]) >= 2)


def level_decreasing_path(g: Graph, lay: Layering, cols: Sequence[int], v: int, c: int, u: int) -> list[int] | None:
    """A witness level-decreasing path from v to u inside K_{v,c}, if any."""
    if cols[v] == c:
        return None
    level = lay.level
    chain = chain_of(g.adj, cols, v, c)
    parent = {v: None}
    stack = [v]
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if y in chain and level[y] < level[x] and y not in parent:
                parent[y] = x
                stack.append(y)
    if u not in parent or u == v:
        return None
    path = [u]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def lex_less(s1: Sequence[int], s2: Sequence[int], rank: Sequence[int]) -> bool:
    """Lexicographic order in which the empty sequence is the largest."""
    for x, y in zip(s1, s2):
        if x != y:
            return rank[x] < rank[y]
    return len(s1) > len(s2)


@dataclass
class FreeLog:
    """Call sequences of every free_vertex invocation, in initiation order."""

    calls: list[tuple[int, ...]] = field(default_factory=list)
    moves: int = 0


def _free(g: Graph, lay: Layering, rank, k: int, cols: list[int], seq: tuple[int, ...], c: int,
          moves: list[KempeMove], log: FreeLog) -> None:
    if log.calls and not lex_less(seq, log.calls[-1], rank):
        raise InternalInvariantBroken(f"call sequence {seq} not lexicographically below {log.calls[-1]}")
    log.calls.append(seq)
    level = lay.level
    v = seq[-1]
    prev = None
    while True:
        prob = problematic_vertices(g, lay, cols, v, c)
        if not prob:
            return
        u = max(prob, key=rank.__getitem__)
        if prev is not None and rank[u] >= rank[prev]:
            raise InternalInvariantBroken(f"largest problematic vertex did not decrease ({prev} -> {u})")
        prev = u
        lu = level[u]
        used = {cols[w] for w in g.adj[u] if level[w] >= lu} | {cols[u]}
        free = [x for x in range(1, k + 1) if x not in used]
        if not free:
            raise InternalInvariantBroken(f"no fresh color at problematic vertex {u}")
        cu = free[0]
        _free(g, lay, rank, k, cols, seq + (u,), cu, moves, log)
        chain = chain_of(g.adj, cols, u, cu)
        if any(level[x] >= lu for x in chain if x != u):
            raise InternalInvariantBroken(f"freeing {u} would recolor vertices of G_{lu}")
        swap_chain(cols, chain, cols[u], cu)
        moves.append(KempeMove(u, cu))
        log.moves += 1


def free_vertex(g: Graph, lay: Layering, col: Coloring, s: Sequence[int], c: int,
                log: FreeLog | None = None) -> tuple[Coloring, MoveSequence]:
    """Remove every problematic vertex for (last of s, c), keeping G_{level(v)} intact."""
    s = tuple(s)
    if not s:
        raise PreconditionViolated("call sequence must be nonempty")
    if any(lay.level[x] <= lay.level[y] for x, y in zip(s, s[1:])):
        raise PreconditionViolated("call sequence must be level-decreasing")
    if not 1 <= c <= col.k:
        raise PreconditionViolated(f"color {c} outside palette")
    if not is_proper(g, col):
        raise PreconditionViolated("coloring must be proper")
    log = FreeLog() if log is None else log
    cols = list(col.colors)
    moves: list[KempeMove] = []
    _free(g, lay, lay.rank(), col.k, cols, s, c, moves, log)
    return Coloring(tuple(cols), col.k), MoveSequence(tuple(moves), "mad-free")


@dataclass
class LiftStats:
    lifts: list[int] = field(default_factory=list)
    free_calls: int = 0
    layer_moves: int = 0


def _lift(g: Graph, lay: Layering, rank, k: int, cols: list[int], i: int, v0: int, c: int,
          moves: list[KempeMove], stats: LiftStats | None) -> None:
    level = lay.level
    layer = set(lay.layers[i - 1])
    a = cols[v0]
    layer_adj = [g.adj[x] & layer if x in layer else frozenset() for x in range(g.n)]
    chain = chain_of(layer_adj, cols, v0, c)
    upper = lay.upper(i)
    upper_adj = [g.adj[x] & upper if x in upper else frozenset() for x in range(g.n)]
    if chain_of(upper_adj, cols, v0, c) != chain:
        raise NotAChain(f"chain of {v0} in layer {i} is not a chain of G_{i}")
    before = list(cols)
    start = len(moves)
    prev = None
    while True:
        best = None
        for v in sorted(chain, key=rank.__getitem__):
            other = c if cols[v] == a else a
            for u in problematic_vertices(g, lay, cols, v, other):
                if best is None or rank[u] > rank[best[0]]:
                    best = (u, v, other)
        if best is None:
            break
        u, v, other = best
        if prev is not None and rank[u] >= rank[prev]:
            raise InternalInvariantBroken(f"largest problematic vertex did not decrease ({prev} -> {u})")
        prev = u
        log = FreeLog()
        _free(g, lay, rank, k, cols, (v,), other, moves, log)
        if stats is not None:
            stats.free_calls += len(log.calls)
    full = chain_of(g.adj, cols, v0, c)
    if {x for x in full if level[x] >= i} != chain:
        raise InternalInvariantBroken(f"lifted chain of {v0} leaks into G_{i}")
    swap_chain(cols, full, a, c)
    moves.append(KempeMove(v0, c))
    for x in upper:
        expected = (c if before[x] == a else a) if x in chain else before[x]
        if cols[x] != expected:
            raise InternalInvariantBroken(f"vertex {x} of G_{i} ended with the wrong color")
    if stats is not None:
        stats.lifts.append(len(moves) - start)


def lift_chain_change(g: Graph, lay: Layering, col: Coloring, i: int, move: KempeMove,
                      chain: Iterable[int] | None = None,
                      stats: LiftStats | None = None) -> tuple[Coloring, MoveSequence]:
    """Perform the layer-i Kempe change ``move`` in the whole graph.

    ``move`` names a chain of G[V_i]; if ``chain`` is given it must be that
    vertex set.  Lower layers may be recolored, G_i changes exactly as the
    chain swap prescribes.
    """
    v0, c = move
    if lay.level[v0] != i:
        raise NotAChain(f"vertex {v0} is not in layer {i}")
    if c == col[v0] or not 1 <= c <= col.k:
        raise NotAChain(f"color {c} does not define a chain at {v0}")
    if chain is not None:
        layer = set(lay.layers[i - 1])
        layer_adj = [g.adj[x] & layer if x in layer else frozenset() for x in range(g.n)]
        if set(chain) != chain_of(layer_adj, col.colors, v0, c):
            raise NotAChain("given vertex set is not the chain of the move in G[V_i]")
    cols = list(col.colors)
    moves: list[KempeMove] = []
    _lift(g, lay, lay.rank(), col.k, cols, i, v0, c, moves, stats)
    return Coloring(tuple(cols), col.k), MoveSequence(tuple(moves), "mad-lift")


def layer_lists(g: Graph, lay: Layering, cols: Sequence[int], i: int, k: int) -> dict[int, frozenset[int]]:
    """Colors left for each vertex of V_i once its neighbours above are fixed."""
    full = frozenset(range(1, k + 1))
    return {v: full - {cols[w] for w in g.adj[v] if lay.level[w] > i} for v in lay.layers[i - 1]}


def mad_equalize(g: Graph, k: int, alpha: Coloring, beta: Coloring, epsilon=None,
                 layering: Layering | None = None, stats: LiftStats | None = None) -> MoveSequence:
    """Kempe sequence from alpha to beta, fixing the layers from the top down."""
    if epsilon is not None and g.n <= MAD_EXACT_LIMIT:
        bound = k - Fraction(epsilon)
        if mad_oracle(g) > bound:
            raise PreconditionViolated(f"mad exceeds k - epsilon = {bound}")
    lay = compute_layering(g, k) if layering is None else layering
    lay.validate(g)
    for name, col in (("alpha", alpha), ("beta", beta)):
        if len(col) != g.n or not is_proper(g, col) or col.k > k:
            raise PreconditionViolated(f"{name} is not a proper {k}-coloring")
    rank = lay.rank()
    cols = list(alpha.colors)
    moves: list[KempeMove] = []
    for i in range(lay.t, 0, -1):
        lists = layer_lists(g, lay, cols, i, k)
        sub, old = g.induced(lay.layers[i - 1])
        for x, v in enumerate(old):
            if len(lists[v]) < sub.degree(x) + 1:
                raise InternalInvariantBroken(f"residual list of {v} too small in layer {i}")
        la = ListAssignment(tuple(lists[v] for v in old))
        setting = RecolorSetting.list_mode(sub, VertexOrdering.identity(sub.n), la)
        eq = equalize(sub, setting, Coloring(tuple(cols[v] for v in old), k),
                      Coloring(tuple(beta[v] for v in old), k))
        for x, c in eq.sequence:
            _lift(g, lay, rank, k, cols, i, old[x], c, moves, stats)
            if stats is not None:
                stats.layer_moves += 1
        if any(cols[v] != beta[v] for v in lay.upper(i)):
            raise InternalInvariantBroken(f"G_{i} not equal to beta after processing layer {i}")
    return MoveSequence(tuple(moves), "mad")
