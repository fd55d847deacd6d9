"""Recoloring graphs of bounded treewidth through a chordal supergraph H.

Each coloring of G is first pushed (by Kempe changes in G) to a coloring that
is also proper on H, by adding the fill edges of H one at a time.  Two
colorings proper on H are then joined by at most n Kempe changes of H, each
of which splits into Kempe changes of G along the components of its chain.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

from .core import (
    Coloring,
    Graph,
    KempeMove,
    MoveSequence,
    VertexOrdering,
    chain_of,
    invert_sequence,
    is_proper,
    split_swap,
    swap_chain,
)
from .errors import (
    InternalInvariantBroken,
    InvalidDecomposition,
    NotChordal,
    PaletteTooSmall,
    PreconditionViolated,
)


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        object.__setattr__(self, "tree_edges", tuple((int(a), int(b)) for a, b in self.tree_edges))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def validate(self, g: Graph) -> None:
        nb = len(self.bags)
        for a, b in self.tree_edges:
            if not (0 <= a < nb and 0 <= b < nb) or a == b:
                raise InvalidDecomposition(f"bad tree edge {a}-{b}")
        tree = Graph.from_edges(nb, {tuple(sorted(e)) for e in self.tree_edges})
        if nb and (tree.num_edges() != nb - 1 or not tree.is_connected()):
            raise InvalidDecomposition("bags are not connected as a tree")
        covered = set().union(*self.bags) if self.bags else set()
        if not set(range(g.n)) <= covered or any(not 0 <= x < g.n for x in covered):
            raise InvalidDecomposition("bags must cover exactly the vertices of the graph")
        for u, v in g.edges():
            if not any(u in b and v in b for b in self.bags):
                raise InvalidDecomposition(f"edge {u}-{v} is in no bag")
        for v in range(g.n):
            holding = [i for i, b in enumerate(self.bags) if v in b]
            if len(tree.components(holding)) != 1:
                raise InvalidDecomposition(f"bags containing {v} are not connected")


def peo(h: Graph) -> VertexOrdering:
    """Perfect elimination ordering (later neighbours form a clique) via
    maximum cardinality search; raises NotChordal otherwise."""
    weight = [0] * h.n
    numbered = [False] * h.n
    visit = []
    for _ in range(h.n):
        v = max((u for u in range(h.n) if not numbered[u]), key=lambda u: (weight[u], -u))
        visit.append(v)
        numbered[v] = True
        for w in h.adj[v]:
            if not numbered[w]:
                weight[w] += 1
    ordering = VertexOrdering(tuple(reversed(visit)), "peo")
    check_peo(h, ordering)
    return ordering


def check_peo(h: Graph, ordering: VertexOrdering) -> None:
    for v in ordering:
        later = ordering.greater(h, v)
        for x, y in combinations(later, 2):
            if not h.has_edge(x, y):
                raise NotChordal(f"later neighbours {x} and {y} of {v} are not adjacent",
                                 witness=(v, x, y))


@dataclass(frozen=True)
class ChordalCompletion:
    """Chordal supergraph ``host`` of ``graph`` with a PEO and its fill edges.

    ``fill_edges`` are (v, w) with v before w in the PEO, sorted by the PEO
    positions of (v, w).
    """

    graph: Graph
    host: Graph
    peo: VertexOrdering
    width: int
    fill_edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_host(cls, g: Graph, h: Graph, ordering: VertexOrdering | None = None) -> "ChordalCompletion":
        if g.n != h.n or any(not h.has_edge(u, v) for u, v in g.edges()):
            raise PreconditionViolated("host must be a supergraph on the same vertices")
        ordering = peo(h) if ordering is None else ordering
        check_peo(h, ordering)
        pos = ordering.position
        width = max((len(ordering.greater(h, v)) for v in range(h.n)), default=0)
        fill = []
        for u, v in h.edges():
            if not g.has_edge(u, v):
                fill.append((u, v) if pos[u] < pos[v] else (v, u))
        fill.sort(key=lambda e: (pos[e[0]], pos[e[1]]))
        return cls(g, h, ordering, width, tuple(fill))


def min_fill_elimination(g: Graph) -> tuple[list[int], list[tuple[int, int]]]:
    """Elimination order and fill edges; ties by fill count then vertex id."""
    nbrs = [set(a) for a in g.adj]
    alive = set(range(g.n))
    order = []
    fill = []

    def fill_of(v):
        return [(x, y) for x, y in combinations(sorted(nbrs[v] & alive), 2) if y not in nbrs[x]]

    while alive:
        v = min(alive, key=lambda u: (len(fill_of(u)), u))
        for x, y in fill_of(v):
            nbrs[x].add(y)
            nbrs[y].add(x)
            fill.append((x, y))
        order.append(v)
        alive.discard(v)
    return order, fill


def chordal_completion(g: Graph, td: TreeDecomposition | None = None) -> ChordalCompletion:
    if td is not None:
        td.validate(g)
        extra = {tuple(sorted(e)) for b in td.bags for e in combinations(sorted(b), 2)}
        h = g.with_edges(extra)
        return ChordalCompletion.from_host(g, h)
    order, fill = min_fill_elimination(g)
    h = g.with_edges(fill)
    return ChordalCompletion.from_host(g, h, VertexOrdering(tuple(order), "peo"))


def chordal_equalize(h: Graph, ordering: VertexOrdering, alpha: Coloring, beta: Coloring,
                     p: int | None = None) -> MoveSequence:
    """At most n Kempe changes of the chordal graph h, fixing vertices from the
    end of the PEO backwards."""
    check_peo(h, ordering)
    p = alpha.k if p is None else p
    for name, col in (("alpha", alpha), ("beta", beta)):
        if not is_proper(h, col) or col.k > p:
            raise PreconditionViolated(f"{name} is not a proper {p}-coloring of the host")
    pos = ordering.position
    cols = list(alpha.colors)
    moves = []
    for v in reversed(ordering.order):
        b = beta[v]
        if cols[v] == b:
            continue
        chain = chain_of(h.adj, cols, v, b)
        if any(pos[x] > pos[v] for x in chain):
            raise InternalInvariantBroken(f"chain of {v} reaches a later vertex")
        swap_chain(cols, chain, cols[v], b)
        moves.append(KempeMove(v, b))
    if tuple(cols) != beta.colors:
        raise InternalInvariantBroken("chordal sweep did not reach beta")
    return MoveSequence(tuple(moves), "chordal")


def simulate_host_moves(g: Graph, h: Graph, start: Coloring, host_moves: MoveSequence) -> MoveSequence:
    """Expand Kempe changes of the supergraph h into Kempe changes of g."""
    cols = list(start.colors)
    host_cols = list(start.colors)
    out: list[KempeMove] = []
    for i, (v, c) in enumerate(host_moves):
        if host_cols[v] == c or not 1 <= c <= start.k:
            raise PreconditionViolated(f"host move {i} is not a valid Kempe change")
        a = host_cols[v]
        chain = chain_of(h.adj, host_cols, v, c)
        swap_chain(host_cols, chain, a, c)
        out.extend(split_swap(g.adj, cols, chain, a, c))
        if cols != host_cols:
            raise InternalInvariantBroken(f"simulation diverged at host move {i}")
    return MoveSequence(tuple(out), (host_moves.provenance or "host") + "-simulated")


@dataclass
class FitStats:
    """Counters checked against the bounds of the fitting procedure."""

    augmented_moves: list[KempeMove] = field(default_factory=list)
    firing: Counter = field(default_factory=Counter)
    u_role: Counter = field(default_factory=Counter)


def fit_to_host(g: Graph, cc: ChordalCompletion, alpha: Coloring, k: int | None = None,
                stats: FitStats | None = None, clear: str = "leaking") -> tuple[Coloring, MoveSequence]:
    """Kempe changes in g leading from alpha to a coloring proper on the host.

    Fill edges vw are added one at a time.  When v and w share the color a,
    v takes a color c missing from its later host neighbours.  Before that,
    earlier neighbours y of v colored c are moved off c, from the latest
    down, by chains that stay below y.  With ``clear="leaking"`` (default)
    this is done for every such y that has a later-than-v neighbour colored
    a, which is exactly what keeps the chain at v below v.  ``clear="common"``
    only treats common neighbours of v and w; that can let the chain at v run
    into w and is kept for comparison.
    """
    if clear not in ("leaking", "common"):
        raise ValueError(f"unknown clear mode {clear!r}")
    k = alpha.k if k is None else k
    if k < cc.width + 1:
        raise PaletteTooSmall(f"need k >= width + 1 = {cc.width + 1}, got {k}")
    if not is_proper(g, alpha) or alpha.k > k:
        raise PreconditionViolated("alpha must be a proper k-coloring of g")
    stats = FitStats() if stats is None else stats
    h = cc.host
    pos = cc.peo.position
    cols = list(alpha.colors)
    cur_adj = [set(a) for a in g.adj]
    out: list[KempeMove] = []

    def free_color(adj, x):
        used = {cols[y] for y in adj[x] if pos[y] > pos[x]} | {cols[x]}
        return min(c for c in range(1, k + 1) if c not in used)

    def must_clear(y, v, w, a):
        if clear == "common":
            return y in cur_adj[w]
        return any(pos[x] > pos[v] and cols[x] == a for x in cur_adj[y])

    for v, w in cc.fill_edges:
        if cols[v] == cols[w]:
            stats.firing[v] += 1
            if stats.firing[v] > 1:
                raise InternalInvariantBroken(f"vertex {v} fired twice")
            a = cols[v]
            c = free_color(h.adj, v)
            earlier = sorted((y for y in cur_adj[v] if pos[y] < pos[v]), key=pos.__getitem__)
            for u in reversed(earlier):
                if cols[u] != c or not must_clear(u, v, w, a):
                    continue
                stats.u_role[u] += 1
                ci = free_color(cur_adj, u)
                chain = chain_of(cur_adj, cols, u, ci)
                if any(pos[x] > pos[u] for x in chain):
                    raise InternalInvariantBroken(f"chain of {u} contains a vertex after it")
                stats.augmented_moves.append(KempeMove(u, ci))
                out.extend(split_swap(g.adj, cols, chain, c, ci))
            chain = chain_of(cur_adj, cols, v, c)
            if clear == "leaking" and any(pos[x] > pos[v] for x in chain):
                raise InternalInvariantBroken(f"chain of {v} contains a vertex after it")
            stats.augmented_moves.append(KempeMove(v, c))
            out.extend(split_swap(g.adj, cols, chain, a, c))
            if cols[v] == cols[w]:
                raise InternalInvariantBroken(f"endpoints of fill edge {v}-{w} still share a color")
        cur_adj[v].add(w)
        cur_adj[w].add(v)
        if any(cols[x] == cols[y] for x in range(g.n) for y in cur_adj[x]):
            raise InternalInvariantBroken(f"coloring not proper after adding fill edge {v}-{w}")
    for u, n_roles in stats.u_role.items():
        if n_roles > cc.width:
            raise InternalInvariantBroken(f"vertex {u} cleared {n_roles} > width times")
    result = Coloring(tuple(cols), alpha.k)
    if not is_proper(h, result):
        raise InternalInvariantBroken("fitted coloring is not proper on the host")
    return result, MoveSequence(tuple(out), "treewidth-fit")


@dataclass
class TreewidthRun:
    sequence: MoveSequence
    completion: ChordalCompletion
    fit_alpha: FitStats
    fit_beta: FitStats


def tw_equalize(g: Graph, alpha: Coloring, beta: Coloring, k: int | None = None,
                td: TreeDecomposition | None = None,
                completion: ChordalCompletion | None = None) -> MoveSequence:
    return tw_equalize_run(g, alpha, beta, k, td, completion).sequence


def tw_equalize_run(g: Graph, alpha: Coloring, beta: Coloring, k: int | None = None,
                    td: TreeDecomposition | None = None,
                    completion: ChordalCompletion | None = None) -> TreewidthRun:
    """Like :func:`tw_equalize` but also returns the completion and fit counters."""
    k = alpha.k if k is None else k
    cc = completion if completion is not None else chordal_completion(g, td)
    if k < cc.width + 1:
        raise PaletteTooSmall(f"need k >= width + 1 = {cc.width + 1}, got {k}")
    sa, sb = FitStats(), FitStats()
    if alpha == beta:
        if not is_proper(g, alpha) or alpha.k > k:
            raise PreconditionViolated("alpha must be a proper k-coloring of g")
        return TreewidthRun(MoveSequence((), "treewidth"), cc, sa, sb)
    alpha2, seq_a = fit_to_host(g, cc, alpha, k, sa)
    beta2, seq_b = fit_to_host(g, cc, beta, k, sb)
    host = chordal_equalize(cc.host, cc.peo, alpha2, beta2, k)
    middle = simulate_host_moves(g, cc.host, alpha2, host)
    back = invert_sequence(g, beta, seq_b)
    seq = MoveSequence(seq_a.moves + middle.moves + back.moves, "treewidth")
    return TreewidthRun(seq, cc, sa, sb)
