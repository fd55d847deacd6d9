"""Recoloring graphs of maximum degree at most k.

Non-regular graphs (or k above the maximum degree) fall directly under the
degree-bounded equalizer.  For a k-regular graph every vertex has two
neighbours sharing a color, so each coloring is a coloring of some quotient
obtained by identifying such a pair; quotients are degenerate enough for the
equalizer, and two colorings are joined through a coloring compatible with
both identifications.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .core import (
    Coloring,
    Graph,
    KempeMove,
    MoveSequence,
    chain_of,
    degeneracy,
    degeneracy_ordering,
    is_proper,
    split_swap,
    swap_chain,
    verify_sequence,
)
from .degenerate import RecolorSetting, equalize, find_degree_ordering
from .errors import (
    AdjacentPair,
    BudgetExceeded,
    InconsistentColoring,
    InternalInvariantBroken,
    NotAClique,
    NotASeparator,
    PreconditionViolated,
    RoutingFailed,
    ThreePrismExcluded,
)
from .fixtures import is_prism
from .lvm import lvm_sequence
from .oracle import Budget, build_reconf, path_moves

log = logging.getLogger(__name__)


class EligiblePair(NamedTuple):
    center: int
    pair: tuple[int, int]


def eligible_pairs(g: Graph, u: int) -> list[EligiblePair]:
    """Non-adjacent pairs of neighbours of u, sorted."""
    nbrs = sorted(g.neighbors(u))
    return [EligiblePair(u, (x, y)) for x, y in combinations(nbrs, 2) if not g.has_edge(x, y)]


@dataclass(frozen=True)
class Identification:
    """Quotient of ``base`` by merging the vertices of each pair.

    Quotient vertices are the merge classes ordered by their smallest base
    vertex; ``vertex_map[b]`` is the quotient vertex of base vertex b.
    """

    base: Graph
    merged_pairs: tuple[tuple[int, int], ...]
    quotient: Graph
    vertex_map: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]

    def merged(self, v: int) -> int:
        return self.vertex_map[v]

    def project(self, col: Coloring | Sequence[int]) -> Coloring:
        colors = col.colors if isinstance(col, Coloring) else tuple(col)
        k = col.k if isinstance(col, Coloring) else max(colors, default=1)
        out = []
        for cls in self.classes:
            vals = {colors[b] for b in cls}
            if len(vals) != 1:
                raise InconsistentColoring(f"vertices {cls} are colored {sorted(vals)}")
            out.append(vals.pop())
        return Coloring(tuple(out), k)

    def lift(self, qcol: Coloring) -> Coloring:
        return Coloring(tuple(qcol[self.vertex_map[b]] for b in range(self.base.n)), qcol.k)


def identify_pairs(g: Graph, pairs: Iterable[Sequence[int]]) -> Identification:
    pairs = tuple((int(p[0]), int(p[1])) for p in pairs)
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v, w in pairs:
        if v == w:
            raise PreconditionViolated(f"cannot identify {v} with itself")
        parent[find(v)] = find(w)
    groups: dict[int, list[int]] = {}
    for b in range(g.n):
        groups.setdefault(find(b), []).append(b)
    classes = sorted((tuple(sorted(m)) for m in groups.values()), key=lambda c: c[0])
    vmap = [0] * g.n
    for i, cls in enumerate(classes):
        for b in cls:
            vmap[b] = i
    edges = set()
    for x, y in g.edges():
        qx, qy = vmap[x], vmap[y]
        if qx == qy:
            raise AdjacentPair(f"merging joins adjacent vertices {x} and {y}")
        edges.add((min(qx, qy), max(qx, qy)))
    labels = tuple("+".join(g.label(b) for b in cls) for cls in classes)
    quotient = Graph.from_edges(len(classes), sorted(edges), labels)
    return Identification(g, pairs, quotient, tuple(vmap), tuple(classes))


def identify(g: Graph, v: int, w: int) -> Identification:
    """The graph obtained by merging the non-adjacent vertices v and w."""
    if g.has_edge(v, w):
        raise AdjacentPair(f"{v} and {w} are adjacent")
    return identify_pairs(g, [(v, w)])


def lift_quotient_move(ident: Identification, base_col: Coloring, move: KempeMove) -> MoveSequence:
    """Base moves realizing one quotient move: one per base chain of the preimage."""
    qcol = ident.project(base_col)
    v, c = move
    if not 1 <= c <= qcol.k or qcol[v] == c:
        raise PreconditionViolated(f"quotient move {tuple(move)} is not valid")
    a = qcol[v]
    qchain = chain_of(ident.quotient.adj, qcol.colors, v, c)
    preimage = [b for b in range(ident.base.n) if ident.vertex_map[b] in qchain]
    cols = list(base_col.colors)
    moves = split_swap(ident.base.adj, cols, preimage, a, c)
    return MoveSequence(tuple(moves), "lift")


def _lift_sequence(ident: Identification, base_col: Coloring, qmoves: Iterable[KempeMove]) -> tuple[Coloring, list[KempeMove]]:
    cols = list(base_col.colors)
    out: list[KempeMove] = []
    qcols = list(ident.project(base_col).colors)
    for v, c in qmoves:
        a = qcols[v]
        qchain = chain_of(ident.quotient.adj, qcols, v, c)
        swap_chain(qcols, qchain, a, c)
        preimage = [b for b in range(ident.base.n) if ident.vertex_map[b] in qchain]
        out.extend(split_swap(ident.base.adj, cols, preimage, a, c))
        for cls in ident.classes:
            if len({cols[b] for b in cls}) != 1:
                raise InternalInvariantBroken(f"merged vertices {cls} split apart")
    return Coloring(tuple(cols), base_col.k), out


# --- clique separators -----------------------------------------------------

def _restricted_equalize(g: Graph, part: set[int], cur: list[int], target: Sequence[int], k: int) -> list[KempeMove]:
    """Equalize the subgraph induced by ``part`` from cur to target (on part)."""
    sub = g.restrict(part)
    order = find_degree_ordering(sub, k)
    if order is None:
        raise PreconditionViolated("side of the separator is not degenerate enough for the palette")
    setting = RecolorSetting.degree_bounded(sub, order, k, k)
    goal = [target[x] if x in part else cur[x] for x in range(g.n)]
    eq = equalize(sub, setting, Coloring(tuple(cur), k), Coloring(tuple(goal), k))
    return list(eq.sequence.moves)


def _swap_everywhere(g: Graph, cols: list[int], side: set[int], a: int, b: int) -> list[KempeMove]:
    """Swap a and b on every vertex of ``side`` colored a or b, chain by chain."""
    members = {x for x in side if cols[x] in (a, b)}
    moves: list[KempeMove] = []
    while members:
        y = min(members)
        other = b if cols[y] == a else a
        comp = chain_of(g.adj, cols, y, other)
        moves.append(KempeMove(y, other))
        swap_chain(cols, comp, a, b)
        members -= comp
    return moves


def separator_equalize(g: Graph, g1: Iterable[int], g2: Iterable[int], s: Iterable[int],
                       alpha: Coloring, beta: Coloring) -> MoveSequence:
    """Join alpha and beta when a clique s separates the vertex sets g1 and g2.

    Each side is equalized in turn.  A move whose chain meets s is followed
    by swapping its two colors on the whole far side, so that the far side
    only ever changes by a permutation of colors.  The permutation left on
    the first side fixes the colors of s and is undone by transpositions.
    """
    v1, v2, sep = set(g1), set(g2), set(s)
    k = alpha.k
    if v1 | v2 != set(range(g.n)) or v1 & v2 != sep:
        raise NotASeparator("the two sides must cover the graph and meet exactly in s")
    for x in v1 - sep:
        if any(y in v2 - sep for y in g.adj[x]):
            raise NotASeparator(f"vertex {x} has a neighbour across the separator")
    for x, y in combinations(sorted(sep), 2):
        if not g.has_edge(x, y):
            raise NotAClique(f"{x} and {y} in the separator are not adjacent")
    for name, col in (("alpha", alpha), ("beta", beta)):
        if not is_proper(g, col):
            raise PreconditionViolated(f"{name} is not proper")
    cols = list(alpha.colors)
    moves: list[KempeMove] = []

    def run_side(near, far):
        near_adj = g.restrict(near).adj
        for v, c in _restricted_equalize(g, near, cols, beta.colors, k):
            a = cols[v]
            near_chain = chain_of(near_adj, cols, v, c)
            full_chain = chain_of(g.adj, cols, v, c)
            if full_chain & near != near_chain:
                raise InternalInvariantBroken("chain crosses the separator unexpectedly")
            moves.append(KempeMove(v, c))
            swap_chain(cols, full_chain, a, c)
            if near_chain & sep:
                moves.extend(_swap_everywhere(g, cols, far - sep - full_chain, a, c))

    run_side(v1, v2)
    run_side(v2, v1)
    # cols now equals beta on v2 and a color permutation of beta on v1
    sigma: dict[int, int] = {}
    for x in v1:
        if sigma.setdefault(beta[x], cols[x]) != cols[x]:
            raise InternalInvariantBroken("first side is not a permutation of beta")
    fixed = {beta[x] for x in sep}
    side = v1 - sep
    while True:
        wrong = sorted(x for x in side if cols[x] != beta[x])
        if not wrong:
            break
        x = wrong[0]
        a, b = cols[x], beta[x]
        if a in fixed or b in fixed:
            raise InternalInvariantBroken("residual permutation moves a separator color")
        moves.extend(_swap_everywhere(g, cols, side, a, b))
    seq = MoveSequence(tuple(moves), "separator")
    if verify_sequence(g, alpha, seq) != beta:
        raise InternalInvariantBroken("separator routing did not reach beta")
    return seq


def clique_separators(g: Graph) -> list[tuple[set[int], set[int], set[int]]]:
    """(side1, side2, separator) triples for small clique separators of g."""
    out = []
    for size in (1, 2, 3):
        for sep in combinations(range(g.n), size):
            if any(not g.has_edge(x, y) for x, y in combinations(sep, 2)):
                continue
            rest = [x for x in range(g.n) if x not in sep]
            comps = g.components(rest)
            if len(comps) < 2:
                continue
            first = set(comps[0])
            out.append((first | set(sep), set(range(g.n)) - first, set(sep)))
    return out


# --- driver ----------------------------------------------------------------

@dataclass
class DeltaRun:
    sequence: MoveSequence
    route: str
    warnings: list[str] = field(default_factory=list)
    pairs: tuple = ()


def _degree_route(g: Graph, k: int, alpha: Coloring, beta: Coloring) -> MoveSequence | None:
    order = find_degree_ordering(g, k)
    if order is None:
        return None
    setting = RecolorSetting.degree_bounded(g, order, k, k)
    return equalize(g, setting, alpha, beta).sequence


def _clique_route(g: Graph, alpha: Coloring, beta: Coloring) -> MoveSequence:
    cols = list(alpha.colors)
    moves = []
    for v in range(g.n):
        if cols[v] != beta[v]:
            c = beta[v]
            chain = chain_of(g.adj, cols, v, c)
            swap_chain(cols, chain, cols[v], c)
            moves.append(KempeMove(v, c))
    return MoveSequence(tuple(moves), "clique")


def find_common_coloring(q: Graph, k: int, node_limit: int = 200_000) -> Coloring | None:
    """A proper k-coloring of q: greedy along a degeneracy order, then backtracking."""
    order, _ = degeneracy_ordering(q)
    seq = list(reversed(order.order))
    cols = [0] * q.n
    for v in seq:
        used = {cols[w] for w in q.adj[v]}
        free = [c for c in range(1, k + 1) if c not in used]
        if not free:
            break
        cols[v] = free[0]
    else:
        return Coloring(tuple(cols), k)
    cols = [0] * q.n
    budget = [node_limit]

    def rec(i):
        if i == len(seq):
            return True
        budget[0] -= 1
        if budget[0] < 0:
            raise BudgetExceeded("coloring search budget exhausted")
        v = seq[i]
        used = {cols[w] for w in q.adj[v]}
        for c in range(1, k + 1):
            if c not in used:
                cols[v] = c
                if rec(i + 1):
                    return True
        cols[v] = 0
        return False

    try:
        found = rec(0)
    except BudgetExceeded:
        return None
    return Coloring(tuple(cols), k) if found else None


def _quotient_leg(g: Graph, pair: tuple[int, int], k: int, start: Coloring, end: Coloring) -> list[KempeMove] | None:
    ident = identify(g, *pair)
    order = find_degree_ordering(ident.quotient, k, last=ident.merged(pair[0]))
    if order is None:
        return None
    setting = RecolorSetting.degree_bounded(ident.quotient, order, k, k)
    eq = equalize(ident.quotient, setting, ident.project(start), ident.project(end))
    reached, moves = _lift_sequence(ident, start, eq.sequence.moves)
    if reached != end:
        raise InternalInvariantBroken("lifted quotient leg missed its target")
    return moves


def _identification_route(g: Graph, k: int, alpha: Coloring, beta: Coloring):
    def mono(col):
        seen, out = set(), []
        for u in range(g.n):
            for ep in eligible_pairs(g, u):
                x, y = ep.pair
                if col[x] == col[y] and ep.pair not in seen:
                    seen.add(ep.pair)
                    out.append(ep)
        return out

    for pa in mono(alpha):
        for pb in mono(beta):
            try:
                both = identify_pairs(g, [pa.pair, pb.pair])
            except AdjacentPair:
                continue
            qgamma = find_common_coloring(both.quotient, k)
            if qgamma is None:
                continue
            gamma = both.lift(qgamma)
            leg1 = _quotient_leg(g, pa.pair, k, alpha, gamma)
            if leg1 is None:
                continue
            leg2 = _quotient_leg(g, pb.pair, k, gamma, beta)
            if leg2 is None:
                continue
            return MoveSequence(tuple(leg1 + leg2), "delta-identification"), (pa, pb)
    return None, ()


def _separator_route(g: Graph, k: int, alpha: Coloring, beta: Coloring) -> MoveSequence | None:
    for v1, v2, sep in clique_separators(g):
        try:
            return separator_equalize(g, v1, v2, sep, alpha, beta)
        except PreconditionViolated:
            continue
    return None


def _fallback(g: Graph, k: int, alpha: Coloring, beta: Coloring) -> MoveSequence:
    if k >= degeneracy(g) + 1:
        return lvm_sequence(g, alpha, beta, k)
    rg = build_reconf(g, k, Budget(max_vertices=12, max_colors=max(k, 4), max_colorings=500_000))
    seq = path_moves(rg, alpha, beta)
    if seq is None:
        raise RoutingFailed("the two colorings are not Kempe equivalent")
    return seq


def delta_equalize_run(g: Graph, k: int, alpha: Coloring, beta: Coloring,
                       allow_fallback: bool = True) -> DeltaRun:
    if g.max_degree() > k:
        raise PreconditionViolated(f"maximum degree {g.max_degree()} exceeds k={k}")
    if g.n and not g.is_connected():
        raise PreconditionViolated("graph must be connected")
    if k == 3 and is_prism(g):
        raise ThreePrismExcluded("the 3-prism has non-equivalent 3-colorings")
    for name, col in (("alpha", alpha), ("beta", beta)):
        if len(col) != g.n or col.k > k or not is_proper(g, col):
            raise PreconditionViolated(f"{name} is not a proper {k}-coloring")
    if alpha == beta:
        return DeltaRun(MoveSequence((), "delta"), "trivial")
    if all(g.has_edge(x, y) for x, y in combinations(range(g.n), 2)):
        return DeltaRun(_clique_route(g, alpha, beta), "clique")
    if not g.is_regular() or g.max_degree() < k:
        seq = _degree_route(g, k, alpha, beta)
        if seq is not None:
            return DeltaRun(seq, "degenerate")
    else:
        seq, pairs = _identification_route(g, k, alpha, beta)
        if seq is not None:
            return DeltaRun(seq, "identification", pairs=pairs)
    seq = _separator_route(g, k, alpha, beta)
    if seq is not None:
        return DeltaRun(seq, "separator")
    if not allow_fallback:
        raise RoutingFailed("no identification or separator route applies")
    msg = "routing failed; used the desk-scale fallback"
    log.warning(msg)
    return DeltaRun(_fallback(g, k, alpha, beta), "fallback", [msg])


def delta_equalize(g: Graph, k: int, alpha: Coloring, beta: Coloring) -> MoveSequence:
    return delta_equalize_run(g, k, alpha, beta).sequence
