"""Baseline recursive recoloring of d-degenerate graphs with k >= d + 1 colors.

Peel a vertex of minimum degree, recolor the rest recursively, and replay
each recursive move in the full graph.  A move is replayed verbatim unless
the peeled vertex would glue two chains together; in that case the peeled
vertex first takes a color missing from its closed neighbourhood.  The
output can be exponentially long and is meant as a reference.
"""
from __future__ import annotations

from .core import (
    Coloring,
    Graph,
    KempeMove,
    MoveSequence,
    chain_of,
    degeneracy_ordering,
    is_proper,
    swap_chain,
)
from .errors import PaletteTooSmall, PreconditionViolated


def lvm_sequence(g: Graph, alpha: Coloring, beta: Coloring, k: int | None = None) -> MoveSequence:
    k = alpha.k if k is None else k
    order, d = degeneracy_ordering(g)
    if k < d + 1:
        raise PaletteTooSmall(f"need k >= degeneracy + 1 = {d + 1}, got {k}")
    if alpha.k > k or beta.k > k:
        raise PreconditionViolated("colorings use a larger palette than k")
    if not (is_proper(g, alpha) and is_proper(g, beta)):
        raise PreconditionViolated("alpha and beta must be proper")
    moves = _solve(g, list(order.order), 0, list(alpha.colors), list(beta.colors), k)
    return MoveSequence(tuple(moves), "lvm")


def _solve(g: Graph, order: list[int], i: int, cur: list[int], target: list[int], k: int) -> list[KempeMove]:
    """Moves turning ``cur`` into ``target`` on the graph induced by ``order[i:]``.

    ``cur`` is updated in place.
    """
    if i >= len(order):
        return []
    v = order[i]
    active = set(order[i:])
    sub_adj = [g.adj[x] & active if x in active else frozenset() for x in range(g.n)]
    rest = active - {v}
    rest_adj = [sub_adj[x] - {v} if x in rest else frozenset() for x in range(g.n)]

    inner = _solve_copy(g, order, i + 1, cur, target, k)
    out: list[KempeMove] = []
    for u, c in inner:
        a = cur[u]
        small = chain_of(rest_adj, cur, u, c)
        big = chain_of(sub_adj, cur, u, c)
        if big - {v} != small:
            used = {cur[w] for w in sub_adj[v]} | {cur[v]}
            cv = min(x for x in range(1, k + 1) if x not in used)
            out.append(KempeMove(v, cv))
            cur[v] = cv
            big = chain_of(sub_adj, cur, u, c)
        out.append(KempeMove(u, c))
        swap_chain(cur, big, a, c)
    if cur[v] != target[v]:
        out.append(KempeMove(v, target[v]))
        cur[v] = target[v]
    return out


def _solve_copy(g, order, i, cur, target, k):
    # the recursive moves are computed on a scratch copy, then replayed on cur
    scratch = list(cur)
    return _solve(g, order, i, scratch, target, k)
