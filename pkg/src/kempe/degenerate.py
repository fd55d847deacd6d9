"""Targeted recoloring of one vertex and equalization of two colorings.

Two settings share the same routine:

* degree-bounded: the ordering is a (d-1)-degeneracy sequence and every
  vertex except the last has degree at most d; palette ``1..k`` with k >= d.
* list: every vertex except the last has a list of size at least deg + 1.

:func:`target_recolor` gives ``v`` the color ``c`` while leaving every vertex
after ``v`` untouched.  :func:`equalize` walks the ordering from the end and
meets in the middle: the same color is targeted from both colorings.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .core import (
    Coloring,
    Graph,
    KempeMove,
    ListAssignment,
    MoveSequence,
    VertexOrdering,
    chain_of,
    invert_sequence,
    is_proper,
    swap_chain,
)
from .errors import InternalInvariantBroken, PreconditionViolated

BLOCKING = "blocking"
BRANCHING = "branching"
PROBLEMATIC = "problematic"


@dataclass(frozen=True)
class BadVertexReport:
    vertex: int
    kinds: frozenset[str]
    is_first_bad: bool


@dataclass(frozen=True)
class RecolorSetting:
    """Validated hypotheses for one of the two settings.

    Build with :meth:`degree_bounded` or :meth:`list_mode`; both reject inputs
    that violate the setting.
    """

    mode: str
    ordering: VertexOrdering
    lists: ListAssignment
    d: int | None = None
    k: int | None = None

    @classmethod
    def degree_bounded(cls, g: Graph, ordering: VertexOrdering, d: int, k: int | None = None) -> "RecolorSetting":
        k = d if k is None else k
        if len(ordering) != g.n:
            raise PreconditionViolated("ordering does not cover the graph")
        if k < d:
            raise PreconditionViolated(f"palette {k} smaller than d={d}")
        last = ordering.order[-1] if g.n else None
        for v in ordering:
            if len(ordering.greater(g, v)) > d - 1:
                raise PreconditionViolated(f"ordering is not a {d - 1}-degeneracy sequence at vertex {v}")
            if v != last and g.degree(v) > d:
                raise PreconditionViolated(f"vertex {v} has degree {g.degree(v)} > {d}")
        return cls("degree", ordering, ListAssignment.uniform(g.n, k), d, k)

    @classmethod
    def list_mode(cls, g: Graph, ordering: VertexOrdering, lists: ListAssignment) -> "RecolorSetting":
        if len(ordering) != g.n or len(lists) != g.n:
            raise PreconditionViolated("ordering and lists must cover the graph")
        last = ordering.order[-1] if g.n else None
        for v in ordering:
            if v != last and len(lists[v]) < g.degree(v) + 1:
                raise PreconditionViolated(f"list of vertex {v} has {len(lists[v])} < deg + 1 colors")
        return cls("list", ordering, lists, None, lists.palette_size())

    @property
    def provenance(self) -> str:
        return "alg1-degree" if self.mode == "degree" else "alg1-list"


def find_degree_ordering(g: Graph, d: int, last: int | None = None) -> VertexOrdering | None:
    """An ordering accepted by :meth:`RecolorSetting.degree_bounded`, or None.

    Greedy peeling: a vertex may be placed once it has at most d-1 remaining
    neighbours and degree at most d; ``last`` (if given) is forced to the end.
    """
    remaining = set(range(g.n))
    rem_deg = [g.degree(v) for v in range(g.n)]
    order = []
    while remaining:
        if len(remaining) == 1 and (last is None or last in remaining):
            order.append(remaining.pop())
            break
        cands = [v for v in remaining
                 if v != last and rem_deg[v] <= d - 1 and g.degree(v) <= d]
        if not cands:
            return None
        v = min(cands, key=lambda x: (rem_deg[x], x))
        order.append(v)
        remaining.discard(v)
        for w in g.adj[v]:
            rem_deg[w] -= 1
    return VertexOrdering(tuple(order), "degeneracy")


def find_list_ordering(g: Graph, lists: ListAssignment) -> VertexOrdering | None:
    """Identity order, except that a single short-listed vertex is moved last."""
    short = [v for v in range(g.n) if len(lists[v]) < g.degree(v) + 1]
    if len(short) > 1:
        return None
    order = [v for v in range(g.n) if v not in short] + short
    return VertexOrdering(tuple(order), "arbitrary")


def _check_target(g: Graph, setting: RecolorSetting, cols, v: int, c: int) -> None:
    closed = {cols[w] for w in setting.ordering.greater(g, v)} | {cols[v]}
    if c not in setting.lists[v] or c in closed:
        raise PreconditionViolated(
            f"color {c} must lie in L({v}) and avoid the colors of v and its later neighbours")


def _classify(g: Graph, setting: RecolorSetting, cols, v: int, c: int):
    pos = setting.ordering.position
    lists = setting.lists
    a = cols[v]
    chain = chain_of(g.adj, cols, v, c)
    kinds: dict[int, set[str]] = {}
    for u in chain:
        if u == v:
            continue
        ks = set()
        if setting.mode == "list" and (c not in lists[u] or a not in lists[u]):
            ks.add(BLOCKING)
        inside = [w for w in g.adj[u] if w in chain]
        if len(inside) >= 3:
            ks.add(BRANCHING)
        if sum(1 for w in inside if pos[w] > pos[u]) >= 2:
            ks.add(PROBLEMATIC)
        if ks:
            kinds[u] = ks
    # first bad vertices: reachable from v without crossing another bad vertex
    first = set()
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if y in chain and y not in seen:
                seen.add(y)
                if y in kinds:
                    first.add(y)
                else:
                    stack.append(y)
    greatest = max(first, key=pos.__getitem__) if first else None
    return chain, kinds, first, greatest


def classify_bad(g: Graph, setting: RecolorSetting, col: Coloring, v: int, c: int):
    """Bad vertices of the chain of ``v`` for color ``c``.

    Returns ``(reports, greatest_first_bad)`` with reports sorted along the
    ordering.
    """
    _check_target(g, setting, col.colors, v, c)
    _, kinds, first, greatest = _classify(g, setting, col.colors, v, c)
    pos = setting.ordering.position
    reports = [BadVertexReport(u, frozenset(ks), u in first)
               for u, ks in sorted(kinds.items(), key=lambda kv: pos[kv[0]])]
    return reports, greatest


@dataclass
class RecolorTrace:
    """Instrumentation filled in by :func:`target_recolor` and :func:`equalize`.

    ``iterations`` holds ``(target vertex, greatest first bad vertex)`` per
    loop iteration, ``recolor_counts`` how often each vertex changed color and
    ``calls`` one ``(vertex, moves performed)`` entry per top-level call.

    ``regressions`` lists ``(target, previous, next)`` whenever the greatest
    first bad vertex failed to move down between two iterations.  This does
    happen: a recursive call may pull a smaller vertex into the chain next to
    a larger one, which then becomes branching.  With ``strict`` set such an
    event raises instead.
    """

    iterations: list[tuple[int, int]] = field(default_factory=list)
    recolor_counts: dict[int, int] = field(default_factory=dict)
    calls: list[tuple[int, int]] = field(default_factory=list)
    on_iteration: Callable[[int, int], None] | None = None
    regressions: list[tuple[int, int, int]] = field(default_factory=list)
    strict: bool = False

    def record_swap(self, chain) -> None:
        for x in chain:
            self.recolor_counts[x] = self.recolor_counts.get(x, 0) + 1


def _target(g: Graph, setting: RecolorSetting, cols: list[int], v: int, c: int,
            moves: list[KempeMove], trace: RecolorTrace | None) -> None:
    pos = setting.ordering.position
    lists = setting.lists
    prev = None
    rounds = 0
    while True:
        _, kinds, _, u = _classify(g, setting, cols, v, c)
        if u is None:
            break
        rounds += 1
        if rounds > g.n * g.n:
            raise InternalInvariantBroken(f"no progress while recoloring {v}")
        if prev is not None and pos[u] >= pos[prev]:
            if trace is not None:
                trace.regressions.append((v, prev, u))
                if trace.strict:
                    raise InternalInvariantBroken(
                        f"greatest first bad vertex did not decrease ({prev} -> {u}) while recoloring {v}")
        prev = u
        if trace is not None:
            trace.iterations.append((v, u))
            if trace.on_iteration:
                trace.on_iteration(v, u)
        used = {cols[w] for w in g.adj[u]} | {cols[u]}
        free = sorted(lists[u] - used)
        if free:
            moves.append(KempeMove(u, free[0]))
            cols[u] = free[0]
            if trace is not None:
                trace.record_swap((u,))
            continue
        if setting.mode == "list":
            raise InternalInvariantBroken(f"no free list color at bad vertex {u}")
        bad_nbrs = sum(1 for w in g.adj[u] if w in kinds)
        if bad_nbrs > 1:
            raise InternalInvariantBroken(f"vertex {u} has {bad_nbrs} bad neighbours")
        upper = {cols[w] for w in setting.ordering.greater(g, u)} | {cols[u]}
        options = sorted(lists[u] - upper)
        if not options:
            raise InternalInvariantBroken(f"no color available to recurse on {u}")
        _target(g, setting, cols, u, options[0], moves, trace)
    a = cols[v]
    chain = chain_of(g.adj, cols, v, c)
    swap_chain(cols, chain, a, c)
    moves.append(KempeMove(v, c))
    if trace is not None:
        trace.record_swap(chain)


def target_recolor(g: Graph, setting: RecolorSetting, col: Coloring, v: int, c: int,
                   trace: RecolorTrace | None = None) -> tuple[Coloring, MoveSequence]:
    """Recolor ``v`` with ``c`` without touching any vertex after ``v``."""
    _check_target(g, setting, col.colors, v, c)
    cols = list(col.colors)
    moves: list[KempeMove] = []
    _target(g, setting, cols, v, c, moves, trace)
    pos = setting.ordering.position
    for w in range(g.n):
        if pos[w] > pos[v] and cols[w] != col[w]:
            raise InternalInvariantBroken(f"vertex {w} after {v} was recolored")
    if trace is not None:
        trace.calls.append((v, len(moves)))
    out = Coloring(tuple(cols), col.k)
    if not is_proper(g, out, setting.lists):
        raise InternalInvariantBroken("target_recolor produced an improper coloring")
    return out, MoveSequence(tuple(moves), setting.provenance)


@dataclass(frozen=True)
class Equalization:
    """Both halves of a meet-in-the-middle recoloring and their composition."""

    from_alpha: MoveSequence
    from_beta: MoveSequence
    meeting: Coloring
    sequence: MoveSequence


def choose_color(g: Graph, setting: RecolorSetting, a, b, v: int) -> int:
    """Smallest color of L(v) minus the later neighbours' colors with p_c <= 1.

    p_c counts the earlier neighbours colored c in either coloring.  When no
    color reaches p_c <= 1 (possible only for a vertex of degree >= k, which the
    list-size hypotheses exclude except at the last vertex) the smallest color
    of minimum p_c is used.
    """
    later = {a[w] for w in setting.ordering.greater(g, v)}
    options = sorted(setting.lists[v] - later)
    if not options:
        raise PreconditionViolated(f"no admissible color for vertex {v}")
    earlier = setting.ordering.smaller(g, v)

    def p(c):
        return sum(1 for w in earlier if a[w] == c) + sum(1 for w in earlier if b[w] == c)

    good = [c for c in options if p(c) <= 1]
    if good:
        return good[0]
    return min(options, key=lambda c: (p(c), c))


def equalize(g: Graph, setting: RecolorSetting, alpha: Coloring, beta: Coloring,
             trace: RecolorTrace | None = None) -> Equalization:
    for name, col in (("alpha", alpha), ("beta", beta)):
        if len(col) != g.n or not is_proper(g, col, setting.lists):
            raise PreconditionViolated(f"{name} is not a proper coloring in this setting")
    a = list(alpha.colors)
    b = list(beta.colors)
    moves_a: list[KempeMove] = []
    moves_b: list[KempeMove] = []
    order = setting.ordering.order
    for j in reversed(range(g.n)):
        v = order[j]
        if a[v] == b[v]:
            continue
        c = choose_color(g, setting, a, b, v)
        for cols, moves in ((a, moves_a), (b, moves_b)):
            if cols[v] != c:
                start = len(moves)
                _target(g, setting, cols, v, c, moves, trace)
                if trace is not None:
                    trace.calls.append((v, len(moves) - start))
        if any(a[w] != b[w] for w in order[j:]):
            raise InternalInvariantBroken(f"colorings disagree after fixing position {j}")
    meeting = Coloring(tuple(a), alpha.k)
    half_a = MoveSequence(tuple(moves_a), setting.provenance)
    half_b = MoveSequence(tuple(moves_b), setting.provenance)
    back = invert_sequence(g, beta, half_b)
    return Equalization(half_a, half_b, meeting,
                        MoveSequence(half_a.moves + back.moves, "prop2-equalize"))
