"""Named small graphs and random instance generators."""
from __future__ import annotations

import itertools
import random

from .core import Coloring, Graph, chain_of, degeneracy_ordering, swap_chain

PRISM_LABELS = ("o1", "o2", "o3", "i1", "i2", "i3")

# The two frozen 3-colorings drawn side by side for the prism, with
# magenta=1, cyan=2, orange=3; vertex order o1 o2 o3 i1 i2 i3.
PRISM_FROZEN_LEFT = (2, 3, 1, 1, 2, 3)
PRISM_FROZEN_RIGHT = (3, 1, 2, 1, 2, 3)


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(leaves: int) -> Graph:
    """Center is vertex 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def k3() -> Graph:
    return complete(3)


def p4() -> Graph:
    return path(4)


def c4() -> Graph:
    return cycle(4)


def c5() -> Graph:
    return cycle(5)


def k4() -> Graph:
    return complete(4)


def k33() -> Graph:
    return complete_bipartite(3, 3)


def prism() -> Graph:
    """Two triangles o1o2o3 and i1i2i3 joined by the matching oj-ij."""
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    return Graph.from_edges(6, edges, PRISM_LABELS)


def is_prism(g: Graph) -> bool:
    """Isomorphism test against :func:`prism`."""
    if g.n != 6 or g.num_edges() != 9 or any(g.degree(v) != 3 for v in g.vertices()):
        return False
    target = set(prism().edges())
    edges = g.edges()
    for perm in itertools.permutations(range(6)):
        if all(tuple(sorted((perm[u], perm[v]))) in target for u, v in edges):
            return True
    return False


# -- random instances -------------------------------------------------------

def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def random_chordal(n: int, rng: random.Random, max_clique: int | None = None) -> Graph:
    """Chordal graph built backwards along a perfect elimination ordering.

    Vertex ``v`` is attached to a random subset of a clique among the
    vertices already placed; the construction order reversed is a PEO.
    """
    order = list(range(n))
    rng.shuffle(order)
    placed: list[int] = []
    nbrs: dict[int, set[int]] = {v: set() for v in range(n)}
    edges = []
    for v in order:
        if placed:
            anchor = rng.choice(placed)
            clique = [anchor] + [w for w in nbrs[anchor] if w in set(placed) and rng.random() < 0.7]
            # keep only a clique: greedily drop non-adjacent members
            chosen: list[int] = []
            for w in clique:
                if all(w in nbrs[x] for x in chosen):
                    chosen.append(w)
            if max_clique is not None:
                chosen = chosen[: max_clique - 1]
            if rng.random() < 0.15:
                chosen = []
            for w in chosen:
                nbrs[v].add(w)
                nbrs[w].add(v)
                edges.append((v, w))
        placed.append(v)
    return Graph.from_edges(n, edges)


def random_partial_ktree(n: int, width: int, rng: random.Random, keep: float = 0.75) -> tuple[Graph, list[list[int]], list[tuple[int, int]]]:
    """Random graph of treewidth at most ``width`` with its tree decomposition.

    Builds a random ``width``-tree, records its bags, and keeps each edge with
    probability ``keep``.  Returns ``(graph, bags, tree_edges)``.
    """
    width = min(width, max(n - 1, 0))
    base = list(range(width + 1))
    edges = set(itertools.combinations(base, 2))
    cliques = [tuple(base)]
    bags = [list(base)]
    tree_edges = []
    for v in range(width + 1, n):
        idx = rng.randrange(len(cliques))
        parent = cliques[idx]
        drop = rng.randrange(len(parent))
        face = tuple(x for i, x in enumerate(parent) if i != drop)
        for x in face:
            edges.add((x, v))
        new = tuple(sorted(face + (v,)))
        cliques.append(new)
        bags.append(list(new))
        tree_edges.append((idx, len(bags) - 1))
    kept = [e for e in sorted(edges) if rng.random() < keep]
    perm = list(range(n))
    rng.shuffle(perm)
    g = Graph.from_edges(n, [(perm[u], perm[v]) for u, v in kept])
    bags = [sorted(perm[x] for x in b) for b in bags]
    return g, bags, tree_edges


def random_sparse(n: int, max_avg: float, rng: random.Random) -> Graph:
    """Random graph whose edge count keeps the global average degree below ``max_avg``."""
    m = int(max_avg * n / 2)
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    return Graph.from_edges(n, pairs[:m])


def greedy_coloring(g: Graph, k: int, order=None) -> Coloring | None:
    """First-fit coloring along ``order`` (default: reverse degeneracy order)."""
    if order is None:
        order = list(reversed(degeneracy_ordering(g)[0].order))
    cols = [0] * g.n
    for v in order:
        used = {cols[w] for w in g.adj[v]}
        free = next((c for c in range(1, k + 1) if c not in used), None)
        if free is None:
            return None
        cols[v] = free
    return Coloring(tuple(cols), k)


def random_coloring(g: Graph, k: int, rng: random.Random, mix: int = 0) -> Coloring | None:
    """A proper k-coloring by randomized first-fit, then ``mix`` random Kempe changes.

    Returns ``None`` when first-fit fails on every attempted order.
    """
    col = None
    for _ in range(50):
        order = list(range(g.n))
        rng.shuffle(order)
        cols = [0] * g.n
        ok = True
        for v in order:
            used = {cols[w] for w in g.adj[v]}
            free = [c for c in range(1, k + 1) if c not in used]
            if not free:
                ok = False
                break
            cols[v] = rng.choice(free)
        if ok:
            col = cols
            break
    if col is None:
        return None
    for _ in range(mix):
        v = rng.randrange(g.n) if g.n else 0
        if g.n == 0 or k < 2:
            break
        c = rng.choice([x for x in range(1, k + 1) if x != col[v]])
        swap_chain(col, chain_of(g.adj, col, v, c), col[v], c)
    return Coloring(tuple(col), k)
