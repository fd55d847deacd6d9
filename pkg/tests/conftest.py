import itertools
import random

import networkx as nx
import pytest

from kempe.core import Graph


def atlas_graphs(max_n, connected=True):
    """Every graph on 1..max_n vertices up to isomorphism (networkx atlas, n <= 7)."""
    out = []
    for G in nx.graph_atlas_g()[1:]:
        n = G.number_of_nodes()
        if n > max_n:
            break
        if connected and not nx.is_connected(G):
            continue
        out.append(Graph.from_edges(n, G.edges()))
    return out


def cubic_graphs(n):
    """Connected cubic graphs on n vertices, one per isomorphism class."""
    found = {}
    deg = [0] * n

    def rec(edges, v):
        while v < n and deg[v] == 3:
            v += 1
        if v == n:
            G = nx.Graph(list(edges))
            if G.number_of_nodes() != n or not nx.is_connected(G):
                return
            key = nx.weisfeiler_lehman_graph_hash(G)
            bucket = found.setdefault(key, [])
            if not any(nx.is_isomorphic(G, H) for H in bucket):
                bucket.append(G)
            return
        need = 3 - deg[v]
        cands = [w for w in range(v + 1, n) if deg[w] < 3]
        for ws in itertools.combinations(cands, need):
            for w in ws:
                deg[w] += 1
            deg[v] = 3
            rec(edges + [(v, w) for w in ws], v + 1)
            deg[v] -= need
            for w in ws:
                deg[w] -= 1

    # any cubic graph can be relabeled so that N(0) = {1, 2, 3}
    for w in (1, 2, 3):
        deg[w] = 1
    deg[0] = 3
    rec([(0, 1), (0, 2), (0, 3)], 1)
    graphs = [H for bucket in found.values() for H in bucket]
    return [Graph.from_edges(n, sorted(tuple(sorted(e)) for e in H.edges())) for H in graphs]


@pytest.fixture
def rng():
    return random.Random(20240611)


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def acceptance_lines(request):
    return request.config.stash[_ACCEPTANCE]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
