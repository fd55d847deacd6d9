import pytest

from kempe.core import Coloring, degeneracy, verify_sequence
from kempe.errors import PaletteTooSmall, PreconditionViolated
from kempe.fixtures import complete, cycle, k3, p4, random_coloring, random_graph
from kempe.lvm import lvm_sequence
from kempe.oracle import build_reconf


def test_identical_endpoints():
    col = Coloring((1, 2, 1, 2), 2)
    assert len(lvm_sequence(p4(), col, col)) == 0


def test_p4():
    alpha, beta = Coloring((1, 2, 1, 2), 2), Coloring((2, 1, 2, 1), 2)
    seq = lvm_sequence(p4(), alpha, beta)
    assert verify_sequence(p4(), alpha, seq) == beta
    assert seq.provenance == "lvm"


def test_k3_all_pairs():
    nodes = build_reconf(k3(), 3).nodes
    assert len(nodes) == 6
    for a in nodes:
        for b in nodes:
            assert verify_sequence(k3(), a, lvm_sequence(k3(), a, b)) == b


def test_palette_too_small():
    col = Coloring((1, 2, 1, 2), 2)
    with pytest.raises(PaletteTooSmall):
        lvm_sequence(cycle(4), col, col)


def test_rejects_improper():
    with pytest.raises(PreconditionViolated):
        lvm_sequence(p4(), Coloring((1, 1, 2, 1), 2), Coloring((1, 2, 1, 2), 2))


def test_random_graphs(rng):
    for _ in range(150):
        g = random_graph(rng.randint(1, 8), 0.45, rng)
        k = max(2, degeneracy(g) + 1)
        alpha = random_coloring(g, k, rng, mix=6)
        beta = random_coloring(g, k, rng, mix=6)
        if alpha is None or beta is None:
            continue
        assert verify_sequence(g, alpha, lvm_sequence(g, alpha, beta, k)) == beta


def test_complete_graph_permutations():
    g = complete(4)
    alpha, beta = Coloring((1, 2, 3, 4), 4), Coloring((4, 3, 2, 1), 4)
    assert verify_sequence(g, alpha, lvm_sequence(g, alpha, beta)) == beta
