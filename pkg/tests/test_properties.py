"""Property-based checks of the core operations."""
from hypothesis import given, settings
from hypothesis import strategies as st

from kempe.core import Coloring, Graph, KempeMove, MoveSequence, apply_move, invert_sequence, is_proper, kempe_chain, verify_sequence
from kempe.formats import sequence_from_dict, sequence_to_dict


@st.composite
def colored_graphs(draw, max_n=9, max_k=4):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(2, max_k))
    cols = draw(st.lists(st.integers(1, k), min_size=n, max_size=n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if cols[u] != cols[v]]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, sorted(edges)), Coloring(tuple(cols), k)


@st.composite
def moves_on(draw, g, col, length):
    seq = []
    cur = col
    for _ in range(length):
        v = draw(st.integers(0, g.n - 1))
        c = draw(st.sampled_from([x for x in range(1, col.k + 1) if x != cur[v]]))
        seq.append(KempeMove(v, c))
        cur = apply_move(g, cur, KempeMove(v, c))
    return MoveSequence(tuple(seq), "random")


@settings(max_examples=300, deadline=None)
@given(colored_graphs(), st.data())
def test_move_is_an_involution(gc, data):
    g, col = gc
    v = data.draw(st.integers(0, g.n - 1))
    c = data.draw(st.sampled_from([x for x in range(1, col.k + 1) if x != col[v]]))
    out = apply_move(g, col, KempeMove(v, c))
    assert is_proper(g, out)
    assert apply_move(g, out, KempeMove(v, col[v])) == col
    assert kempe_chain(g, out, v, col[v]) == kempe_chain(g, col, v, c)


@settings(max_examples=200, deadline=None)
@given(colored_graphs(), st.data())
def test_inverted_sequence_returns(gc, data):
    g, col = gc
    seq = data.draw(moves_on(g, col, data.draw(st.integers(0, 6))))
    end = verify_sequence(g, col, seq)
    assert verify_sequence(g, end, invert_sequence(g, col, seq)) == col


@settings(max_examples=100, deadline=None)
@given(colored_graphs(), st.data())
def test_sequence_serialization_round_trip(gc, data):
    g, col = gc
    seq = data.draw(moves_on(g, col, data.draw(st.integers(0, 5))))
    start, loaded = sequence_from_dict(sequence_to_dict(col, seq))
    assert start == col and loaded == seq
