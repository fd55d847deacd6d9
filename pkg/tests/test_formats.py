import json

import pytest

from kempe.core import Coloring, Graph, KempeMove, ListAssignment, MoveSequence
from kempe.errors import InvalidDecomposition, InvalidGraph
from kempe.fixtures import prism
from kempe.formats import (
    format_td,
    graph_from_dict,
    parse_dimacs,
    parse_td,
    read_coloring,
    read_graph,
    read_layers,
    read_lists,
    read_sequence,
    read_td,
    write_coloring,
    write_graph,
    write_layers,
    write_lists,
    write_sequence,
)
from kempe.treewidth import TreeDecomposition


def test_graph_json_round_trip(tmp_path):
    path = tmp_path / "g.json"
    write_graph(prism(), path)
    assert read_graph(path) == prism()


def test_graph_json_malformed():
    with pytest.raises(InvalidGraph):
        graph_from_dict({"n": 3})


def test_dimacs(tmp_path):
    text = "c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\n"
    g = parse_dimacs(text)
    assert g.edges() == [(0, 1), (0, 2), (1, 2)]
    path = tmp_path / "k3.col"
    path.write_text(text)
    assert read_graph(path) == g


@pytest.mark.parametrize("text", ["e 1 2\n", "p edge 2 1\nx 1 2\n", "c nothing\n"])
def test_dimacs_errors(text):
    with pytest.raises(InvalidGraph):
        parse_dimacs(text)


def test_coloring_forms(tmp_path):
    path = tmp_path / "c.json"
    write_coloring(Coloring((1, 2, 3), 4), path)
    assert read_coloring(path) == Coloring((1, 2, 3), 4)
    path.write_text(json.dumps([1, 2, 1]))
    assert read_coloring(path) == Coloring((1, 2, 1), 2)
    assert read_coloring(path, 3).k == 3


def test_sequence_round_trip(tmp_path):
    path = tmp_path / "s.json"
    start = Coloring((1, 2, 1, 2), 2)
    seq = MoveSequence((KempeMove(3, 1), KempeMove(0, 1)), "alg1-degree")
    write_sequence(start, seq, path)
    loaded_start, loaded = read_sequence(path)
    assert loaded_start == start and loaded == seq
    assert json.loads(path.read_text())["moves"][0] == {"v": 3, "c": 1}


def test_lists_and_layers(tmp_path):
    lists = ListAssignment(({1, 2}, {2, 3}))
    write_lists(lists, tmp_path / "l.json")
    assert read_lists(tmp_path / "l.json") == lists
    write_layers([[3, 0], [1, 2]], tmp_path / "y.json")
    assert read_layers(tmp_path / "y.json") == [[0, 3], [1, 2]]


def test_td_round_trip(tmp_path):
    td = TreeDecomposition((frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3})), ((0, 1), (1, 2)))
    text = format_td(td, 4)
    assert text.splitlines()[0] == "s td 3 2 4"
    assert parse_td(text) == td
    (tmp_path / "p.td").write_text(text)
    assert read_td(tmp_path / "p.td", 4) == td


@pytest.mark.parametrize("text", [
    "b 1 1 2\n",
    "s td 2 2 3\nb 1 1 2\n",
    "s td 1 2 3\nb 1 1 2\n1 2 3\n",
])
def test_td_errors(text):
    with pytest.raises(InvalidDecomposition):
        parse_td(text)


def test_td_vertex_count_mismatch():
    with pytest.raises(InvalidDecomposition):
        parse_td("s td 1 2 2\nb 1 1 2\n", n=3)


def test_graph_labels_survive(tmp_path):
    g = Graph.from_edges(2, [(0, 1)], ("a", "b"))
    write_graph(g, tmp_path / "g.json")
    assert read_graph(tmp_path / "g.json").labels == ("a", "b")
