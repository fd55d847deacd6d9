import pytest

from kempe.core import Coloring, Graph, KempeMove, ListAssignment, VertexOrdering, degeneracy_ordering, verify_sequence
from kempe.degenerate import (
    RecolorSetting,
    RecolorTrace,
    classify_bad,
    equalize,
    find_degree_ordering,
    find_list_ordering,
    target_recolor,
)
from kempe.errors import InternalInvariantBroken, PreconditionViolated
from kempe.fixtures import complete, cycle, k3, p4, random_coloring, random_graph
from kempe.oracle import build_reconf


def identity(n):
    return VertexOrdering(tuple(range(n)), "arbitrary")


def star_setting():
    # a=0, b=1, u=2 with edges a-u, b-u
    g = Graph.from_edges(3, [(0, 2), (1, 2)])
    lists = ListAssignment(({1, 2}, {1, 3}, {1, 2, 3}))
    return g, RecolorSetting.list_mode(g, identity(3), lists)


class TestSettings:
    def test_degree_mode_rejects_bad_ordering(self):
        g = complete(4)
        with pytest.raises(PreconditionViolated):
            RecolorSetting.degree_bounded(g, identity(4), 3)
        RecolorSetting.degree_bounded(g, identity(4), 4)

    def test_degree_cap_exempts_last_vertex(self):
        g = Graph.from_edges(4, [(0, 3), (1, 3), (2, 3)])
        RecolorSetting.degree_bounded(g, identity(4), 2)
        with pytest.raises(PreconditionViolated):
            RecolorSetting.degree_bounded(g, VertexOrdering((3, 0, 1, 2), "arbitrary"), 2)

    def test_list_mode_rejects_short_lists(self):
        g = k3()
        short = ListAssignment(({1, 2}, {1, 2, 3}, {1, 2}))
        with pytest.raises(PreconditionViolated):
            RecolorSetting.list_mode(g, identity(3), short)
        assert find_list_ordering(g, short) is None

    def test_find_degree_ordering(self):
        order = find_degree_ordering(cycle(5), 3)
        RecolorSetting.degree_bounded(cycle(5), order, 3)
        assert find_degree_ordering(complete(4), 3) is None
        forced = find_degree_ordering(cycle(5), 3, last=2)
        assert forced.order[-1] == 2


class TestClassify:
    def test_p4_has_no_bad_vertices(self):
        setting = RecolorSetting.degree_bounded(p4(), identity(4), 2)
        reports, greatest = classify_bad(p4(), setting, Coloring((1, 2, 1, 2), 2), 3, 1)
        assert reports == [] and greatest is None

    def test_star_blocking(self):
        g, setting = star_setting()
        reports, greatest = classify_bad(g, setting, Coloring((1, 1, 2), 3), 2, 1)
        assert greatest == 1
        kinds = {r.vertex: r.kinds for r in reports}
        assert "blocking" in kinds[1]

    def test_singleton_chain(self):
        g = p4()
        setting = RecolorSetting.degree_bounded(g, identity(4), 2, 3)
        reports, greatest = classify_bad(g, setting, Coloring((1, 2, 1, 2), 3), 3, 3)
        assert reports == [] and greatest is None

    def test_closed_neighbourhood_precondition(self):
        g = p4()
        setting = RecolorSetting.degree_bounded(g, identity(4), 2)
        with pytest.raises(PreconditionViolated):
            classify_bad(g, setting, Coloring((1, 2, 1, 2), 2), 3, 2)
        with pytest.raises(PreconditionViolated):
            classify_bad(g, setting, Coloring((1, 2, 1, 2), 2), 1, 1)


class TestTargetRecolor:
    def test_p4_single_swap(self):
        setting = RecolorSetting.degree_bounded(p4(), identity(4), 2)
        out, seq = target_recolor(p4(), setting, Coloring((1, 2, 1, 2), 2), 3, 1)
        assert out.colors == (2, 1, 2, 1)
        assert seq.moves == (KempeMove(3, 1),)

    def test_star_hand_trace(self):
        g, setting = star_setting()
        out, seq = target_recolor(g, setting, Coloring((1, 1, 2), 3), 2, 1)
        assert out.colors == (2, 3, 1)
        assert seq.moves == (KempeMove(1, 3), KempeMove(2, 1))

    def test_suffix_agreement_random(self, rng):
        for _ in range(200):
            g = random_graph(rng.randint(2, 9), 0.4, rng)
            order, d = degeneracy_ordering(g)
            k = max(g.max_degree(), d + 1, 2)
            setting = RecolorSetting.degree_bounded(g, order, k, k)
            col = random_coloring(g, k, rng, mix=5)
            if col is None:
                continue
            v = rng.choice(order.order)
            blocked = {col[w] for w in order.greater(g, v)} | {col[v]}
            options = [c for c in range(1, k + 1) if c not in blocked]
            if not options:
                continue
            c = rng.choice(options)
            out, seq = target_recolor(g, setting, col, v, c)
            assert out[v] == c
            for w in order.order[order.pos(v) + 1:]:
                assert out[w] == col[w]
            assert verify_sequence(g, col, seq) == out

    def test_strict_trace_raises_on_known_regression(self):
        edges = [(0, 1), (0, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 5), (4, 5), (4, 6)]
        g = Graph.from_edges(7, edges)
        order = VertexOrdering((6, 0, 1, 3, 2, 4, 5), "arbitrary")
        setting = RecolorSetting.degree_bounded(g, order, 4, 4)
        alpha = Coloring((4, 1, 1, 2, 2, 3, 4), 4)
        trace = RecolorTrace()
        out, seq = target_recolor(g, setting, alpha, 4, 1, trace)
        assert trace.regressions
        assert verify_sequence(g, alpha, seq) == out and out[4] == 1
        with pytest.raises(InternalInvariantBroken):
            target_recolor(g, setting, alpha, 4, 1, RecolorTrace(strict=True))


class TestEqualize:
    def test_trivial(self):
        setting = RecolorSetting.degree_bounded(p4(), identity(4), 2)
        col = Coloring((1, 2, 1, 2), 2)
        assert len(equalize(p4(), setting, col, col).sequence) == 0

    def test_p4_degree_mode(self):
        g = p4()
        setting = RecolorSetting.degree_bounded(g, identity(4), 2)
        alpha, beta = Coloring((1, 2, 1, 2), 2), Coloring((2, 1, 2, 1), 2)
        eq = equalize(g, setting, alpha, beta)
        assert verify_sequence(g, alpha, eq.sequence) == beta
        assert len(eq.sequence) <= 4 * g.n * g.n
        rg = build_reconf(g, 2)
        assert rg.same_class(alpha, beta)

    def test_k3_list_mode_all_pairs(self):
        g = k3()
        lists = ListAssignment.uniform(3, 3)
        setting = RecolorSetting.list_mode(g, find_list_ordering(g, lists), lists)
        cols = build_reconf(g, 3).nodes
        for alpha in cols:
            for beta in cols:
                eq = equalize(g, setting, alpha, beta)
                assert verify_sequence(g, alpha, eq.sequence, lists) == beta

    def test_rejects_improper(self):
        setting = RecolorSetting.degree_bounded(p4(), identity(4), 2)
        with pytest.raises(PreconditionViolated):
            equalize(p4(), setting, Coloring((1, 1, 2, 1), 2), Coloring((1, 2, 1, 2), 2))

    def test_halves_meet(self, rng):
        g = cycle(7)
        order, _ = degeneracy_ordering(g)
        setting = RecolorSetting.degree_bounded(g, order, 3)
        alpha = random_coloring(g, 3, rng, mix=10)
        beta = random_coloring(g, 3, rng, mix=10)
        eq = equalize(g, setting, alpha, beta)
        assert verify_sequence(g, alpha, eq.from_alpha) == eq.meeting
        assert verify_sequence(g, beta, eq.from_beta) == eq.meeting
        assert eq.sequence.provenance == "prop2-equalize"
