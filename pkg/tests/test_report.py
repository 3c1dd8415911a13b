from fractions import Fraction

import pytest

from dusub import analyze, build_graph
from dusub.dua import DefUseAnnotations, edge_dua, node_dua
from dusub.report import CoverageSummary, coverage_summary, global_map, node_subsumption, unconstrained_nodes

from graphgen import random_instance

NO_ANN = DefUseAnnotations.from_lists({}, {}, {})


def test_local_is_covered(max_analysis):
    assert max_analysis.local == list(max_analysis.state.covered)


def test_global_five(max_analysis):
    a = max_analysis
    g5 = set(a.universe.members(a.global_[5]))
    assert len(g5) == 8
    assert node_dua(0, 4, "i") in g5
    assert edge_dua(0, (1, 2), "length") in g5
    assert a.pdom[5] == frozenset({1, 2, 4, 6})


def test_global_contains_local(max_analysis):
    for lo, gl in zip(max_analysis.local, max_analysis.global_):
        assert lo <= gl


def test_node_subsumption_max(max_analysis):
    rel = max_analysis.subsumption
    assert rel.subsumes[5] == frozenset(range(7))
    assert (4, 5) not in rel
    assert (5, 4) in rel
    for m in range(7):
        assert (m, m) in rel


@pytest.mark.parametrize("seed", range(100))
def test_subsumption_transitive(seed):
    a = analyze(*random_instance(seed))
    rel = a.subsumption
    for m, n in rel.pairs():
        assert rel.subsumes[n] <= rel.subsumes[m]
    chosen = set(a.unconstrained)
    assert set().union(*(rel.subsumes[m] for m in chosen)) == set(a.graph.nodes)


@pytest.mark.parametrize("seed", range(100))
def test_global_sets_match_definition(seed):
    a = analyze(*random_instance(seed))
    for n in a.graph.nodes:
        expect = a.state.covered[n]
        for m in a.pdom[n]:
            expect = expect | a.state.covered[m]
        assert a.global_[n] == expect
    assert global_map(a.state, a.pdom) == a.global_


def test_unconstrained_max(max_analysis):
    assert max_analysis.unconstrained == [5]


def test_unconstrained_chain():
    g = build_graph(3, [(0, 1), (1, 2)], 0, [2])
    assert analyze(g, NO_ANN).unconstrained == [0]


def test_unconstrained_diamond():
    g = build_graph(4, [(0, 1), (0, 2), (1, 3), (2, 3)], 0, [3])
    a = analyze(g, NO_ANN)
    assert unconstrained_nodes(node_subsumption(g, a.dom, a.pdom)) == [1, 2]


def test_coverage_max(max_analysis):
    cov = max_analysis.coverage
    assert (cov.covered, cov.total) == (8, 24)
    assert cov.ratio == Fraction(1, 3)
    assert cov.percent == 33
    assert cov.describe() == "8/24 (33%)"


def test_coverage_no_requirements():
    g = build_graph(2, [(0, 1)], 0, [1])
    cov = analyze(g, NO_ANN).coverage
    assert cov.no_requirements
    assert cov.ratio is None and cov.percent is None
    assert cov.describe() == "0/0 (no requirements)"


def test_straight_line_full_coverage():
    g = build_graph(3, [(0, 1), (1, 2)], 0, [2])
    ann = DefUseAnnotations.from_lists({0: ["x"], 1: ["y"]}, {1: ["x"], 2: ["x", "y"]}, {})
    cov = analyze(g, ann).coverage
    assert cov.ratio == 1 and cov.percent == 100


@pytest.mark.parametrize("covered,total,pct", [(1, 8, 13), (1, 200, 1), (1, 201, 0), (2, 3, 67), (1, 6, 17)])
def test_percent_rounds_half_up(covered, total, pct):
    assert CoverageSummary(covered, total, ()).percent == pct


def test_coverage_summary_union(max_analysis):
    a = max_analysis
    cov = coverage_summary(a.global_, a.universe)
    assert cov.per_node == tuple(len(s) for s in a.global_)
    assert cov == a.coverage
