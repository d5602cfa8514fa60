import random

import networkx as nx
import pytest
from hypothesis import given, settings

from classifier.classify import (
    GAP_REASON,
    Rule,
    VerdictKind,
    classification_to_dict,
    classify,
    classify_many,
)
from classifier.survey import atlas_graphs, classify_survey, random_graphs
from cli.fixtures import fixture_names, load_fixture
from graph_core.presentation_graph import PresentationGraph
from tests.strategies import presentation_graphs
from utils.errors import InputError


def rules(trace):
    return [step.rule for step in trace]


@pytest.mark.parametrize(
    "name, kind, rule",
    [
        ("K3", VerdictKind.LOCALLY_CONNECTED, Rule.FINITE_GROUP),
        ("P3", VerdictKind.LOCALLY_CONNECTED, Rule.TWO_ENDED),
        ("BOWTIE", VerdictKind.NOT_LOCALLY_CONNECTED, Rule.INFINITE_ENDED),
        ("G7", VerdictKind.NOT_LOCALLY_CONNECTED, Rule.VFS_NON_SUSPENDED),
        ("C5", VerdictKind.LOCALLY_CONNECTED, Rule.MAIN_THEOREM),
        ("C6", VerdictKind.LOCALLY_CONNECTED, Rule.MAIN_THEOREM),
        ("C4", VerdictKind.LOCALLY_CONNECTED, Rule.JOIN_RECURSION),
        ("SUS4", VerdictKind.LOCALLY_CONNECTED, Rule.JOIN_RECURSION),
    ],
)
def test_fixture_verdicts(name, kind, rule):
    graph = load_fixture(name)
    verdict, trace = classify(graph)
    assert verdict.kind is kind
    assert trace[0].rule is rule
    assert trace[0].subgraph == graph.full_set()
    for step in trace:
        step.validate(graph)


def test_join_recursion_trace(c4, sus4):
    verdict, trace = classify(c4)
    assert rules(trace) == [Rule.JOIN_RECURSION, Rule.TWO_ENDED, Rule.TWO_ENDED]
    verdict, trace = classify(sus4)
    assert rules(trace) == [Rule.JOIN_RECURSION] + [Rule.TWO_ENDED] * 3
    assert [step.subgraph for step in trace[1:]] == [
        sus4.subset_from_names(["a", "c"]),
        sus4.subset_from_names(["b", "d"]),
        sus4.subset_from_names(["s", "t"]),
    ]


def test_clique_factors_are_skipped():
    # the cone over a pentagon
    graph = PresentationGraph.from_edges(
        ["a", "b", "c", "d", "e", "z"],
        [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")] + [(x, "z") for x in "abcde"],
    )
    verdict, trace = classify(graph)
    assert verdict.kind is VerdictKind.LOCALLY_CONNECTED
    assert rules(trace) == [Rule.JOIN_RECURSION, Rule.MAIN_THEOREM]
    assert trace[1].subgraph == graph.subset_from_names(list("abcde"))


def test_classify_empty_graph():
    with pytest.raises(InputError):
        classify(PresentationGraph.from_edges([], []))


def test_classification_to_dict(bowtie):
    verdict, trace = classify(bowtie)
    payload = classification_to_dict(bowtie, verdict, trace)
    assert payload["verdict"] == "NotLocallyConnected"
    assert payload["trace"][0] == {
        "subgraph": ["a", "b", "c", "d", "z"],
        "rule": "InfiniteEnded",
        "certificate": {"type": "SeparatingClique", "Q": ["z"]},
    }


def test_verdict_str():
    verdict, _ = classify(load_fixture("C5"))
    assert str(verdict) == "LocallyConnected"


def test_classify_many_preserves_order(c5, g7, k3):
    graphs = [c5, g7, k3]
    serial = classify_many(graphs)
    assert [v.kind for v, _ in serial] == [
        VerdictKind.LOCALLY_CONNECTED,
        VerdictKind.NOT_LOCALLY_CONNECTED,
        VerdictKind.LOCALLY_CONNECTED,
    ]
    parallel = classify_many(graphs, workers=2)
    assert [v for v, _ in parallel] == [v for v, _ in serial]


@settings(max_examples=40, deadline=None)
@given(presentation_graphs(max_size=6))
def test_certificates_in_traces_validate(graph):
    verdict, trace = classify(graph)
    assert trace
    for step in trace:
        step.validate(graph)
    if verdict.kind is VerdictKind.UNDETERMINED:
        assert verdict.reason == GAP_REASON


@settings(max_examples=20, deadline=None)
@given(presentation_graphs(max_size=6))
def test_classification_is_invariant_under_relabelling(graph):
    # reverse the generator order
    reverse = {name: graph.size() - 1 - i for i, name in enumerate(graph.names)}
    relabelled = PresentationGraph.from_networkx(nx.relabel_nodes(graph.to_networkx(), reverse), prefix="x")
    assert classify(graph)[0] == classify(relabelled)[0]


def test_random_graphs_are_seeded():
    first = random_graphs(5, 10, seed=7)
    second = random_graphs(5, 10, seed=7)
    assert first == second
    assert all(1 <= g.size() <= 5 for g in first)


def test_atlas_graphs():
    assert len(atlas_graphs(3)) == 1 + 2 + 4
    with pytest.raises(InputError):
        atlas_graphs(8)


def test_survey_small_exhaustive():
    summary = classify_survey(size_limit=4, exhaustive=True, progress=False)
    assert len(summary.graphs) == 1 + 2 + 4 + 11
    assert summary.undetermined == []
    histogram = summary.histogram()
    assert list(histogram.columns) == ["verdict", "count"]
    assert histogram["count"].sum() == len(summary.graphs)
    assert summary.certificates_checked > 0


def test_survey_random_is_reproducible():
    first = classify_survey(size_limit=5, sample_count=15, seed=3, progress=False)
    second = classify_survey(size_limit=5, sample_count=15, seed=3, progress=False)
    assert first.verdicts == second.verdicts
    assert first.rule_histogram().equals(second.rule_histogram())


@pytest.mark.slow
def test_survey_exhaustive_six_vertices_parallel():
    summary = classify_survey(size_limit=6, exhaustive=True, workers=2, progress=False)
    assert len(summary.graphs) == 1 + 2 + 4 + 11 + 34 + 156
    assert len(summary.verdicts) == len(summary.graphs)


@pytest.mark.parametrize("name", fixture_names())
def test_classification_is_invariant_under_shuffled_order(name):
    graph = load_fixture(name)
    verdict, trace = classify(graph)
    edges = [(graph.names[i], graph.names[j]) for i, j in graph.edges()]
    for seed in range(10):
        names = list(graph.names)
        random.Random(seed).shuffle(names)
        shuffled_verdict, shuffled_trace = classify(PresentationGraph.from_edges(names, edges))
        assert shuffled_verdict.kind is verdict.kind
        assert shuffled_trace[0].rule is trace[0].rule


def test_join_with_a_not_locally_connected_factor():
    # the bowtie joined with the non-adjacent pair p q
    bowtie = [("a", "b"), ("c", "d"), ("z", "a"), ("z", "b"), ("z", "c"), ("z", "d")]
    graph = PresentationGraph.from_edges(
        ["a", "b", "c", "d", "z", "p", "q"],
        bowtie + [(x, y) for x in "pq" for y in "abcdz"],
    )
    verdict, trace = classify(graph)
    assert verdict.kind is VerdictKind.NOT_LOCALLY_CONNECTED
    for step in trace:
        step.validate(graph)
