import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cli.fixtures import fixture_names, load_fixture
from graph_core.graph_functions import induced_with_map, join_factors, link, separates
from graph_core.presentation_graph import PresentationGraph
from graph_core.vertex_set import VertexSet
from separators.certificates import JoinSplit, ProductSeparator, SeparatingClique, Vfs, validate_certificate
from separators.detectors import (
    EndsClass,
    check_separation_property,
    ends,
    find_product_separator,
    find_vfs,
    finite_index_special,
    has_vfs_via_link_criterion,
    infinite_ends_certificate,
    is_suspended,
    suspended_separators,
    vfs_from_link_witness,
)
from oracle.ball import ball
from tests.reference import (
    cube_graph,
    finite_index_by_coset_representatives,
    has_product_separator,
    random_graph,
    virtual_factor_separators,
)
from tests.strategies import geodesics, presentation_graphs
from utils.errors import InputError, InvariantViolation, PreconditionError
from utils.utils import parse_word
from word_engine.descent import project_to_coset
from word_engine.words import inverse


def vs(graph, text):
    return graph.subset_from_names(text.split())


def test_find_product_separator_examples(c4, c5, g7):
    assert find_product_separator(c5) is None
    assert find_product_separator(g7) == ProductSeparator(vs(g7, "c1 c2"), vs(g7, "k1 k2"))
    assert find_product_separator(c4) is None


def test_find_vfs_examples(c5, c6, g7, sus4):
    assert find_vfs(c5) is None
    assert find_vfs(c6) is None
    assert find_vfs(g7) == Vfs(vs(g7, "c1 c2"), vs(g7, "c1 c2"), vs(g7, "k1 k2"), False)
    assert find_vfs(sus4) == Vfs(vs(sus4, "a b c d"), vs(sus4, "a b c d"), vs(sus4, "s t"), True)


def test_has_vfs_via_link_criterion(c5, c6, bowtie, g7):
    assert has_vfs_via_link_criterion(c5) is None
    assert has_vfs_via_link_criterion(c6) is None
    with pytest.raises(PreconditionError):
        has_vfs_via_link_criterion(bowtie)
    with pytest.raises(PreconditionError):
        has_vfs_via_link_criterion(g7)


def test_vfs_from_link_witness(c5):
    # a square a b c d with x on the edge a b
    graph = PresentationGraph.from_edges(
        ["a", "b", "c", "d", "x"],
        [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("x", "a"), ("x", "b")],
    )
    assert len(join_factors(graph)) == 1
    assert find_product_separator(graph) is None
    assert has_vfs_via_link_criterion(graph) == graph.index_of("c")
    assert vfs_from_link_witness(graph, graph.index_of("c")) == Vfs(vs(graph, "b d"), vs(graph, "b d"), vs(graph, "a c"), False)
    assert vfs_from_link_witness(graph, graph.index_of("x")) == Vfs(vs(graph, "a b"), vs(graph, "b"), vs(graph, "a c"), False)
    assert find_vfs(graph) == Vfs(vs(graph, "a b"), vs(graph, "a"), vs(graph, "b d"), False)
    with pytest.raises(InputError):
        vfs_from_link_witness(c5, 0)
    with pytest.raises(InputError):
        vfs_from_link_witness(graph, graph.index_of("a"))


def test_is_suspended_examples(sus4, g7, c5):
    assert is_suspended(sus4, vs(sus4, "a b c d"))
    assert not is_suspended(g7, vs(g7, "c1 c2"))
    assert not is_suspended(c5, vs(c5, "a b c"))


def test_suspended_separators(sus4, c4, c5):
    assert suspended_separators(sus4) == [vs(sus4, "b d s t"), vs(sus4, "a c s t"), vs(sus4, "a b c d")]
    assert suspended_separators(c4) == [vs(c4, "b d"), vs(c4, "a c")]
    assert suspended_separators(c5) == []


def test_finite_index_special(c5, p3, c4):
    C = vs(c5, "a b c")
    assert finite_index_special(c5, C, C)
    assert not finite_index_special(c5, C, VertexSet())
    assert finite_index_special(p3, p3.full_set(), vs(p3, "a c"))
    assert finite_index_special(c4, c4.full_set(), vs(c4, "a c")) is False
    with pytest.raises(InputError):
        finite_index_special(c5, vs(c5, "a"), vs(c5, "a b"))


def test_ends_examples(k3, p3, bowtie, c5, c4, sus4):
    assert ends(k3) is EndsClass.ZERO
    assert ends(p3) is EndsClass.TWO
    assert ends(bowtie) is EndsClass.INFINITE
    assert ends(c5) is EndsClass.ONE
    assert ends(c4) is EndsClass.ONE
    assert ends(sus4) is EndsClass.ONE


def test_infinite_ends_certificate(bowtie, c5):
    certificate = infinite_ends_certificate(bowtie)
    assert certificate == SeparatingClique(vs(bowtie, "z"))
    validate_certificate(bowtie, certificate)
    assert infinite_ends_certificate(c5) is None


def test_certificates_reject_bad_witnesses(c5, g7, c4):
    with pytest.raises(InvariantViolation):
        validate_certificate(c5, SeparatingClique(vs(c5, "a c")))
    with pytest.raises(InvariantViolation):
        validate_certificate(g7, ProductSeparator(vs(g7, "c1 k1"), vs(g7, "c2 k2")))
    with pytest.raises(InvariantViolation):
        validate_certificate(g7, Vfs(vs(g7, "c1 c2"), vs(g7, "c1 c2"), vs(g7, "k1 k2"), True))
    with pytest.raises(InvariantViolation):
        validate_certificate(c5, JoinSplit((c5.full_set(),)))
    validate_certificate(c4, JoinSplit((vs(c4, "a c"), vs(c4, "b d"))))


def test_certificate_lift_and_restrict(g7):
    certificate = find_vfs(g7)
    sub, index_map = induced_with_map(g7, g7.full_set())
    assert certificate.restrict(index_map).lift(index_map) == certificate
    assert certificate.to_dict(g7) == {
        "type": "Vfs",
        "C": ["c1", "c2"],
        "C1": ["c1", "c2"],
        "K": ["k1", "k2"],
        "suspended": False,
    }


def test_separation_property_not_applicable_in_c5(c5):
    report = check_separation_property(c5, parse_word(c5, "a c a"))
    assert not report.applicable
    assert report.holds()


@settings(max_examples=40, deadline=None)
@given(presentation_graphs(min_size=2, max_size=6))
def test_found_certificates_validate(graph):
    product = find_product_separator(graph)
    if product is not None:
        product.validate(graph)
        assert separates(graph, product.a | product.b)[0]
    vfs = find_vfs(graph)
    if vfs is not None:
        vfs.validate(graph)
        assert vfs.k <= link(graph, vfs.c1)
    certificate = infinite_ends_certificate(graph)
    if certificate is not None:
        certificate.validate(graph)


@settings(max_examples=40, deadline=None)
@given(presentation_graphs(min_size=1, max_size=6))
def test_ends_infinite_iff_certificate(graph):
    assert (ends(graph) is EndsClass.INFINITE) == (infinite_ends_certificate(graph) is not None)


def test_separation_property_on_the_cube():
    cube = cube_graph()
    assert find_product_separator(cube) is None
    report = check_separation_property(cube, parse_word(cube, "v000 v110 v000 v110"))
    assert report.applicable
    assert report.c == vs(cube, "v000 v110")
    assert report.descent_inside
    assert not report.separates


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_separation_property_holds_without_product_separators(data):
    graph = data.draw(st.sampled_from([load_fixture("C5"), load_fixture("C6"), cube_graph()]))
    word = data.draw(geodesics(graph, max_length=8))
    assert check_separation_property(graph, word).holds()


def check_against_brute_force(graph):
    assert (find_product_separator(graph) is not None) == has_product_separator(graph)
    exists, exists_non_suspended = virtual_factor_separators(graph)
    vfs = find_vfs(graph)
    assert (vfs is not None) == exists
    if vfs is not None:
        assert (not vfs.suspended) == exists_non_suspended


@pytest.mark.parametrize("name", fixture_names())
def test_detectors_match_brute_force_on_fixtures(name):
    check_against_brute_force(load_fixture(name))


def test_detectors_match_brute_force_on_cube():
    check_against_brute_force(cube_graph())
    assert find_vfs(cube_graph()) is None


@settings(max_examples=40, deadline=None)
@given(presentation_graphs(min_size=1, max_size=6))
def test_detectors_match_brute_force(graph):
    check_against_brute_force(graph)


@pytest.mark.slow
def test_detectors_match_brute_force_on_seeded_graphs():
    rng = random.Random(7)
    for seed in range(200):
        check_against_brute_force(random_graph(seed, rng.randint(3, 7), rng.choice([0.3, 0.5, 0.7])))


def one_ended_irreducible_graphs(max_nodes):
    for nx_graph in nx.graph_atlas_g():
        if not 1 <= nx_graph.number_of_nodes() <= max_nodes:
            continue
        graph = PresentationGraph.from_networkx(nx_graph)
        if ends(graph) is not EndsClass.ONE or len(join_factors(graph)) > 1:
            continue
        if find_product_separator(graph) is None:
            yield graph


def check_link_criterion(max_nodes):
    checked = 0
    for graph in one_ended_irreducible_graphs(max_nodes):
        witness = has_vfs_via_link_criterion(graph)
        assert (witness is not None) == (find_vfs(graph) is not None)
        checked += 1
    assert checked > 0


def test_link_criterion_matches_search_on_small_graphs():
    """
    One-ended join-irreducible graphs without product separators, up to six
    vertices.
    """
    check_link_criterion(6)


@pytest.mark.slow
def test_link_criterion_matches_search_on_seven_vertices():
    check_link_criterion(7)


@pytest.mark.parametrize("name", ["C4", "C5", "P3", "K3"])
def test_finite_index_matches_coset_growth(name):
    graph = load_fixture(name)
    for c_mask in range(1, 1 << graph.size()):
        C = VertexSet(c_mask)
        sub, index_map = induced_with_map(graph, C)
        radius = len(C) + 1
        elements = ball(sub, radius).elements()
        for c1_mask in range(1 << graph.size()):
            C1 = VertexSet(c1_mask)
            if not C1 <= C:
                continue
            finite = finite_index_special(graph, C, C1)
            assert finite == finite_index_by_coset_representatives(graph, C, C1)
            restricted = C1.restrict(index_map)
            # distance from g to <C1> is the length of the shortest element of g^-1 <C1>
            farthest = max(len(project_to_coset(sub, inverse(sub, g), restricted)) for g in elements)
            if finite:
                assert farthest <= len(C)
            else:
                assert farthest == radius


@pytest.mark.parametrize("name", fixture_names())
def test_ends_match_sphere_growth(name):
    graph = load_fixture(name)
    kind = ends(graph)
    if kind is EndsClass.ZERO:
        sizes = ball(graph, graph.size() + 1).sphere_sizes()["count"].tolist()
        assert sizes[-1] == 0
    elif kind is EndsClass.TWO:
        sizes = ball(graph, 6).sphere_sizes()["count"].tolist()
        assert sizes[4] == sizes[5] == sizes[6] > 0
    else:
        sizes = ball(graph, 5).sphere_sizes()["count"].tolist()
        assert all(sizes[d] < sizes[d + 1] for d in range(1, 5))
