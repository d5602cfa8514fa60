from itertools import combinations

from hypothesis import strategies as st

from cli.fixtures import load_fixture
from graph_core.presentation_graph import PresentationGraph
from graph_core.vertex_set import VertexSet
from word_engine.words import reduce


@st.composite
def presentation_graphs(draw, min_size=1, max_size=5):
    n = draw(st.integers(min_size, max_size))
    names = [f"s{i}" for i in range(n)]
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return PresentationGraph.from_edges(names, [(names[i], names[j]) for i, j in chosen])


@st.composite
def words(draw, graph, max_length=8):
    return tuple(draw(st.lists(st.integers(0, graph.size() - 1), max_size=max_length)))


@st.composite
def graphs_with_words(draw, max_size=5, max_length=8, count=1):
    graph = draw(presentation_graphs(max_size=max_size))
    drawn = [draw(words(graph, max_length)) for _ in range(count)]
    return (graph, *drawn)


@st.composite
def geodesics(draw, graph, max_length=8):
    return reduce(graph, draw(words(graph, max_length)))


@st.composite
def subsets(draw, graph):
    return VertexSet(draw(st.integers(0, (1 << graph.size()) - 1)))


def fixture_graphs(*names):
    return st.sampled_from([load_fixture(name) for name in names])
