from itertools import combinations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from graph_core.presentation_graph import PresentationGraph
from graph_core.vertex_set import VertexSet
from utils.errors import InputError
from utils.utils import subsets_by_size


def link(graph: PresentationGraph, A: VertexSet) -> VertexSet:
    """
    The link of A: generators adjacent to every member of A.

    Parameters
    ----------
    graph : PresentationGraph
        The presentation graph.
    A : VertexSet
        A subset of the generators. The link of the empty set is all of S.

    Returns
    -------
    VertexSet
        The intersection of the neighbourhoods of the members of A.
    """
    graph.check_subset(A)
    mask = graph.full_set().mask
    for a in A:
        mask &= graph.neighbours[a]
    return VertexSet(mask)


def is_clique(graph: PresentationGraph, A: VertexSet) -> bool:
    """
    True iff every pair of distinct members of A is adjacent. The empty set and
    singletons are cliques.
    """
    graph.check_subset(A)
    for a in A:
        if (A.mask & ~(1 << a)) & ~graph.neighbours[a]:
            return False
    return True


def _components(matrix: np.ndarray, members: tuple[int, ...]) -> list[VertexSet]:
    if not members:
        return []
    sub = matrix[np.ix_(members, members)]
    count, labels = connected_components(csr_matrix(sub), directed=False)
    groups = [[] for _ in range(count)]
    for position, label in enumerate(labels):
        groups[label].append(members[position])
    components = [VertexSet.from_indices(group) for group in groups]
    return sorted(components, key=lambda c: c.least())


def components_of(graph: PresentationGraph, A: VertexSet) -> list[VertexSet]:
    """
    Connected components of the subgraph induced on A, ordered by least member.
    """
    graph.check_subset(A)
    return _components(graph.adjacency_matrix, A.indices())


def separates(graph: PresentationGraph, C: VertexSet) -> tuple[bool, list[VertexSet]]:
    """
    Decide whether removing C disconnects the graph.

    Parameters
    ----------
    graph : PresentationGraph
        The presentation graph.
    C : VertexSet
        The candidate separating set.

    Returns
    -------
    tuple[bool, list[VertexSet]]
        Whether S - C has at least two components, and the components in
        order of least member. When C = S the list is empty and the flag is
        False.
    """
    components = components_of(graph, graph.full_set() - graph.check_subset(C))
    return len(components) >= 2, components


def complement_components(graph: PresentationGraph, A: VertexSet) -> list[VertexSet]:
    """
    Connected components of the complement of the subgraph induced on A,
    ordered by least member. These are the factors of the maximal join
    decomposition of A.
    """
    graph.check_subset(A)
    complement = ~graph.adjacency_matrix
    np.fill_diagonal(complement, False)
    return _components(complement, A.indices())


def join_factors(graph: PresentationGraph) -> list[VertexSet]:
    """
    The maximal decomposition of the graph as a join, computed as the
    components of the complement graph. A single factor means the graph is
    join-irreducible.

    Raises
    ------
    InputError
        For the empty graph.
    """
    if graph.size() == 0:
        raise InputError("join_factors needs a nonempty graph.")
    return complement_components(graph, graph.full_set())


def induced_with_map(graph: PresentationGraph, A: VertexSet) -> tuple[PresentationGraph, tuple[int, ...]]:
    """
    The full subgraph on A together with the parent index of each of its
    generators (``index_map[i]`` is the parent index of generator i).

    Raises
    ------
    InputError
        If A is empty.
    """
    graph.check_subset(A)
    if not A:
        raise InputError("Cannot induce a subgraph on the empty set.")
    index_map = A.indices()
    neighbours = tuple((VertexSet(graph.neighbours[parent]) & A).restrict(index_map).mask for parent in index_map)
    return PresentationGraph(tuple(graph.names[i] for i in index_map), neighbours), index_map


def induced(graph: PresentationGraph, A: VertexSet) -> PresentationGraph:
    """
    The full subgraph on A with generator order inherited from the parent.
    """
    return induced_with_map(graph, A)[0]


def find_separating_clique(graph: PresentationGraph) -> VertexSet | None:
    """
    The least clique (by size then lexicographically) whose removal leaves at
    least two components. Returns the empty set when the graph is already
    disconnected and None when no separating clique exists.
    """
    full = graph.full_set()
    for mask in subsets_by_size(full.indices(), 0, graph.size()):
        Q = VertexSet(mask)
        if is_clique(graph, Q) and separates(graph, Q)[0]:
            return Q
    return None


def non_adjacent_pairs(graph: PresentationGraph, A: VertexSet) -> list[tuple[int, int]]:
    """
    All non-adjacent pairs (i, j), i < j, of members of A in lexicographic order.
    """
    return [(i, j) for i, j in combinations(A.indices(), 2) if not graph.adjacent(i, j)]
