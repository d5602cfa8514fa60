from functools import lru_cache
from itertools import combinations
from typing import Sequence

from graph_core.graph_functions import complement_components, is_clique
from graph_core.presentation_graph import PresentationGraph
from graph_core.vertex_set import VertexSet
from utils.errors import InputError
from utils.utils import check_word, subsets_by_size
from word_engine.words import is_geodesic


def join_splits(graph: PresentationGraph, U: VertexSet, anchor: int):
    """
    Every split of U into (A, B) with A and B nonempty and fully
    adjacent across, A containing ``anchor``. Splits come in lexicographic
    order of A's index tuple.
    """
    factors = complement_components(graph, U)
    home = next(f for f in factors if anchor in f)
    others = [f for f in factors if f != home]
    splits = []
    for size in range(len(others)):
        for chosen in combinations(others, size):
            A = home
            for f in chosen:
                A = A | f
            splits.append((A, U - A))
    return sorted(splits, key=lambda split: split[0].indices())


@lru_cache(maxsize=2**16)
def _factor_cover(graph: PresentationGraph, mask: int) -> tuple[VertexSet, VertexSet] | None:
    L = VertexSet(mask)
    anchor = L.least()
    rest = (graph.full_set() - L).indices()
    for extra in subsets_by_size(rest):
        U = L | VertexSet(extra)
        for A, B in join_splits(graph, U, anchor):
            if not is_clique(graph, A) and not is_clique(graph, B):
                return A, B
    return None


def factor_cover(graph: PresentationGraph, L: VertexSet) -> tuple[VertexSet, VertexSet] | None:
    """
    Find disjoint, fully adjacent A and B, neither a clique, with L inside A | B.

    Candidates U = A | B are enumerated by size and then lexicographically;
    A is the side holding the least member of L.

    Parameters
    ----------
    graph : PresentationGraph
        The presentation graph.
    L : VertexSet
        A nonempty set of generators.

    Returns
    -------
    tuple[VertexSet, VertexSet] or None
        The first cover in canonical order, or None.

    Raises
    ------
    InputError
        If L is empty.
    """
    graph.check_subset(L)
    if not L:
        raise InputError("factor_cover needs a nonempty set of letters.")
    return _factor_cover(graph, L.mask)


def is_factor_letters(graph: PresentationGraph, letters: VertexSet) -> bool:
    return bool(letters) and factor_cover(graph, letters) is not None


def longest_terminal_factor_suffix(graph: PresentationGraph, w: Sequence[int]) -> int:
    """
    Start index of the longest suffix of ``w`` that is a factor path.

    Returns ``len(w)`` when no nonempty suffix is a factor path.

    Raises
    ------
    InputError
        If ``w`` is not geodesic.
    """
    w = check_word(graph, w)
    if not is_geodesic(graph, w):
        raise InputError(f"Word {w} is not geodesic.")
    start = len(w)
    letters = VertexSet()
    for i in range(len(w) - 1, -1, -1):
        letters = letters.add(w[i])
        # covers of a set also cover its subsets
        if factor_cover(graph, letters) is None:
            break
        start = i
    return start


def terminal_factor_side(graph: PresentationGraph, w: Sequence[int]) -> VertexSet | None:
    """
    The set C used by fans over the prefix ``w``: the letters of the longest
    terminal factor suffix that lie on the side of its cover meeting them in
    a non-clique. When both sides qualify the one holding the last letter of
    ``w`` is taken.

    Returns None when the suffix is empty or its letters form a clique.
    """
    start = longest_terminal_factor_suffix(graph, w)
    letters = VertexSet.from_indices(w[start:])
    if not letters or is_clique(graph, letters):
        return None
    A, B = factor_cover(graph, letters)
    candidates = [letters & side for side in (A, B) if not is_clique(graph, letters & side)]
    if len(candidates) == 2:
        last = w[-1]
        candidates = [c for c in candidates if last in c] or candidates
    return candidates[0]


def clique_factor(graph: PresentationGraph, U: VertexSet) -> VertexSet:
    """
    The members of U adjacent to every other member of U (the largest clique
    join factor of U).
    """
    return VertexSet.from_indices(f for f in U if (U.discard(f)).mask & ~graph.neighbours[f] == 0)


def finite_index_splitting(graph: PresentationGraph, U: VertexSet) -> tuple[VertexSet, VertexSet, VertexSet]:
    """
    Split the group as <(S - U) | F> x <U - F> when <U> has finite index.

    Parameters
    ----------
    graph : PresentationGraph
        The presentation graph.
    U : VertexSet
        Generators of a special subgroup.

    Returns
    -------
    tuple[VertexSet, VertexSet, VertexSet]
        F, the finite factor (S - U) | F, and the infinite part U - F.

    Raises
    ------
    InputError
        If <U> does not have finite index.
    """
    graph.check_subset(U)
    F = clique_factor(graph, U)
    outside = graph.full_set() - U
    finite = outside | F
    rest = U - F
    if not is_clique(graph, finite):
        raise InputError(f"<{graph.names_of(U)}> does not have finite index: {graph.names_of(finite)} is not a clique.")
    for x in outside:
        if rest.mask & ~graph.neighbours[x]:
            raise InputError(f"<{graph.names_of(U)}> does not have finite index: '{graph.names[x]}' does not commute with U - F.")
    return F, finite, rest
