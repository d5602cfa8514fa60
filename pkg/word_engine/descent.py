import logging
from typing import Sequence

from graph_core.graph_functions import join_factors
from graph_core.presentation_graph import PresentationGraph
from graph_core.vertex_set import VertexSet
from utils.errors import InputError, InvariantViolation, PreconditionError
from utils.utils import Word, check_word
from word_engine.word_config import get_extension_cap_factor
from word_engine.words import NormalForm, descent_set, is_geodesic, normal_form, right_multiply

logger = logging.getLogger(__name__)


def project_to_coset(graph: PresentationGraph, v: NormalForm, T: VertexSet) -> NormalForm:
    """
    The unique shortest element of the coset v<T>.

    Parameters
    ----------
    graph : PresentationGraph
        The presentation graph.
    v : NormalForm
        Coset representative.
    T : VertexSet
        Generators of the special subgroup.

    Returns
    -------
    NormalForm
        The element w of v<T> with no descent in T.
    """
    graph.check_subset(T)
    current = v
    while True:
        shortening = descent_set(graph, current).members & T
        if not shortening:
            return current
        current = right_multiply(graph, current, shortening.least())


def extend_to_letter(graph: PresentationGraph, alpha: Sequence[int], v: int) -> Word:
    """
    Extend a geodesic word to a geodesic ending in the letter ``v``.

    The extension is found by breadth-first search over elements reachable by
    geodesic continuations, so it is as short as possible; among extensions of
    that length the lexicographically least one is returned.

    Parameters
    ----------
    graph : PresentationGraph
        A join-irreducible presentation graph.
    alpha : Sequence[int]
        A geodesic word.
    v : int
        The generator the result has to end with.

    Returns
    -------
    Word
        ``alpha`` followed by the extension.

    Raises
    ------
    InputError
        If ``alpha`` is not geodesic or ``v`` is not a generator.
    PreconditionError
        If the graph splits as a join.
    InvariantViolation
        If no extension is found within the search cap.
    """
    alpha = check_word(graph, alpha)
    check_word(graph, (v,))
    if not is_geodesic(graph, alpha):
        raise InputError(f"Word {alpha} is not geodesic.")
    if len(join_factors(graph)) > 1:
        raise PreconditionError("extend_to_letter needs a join-irreducible graph.")
    if alpha and alpha[-1] == v:
        return alpha

    cap = get_extension_cap_factor() * graph.size()
    frontier = [(normal_form(graph, alpha), ())]
    seen = {frontier[0][0]}
    for depth in range(cap + 1):
        for element, gamma in frontier:
            if v not in descent_set(graph, element):
                logger.debug(f"extension of length {depth + 1} found for {alpha}")
                return alpha + gamma + (v,)
        next_frontier = []
        for element, gamma in frontier:
            blocked = descent_set(graph, element).members
            for s in range(graph.size()):
                if s in blocked:
                    continue
                child = right_multiply(graph, element, s)
                if child not in seen:
                    seen.add(child)
                    next_frontier.append((child, gamma + (s,)))
        frontier = next_frontier
    raise InvariantViolation(f"No geodesic extension of {alpha} ending in generator {v} within {cap} letters.")
