from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from graph_core.graph_functions import link
from graph_core.presentation_graph import PresentationGraph
from graph_core.vertex_set import VertexSet
from utils.errors import InputError, InvariantViolation
from utils.utils import Word, check_word
from word_engine.factor_paths import terminal_factor_side
from word_engine.words import NormalForm, descent_set, is_geodesic, normal_form

logger = logging.getLogger(__name__)


class TauMode(Enum):
    INFINITE_CASE = "InfiniteCase"
    FINITE_CASE = "FiniteCase"


@dataclass(frozen=True)
class TauPath:
    vertices: Word
    forbidden: VertexSet
    mode: TauMode


@dataclass(frozen=True)
class Fan:
    """
    The fan over a geodesic prefix: a path tau in the graph from the left
    letter to the right letter whose consecutive pairs span commuting loops.
    """

    base: NormalForm
    prefix_word: Word
    left_letter: int
    right_letter: int
    tau: TauPath

    def loops(self) -> list[tuple[int, int]]:
        vertices = self.tau.vertices
        return list(zip(vertices, vertices[1:]))


def _admissible_neighbours(graph: PresentationGraph, x: int, forbidden: VertexSet) -> list[int]:
    return [y for y in graph.neighbour_set(x) if y not in forbidden]


def _shortest_path(graph: PresentationGraph, a: int, b: int, forbidden: VertexSet) -> Word | None:
    # interior vertices avoid forbidden, endpoints exempt
    parent = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for y in graph.neighbour_set(x):
            if y in parent:
                continue
            if y != b and y in forbidden:
                continue
            parent[y] = x
            if y == b:
                path = [b]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return tuple(reversed(path))
            queue.append(y)
    return None


def _shortest_walk(graph: PresentationGraph, a: int, b: int, forbidden: VertexSet) -> Word | None:
    # walks of at least two edges; vertices may repeat
    start = (a, 0)
    parent = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        x, steps = state
        for y in graph.neighbour_set(x):
            following = (y, min(steps + 1, 2))
            if y == b and following[1] == 2:
                walk = [y, x]
                previous = parent[state]
                while previous is not None:
                    walk.append(previous[0])
                    previous = parent[previous]
                return tuple(reversed(walk))
            if y in forbidden or following in parent:
                continue
            parent[following] = state
            queue.append(following)
    return None


def _select_path(graph: PresentationGraph, a: int, b: int, forbidden: VertexSet) -> Word | None:
    if a == b:
        options = _admissible_neighbours(graph, a, forbidden)
        if options:
            return (a, options[0], a)
    else:
        path = _shortest_path(graph, a, b, forbidden)
        if path is not None and len(path) >= 3:
            return path
        if path is not None and b not in forbidden:
            options = _admissible_neighbours(graph, b, forbidden)
            if options:
                return (a, b, options[0], b)
    return _shortest_walk(graph, a, b, forbidden)


def tau_path(graph: PresentationGraph, prefix: Sequence[int], a: int, b: int) -> TauPath:
    """
    Choose the tau-path of the fan over ``prefix`` from ``a`` to ``b``.

    When the longest terminal factor suffix of the prefix generates an
    infinite group, the forbidden set is C | lk(C) with C the fan side of that
    suffix. Otherwise it is the descent set of the prefix. The path is the
    shortest one whose interior avoids the forbidden set (least vertices
    first), lengthened when it has fewer than two edges: (a, v, a) when a = b,
    (a, b, w, b) when a and b are adjacent.

    Parameters
    ----------
    graph : PresentationGraph
        The presentation graph.
    prefix : Sequence[int]
        Geodesic word for the fan base.
    a, b : int
        Left and right letters.

    Returns
    -------
    TauPath
        The path, its forbidden set and which case chose it.

    Raises
    ------
    InputError
        If (prefix, a) or (prefix, b) is not geodesic.
    InvariantViolation
        If no admissible path exists.
    """
    prefix = check_word(graph, prefix)
    check_word(graph, (a, b))
    if not is_geodesic(graph, prefix + (a,)) or not is_geodesic(graph, prefix + (b,)):
        raise InputError(f"Fan letters {a}, {b} do not extend {prefix} geodesically.")

    C = terminal_factor_side(graph, prefix)
    if C is not None:
        forbidden = C | link(graph, C)
        mode = TauMode.INFINITE_CASE
    else:
        forbidden = descent_set(graph, normal_form(graph, prefix)).members
        mode = TauMode.FINITE_CASE

    vertices = _select_path(graph, a, b, forbidden)
    if vertices is None:
        raise InvariantViolation(
            f"No tau-path from '{graph.names[a]}' to '{graph.names[b]}' avoiding "
            f"{graph.names_of(forbidden)} over prefix {prefix} ({mode.value})."
        )
    return TauPath(vertices, forbidden, mode)


def build_fan(graph: PresentationGraph, prefix: Sequence[int], a: int, b: int) -> Fan:
    """
    Build the fan over ``prefix`` between ``a`` and ``b``, checking that every
    loop (prefix, t_i, t_i+1) is geodesic.

    Raises
    ------
    InvariantViolation
        If a loop word is not geodesic.
    """
    prefix = check_word(graph, prefix)
    tau = tau_path(graph, prefix, a, b)
    for x, y in zip(tau.vertices, tau.vertices[1:]):
        if not is_geodesic(graph, prefix + (x, y)):
            raise InvariantViolation(f"Fan loop ({graph.names[x]}, {graph.names[y]}) over {prefix} is not geodesic.")
    return Fan(normal_form(graph, prefix), prefix, a, b, tau)
