from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from graph_core.graph_functions import is_clique, link
from graph_core.presentation_graph import PresentationGraph
from graph_core.vertex_set import VertexSet
from utils.errors import InvariantViolation
from utils.utils import Word, check_word, shortlex_key


@dataclass(frozen=True)
class NormalForm:
    """
    Canonical representative of a group element: the lexicographically least
    geodesic word, built by repeatedly stripping the least left descent.

    Only ``normal_form`` should construct these.
    """

    word: Word

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self) -> Iterator[int]:
        return iter(self.word)

    def key(self) -> tuple[int, Word]:
        return shortlex_key(self.word)

    @classmethod
    def identity(cls) -> NormalForm:
        return cls(())


@dataclass(frozen=True)
class Wall:
    reflection: NormalForm
    letter: int


@dataclass(frozen=True)
class DescentSet:
    """
    B(g): the generators s with l(gs) < l(g).
    """

    members: VertexSet

    def __contains__(self, index: int) -> bool:
        return index in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)


def deletion_partner(graph: PresentationGraph, word: Sequence[int], s: int) -> int | None:
    """
    Position of the letter that cancels with a new letter ``s`` appended to a
    geodesic ``word``: the rightmost occurrence of ``s`` that commutes with
    every letter after it. None when ``word + (s,)`` is geodesic.
    """
    for k in range(len(word) - 1, -1, -1):
        letter = word[k]
        if letter == s:
            return k
        if not graph.neighbours[s] >> letter & 1:
            return None
    return None


def reduce(graph: PresentationGraph, w: Sequence[int]) -> Word:
    """
    Reduce a word to a geodesic word for the same element.

    Letters are processed left to right while a geodesic prefix is kept; a
    letter that would make the prefix non-geodesic cancels against its
    deletion partner instead.

    Parameters
    ----------
    graph : PresentationGraph
        The presentation graph.
    w : Sequence[int]
        The word, as generator indices.

    Returns
    -------
    Word
        A geodesic word with the same parity of length.
    """
    w = check_word(graph, w)
    prefix: list[int] = []
    for s in w:
        j = deletion_partner(graph, prefix, s)
        if j is None:
            prefix.append(s)
        else:
            del prefix[j]
    return tuple(prefix)


def is_geodesic(graph: PresentationGraph, w: Sequence[int]) -> bool:
    w = check_word(graph, w)
    return len(reduce(graph, w)) == len(w)


def _movable(graph: PresentationGraph, word: Sequence[int]) -> list[tuple[int, int]]:
    # (letter, position) pairs that can be commuted to the front
    earlier = 0
    found = []
    for position, letter in enumerate(word):
        if earlier & ~graph.neighbours[letter] == 0:
            found.append((letter, position))
        earlier |= 1 << letter
    return found


def normal_form(graph: PresentationGraph, w: Sequence[int]) -> NormalForm:
    """
    The canonical normal form of the element represented by ``w``.

    Two words get equal normal forms iff they represent the same element.

    Parameters
    ----------
    graph : PresentationGraph
        The presentation graph.
    w : Sequence[int]
        Any word.

    Returns
    -------
    NormalForm
        The lexicographically least geodesic word for the element.
    """
    remaining = list(reduce(graph, w))
    out = []
    while remaining:
        letter, position = min(_movable(graph, remaining))
        out.append(letter)
        del remaining[position]
    return NormalForm(tuple(out))


def multiply(graph: PresentationGraph, g: NormalForm, h: NormalForm) -> NormalForm:
    return normal_form(graph, g.word + h.word)


def right_multiply(graph: PresentationGraph, g: NormalForm, s: int) -> NormalForm:
    """
    The normal form of g * s for a single generator s.
    """
    return normal_form(graph, g.word + (s,))


def inverse(graph: PresentationGraph, g: NormalForm) -> NormalForm:
    # every generator is an involution
    return normal_form(graph, tuple(reversed(g.word)))


def walls(graph: PresentationGraph, w: Sequence[int]) -> list[Wall]:
    """
    The walls crossed by the edge path of ``w``. The i-th wall is the
    reflection e_1...e_{i-1} e_i e_{i-1}...e_1. A word is geodesic iff its
    reflections are pairwise distinct.
    """
    w = check_word(graph, w)
    crossed = []
    for i, s in enumerate(w):
        prefix = w[:i]
        reflection = normal_form(graph, prefix + (s,) + tuple(reversed(prefix)))
        crossed.append(Wall(reflection, s))
    return crossed


def walls_distinct(graph: PresentationGraph, w: Sequence[int]) -> bool:
    reflections = [wall.reflection for wall in walls(graph, w)]
    return len(set(reflections)) == len(reflections)


def descent_set(graph: PresentationGraph, g: NormalForm) -> DescentSet:
    """
    B(g) = { s : l(gs) = l(g) - 1 }.

    Raises
    ------
    InvariantViolation
        If the result is not a clique.
    """
    members = VertexSet.from_indices(
        s for s in range(graph.size()) if deletion_partner(graph, g.word, s) is not None
    )
    if not is_clique(graph, members):
        raise InvariantViolation(f"Descent set {graph.names_of(members)} of {g.word} is not a clique.")
    return DescentSet(members)


def left_descent_set(graph: PresentationGraph, g: NormalForm) -> VertexSet:
    """
    { s : l(sg) < l(g) }, the letters the greedy normal form may start with.
    """
    return VertexSet.from_indices(letter for letter, _ in _movable(graph, g.word))


def centralizer_letters(graph: PresentationGraph, s: int) -> VertexSet:
    """
    {s} together with lk(s); the centralizer of s is generated by these letters.
    """
    return link(graph, VertexSet.from_indices([s])).add(s)
