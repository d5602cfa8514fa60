from itertools import combinations
from typing import Iterator, Sequence

from utils.errors import InputError

Word = tuple[int, ...]


def iter_bits(mask: int) -> Iterator[int]:
    """
    Iterate over the indices of the set bits of a mask, least first.

    Parameters
    ----------
    mask : int
        A non-negative integer bitmask.

    Returns
    -------
    Iterator[int]
        The positions of the set bits in ascending order.
    """
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Sequence[int]) -> int:
    """
    Build a bitmask with the given indices set.
    """
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def subsets_by_size(members: Sequence[int], min_size: int = 0, max_size: int | None = None) -> Iterator[int]:
    """
    Enumerate subsets of ``members`` as bitmasks, ordered by size and then
    lexicographically on the sorted index tuples.

    Parameters
    ----------
    members : Sequence[int]
        The universe to draw from.
    min_size : int, optional
        Smallest subset size to yield. Default 0.
    max_size : int, optional
        Largest subset size to yield. Defaults to ``len(members)``.

    Returns
    -------
    Iterator[int]
        Bitmasks in canonical enumeration order.
    """
    ordered = sorted(members)
    if max_size is None:
        max_size = len(ordered)
    for size in range(max(min_size, 0), min(max_size, len(ordered)) + 1):
        for combo in combinations(ordered, size):
            yield mask_of(combo)


def shortlex_key(word: Word) -> tuple[int, Word]:
    return (len(word), word)


def common_prefix_length(u: Word, v: Word) -> int:
    """
    Length of the longest common prefix of two words.
    """
    n = 0
    for x, y in zip(u, v):
        if x != y:
            break
        n += 1
    return n


def parse_word(graph, text: str) -> Word:
    """
    Parse a whitespace separated list of generator names into a word.

    Parameters
    ----------
    graph : PresentationGraph
        The graph whose generator names are used.
    text : str
        For example ``"a c a"``. The empty string is the empty word.

    Returns
    -------
    Word
        The tuple of generator indices.

    Raises
    ------
    InputError
        If a name is not a generator of the graph.
    """
    if text.strip() == "()":
        return ()
    return tuple(graph.index_of(name) for name in text.split())


def format_word(graph, word: Word) -> str:
    """
    Render a word as space separated generator names; the empty word is ``()``.
    """
    if not word:
        return "()"
    return " ".join(graph.names[i] for i in word)


def check_word(graph, word: Word) -> Word:
    """
    Validate that every letter of ``word`` is a generator index of ``graph``.
    """
    word = tuple(word)
    n = graph.size()
    for letter in word:
        if not isinstance(letter, int) or not 0 <= letter < n:
            raise InputError(f"Letter {letter!r} is not a generator index of a graph with {n} generators.")
    return word
