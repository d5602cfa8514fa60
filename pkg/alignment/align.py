import logging
from dataclasses import dataclass, field
from typing import Sequence

from alignment.alignment_config import default_k
from graph_core.presentation_graph import PresentationGraph
from graph_core.vertex_set import VertexSet
from utils.errors import InputError
from utils.utils import Word, check_word, common_prefix_length
from word_engine.factor_paths import is_factor_letters
from word_engine.words import NormalForm, deletion_partner, inverse, is_geodesic, multiply, normal_form

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlignmentResult:
    alpha_prime: Word
    beta_prime: Word
    common_prefix_length: int


def _align(graph: PresentationGraph, alpha: Word, path: Word) -> tuple[Word, Word]:
    # alpha is geodesic to g, path is a geodesic from g to h
    if not path:
        return alpha, alpha
    s1, rest = path[0], path[1:]
    partner = deletion_partner(graph, alpha, s1)

    if partner is not None:
        # l(g s1) = l(g) - 1: rewrite alpha by the deletion, recurse, append s1
        alpha1 = alpha[:partner] + alpha[partner + 1:]
        alpha1_prime, beta1_prime = _align(graph, alpha1, rest)
        return alpha1_prime + (s1,), beta1_prime

    # l(g s1) = l(g) + 1: recurse on (alpha, s1) and remove the s1 pair afterwards
    alpha1_prime, beta1_prime = _align(graph, alpha + (s1,), rest)
    k1 = common_prefix_length(alpha1_prime, beta1_prime)
    j = deletion_partner(graph, alpha1_prime, s1)
    alpha_prime = alpha1_prime[:j] + alpha1_prime[j + 1:]
    if k1 <= j:
        return alpha_prime, beta1_prime
    # beta1' starts with u s1 w; s1 commutes with w, so swap to u w s1
    w = alpha1_prime[j + 1:k1]
    beta_prime = beta1_prime[:j] + w + (s1,) + beta1_prime[k1:]
    return alpha_prime, beta_prime


def align(graph: PresentationGraph, alpha: Sequence[int], h: NormalForm) -> AlignmentResult:
    """
    Rewrite a geodesic to g and produce a geodesic to h so that both share a
    long common prefix.

    Works by induction along the normal form of g^-1 h. Each step either
    shortens alpha through a deletion or lengthens it by the next letter and
    later removes the cancelling pair using commutations.

    Parameters
    ----------
    graph : PresentationGraph
        The presentation graph.
    alpha : Sequence[int]
        A geodesic word for g.
    h : NormalForm
        The target element.

    Returns
    -------
    AlignmentResult
        Geodesic words for g and h and the length of their common prefix,
        which is at least l(g) - d(g, h).

    Raises
    ------
    InputError
        If ``alpha`` is not geodesic.
    """
    alpha = check_word(graph, alpha)
    if not is_geodesic(graph, alpha):
        raise InputError(f"Word {alpha} is not geodesic.")
    g = normal_form(graph, alpha)
    path = multiply(graph, inverse(graph, g), h).word
    alpha_prime, beta_prime = _align(graph, alpha, path)
    result = AlignmentResult(alpha_prime, beta_prime, common_prefix_length(alpha_prime, beta_prime))
    logger.debug(f"aligned {alpha} to {h.word} at distance {len(path)}: {result}")
    return result


def _prefix_elements(graph: PresentationGraph, w: Word) -> list[NormalForm]:
    return [normal_form(graph, w[:i]) for i in range(len(w) + 1)]


def fellow_travel_distance(graph: PresentationGraph, alpha: Sequence[int], alpha_prime: Sequence[int]) -> int:
    """
    The largest distance from a prefix vertex of ``alpha_prime`` to the nearest
    prefix vertex of ``alpha``.
    """
    base = _prefix_elements(graph, check_word(graph, alpha))
    worst = 0
    for x in _prefix_elements(graph, check_word(graph, alpha_prime)):
        x_inverse = inverse(graph, x)
        nearest = min(len(multiply(graph, x_inverse, y)) for y in base)
        worst = max(worst, nearest)
    return worst


def find_factor_subpath(graph: PresentationGraph, w: Sequence[int], k: int) -> tuple[int, int] | None:
    """
    Locate a factor subpath of length at least ``k``.

    Parameters
    ----------
    graph : PresentationGraph
        The presentation graph.
    w : Sequence[int]
        A geodesic word.
    k : int
        Minimum length, at least 1.

    Returns
    -------
    tuple[int, int] or None
        Half-open slice ``(start, stop)`` with the least possible start,
        extended as far right as its letters keep a factor cover.

    Raises
    ------
    InputError
        If ``w`` is not geodesic or ``k`` < 1.
    """
    w = check_word(graph, w)
    if k < 1:
        raise InputError(f"k must be at least 1, got {k}.")
    if not is_geodesic(graph, w):
        raise InputError(f"Word {w} is not geodesic.")
    for start in range(len(w) - k + 1):
        letters = VertexSet.from_indices(w[start:start + k])
        if not is_factor_letters(graph, letters):
            continue
        stop = start + k
        while stop < len(w) and is_factor_letters(graph, letters.add(w[stop])):
            letters = letters.add(w[stop])
            stop += 1
        return start, stop
    return None


def divergence_threshold(graph: PresentationGraph, k: int) -> int:
    """
    |S|^2 2^|S| k + 2|S|: the distance at which diverging geodesics are
    guaranteed to contain factor subpaths of length k.
    """
    n = graph.size()
    return n * n * 2**n * k + 2 * n


@dataclass(frozen=True)
class DivergenceReport:
    distance: int
    delta: int
    triggered: bool
    segments: dict = field(default_factory=dict)
    counterexample: bool = False


def divergence_bound_check(
    graph: PresentationGraph,
    alpha: Sequence[int],
    beta: Sequence[int],
    n: int,
    k: int = default_k,
    delta: int | None = None,
) -> DivergenceReport:
    """
    Check the divergence bound for two geodesics with the same endpoints.

    Computes D = d(alpha(n), beta(n)) exactly. When D reaches the threshold
    every one of the four segments (alpha and beta, before and after n) must
    contain a factor subpath of length ``k``; a miss is reported as a
    counterexample.

    Parameters
    ----------
    graph : PresentationGraph
        The presentation graph.
    alpha, beta : Sequence[int]
        Geodesic words for the same element.
    n : int
        Split position, at most the shorter length.
    k : int, optional
        Factor subpath length.
    delta : int, optional
        Threshold; defaults to ``divergence_threshold(graph, k)``.

    Returns
    -------
    DivergenceReport
        The distance, threshold, per-segment results and the verdict.

    Raises
    ------
    InputError
        If the words are not geodesic, end at different elements, or n is out
        of range.
    """
    alpha = check_word(graph, alpha)
    beta = check_word(graph, beta)
    for word in (alpha, beta):
        if not is_geodesic(graph, word):
            raise InputError(f"Word {word} is not geodesic.")
    if normal_form(graph, alpha) != normal_form(graph, beta):
        raise InputError(f"Words {alpha} and {beta} do not end at the same element.")
    if not 0 <= n <= min(len(alpha), len(beta)):
        raise InputError(f"Split position {n} is out of range.")
    if delta is None:
        delta = divergence_threshold(graph, k)

    a_n = normal_form(graph, alpha[:n])
    b_n = normal_form(graph, beta[:n])
    distance = len(multiply(graph, inverse(graph, a_n), b_n))
    segments = {
        "alpha_initial": find_factor_subpath(graph, alpha[:n], k) is not None,
        "alpha_terminal": find_factor_subpath(graph, alpha[n:], k) is not None,
        "beta_initial": find_factor_subpath(graph, beta[:n], k) is not None,
        "beta_terminal": find_factor_subpath(graph, beta[n:], k) is not None,
    }
    triggered = distance >= delta
    counterexample = triggered and not all(segments.values())
    if counterexample:
        logger.warning(f"divergence bound fails for {alpha}, {beta} at n={n}: {segments}")
    return DivergenceReport(distance, delta, triggered, segments, counterexample)
