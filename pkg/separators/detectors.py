import logging
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from graph_core.graph_functions import (
    find_separating_clique,
    induced_with_map,
    is_clique,
    join_factors,
    link,
    non_adjacent_pairs,
    separates,
)
from graph_core.presentation_graph import PresentationGraph
from graph_core.vertex_set import VertexSet
from separators.certificates import ProductSeparator, SeparatingClique, Vfs
from utils.errors import InputError, PreconditionError
from utils.utils import check_word, subsets_by_size
from word_engine.factor_paths import clique_factor, factor_cover, join_splits, terminal_factor_side
from word_engine.words import descent_set, normal_form

logger = logging.getLogger(__name__)


class EndsClass(Enum):
    ZERO = "Zero"
    TWO = "Two"
    ONE = "One"
    INFINITE = "Infinite"


def is_suspended(graph: PresentationGraph, C: VertexSet) -> bool:
    """
    True iff S - C is a non-adjacent pair {s, t} with both s and t adjacent to
    every member of C.
    """
    graph.check_subset(C)
    rest = graph.full_set() - C
    if len(rest) != 2:
        return False
    s, t = rest.indices()
    if graph.adjacent(s, t):
        return False
    return C <= link(graph, rest)


def finite_index_special(graph: PresentationGraph, C: VertexSet, C1: VertexSet) -> bool:
    """
    Decide whether <C1> has finite index in <C>.

    Let F be the members of C1 adjacent to all other members of C1. The index
    is finite iff (C - C1) | F is a clique and every member of C - C1 is
    adjacent to every member of C1 - F.

    Parameters
    ----------
    graph : PresentationGraph
        The presentation graph.
    C : VertexSet
        Generators of the larger special subgroup.
    C1 : VertexSet
        Generators of the candidate finite-index subgroup.

    Returns
    -------
    bool
        Whether the index is finite.

    Raises
    ------
    InputError
        If C1 is not a subset of C.
    """
    graph.check_subset(C)
    if not C1 <= C:
        raise InputError(f"{graph.names_of(C1)} is not a subset of {graph.names_of(C)}.")
    F = clique_factor(graph, C1)
    outside = C - C1
    if not is_clique(graph, outside | F):
        return False
    infinite_part = C1 - F
    return all(infinite_part.mask & ~graph.neighbours[x] == 0 for x in outside)


def find_product_separator(graph: PresentationGraph) -> ProductSeparator | None:
    """
    The first product separator A | B in canonical order (by |A | B|, then
    lexicographically, then by A), or None.
    """
    full = graph.full_set()
    for mask in subsets_by_size(full.indices(), 4, graph.size() - 2):
        U = VertexSet(mask)
        if not separates(graph, U)[0]:
            continue
        for A, B in join_splits(graph, U, U.least()):
            if not is_clique(graph, A) and not is_clique(graph, B):
                certificate = ProductSeparator(A, B)
                certificate.validate(graph)
                return certificate
    return None


def _subsets_descending(C: VertexSet):
    members = C.indices()
    for size in range(len(members), -1, -1):
        yield from subsets_by_size(members, size, size)


def find_vfs(graph: PresentationGraph) -> Vfs | None:
    """
    Search for a virtual factor separator (C, C1, K).

    Separating sets C are tried by size then lexicographically; for each, the
    subsets C1 are tried from largest to smallest and the first with finite
    index and a non-clique link gives the witness, with K the least
    non-adjacent pair of lk(C1). A non-suspended witness is returned when one
    exists, otherwise the first suspended one.

    Parameters
    ----------
    graph : PresentationGraph
        The presentation graph.

    Returns
    -------
    Vfs or None
        The certificate, already validated.
    """
    first_suspended = None
    for mask in subsets_by_size(graph.full_set().indices()):
        C = VertexSet(mask)
        if not separates(graph, C)[0]:
            continue
        for c1_mask in _subsets_descending(C):
            C1 = VertexSet(c1_mask)
            if not finite_index_special(graph, C, C1):
                continue
            pairs = non_adjacent_pairs(graph, link(graph, C1))
            if not pairs:
                continue
            certificate = Vfs(C, C1, VertexSet.from_indices(pairs[0]), is_suspended(graph, C))
            if not certificate.suspended:
                certificate.validate(graph)
                return certificate
            if first_suspended is None:
                first_suspended = certificate
            break
    if first_suspended is not None:
        first_suspended.validate(graph)
    return first_suspended


def suspended_separators(graph: PresentationGraph) -> list[VertexSet]:
    """
    Every suspended separator, ordered by the removed pair.
    """
    full = graph.full_set()
    found = []
    for s, t in non_adjacent_pairs(graph, full):
        C = full - VertexSet.from_indices((s, t))
        if is_suspended(graph, C):
            found.append(C)
    return found


def _check_link_preconditions(graph: PresentationGraph):
    if len(join_factors(graph)) > 1:
        raise PreconditionError("The link criterion needs a join-irreducible graph.")
    if find_product_separator(graph) is not None:
        raise PreconditionError("The link criterion needs a graph without product separators.")


def has_vfs_via_link_criterion(graph: PresentationGraph) -> int | None:
    """
    The least vertex x whose link lies inside a join of two non-cliques, or
    None. On graphs without product separators that do not split as a join,
    such an x exists iff the graph has a virtual factor separator.

    Raises
    ------
    PreconditionError
        If the graph is join-reducible or has a product separator.
    """
    _check_link_preconditions(graph)
    for x in range(graph.size()):
        lk = link(graph, VertexSet.from_indices([x]))
        if lk and factor_cover(graph, lk) is not None:
            return x
    return None


def vfs_from_link_witness(graph: PresentationGraph, x: int) -> Vfs:
    """
    Build a virtual factor separator from a vertex whose link lies in a join
    of two non-cliques A and B: with A the side meeting lk(x) in a clique, the
    triple is (lk(x), lk(x) & B, K) where K is the least non-adjacent pair of A.

    Raises
    ------
    InputError
        If lk(x) has no factor cover.
    PreconditionError
        If lk(x) meets both sides in non-cliques (a product separator) or
        the result fails to validate on this graph.
    """
    lk = link(graph, VertexSet.from_indices([x]))
    cover = factor_cover(graph, lk) if lk else None
    if cover is None:
        raise InputError(f"The link of '{graph.names[x]}' is not inside a join of two non-cliques.")
    A, B = cover
    if is_clique(graph, lk & A):
        finite_side, other = A, B
    elif is_clique(graph, lk & B):
        finite_side, other = B, A
    else:
        raise PreconditionError(f"The link of '{graph.names[x]}' meets both factors in non-cliques.")
    K = VertexSet.from_indices(non_adjacent_pairs(graph, finite_side)[0])
    certificate = Vfs(lk, lk & other, K, is_suspended(graph, lk))
    try:
        certificate.validate(graph)
    except RuntimeError as error:
        raise PreconditionError(f"Link witness '{graph.names[x]}' does not give a VFS: {error}") from error
    return certificate


def _strip_clique_factors(graph: PresentationGraph) -> tuple[VertexSet, VertexSet]:
    clique_part = VertexSet()
    for factor in join_factors(graph):
        if is_clique(graph, factor):
            clique_part = clique_part | factor
    return clique_part, graph.full_set() - clique_part


def ends(graph: PresentationGraph) -> EndsClass:
    """
    Number of ends of the group, read off the graph.

    Parameters
    ----------
    graph : PresentationGraph
        A nonempty presentation graph.

    Returns
    -------
    EndsClass
        Zero for a complete graph. Otherwise, after removing the clique join
        factors, Two when two non-adjacent vertices remain, Infinite when the
        remainder is disconnected or has a separating clique, and One otherwise.
    """
    if graph.size() == 0:
        raise InputError("ends needs a nonempty graph.")
    return _ends_with_evidence(graph)[0]


def _ends_with_evidence(graph: PresentationGraph) -> tuple[EndsClass, VertexSet | None]:
    if is_clique(graph, graph.full_set()):
        return EndsClass.ZERO, None
    clique_part, remainder = _strip_clique_factors(graph)
    if len(remainder) == 2:
        return EndsClass.TWO, None
    sub, index_map = induced_with_map(graph, remainder)
    Q = find_separating_clique(sub)
    if Q is not None:
        return EndsClass.INFINITE, Q.lift(index_map) | clique_part
    return EndsClass.ONE, None


def infinite_ends_certificate(graph: PresentationGraph) -> SeparatingClique | None:
    """
    For an infinitely ended graph, a separating clique witnessing it (the
    empty set when the graph is disconnected); None otherwise.
    """
    kind, Q = _ends_with_evidence(graph)
    if kind is not EndsClass.INFINITE:
        return None
    certificate = SeparatingClique(Q)
    certificate.validate(graph)
    return certificate


@dataclass(frozen=True)
class SeparationReport:
    """
    Outcome of checking a prefix against the separation property of fans: with
    C the fan side of the terminal factor suffix, B(g) lies in C | lk(C) and
    C | lk(C) does not separate.
    """

    applicable: bool
    c: VertexSet | None
    descent_inside: bool
    separates: bool

    def holds(self) -> bool:
        return not self.applicable or (self.descent_inside and not self.separates)


def check_separation_property(graph: PresentationGraph, w: Sequence[int]) -> SeparationReport:
    """
    Check the separation property for the geodesic prefix ``w``. Not applicable
    when the terminal factor suffix is empty or its letters form a clique.
    """
    w = check_word(graph, w)
    C = terminal_factor_side(graph, w)
    if C is None:
        return SeparationReport(False, None, True, False)
    region = C | link(graph, C)
    descent = descent_set(graph, normal_form(graph, w)).members
    report = SeparationReport(True, C, descent <= region, separates(graph, region)[0])
    if not report.holds():
        logger.warning(f"separation property fails for prefix {w}: {report}")
    return report
