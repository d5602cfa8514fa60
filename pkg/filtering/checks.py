import logging
from collections import Counter
from dataclasses import dataclass, field

import pandas as pd

from filtering.fans import TauMode
from filtering.filter_graph import EdgeKind, Filter, extract_tree
from graph_core.vertex_set import VertexSet
from separators.detectors import SeparationReport, check_separation_property
from utils.errors import InvariantViolation
from word_engine.factor_paths import is_factor_letters
from word_engine.words import NormalForm, normal_form, right_multiply

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactFailure:
    fact: int
    vertex: int | None
    edge: int | None
    message: str


@dataclass
class FactsReport:
    failures: list[FactFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def add(self, fact: int, message: str, vertex: int | None = None, edge: int | None = None):
        self.failures.append(FactFailure(fact, vertex, edge, message))

    def failed_facts(self) -> set[int]:
        return {failure.fact for failure in self.failures}


def _check_down_edges(filt: Filter, report: FactsReport):
    # facts 1 to 3
    for vertex in filt.vertices:
        if vertex.level == 0:
            continue
        downs = [filt.edges[e] for e in vertex.down_edges]
        if len(downs) not in (1, 2):
            report.add(1, f"{len(downs)} down edges", vertex=vertex.index)
            continue
        if len(downs) == 1:
            edge = downs[0]
            if not (edge.kind in (EdgeKind.INTERIOR, EdgeKind.PREFIX) or edge.on_alpha or edge.on_beta):
                report.add(2, f"single down edge is a {edge.kind.value} edge off the rays", vertex=vertex.index, edge=edge.index)
            continue
        kinds = {edge.kind for edge in downs}
        if kinds != {EdgeKind.LEFT_FAN, EdgeKind.RIGHT_FAN}:
            report.add(3, f"apex down edges are {sorted(k.value for k in kinds)}", vertex=vertex.index)
            continue
        right_fan = next(edge for edge in downs if edge.kind is EdgeKind.RIGHT_FAN)
        left_fan = next(edge for edge in downs if edge.kind is EdgeKind.LEFT_FAN)
        if right_fan.label == left_fan.label:
            report.add(3, "apex down edges carry the same label", vertex=vertex.index)
            continue
        x = filt.vertices[right_fan.source]
        y = filt.vertices[left_fan.source]
        below_x = {(filt.edges[e].source, filt.edges[e].label) for e in x.down_edges}
        below_y = {(filt.edges[e].source, filt.edges[e].label) for e in y.down_edges}
        if not any((z, left_fan.label) in below_x and (z, right_fan.label) in below_y for z, _ in below_x):
            report.add(3, "apex is not the top of a fan loop", vertex=vertex.index)


def _check_up_edges(filt: Filter, report: FactsReport):
    # facts 4 and 7
    top = filt.get_top_level()
    for vertex in filt.vertices:
        if vertex.level >= top:
            continue
        ups = [filt.edges[e] for e in vertex.up_edges]
        if not any(edge.is_tree for edge in ups):
            report.add(7, "dead end below the top level", vertex=vertex.index)
        if vertex.level < filt.prefix_length:
            if [edge.kind for edge in ups] != [EdgeKind.PREFIX]:
                report.add(4, "prefix vertex must have exactly one prefix up edge", vertex=vertex.index)
            continue
        kinds = Counter(edge.kind for edge in ups)
        if kinds[EdgeKind.LEFT_FAN] != 1 or kinds[EdgeKind.RIGHT_FAN] != 1 or kinds[EdgeKind.INTERIOR] < 1:
            report.add(4, f"up edges do not form one fan: {dict((k.value, n) for k, n in kinds.items())}", vertex=vertex.index)
            continue
        fan = filt.fans.get(vertex.index)
        if fan is None or tuple(edge.label for edge in ups) != fan.tau.vertices:
            report.add(4, "up edge labels differ from the fan's tau-path", vertex=vertex.index)


def _check_tree_edges(filt: Filter, report: FactsReport):
    # facts 5 and 6
    for vertex in filt.vertices:
        if vertex.level == 0:
            continue
        tree_downs = [e for e in vertex.down_edges if filt.edges[e].is_tree]
        if len(tree_downs) != 1:
            report.add(5, f"{len(tree_downs)} tree edges below the vertex", vertex=vertex.index)
    for edge in filt.edges:
        must_be_tree = edge.kind in (EdgeKind.PREFIX, EdgeKind.INTERIOR) or edge.on_alpha or edge.on_beta
        if must_be_tree and not edge.is_tree:
            report.add(5, f"{edge.kind.value} edge must be a tree edge", edge=edge.index)
        expected_non_tree = edge.kind is EdgeKind.RIGHT_FAN and not edge.on_beta
        if edge.is_tree == expected_non_tree:
            report.add(6, "tree classification does not match the right fan rule", edge=edge.index)


def verify_facts(filt: Filter) -> FactsReport:
    """
    Check the combinatorial facts of a filter.

    1. Every vertex above level 0 has one or two down edges.
    2. A single down edge is an interior, prefix, alpha or beta edge.
    3. Two down edges are a right and a left fan edge with distinct labels
       closing a fan loop.
    4. Below the top level the up edges of a vertex form exactly one fan.
    5. Every vertex above level 0 has one tree edge below it, and prefix,
       interior, alpha and beta edges are tree edges.
    6. An edge is a non-tree edge iff it is a right fan edge not on beta.
    7. No dead ends below the top level.

    Parameters
    ----------
    filt : Filter
        The filter to check.

    Returns
    -------
    FactsReport
        Every failure with the fact number and the vertex or edge involved.
    """
    report = FactsReport()
    _check_down_edges(filt, report)
    _check_up_edges(filt, report)
    _check_tree_edges(filt, report)
    for failure in report.failures:
        logger.warning(f"filter fact {failure.fact} fails (vertex {failure.vertex}, edge {failure.edge}): {failure.message}")
    return report


@dataclass
class CayleyMapReport:
    elements_per_level: dict[int, Counter] = field(default_factory=dict)

    def distinct_per_level(self) -> dict[int, int]:
        return {level: len(counts) for level, counts in self.elements_per_level.items()}


def map_to_cayley(filt: Filter) -> CayleyMapReport:
    """
    Map the filter into the Cayley graph and check the map is proper: each
    vertex's tree word is a geodesic for its element and the element length
    equals the level.

    Raises
    ------
    InvariantViolation
        On a level/length mismatch or an edge whose endpoints do not differ by
        its label.
    """
    graph = filt.graph
    report = CayleyMapReport()
    for vertex in filt.vertices:
        if len(vertex.element) != vertex.level:
            raise InvariantViolation(
                f"Vertex {vertex.index} at level {vertex.level} maps to an element of length {len(vertex.element)}."
            )
        if len(vertex.word) != vertex.level or normal_form(graph, vertex.word) != vertex.element:
            raise InvariantViolation(f"Tree word {vertex.word} of vertex {vertex.index} is not a geodesic for its element.")
        report.elements_per_level.setdefault(vertex.level, Counter())[vertex.element] += 1
    for edge in filt.edges:
        source = filt.vertices[edge.source]
        target = filt.vertices[edge.target]
        if right_multiply(graph, source.element, edge.label) != target.element:
            raise InvariantViolation(f"Edge {edge.index} does not map to a Cayley graph edge.")
    return report


def _chains(filt: Filter) -> list[list[int]]:
    # upward label sequences of tree paths ending at leaves and starting at the rays
    tree = extract_tree(filt)
    has_child = {filt.edges[e].source for e in tree.parent.values()}
    chains = []
    for vertex in filt.vertices:
        if vertex.index in has_child or filt.on_rays(vertex.index):
            continue
        labels = []
        for edge in tree.path_to_root(vertex.index):
            labels.append(edge.label)
            if filt.on_rays(edge.source):
                break
        chains.append(list(reversed(labels)))
    return chains


def check_factor_bound(filt: Filter) -> tuple[int, bool]:
    """
    Longest upward factor path in the tree meeting alpha | beta at most in its
    initial vertex.

    Returns
    -------
    tuple[int, bool]
        The longest length found and whether it is at most 3|S|.
    """
    graph = filt.graph
    tree = extract_tree(filt)
    longest = 0
    for vertex in filt.vertices:
        if filt.on_rays(vertex.index):
            continue
        letters = VertexSet()
        for length, edge in enumerate(tree.path_to_root(vertex.index), start=1):
            letters = letters.add(edge.label)
            if not is_factor_letters(graph, letters):
                break
            longest = max(longest, length)
            if filt.on_rays(edge.source):
                break
    return longest, longest <= 3 * graph.size()


@dataclass
class NewLetterReport:
    windows_checked: int = 0
    violations: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def check_new_letter_property(filt: Filter) -> NewLetterReport:
    """
    Along every upward tree path off alpha | beta, a factor subpath longer
    than |S| that is followed by two more edges must see a new letter in one
    of those two edges.
    """
    graph = filt.graph
    report = NewLetterReport()
    seen = set()
    for chain in _chains(filt):
        for i in range(len(chain)):
            letters = VertexSet()
            for j in range(i, len(chain)):
                letters = letters.add(chain[j])
                if not is_factor_letters(graph, letters):
                    break
                if j - i + 1 <= graph.size() or j + 2 >= len(chain):
                    continue
                window = tuple(chain[i:j + 3])
                if window in seen:
                    continue
                seen.add(window)
                report.windows_checked += 1
                if chain[j + 1] in letters and chain[j + 2] in letters:
                    report.violations.append(window)
                    logger.warning(f"no new letter after factor subpath {window[:-2]}")
    return report


def check_separation_along_rays(filt: Filter) -> list[SeparationReport]:
    """
    Run the separation check on every fan prefix that used the infinite case.
    """
    return [
        check_separation_property(filt.graph, fan.prefix_word)
        for _, fan in sorted(filt.fans.items())
        if fan.tau.mode is TauMode.INFINITE_CASE
    ]


def level_report(filt: Filter) -> pd.DataFrame:
    """
    Per-level summary with columns level, vertices, distinct_elements, apexes
    and non_tree_edges.
    """
    rows = []
    for level, row in enumerate(filt.levels):
        vertices = [filt.vertices[i] for i in row]
        rows.append(
            {
                "level": level,
                "vertices": len(vertices),
                "distinct_elements": len({v.element for v in vertices}),
                "apexes": sum(1 for v in vertices if len(v.down_edges) == 2),
                "non_tree_edges": sum(1 for v in vertices for e in v.down_edges if not filt.edges[e].is_tree),
            }
        )
    return pd.DataFrame(rows, columns=["level", "vertices", "distinct_elements", "apexes", "non_tree_edges"])
