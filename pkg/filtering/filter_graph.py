from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from filtering.fans import Fan, build_fan
from filtering.filter_config import get_max_filter_vertices
from graph_core.presentation_graph import PresentationGraph
from utils.errors import InputError, InvariantViolation, ResourceGuardError
from utils.utils import Word, check_word, common_prefix_length
from word_engine.words import NormalForm, is_geodesic, right_multiply

logger = logging.getLogger(__name__)


class EdgeKind(Enum):
    PREFIX = "Prefix"
    LEFT_FAN = "LeftFan"
    INTERIOR = "Interior"
    RIGHT_FAN = "RightFan"


@dataclass
class FilterEdge:
    index: int
    source: int
    target: int
    label: int
    kind: EdgeKind
    is_tree: bool
    on_alpha: bool = False
    on_beta: bool = False


@dataclass
class FilterVertex:
    index: int
    level: int
    planar_index: int
    element: NormalForm
    word: Word
    down_edges: list[int] = field(default_factory=list)
    up_edges: list[int] = field(default_factory=list)
    left_letter: int | None = None
    right_letter: int | None = None
    on_alpha: bool = False
    on_beta: bool = False


class Filter:
    """
    The levelled planar graph of overlapping fans between two geodesic rays
    that share a prefix. Level k holds vertices at Cayley distance k from the
    identity; row order is the planar order, alpha on the left and beta on
    the right.

    Built by ``build_filter``; treat as read-only afterwards.
    """

    def __init__(self, graph: PresentationGraph, alpha: Word, beta: Word, prefix_length: int, depth: int):
        self.graph = graph
        self.alpha = alpha
        self.beta = beta
        self.prefix_length = prefix_length
        self.depth = depth
        self.vertices: list[FilterVertex] = []
        self.edges: list[FilterEdge] = []
        self.levels: list[list[int]] = []
        self.fans: dict[int, Fan] = {}

    def get_top_level(self) -> int:
        return self.prefix_length + self.depth

    def get_levels(self) -> list[list[int]]:
        return self.levels

    def get_vertex(self, index: int) -> FilterVertex:
        return self.vertices[index]

    def get_edge(self, index: int) -> FilterEdge:
        return self.edges[index]

    def get_base(self) -> FilterVertex:
        return self.vertices[self.levels[self.prefix_length][0]]

    def on_rays(self, index: int) -> bool:
        vertex = self.vertices[index]
        return vertex.on_alpha or vertex.on_beta

    def _add_vertex(self, level: int, element: NormalForm, word: Word) -> FilterVertex:
        if len(self.vertices) >= get_max_filter_vertices():
            raise ResourceGuardError(
                f"Filter exceeds {get_max_filter_vertices()} vertices at level {level}; lower the depth."
            )
        while len(self.levels) <= level:
            self.levels.append([])
        vertex = FilterVertex(len(self.vertices), level, len(self.levels[level]), element, word)
        self.vertices.append(vertex)
        self.levels[level].append(vertex.index)
        return vertex

    def _add_edge(self, source: FilterVertex, target: FilterVertex, label: int, kind: EdgeKind, is_tree: bool) -> FilterEdge:
        if right_multiply(self.graph, source.element, label) != target.element:
            raise InvariantViolation(
                f"Edge {label} from {source.element.word} does not reach {target.element.word}."
            )
        edge = FilterEdge(len(self.edges), source.index, target.index, label, kind, is_tree)
        self.edges.append(edge)
        source.up_edges.append(edge.index)
        target.down_edges.append(edge.index)
        return edge

    def _ray_letter(self, ray: Word, level: int) -> int | None:
        return ray[level] if level < len(ray) else None

    def _build_row(self, level: int):
        graph = self.graph
        row = self.levels[level]
        pending_apex = None
        for position, vertex_index in enumerate(row):
            vertex = self.vertices[vertex_index]
            try:
                fan = build_fan(graph, vertex.word, vertex.left_letter, vertex.right_letter)
            except InputError as error:
                raise InvariantViolation(f"Fan at level {level}, position {position} is not admissible: {error}") from error
            self.fans[vertex_index] = fan
            tau = fan.tau.vertices
            m = len(tau) - 1
            leftmost = position == 0
            rightmost = position == len(row) - 1

            if leftmost:
                first = self._add_vertex(level + 1, right_multiply(graph, vertex.element, tau[0]), vertex.word + (tau[0],))
                first.left_letter = self._ray_letter(self.alpha, level + 1)
                first.on_alpha = True
                edge = self._add_edge(vertex, first, tau[0], EdgeKind.LEFT_FAN, True)
                edge.on_alpha = True
            else:
                # the apex opened by the previous vertex's right fan edge
                first = pending_apex
                self._add_edge(vertex, first, tau[0], EdgeKind.LEFT_FAN, True)
                first.word = vertex.word + (tau[0],)
            first.right_letter = tau[1]

            for j in range(1, m):
                middle = self._add_vertex(level + 1, right_multiply(graph, vertex.element, tau[j]), vertex.word + (tau[j],))
                middle.left_letter = tau[j - 1]
                middle.right_letter = tau[j + 1]
                self._add_edge(vertex, middle, tau[j], EdgeKind.INTERIOR, True)

            last = self._add_vertex(level + 1, right_multiply(graph, vertex.element, tau[m]), vertex.word + (tau[m],))
            last.left_letter = tau[m - 1]
            if rightmost:
                last.right_letter = self._ray_letter(self.beta, level + 1)
                last.on_beta = True
                edge = self._add_edge(vertex, last, tau[m], EdgeKind.RIGHT_FAN, True)
                edge.on_beta = True
            else:
                # upper-left edge of a fan loop
                self._add_edge(vertex, last, tau[m], EdgeKind.RIGHT_FAN, False)
                pending_apex = last


def _default_prefix_length(alpha: Word, beta: Word, depth: int) -> int:
    return min(common_prefix_length(alpha, beta), min(len(alpha), len(beta)) - depth)


def build_filter(
    graph: PresentationGraph,
    alpha: Sequence[int],
    beta: Sequence[int],
    depth: int,
    prefix_length: int | None = None,
) -> Filter:
    """
    Build the filter between two geodesic rays.

    Levels 0..n are the shared prefix column. The level-n vertex gets the fan
    between alpha[n] and beta[n]; after that every vertex gets the fan between
    its left letter (the loop partner shared with its left neighbour, or the
    next alpha letter when leftmost) and its right letter (likewise towards
    beta). The upper-left edge of every fan loop is a non-tree edge.

    Parameters
    ----------
    graph : PresentationGraph
        The presentation graph.
    alpha, beta : Sequence[int]
        Geodesic words, each at least n + depth long.
    depth : int
        Number of fan levels above the prefix column.
    prefix_length : int, optional
        The level n of the first fan. Defaults to the common prefix length of
        alpha and beta, capped at min(len(alpha), len(beta)) - depth.

    Returns
    -------
    Filter
        The filter up to level n + depth.

    Raises
    ------
    InputError
        If a ray is not geodesic, ``depth`` is negative, or the rays are too
        short for the requested depth.
    ResourceGuardError
        If the filter would exceed the configured vertex cap.
    """
    alpha = check_word(graph, alpha)
    beta = check_word(graph, beta)
    for ray in (alpha, beta):
        if not is_geodesic(graph, ray):
            raise InputError(f"Ray {ray} is not geodesic.")
    if depth < 0:
        raise InputError(f"Depth must be non-negative, got {depth}.")
    common = common_prefix_length(alpha, beta)
    if prefix_length is None:
        prefix_length = _default_prefix_length(alpha, beta, depth)
    elif prefix_length > common:
        raise InputError(f"Prefix length {prefix_length} exceeds the common prefix length {common}.")
    if prefix_length < 0 or prefix_length + depth > min(len(alpha), len(beta)):
        raise InputError(
            f"Rays of lengths {len(alpha)} and {len(beta)} are too short for depth {depth}."
        )

    filt = Filter(graph, alpha, beta, prefix_length, depth)
    vertex = filt._add_vertex(0, NormalForm.identity(), ())
    vertex.on_alpha = vertex.on_beta = True
    for level in range(prefix_length):
        letter = alpha[level]
        above = filt._add_vertex(level + 1, right_multiply(graph, vertex.element, letter), alpha[:level + 1])
        above.on_alpha = above.on_beta = True
        edge = filt._add_edge(vertex, above, letter, EdgeKind.PREFIX, True)
        edge.on_alpha = edge.on_beta = True
        vertex = above

    if depth > 0:
        vertex.left_letter = alpha[prefix_length]
        vertex.right_letter = beta[prefix_length]
    for level in range(prefix_length, prefix_length + depth):
        filt._build_row(level)
        logger.debug(f"filter level {level + 1}: {len(filt.levels[level + 1])} vertices")
    return filt


@dataclass
class TreeView:
    """
    A filter with its non-tree edges removed.
    """

    filter: Filter
    edges: list[FilterEdge]
    parent: dict[int, int]

    def vertex_count(self) -> int:
        return len(self.filter.vertices)

    def edge_count(self) -> int:
        return len(self.edges)

    def is_tree(self) -> bool:
        """
        Connected and acyclic: every vertex but the root has exactly one
        parent edge, and following parents always reaches the root.
        """
        if self.edge_count() != self.vertex_count() - 1:
            return False
        for start in range(self.vertex_count()):
            seen = set()
            x = start
            while x in self.parent:
                if x in seen:
                    return False
                seen.add(x)
                x = self.filter.edges[self.parent[x]].source
            if x != 0:
                return False
        return True

    def dead_ends(self) -> list[int]:
        """
        Vertices below the top level with no upward tree edge.
        """
        has_child = {self.filter.edges[e].source for e in self.parent.values()}
        top = self.filter.get_top_level()
        return [v.index for v in self.filter.vertices if v.level < top and v.index not in has_child]

    def path_to_root(self, index: int) -> list[FilterEdge]:
        """
        Tree edges from the vertex down to the root, nearest first.
        """
        path = []
        x = index
        while x in self.parent:
            edge = self.filter.edges[self.parent[x]]
            path.append(edge)
            x = edge.source
        return path


def extract_tree(filt: Filter) -> TreeView:
    """
    Remove the non-tree edges of a filter.
    """
    tree_edges = [edge for edge in filt.edges if edge.is_tree]
    parent = {}
    for edge in tree_edges:
        if edge.target not in parent:
            parent[edge.target] = edge.index
    return TreeView(filt, tree_edges, parent)
