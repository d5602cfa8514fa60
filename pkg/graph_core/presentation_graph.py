from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import networkx as nx
import numpy as np

from graph_core.graph_config import get_max_generators
from graph_core.vertex_set import VertexSet
from utils.errors import InputError

NAME_PATTERN = re.compile(r"[A-Za-z0-9_]+")


@dataclass(frozen=True, eq=True)
class PresentationGraph:
    """
    The presentation graph of a right-angled Coxeter system: one vertex per
    generator, an edge whenever two generators commute.

    The generator order is the order of declaration and fixes every "least"
    tie-break downstream. Adjacency is stored as one bitmask per generator.

    Parameters
    ----------
    names : tuple[str, ...]
        Generator names in canonical order.
    neighbours : tuple[int, ...]
        ``neighbours[i]`` is the bitmask of generators adjacent to generator i.
    """

    names: tuple[str, ...]
    neighbours: tuple[int, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = tuple(self.names)
        neighbours = tuple(int(m) for m in self.neighbours)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "neighbours", neighbours)

        if len(names) != len(neighbours):
            raise InputError(f"Got {len(names)} names but {len(neighbours)} neighbour masks.")
        if len(names) > get_max_generators():
            raise InputError(f"At most {get_max_generators()} generators are supported, got {len(names)}.")
        index = {}
        for i, name in enumerate(names):
            if not isinstance(name, str) or not NAME_PATTERN.fullmatch(name):
                raise InputError(f"Generator name {name!r} must match [A-Za-z0-9_]+.")
            if name in index:
                raise InputError(f"Duplicate generator name '{name}'.")
            index[name] = i
        object.__setattr__(self, "_index", index)

        full = (1 << len(names)) - 1
        for i, mask in enumerate(neighbours):
            if mask & ~full:
                raise InputError(f"Generator '{names[i]}' has a neighbour outside the graph.")
            if mask >> i & 1:
                raise InputError(f"Generator '{names[i]}' cannot be adjacent to itself.")
            for j in VertexSet(mask):
                if not neighbours[j] >> i & 1:
                    raise InputError(f"Adjacency between '{names[i]}' and '{names[j]}' is not symmetric.")

    @classmethod
    def from_edges(cls, names: Iterable[str], edges: Iterable[tuple[str, str]]) -> PresentationGraph:
        """
        Build a graph from generator names and a list of commuting pairs.

        Parameters
        ----------
        names : Iterable[str]
            Generator names in canonical order.
        edges : Iterable[tuple[str, str]]
            Pairs of names that commute.

        Returns
        -------
        PresentationGraph
            The presentation graph.

        Raises
        ------
        InputError
            On unknown names or self-loops.
        """
        names = tuple(names)
        position = {name: i for i, name in enumerate(names)}
        neighbours = [0] * len(names)
        for u, v in edges:
            if u not in position or v not in position:
                missing = u if u not in position else v
                raise InputError(f"Edge ({u}, {v}) references unknown generator '{missing}'.")
            i, j = position[u], position[v]
            if i == j:
                raise InputError(f"Self-loop on generator '{u}'.")
            neighbours[i] |= 1 << j
            neighbours[j] |= 1 << i
        return cls(names, tuple(neighbours))

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph, prefix: str = "v") -> PresentationGraph:
        """
        Convert a networkx graph, naming node ``n`` as ``f"{prefix}{n}"`` after
        sorting nodes.
        """
        nodes = sorted(nx_graph.nodes)
        names = [f"{prefix}{n}" for n in nodes]
        lookup = dict(zip(nodes, names))
        return cls.from_edges(names, ((lookup[u], lookup[v]) for u, v in nx_graph.edges))

    def size(self) -> int:
        return len(self.names)

    def index_of(self, name: str) -> int:
        """
        Return the index of a generator by name.

        Raises
        ------
        InputError
            If there is no generator with that name.
        """
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"Unknown generator '{name}'.") from None

    def full_set(self) -> VertexSet:
        return VertexSet.full(self.size())

    def subset_from_names(self, names: Iterable[str]) -> VertexSet:
        return VertexSet.from_indices(self.index_of(name) for name in names)

    def names_of(self, vertex_set: VertexSet) -> list[str]:
        return [self.names[i] for i in vertex_set]

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.neighbours[i] >> j & 1)

    def neighbour_set(self, i: int) -> VertexSet:
        return VertexSet(self.neighbours[i])

    def check_subset(self, vertex_set: VertexSet) -> VertexSet:
        """
        Raise InputError unless every member of ``vertex_set`` is a generator.
        """
        if vertex_set.mask >> self.size():
            raise InputError(f"{vertex_set!r} contains indices outside a graph with {self.size()} generators.")
        return vertex_set

    def edges(self) -> list[tuple[int, int]]:
        """
        All edges as index pairs (i, j) with i < j, sorted.
        """
        return [(i, j) for i in range(self.size()) for j in VertexSet(self.neighbours[i]) if i < j]

    @cached_property
    def adjacency_matrix(self) -> np.ndarray:
        """
        Boolean adjacency matrix in generator order.
        """
        n = self.size()
        matrix = np.zeros((n, n), dtype=bool)
        for i, j in self.edges():
            matrix[i, j] = True
            matrix[j, i] = True
        return matrix

    def to_networkx(self) -> nx.Graph:
        """
        The graph as a networkx Graph on generator names.
        """
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(self.names)
        nx_graph.add_edges_from((self.names[i], self.names[j]) for i, j in self.edges())
        return nx_graph
