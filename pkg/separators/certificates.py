from __future__ import annotations

from dataclasses import dataclass

from graph_core.graph_functions import complement_components, is_clique, link, separates
from graph_core.presentation_graph import PresentationGraph
from graph_core.vertex_set import VertexSet
from utils.errors import InvariantViolation


def _fully_adjacent(graph: PresentationGraph, A: VertexSet, B: VertexSet) -> bool:
    return all(B.mask & ~graph.neighbours[a] == 0 for a in A)


def _fail(kind: str, message: str):
    raise InvariantViolation(f"{kind} certificate invalid: {message}")


@dataclass(frozen=True)
class ProductSeparator:
    """
    A separating set A | B where A and B are disjoint, commute and neither is
    a clique.
    """

    a: VertexSet
    b: VertexSet

    kind = "ProductSeparator"

    def validate(self, graph: PresentationGraph) -> None:
        if not self.a.isdisjoint(self.b):
            _fail(self.kind, "A and B overlap")
        if not _fully_adjacent(graph, self.a, self.b):
            _fail(self.kind, "A and B do not commute")
        if is_clique(graph, self.a) or is_clique(graph, self.b):
            _fail(self.kind, "one side is a clique")
        if not separates(graph, self.a | self.b)[0]:
            _fail(self.kind, "A | B does not separate")

    def lift(self, index_map: tuple[int, ...]) -> ProductSeparator:
        return ProductSeparator(self.a.lift(index_map), self.b.lift(index_map))

    def restrict(self, index_map: tuple[int, ...]) -> ProductSeparator:
        return ProductSeparator(self.a.restrict(index_map), self.b.restrict(index_map))

    def to_dict(self, graph: PresentationGraph) -> dict:
        return {"type": self.kind, "A": graph.names_of(self.a), "B": graph.names_of(self.b)}


@dataclass(frozen=True)
class Vfs:
    """
    A virtual factor separator (C, C1, K): C separates, <C1> has finite index
    in <C>, K lies in the link of C1 and is not a clique.
    """

    c: VertexSet
    c1: VertexSet
    k: VertexSet
    suspended: bool

    kind = "Vfs"

    def validate(self, graph: PresentationGraph) -> None:
        from separators.detectors import finite_index_special, is_suspended

        if not separates(graph, self.c)[0]:
            _fail(self.kind, "C does not separate")
        if not self.c1 <= self.c:
            _fail(self.kind, "C1 is not inside C")
        if not finite_index_special(graph, self.c, self.c1):
            _fail(self.kind, "<C1> does not have finite index in <C>")
        if not self.k <= link(graph, self.c1):
            _fail(self.kind, "K is not inside the link of C1")
        if is_clique(graph, self.k):
            _fail(self.kind, "K is a clique")
        if self.suspended != is_suspended(graph, self.c):
            _fail(self.kind, "suspended flag is wrong")

    def lift(self, index_map: tuple[int, ...]) -> Vfs:
        return Vfs(self.c.lift(index_map), self.c1.lift(index_map), self.k.lift(index_map), self.suspended)

    def restrict(self, index_map: tuple[int, ...]) -> Vfs:
        return Vfs(self.c.restrict(index_map), self.c1.restrict(index_map), self.k.restrict(index_map), self.suspended)

    def to_dict(self, graph: PresentationGraph) -> dict:
        return {
            "type": self.kind,
            "C": graph.names_of(self.c),
            "C1": graph.names_of(self.c1),
            "K": graph.names_of(self.k),
            "suspended": self.suspended,
        }


@dataclass(frozen=True)
class SeparatingClique:
    q: VertexSet

    kind = "SeparatingClique"

    def validate(self, graph: PresentationGraph) -> None:
        if not is_clique(graph, self.q):
            _fail(self.kind, "Q is not a clique")
        if not separates(graph, self.q)[0]:
            _fail(self.kind, "Q does not separate")

    def lift(self, index_map: tuple[int, ...]) -> SeparatingClique:
        return SeparatingClique(self.q.lift(index_map))

    def restrict(self, index_map: tuple[int, ...]) -> SeparatingClique:
        return SeparatingClique(self.q.restrict(index_map))

    def to_dict(self, graph: PresentationGraph) -> dict:
        return {"type": self.kind, "Q": graph.names_of(self.q)}


@dataclass(frozen=True)
class JoinSplit:
    factors: tuple[VertexSet, ...]

    kind = "JoinSplit"

    def validate(self, graph: PresentationGraph) -> None:
        expected = complement_components(graph, graph.full_set())
        if list(self.factors) != expected:
            _fail(self.kind, "factors are not the maximal join decomposition")
        if len(self.factors) < 2:
            _fail(self.kind, "graph is join-irreducible")

    def lift(self, index_map: tuple[int, ...]) -> JoinSplit:
        return JoinSplit(tuple(f.lift(index_map) for f in self.factors))

    def restrict(self, index_map: tuple[int, ...]) -> JoinSplit:
        return JoinSplit(tuple(f.restrict(index_map) for f in self.factors))

    def to_dict(self, graph: PresentationGraph) -> dict:
        return {"type": self.kind, "factors": [graph.names_of(f) for f in self.factors]}


SeparatorCertificate = ProductSeparator | Vfs | SeparatingClique | JoinSplit


def validate_certificate(graph: PresentationGraph, certificate: SeparatorCertificate) -> None:
    """
    Re-check a certificate against its graph.

    Raises
    ------
    InvariantViolation
        If any defining property fails.
    """
    certificate.validate(graph)
