import logging
from dataclasses import dataclass
from enum import Enum
from multiprocessing import Pool
from typing import Sequence

from graph_core.graph_functions import induced_with_map, is_clique, join_factors
from graph_core.presentation_graph import PresentationGraph
from graph_core.vertex_set import VertexSet
from separators.certificates import JoinSplit, SeparatorCertificate
from separators.detectors import EndsClass, ends, find_product_separator, find_vfs, infinite_ends_certificate
from utils.errors import InputError

logger = logging.getLogger(__name__)

GAP_REASON = "product separator without usable VFS"


class VerdictKind(Enum):
    LOCALLY_CONNECTED = "LocallyConnected"
    NOT_LOCALLY_CONNECTED = "NotLocallyConnected"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    reason: str | None = None

    def __str__(self) -> str:
        if self.reason:
            return f"{self.kind.value}({self.reason})"
        return self.kind.value


LC = Verdict(VerdictKind.LOCALLY_CONNECTED)
NLC = Verdict(VerdictKind.NOT_LOCALLY_CONNECTED)


class Rule(Enum):
    FINITE_GROUP = "FiniteGroup"
    TWO_ENDED = "TwoEnded"
    INFINITE_ENDED = "InfiniteEnded"
    VFS_NON_SUSPENDED = "VfsNonSuspended"
    JOIN_RECURSION = "JoinRecursion"
    MAIN_THEOREM = "MainTheorem"
    GAP = "Gap"


@dataclass(frozen=True)
class TraceStep:
    """
    One rule application. ``subgraph`` and the certificate use the generator
    indices of the graph that was classified.
    """

    subgraph: VertexSet
    rule: Rule
    certificate: SeparatorCertificate | None = None

    def validate(self, root: PresentationGraph) -> None:
        """
        Re-check the certificate against the induced subgraph of this step.
        """
        if self.certificate is None:
            return
        sub, index_map = induced_with_map(root, self.subgraph)
        self.certificate.restrict(index_map).validate(sub)

    def to_dict(self, root: PresentationGraph) -> dict:
        return {
            "subgraph": root.names_of(self.subgraph),
            "rule": self.rule.value,
            "certificate": self.certificate.to_dict(root) if self.certificate is not None else None,
        }


def _combine(verdicts: list[Verdict]) -> Verdict:
    if any(v.kind is VerdictKind.NOT_LOCALLY_CONNECTED for v in verdicts):
        return NLC
    if all(v.kind is VerdictKind.LOCALLY_CONNECTED for v in verdicts):
        return LC
    reasons = sorted({v.reason for v in verdicts if v.reason})
    return Verdict(VerdictKind.UNDETERMINED, "; ".join(reasons) or GAP_REASON)


def _classify(graph: PresentationGraph, index_map: tuple[int, ...], trace: list[TraceStep]) -> Verdict:
    here = VertexSet.from_indices(index_map)
    kind = ends(graph)
    if kind is EndsClass.ZERO:
        trace.append(TraceStep(here, Rule.FINITE_GROUP))
        return LC
    if kind is EndsClass.TWO:
        trace.append(TraceStep(here, Rule.TWO_ENDED))
        return LC
    if kind is EndsClass.INFINITE:
        trace.append(TraceStep(here, Rule.INFINITE_ENDED, infinite_ends_certificate(graph).lift(index_map)))
        return NLC

    vfs = find_vfs(graph)
    if vfs is not None and not vfs.suspended:
        trace.append(TraceStep(here, Rule.VFS_NON_SUSPENDED, vfs.lift(index_map)))
        return NLC

    factors = join_factors(graph)
    if len(factors) > 1:
        trace.append(TraceStep(here, Rule.JOIN_RECURSION, JoinSplit(tuple(factors)).lift(index_map)))
        verdicts = []
        for factor in factors:
            if is_clique(graph, factor):
                continue
            sub, sub_map = induced_with_map(graph, factor)
            verdicts.append(_classify(sub, tuple(index_map[i] for i in sub_map), trace))
        return _combine(verdicts)

    if find_product_separator(graph) is None and vfs is None:
        trace.append(TraceStep(here, Rule.MAIN_THEOREM))
        return LC
    trace.append(TraceStep(here, Rule.GAP))
    return Verdict(VerdictKind.UNDETERMINED, GAP_REASON)


def classify(graph: PresentationGraph) -> tuple[Verdict, list[TraceStep]]:
    """
    Decide whether the group has locally connected boundary.

    Rules are tried in order: finite group, two-ended, infinitely ended,
    non-suspended virtual factor separator, join recursion on the non-clique
    factors, and finally the main theorem for graphs with no product
    separator and no virtual factor separator. Anything left is Undetermined.

    Parameters
    ----------
    graph : PresentationGraph
        A nonempty presentation graph.

    Returns
    -------
    tuple[Verdict, list[TraceStep]]
        The verdict and every rule applied, in order.

    Raises
    ------
    InputError
        For the empty graph.
    """
    if graph.size() == 0:
        raise InputError("Cannot classify the empty graph.")
    trace: list[TraceStep] = []
    verdict = _classify(graph, tuple(range(graph.size())), trace)
    logger.debug(f"classified {graph.names}: {verdict} via {[step.rule.value for step in trace]}")
    return verdict, trace


def classification_to_dict(graph: PresentationGraph, verdict: Verdict, trace: Sequence[TraceStep]) -> dict:
    return {
        "verdict": verdict.kind.value,
        "reason": verdict.reason,
        "trace": [step.to_dict(graph) for step in trace],
    }


def classify_many(graphs: Sequence[PresentationGraph], workers: int = 1) -> list[tuple[Verdict, list[TraceStep]]]:
    """
    Classify several graphs, in parallel when ``workers`` > 1. Results are in
    input order.
    """
    if workers <= 1:
        return [classify(graph) for graph in graphs]
    with Pool(workers) as pool:
        return pool.map(classify, graphs)
