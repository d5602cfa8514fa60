import logging
import random
from dataclasses import dataclass, field
from multiprocessing import Pool

import networkx as nx
import pandas as pd
from tqdm import tqdm

from classifier import survey_config
from classifier.classify import TraceStep, Verdict, VerdictKind, classify
from graph_core.presentation_graph import PresentationGraph
from utils.errors import InputError

logger = logging.getLogger(__name__)

ATLAS_MAX_NODES = 7


@dataclass
class SurveySummary:
    graphs: list[PresentationGraph] = field(default_factory=list)
    verdicts: list[Verdict] = field(default_factory=list)
    rules: list[str] = field(default_factory=list)
    undetermined: list[PresentationGraph] = field(default_factory=list)
    certificates_checked: int = 0

    def histogram(self) -> pd.DataFrame:
        """
        Verdict counts with columns ``verdict`` and ``count``.
        """
        counts = pd.Series([v.kind.value for v in self.verdicts], dtype="object").value_counts()
        frame = counts.rename_axis("verdict").reset_index(name="count")
        return frame.sort_values("verdict", kind="stable").reset_index(drop=True)

    def rule_histogram(self) -> pd.DataFrame:
        """
        Counts of the rule that decided each top-level graph.
        """
        counts = pd.Series(self.rules, dtype="object").value_counts()
        frame = counts.rename_axis("rule").reset_index(name="count")
        return frame.sort_values("rule", kind="stable").reset_index(drop=True)


def random_graphs(size_limit: int, sample_count: int, seed: int, edge_probability: float | None = None) -> list[PresentationGraph]:
    """
    Seeded Erdos-Renyi graphs with between 1 and ``size_limit`` vertices.
    """
    if edge_probability is None:
        edge_probability = survey_config.edge_probability
    rng = random.Random(seed)
    graphs = []
    for _ in range(sample_count):
        n = rng.randint(1, size_limit)
        graphs.append(PresentationGraph.from_networkx(nx.gnp_random_graph(n, edge_probability, seed=rng.randrange(2**32))))
    return graphs


def atlas_graphs(size_limit: int) -> list[PresentationGraph]:
    """
    Every graph on 1 to ``size_limit`` vertices up to isomorphism, from the
    networkx graph atlas.
    """
    if size_limit > ATLAS_MAX_NODES:
        raise InputError(f"The graph atlas only covers up to {ATLAS_MAX_NODES} vertices, got {size_limit}.")
    return [
        PresentationGraph.from_networkx(g)
        for g in nx.graph_atlas_g()
        if 1 <= g.number_of_nodes() <= size_limit
    ]


def _validate_trace(graph: PresentationGraph, trace: list[TraceStep]) -> int:
    checked = 0
    for step in trace:
        if step.certificate is not None:
            step.validate(graph)
            checked += 1
    return checked


def classify_survey(
    size_limit: int = survey_config.size_limit,
    sample_count: int = 0,
    seed: int = 0,
    exhaustive: bool = False,
    workers: int = survey_config.survey_workers,
    progress: bool = True,
) -> SurveySummary:
    """
    Classify a batch of graphs and summarise the verdicts.

    Parameters
    ----------
    size_limit : int
        Largest number of vertices.
    sample_count : int
        Number of random graphs; ignored when ``exhaustive`` is set.
    seed : int
        Seed for the random graphs.
    exhaustive : bool, optional
        Use every graph up to isomorphism instead of random samples.
    workers : int, optional
        Processes used for classification.
    progress : bool, optional
        Show a progress bar.

    Returns
    -------
    SurveySummary
        Verdicts, the deciding rules, the Undetermined graphs and the number
        of certificates re-validated.
    """
    graphs = atlas_graphs(size_limit) if exhaustive else random_graphs(size_limit, sample_count, seed)
    summary = SurveySummary()
    if workers > 1:
        with Pool(workers) as pool:
            results = list(tqdm(pool.imap(classify, graphs), total=len(graphs), disable=not progress))
    else:
        results = [classify(graph) for graph in tqdm(graphs, disable=not progress)]

    for graph, (verdict, trace) in zip(graphs, results):
        summary.graphs.append(graph)
        summary.verdicts.append(verdict)
        summary.rules.append(trace[0].rule.value)
        summary.certificates_checked += _validate_trace(graph, trace)
        if verdict.kind is VerdictKind.UNDETERMINED:
            summary.undetermined.append(graph)
            logger.warning(f"undetermined: {graph.names} edges {graph.edges()} ({verdict.reason})")
    return summary
