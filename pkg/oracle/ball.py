import logging
from functools import lru_cache
from multiprocessing import Pool

import pandas as pd

from graph_core.presentation_graph import PresentationGraph
from oracle.oracle_config import get_element_cap, get_oracle_workers
from utils.errors import InputError, OutOfBallError, ResourceGuardError
from utils.utils import Word
from word_engine.words import NormalForm, inverse, multiply, right_multiply

logger = logging.getLogger(__name__)


def _expand_chunk(args: tuple[PresentationGraph, list[NormalForm]]) -> list[NormalForm]:
    # every Cayley graph neighbour; the caller drops ones already seen
    graph, chunk = args
    return [right_multiply(graph, element, s) for element in chunk for s in range(graph.size())]


class Ball:
    """
    The ball of a given radius around the identity in the Cayley graph,
    enumerated by breadth-first search and keyed by normal forms.

    This is the brute-force reference every other module is checked against.
    """

    def __init__(self, graph: PresentationGraph, radius: int, workers: int | None = None):
        """
        Enumerate the ball.

        Parameters
        ----------
        graph : PresentationGraph
            The presentation graph.
        radius : int
            Non-negative radius.
        workers : int, optional
            Number of processes used to expand each BFS frontier. Defaults to
            the oracle configuration. The result does not depend on it.

        Raises
        ------
        InputError
            If the radius is negative.
        ResourceGuardError
            If the ball would exceed the configured element cap.
        """
        if radius < 0:
            raise InputError(f"Radius must be non-negative, got {radius}.")
        self.graph = graph
        self.radius = radius
        self.workers = workers if workers is not None else get_oracle_workers()
        self.table: dict[NormalForm, int] = {}
        self.spheres: list[list[NormalForm]] = []
        self._enumerate()

    def _expand(self, sphere: list[NormalForm], pool) -> list[NormalForm]:
        if pool is None:
            return _expand_chunk((self.graph, sphere))
        size = max(1, len(sphere) // (self.workers * 4) + 1)
        chunks = [(self.graph, sphere[i:i + size]) for i in range(0, len(sphere), size)]
        found = []
        for part in pool.map(_expand_chunk, chunks):
            found.extend(part)
        return found

    def _enumerate(self):
        cap = get_element_cap()
        identity = NormalForm.identity()
        self.table[identity] = 0
        self.spheres.append([identity])
        pool = Pool(self.workers) if self.workers > 1 else None
        try:
            for d in range(1, self.radius + 1):
                candidates = {e for e in self._expand(self.spheres[-1], pool) if e not in self.table}
                if len(self.table) + len(candidates) > cap:
                    raise ResourceGuardError(
                        f"Ball of radius {self.radius} exceeds the element cap of {cap} at distance {d}."
                    )
                sphere = sorted(candidates, key=NormalForm.key)
                for element in sphere:
                    self.table[element] = d
                self.spheres.append(sphere)
                logger.debug(f"sphere {d}: {len(sphere)} elements")
        finally:
            if pool is not None:
                pool.close()
                pool.join()

    def get_graph(self) -> PresentationGraph:
        return self.graph

    def get_radius(self) -> int:
        return self.radius

    def get_size(self) -> int:
        return len(self.table)

    def get_sphere(self, d: int) -> list[NormalForm]:
        """
        Elements at distance exactly ``d``, in shortlex order.
        """
        if not 0 <= d <= self.radius:
            raise OutOfBallError(f"Distance {d} is outside a ball of radius {self.radius}.")
        return list(self.spheres[d])

    def elements(self) -> list[NormalForm]:
        """
        All elements in shortlex order.
        """
        return [element for sphere in self.spheres for element in sphere]

    def __contains__(self, element: NormalForm) -> bool:
        return element in self.table

    def distance(self, element: NormalForm) -> int:
        """
        Distance from the identity.

        Raises
        ------
        OutOfBallError
            If the element is not in the ball.
        """
        try:
            return self.table[element]
        except KeyError:
            raise OutOfBallError(f"{element.word} is outside the ball of radius {self.radius}.") from None

    def sphere_sizes(self) -> pd.DataFrame:
        """
        Sphere sizes as a DataFrame with columns ``radius`` and ``count``.
        """
        return pd.DataFrame(
            {"radius": range(len(self.spheres)), "count": [len(sphere) for sphere in self.spheres]}
        )


def ball(graph: PresentationGraph, radius: int, workers: int | None = None) -> Ball:
    return Ball(graph, radius, workers)


def oracle_distance(ball: Ball, g: NormalForm, h: NormalForm) -> int:
    """
    Cayley graph distance between g and h, read from the ball as l(g^-1 h).

    Raises
    ------
    OutOfBallError
        If g^-1 h lies outside the ball.
    """
    graph = ball.get_graph()
    return ball.distance(multiply(graph, inverse(graph, g), h))


def all_geodesics(ball: Ball, g: NormalForm) -> list[Word]:
    """
    Every geodesic word for g, sorted lexicographically. Found by walking back
    through neighbours one step closer to the identity.

    Raises
    ------
    OutOfBallError
        If g is outside the ball.
    """
    graph = ball.get_graph()
    ball.distance(g)

    @lru_cache(maxsize=None)
    def geodesics(element: NormalForm) -> tuple[Word, ...]:
        d = ball.table[element]
        if d == 0:
            return ((),)
        words = []
        for s in range(graph.size()):
            previous = right_multiply(graph, element, s)
            if ball.table.get(previous) == d - 1:
                words.extend(word + (s,) for word in geodesics(previous))
        return tuple(words)

    return sorted(geodesics(g))
