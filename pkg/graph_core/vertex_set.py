from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from utils.utils import iter_bits, mask_of


class VertexSet:
    """
    An immutable set of generator indices backed by an integer bitmask
    (bit i set means generator i is a member).

    Union, intersection and difference are single integer operations, which
    keeps the exhaustive subset searches of the separator detectors cheap.
    """

    __slots__ = ("mask",)

    def __init__(self, mask: int = 0):
        if mask < 0:
            raise ValueError(f"VertexSet mask must be non-negative, got {mask}")
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("VertexSet is immutable")

    def __reduce__(self):
        return (VertexSet, (self.mask,))

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> VertexSet:
        """
        Build a set from an iterable of generator indices.
        """
        return cls(mask_of(indices))

    @classmethod
    def empty(cls) -> VertexSet:
        return cls(0)

    @classmethod
    def full(cls, size: int) -> VertexSet:
        """
        The set {0, ..., size - 1}.
        """
        return cls((1 << size) - 1)

    def __or__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.mask | other.mask)

    def __and__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.mask & other.mask)

    def __sub__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.mask & ~other.mask)

    def __le__(self, other: VertexSet) -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: VertexSet) -> bool:
        return self <= other and self.mask != other.mask

    def __ge__(self, other: VertexSet) -> bool:
        return other <= self

    def __eq__(self, other) -> bool:
        return isinstance(other, VertexSet) and self.mask == other.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def __contains__(self, index: int) -> bool:
        return index >= 0 and bool(self.mask >> index & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __repr__(self) -> str:
        return f"VertexSet({sorted(self)})"

    def isdisjoint(self, other: VertexSet) -> bool:
        return self.mask & other.mask == 0

    def add(self, index: int) -> VertexSet:
        return VertexSet(self.mask | 1 << index)

    def discard(self, index: int) -> VertexSet:
        return VertexSet(self.mask & ~(1 << index))

    def least(self) -> int | None:
        """
        The smallest member, or None for the empty set.
        """
        if not self.mask:
            return None
        return (self.mask & -self.mask).bit_length() - 1

    def indices(self) -> tuple[int, ...]:
        return tuple(self)

    def lift(self, index_map: Mapping[int, int] | tuple[int, ...]) -> VertexSet:
        """
        Re-index the members through ``index_map`` (member i becomes
        ``index_map[i]``). Used to carry subsets of an induced subgraph back to
        the parent graph.
        """
        return VertexSet.from_indices(index_map[i] for i in self)

    def restrict(self, index_map: tuple[int, ...]) -> VertexSet:
        """
        Inverse of ``lift``: express a parent-graph set in the indices of an
        induced subgraph whose parent indices are ``index_map``. Members
        outside the subgraph are dropped.
        """
        position = {parent: child for child, parent in enumerate(index_map)}
        return VertexSet.from_indices(position[i] for i in self if i in position)
