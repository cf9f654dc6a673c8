from enum import Enum
from typing import Any, Iterable, Iterator, Tuple, Union

from foxcohen.exceptions import DomainError


class Special(str, Enum):
    """Distinguished non-integer outcomes of order and probe computations."""

    INFINITE = "inf"
    EXCEEDS_BOUND = "exceeds-bound"
    EXCEEDS_DEPTH = "exceeds-depth"
    NOT_APPLICABLE = "n/a"

    def __str__(self) -> str:
        return self.value


INFINITE = Special.INFINITE
EXCEEDS_BOUND = Special.EXCEEDS_BOUND
EXCEEDS_DEPTH = Special.EXCEEDS_DEPTH
NOT_APPLICABLE = Special.NOT_APPLICABLE

Order = Union[int, Special]


class IndexSet:
    """A finite set of positive integers kept sorted and deduplicated."""

    __slots__ = ("elements", "mask")

    def __init__(self, elements: Iterable[int] = ()) -> None:
        values = sorted(set(int(e) for e in elements))
        if values and values[0] < 1:
            raise DomainError(f"index sets hold positive integers, got {values[0]}")
        self.elements: Tuple[int, ...] = tuple(values)
        self.mask = sum(1 << (e - 1) for e in values)

    @classmethod
    def parse(cls, text: str) -> "IndexSet":
        stripped = text.strip()
        if not stripped:
            return cls()
        try:
            return cls(int(part) for part in stripped.split(","))
        except ValueError as e:
            raise DomainError(f"cannot read index set {text!r}") from e

    @classmethod
    def from_mask(cls, mask: int) -> "IndexSet":
        return cls(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)

    def isdisjoint(self, other: "IndexSet") -> bool:
        return not self.mask & other.mask

    def union(self, other: "IndexSet") -> "IndexSet":
        return IndexSet.from_mask(self.mask | other.mask)

    def complement(self, k: int) -> "IndexSet":
        return IndexSet(i for i in range(1, k + 1) if not self.mask >> (i - 1) & 1)

    def issubset_of_range(self, n: int) -> bool:
        return not self.elements or self.elements[-1] <= n

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, IndexSet) and other.mask == self.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.elements)

    def __repr__(self) -> str:
        return f"IndexSet({{{self}}})"
