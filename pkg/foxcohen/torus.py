"""Class-2 truncations of Fox torus homotopy groups τ_{n+1}(Y).

An element at level n assigns to each nonempty subset a of {1..n} a class
in π_{|a|+1}. Multiplication twists slot-wise addition by the bilinear cocycle

    B(x, y)_c = Σ_{a ∪ b = c, a ∩ b = ∅, b ≺ a} fox_sign(a, b) [x_a, y_b]

for a fixed total order ≺ on subsets. The cocycle is central, and the
product associative, as long as no bracket output feeds another bracket.
"""

import logging

from enum import Enum
from itertools import combinations
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from foxcohen.exceptions import DomainError, ModelMismatchError, ModelNotClass2
from foxcohen.fox import fox_sign
from foxcohen.homotopy import PiElement, SpaceModel, bracket, format_key
from foxcohen.types import IndexSet


class SubsetOrder(str, Enum):
    COLEX = "colex"
    REVERSE_COLEX = "reverse-colex"

    def precedes(self, b: IndexSet, a: IndexSet) -> bool:
        if self is SubsetOrder.COLEX:
            return b.mask < a.mask
        return b.mask > a.mask


class TauElement:
    __slots__ = ("group", "slots")

    def __init__(self, group: "TorusGroup", slots: Mapping[IndexSet, PiElement]) -> None:
        self.group = group
        self.slots: Dict[IndexSet, PiElement] = {
            a: v for a, v in slots.items() if not v.is_zero()
        }

    @property
    def level(self) -> int:
        return self.group.level

    def slot(self, a: IndexSet) -> PiElement:
        return self.slots.get(a) or self.group.model.zero(len(a) + 1)

    def is_identity(self) -> bool:
        return not self.slots

    def to_dict(self) -> Dict[str, List[int]]:
        return {
            str(a): list(self.slots[a].coeffs)
            for a in sorted(self.slots, key=lambda s: s.mask)
        }

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TauElement)
            and other.group.model is self.group.model
            and other.level == self.level
            and other.slots == self.slots
        )

    def __hash__(self) -> int:
        return hash(frozenset(self.slots.items()))

    def __repr__(self) -> str:
        return f"TauElement(level={self.level}, {self.to_dict()})"


def class_two_violations(model: SpaceModel, max_degree: int) -> List[str]:
    """Nonzero brackets up to max_degree that take another bracket's output degree."""
    entries = [
        (key, value)
        for key, value in model.brackets.items()
        if not value.is_zero() and value.degree <= max_degree
    ]
    outputs = {value.degree for _, value in entries}
    return [
        format_key(key)
        for key, _ in entries
        if key[0][0] in outputs or key[1][0] in outputs
    ]


class TorusGroup:
    """Class-2 model of τ_{level+1}(Y) over a simply connected space model.

    Raises:
        DomainError: level is below 1 or above truncation - 1.
        ModelNotClass2: some bracket takes an argument of a bracket output degree.
    """

    def __init__(
        self, model: SpaceModel, level: int, order: SubsetOrder = SubsetOrder.COLEX
    ) -> None:
        if level < 1:
            raise DomainError(f"level must be at least 1, got {level}")
        if level + 1 > model.truncation:
            raise DomainError(
                f"level {level} needs truncation {level + 1}, "
                f"{model.name} stops at {model.truncation}"
            )
        if violations := class_two_violations(model, level + 1):
            raise ModelNotClass2(
                f"{model.name} is not class 2 through degree {level + 1}: "
                + ", ".join(violations)
            )
        self.logger = logging.getLogger(self.__class__.__name__)
        self.model = model
        self.level = level
        self.order = order

    def _check(self, *elements: TauElement) -> None:
        for x in elements:
            if x.group.model is not self.model or x.level != self.level:
                raise ModelMismatchError(
                    f"torus element of {x.group.model.name} at level {x.level} used in "
                    f"{self.model.name} at level {self.level}"
                )

    def identity(self) -> TauElement:
        return TauElement(self, {})

    def embed(self, x: PiElement, a: IndexSet) -> TauElement:
        """The class x placed in slot a."""
        if not len(a) or len(a) != x.degree - 1:
            raise DomainError(
                f"slot {{{a}}} holds degree {len(a) + 1}, got degree {x.degree}"
            )
        if not a.issubset_of_range(self.level):
            raise DomainError(f"slot {{{a}}} is not inside 1..{self.level}")
        if x.group != self.model.group(x.degree):
            raise ModelMismatchError(f"degree {x.degree} element is not from {self.model.name}")
        return TauElement(self, {a: x})

    def element(self, slots: Mapping[str, Sequence[int]]) -> TauElement:
        """Element from coefficient lists keyed by subset strings such as ``"1,3"``."""
        values: Dict[IndexSet, PiElement] = {}
        for text, coeffs in slots.items():
            a = IndexSet.parse(text)
            if not len(a) or not a.issubset_of_range(self.level):
                raise DomainError(f"slot {{{a}}} is not a nonempty subset of 1..{self.level}")
            values[a] = self.model.element(len(a) + 1, coeffs)
        return TauElement(self, values)

    def cocycle(self, x: TauElement, y: TauElement) -> Dict[IndexSet, PiElement]:
        total: Dict[IndexSet, PiElement] = {}
        for a, xa in x.slots.items():
            for b, yb in y.slots.items():
                if not a.isdisjoint(b) or not self.order.precedes(b, a):
                    continue
                term = bracket(self.model, xa, yb)
                if term.is_zero():
                    continue
                c = a.union(b)
                term = term.scale(fox_sign(a, b))
                total[c] = total[c] + term if c in total else term
        return total

    def _add(self, *parts: Mapping[IndexSet, PiElement]) -> TauElement:
        total: Dict[IndexSet, PiElement] = {}
        for part in parts:
            for c, value in part.items():
                total[c] = total[c] + value if c in total else value
        return TauElement(self, total)

    def multiply(self, x: TauElement, y: TauElement) -> TauElement:
        self._check(x, y)
        return self._add(x.slots, y.slots, self.cocycle(x, y))

    def inverse(self, x: TauElement) -> TauElement:
        """-x + B(x, x), exact because B(x, B(x, x)) vanishes in class 2."""
        self._check(x)
        return self._add({a: -v for a, v in x.slots.items()}, self.cocycle(x, x))

    def commutator(self, x: TauElement, y: TauElement) -> TauElement:
        return self.multiply(
            self.multiply(self.multiply(x, y), self.inverse(x)), self.inverse(y)
        )


def tau_multiply(x: TauElement, y: TauElement) -> TauElement:
    return x.group.multiply(x, y)


def tau_commutator(x: TauElement, y: TauElement) -> TauElement:
    return x.group.commutator(x, y)


def tau_multiplicities(n: int, model: Optional[SpaceModel] = None) -> Dict[int, int]:
    """Copies of π_{k+1} in τ_n(Y): C(n-1, k) for k = 1..n-1.

    With a model, degrees whose group is trivial are left out.
    """
    if n < 2:
        raise DomainError(f"tau_n needs n >= 2, got {n}")
    counts = {k + 1: comb(n - 1, k) for k in range(1, n)}
    if model is not None:
        counts = {d: c for d, c in counts.items() if not model.group(d).is_trivial}
    return counts


def tau_kernel_multiplicities(n: int, model: Optional[SpaceModel] = None) -> Dict[int, int]:
    """Copies σ_i = C(n-2, i-2) of π_i in the kernel of τ_n(Y) -> τ_{n-1}(Y)."""
    if n < 2:
        raise DomainError(f"tau_n needs n >= 2, got {n}")
    counts = {i: comb(n - 2, i - 2) for i in range(2, n + 1)}
    if model is not None:
        counts = {d: c for d, c in counts.items() if not model.group(d).is_trivial}
    return counts


def signed_subset_sum(l: int, k: int) -> int:
    """Σ fox_sign(a, complement of a) over the l-subsets a of {1..k}."""
    if l < 1 or l > k:
        raise DomainError(f"need 1 <= l <= k, got l={l}, k={k}")
    total = 0
    for chosen in combinations(range(1, k + 1), l):
        a = IndexSet(chosen)
        total += fox_sign(a, a.complement(k))
    return total


def disjoint_pairs(max_size: int) -> List[Tuple[IndexSet, IndexSet]]:
    """Ordered pairs of disjoint nonempty subsets with |a| + |b| <= max_size.

    Both sets are drawn from {1..max_size}.
    """
    pairs: List[Tuple[IndexSet, IndexSet]] = []
    universe = range(1, max_size + 1)
    subsets = [
        IndexSet(c) for size in range(1, max_size) for c in combinations(universe, size)
    ]
    for a in subsets:
        for b in subsets:
            if len(a) + len(b) <= max_size and a.isdisjoint(b):
                pairs.append((a, b))
    return pairs
