"""Truncated graded homotopy data: the only input a user supplies.

A `SpaceModel` holds one finitely generated abelian group per degree
2..truncation, with a fixed generator basis, and a bilinear, graded-symmetric
Whitehead bracket table on generators. Brackets landing above the truncation
are zero.
"""

from enum import Enum
from math import gcd
from typing import (
    Any,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
)

from pydantic import BaseModel

from foxcohen.exceptions import DomainError, ModelMismatchError
from foxcohen.types import INFINITE, Order

Generator = Tuple[int, int]
BracketKey = Tuple[Generator, Generator]


class FgAbelianGroup:
    """Direct sum of cyclic factors; order 0 stands for an infinite cyclic factor."""

    __slots__ = ("orders",)

    def __init__(self, orders: Iterable[int] = ()) -> None:
        values = tuple(int(o) for o in orders)
        for o in values:
            if o < 0 or o == 1:
                raise DomainError(
                    f"cyclic factor orders are 0 (infinite) or at least 2, got {o}"
                )
        self.orders: Tuple[int, ...] = values

    @property
    def is_trivial(self) -> bool:
        return not self.orders

    @property
    def is_finite(self) -> bool:
        return 0 not in self.orders

    @property
    def size(self) -> Optional[int]:
        if not self.is_finite:
            return None
        total = 1
        for o in self.orders:
            total *= o
        return total

    def normalize(self, coeffs: Sequence[int]) -> Tuple[int, ...]:
        if len(coeffs) != len(self.orders):
            raise ModelMismatchError(
                f"expected {len(self.orders)} coefficients for {self}, got {len(coeffs)}"
            )
        return tuple(c % o if o else int(c) for c, o in zip(coeffs, self.orders))

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, FgAbelianGroup) and other.orders == self.orders

    def __hash__(self) -> int:
        return hash(self.orders)

    def __str__(self) -> str:
        if not self.orders:
            return "0"
        return " + ".join("Z" if o == 0 else f"Z{o}" for o in self.orders)

    def __repr__(self) -> str:
        return f"FgAbelianGroup({list(self.orders)})"


TRIVIAL_GROUP = FgAbelianGroup()


class PiElement:
    """An element of one graded piece π_d as a normalized coefficient vector."""

    __slots__ = ("degree", "group", "coeffs")

    def __init__(self, degree: int, group: FgAbelianGroup, coeffs: Sequence[int]) -> None:
        self.degree = degree
        self.group = group
        self.coeffs: Tuple[int, ...] = group.normalize(coeffs)

    @classmethod
    def zero(cls, degree: int, group: FgAbelianGroup) -> "PiElement":
        return cls(degree, group, (0,) * len(group.orders))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def order(self) -> Order:
        total = 1
        for c, o in zip(self.coeffs, self.group.orders):
            if not c:
                continue
            if not o:
                return INFINITE
            k = o // gcd(c, o)
            total = total * k // gcd(total, k)
        return total

    def _check(self, other: "PiElement") -> None:
        if other.degree != self.degree or other.group != self.group:
            raise ModelMismatchError(
                f"cannot combine degree {self.degree} ({self.group}) "
                f"with degree {other.degree} ({other.group})"
            )

    def __add__(self, other: "PiElement") -> "PiElement":
        self._check(other)
        return PiElement(
            self.degree, self.group, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other: "PiElement") -> "PiElement":
        return self + (-other)

    def __neg__(self) -> "PiElement":
        return PiElement(self.degree, self.group, [-c for c in self.coeffs])

    def scale(self, m: int) -> "PiElement":
        return PiElement(self.degree, self.group, [m * c for c in self.coeffs])

    def __eq__(self, other: Any) -> bool:
        return (
            isinstance(other, PiElement)
            and other.degree == self.degree
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.coeffs))

    def __repr__(self) -> str:
        return f"PiElement(degree={self.degree}, coeffs={list(self.coeffs)})"


def element_add(x: PiElement, y: PiElement) -> PiElement:
    return x + y


class BracketTable:
    """Whitehead brackets of generator pairs; absent entries are zero."""

    def __init__(self, entries: Optional[Mapping[BracketKey, PiElement]] = None) -> None:
        self._entries: Dict[BracketKey, PiElement] = dict(entries or {})

    def get(self, a: Generator, b: Generator) -> Optional[PiElement]:
        return self._entries.get((a, b))

    def items(self) -> Iterator[Tuple[BracketKey, PiElement]]:
        return iter(sorted(self._entries.items()))

    def output_degrees(self) -> List[int]:
        return sorted({v.degree for v in self._entries.values() if not v.is_zero()})

    def __contains__(self, key: BracketKey) -> bool:
        return key in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, BracketTable) and other._entries == self._entries


def graded_sign(p: int, q: int) -> int:
    return -1 if p * q % 2 else 1


class ViolationRule(str, Enum):
    SYMMETRY = "SymmetryViolation"
    SELF_BRACKET = "SelfBracketViolation"
    TORSION = "TorsionViolation"
    DEGREE = "DegreeViolation"
    GENERATOR = "GeneratorViolation"


class Violation(BaseModel):
    rule: ViolationRule
    entry: str
    message: str

    class Config:
        frozen = True

    def __str__(self) -> str:
        return f"{self.rule.value} at {self.entry}: {self.message}"


def format_key(key: BracketKey) -> str:
    (p, i), (q, j) = key
    return f"[({p},{i}),({q},{j})]"


BracketSpec = Tuple[Generator, Generator, Sequence[int], str]


class SpaceModel:
    """Graded groups π_2..π_truncation with their Whitehead bracket table.

    Args:
        name: catalog or file name of the model.
        truncation: largest degree carried.
        groups: group per degree; missing degrees are trivial.
        brackets: generator bracket table.
        notes: provenance text per bracket entry.
        description: provenance of the model as a whole.
    """

    def __init__(
        self,
        name: str,
        truncation: int,
        groups: Mapping[int, FgAbelianGroup],
        brackets: Optional[BracketTable] = None,
        notes: Optional[Mapping[BracketKey, str]] = None,
        description: str = "",
    ) -> None:
        if truncation < 2:
            raise DomainError(f"truncation must be at least 2, got {truncation}")
        for d in groups:
            if d < 2 or d > truncation:
                raise DomainError(f"degree {d} outside 2..{truncation}")
        self.name = name
        self.truncation = truncation
        self._groups: Dict[int, FgAbelianGroup] = {
            d: g for d, g in groups.items() if not g.is_trivial
        }
        self.brackets = brackets if brackets is not None else BracketTable()
        self.notes: Dict[BracketKey, str] = dict(notes or {})
        self.description = description

    @classmethod
    def from_tables(
        cls,
        name: str,
        truncation: int,
        groups: Mapping[int, Sequence[int]],
        brackets: Sequence[BracketSpec] = (),
        description: str = "",
    ) -> "SpaceModel":
        """Build a model from plain tables, mirroring each bracket entry.

        An entry ((p,i),(q,j)) given without its mirror gets the mirror
        (-1)^(pq) times its value.
        """
        group_map = {d: FgAbelianGroup(orders) for d, orders in groups.items()}
        shell = cls(name, truncation, group_map)
        entries: Dict[BracketKey, PiElement] = {}
        notes: Dict[BracketKey, str] = {}
        for a, b, coeffs, note in brackets:
            value = shell.element(a[0] + b[0] - 1, coeffs)
            entries[(a, b)] = value
            notes[(a, b)] = note
        for (a, b), value in list(entries.items()):
            if (b, a) not in entries:
                entries[(b, a)] = value.scale(graded_sign(a[0], b[0]))
                notes[(b, a)] = notes[(a, b)]
        return cls(name, truncation, group_map, BracketTable(entries), notes, description)

    def group(self, degree: int) -> FgAbelianGroup:
        return self._groups.get(degree, TRIVIAL_GROUP)

    @property
    def degrees(self) -> List[int]:
        return sorted(self._groups)

    def element(self, degree: int, coeffs: Sequence[int]) -> PiElement:
        return PiElement(degree, self.group(degree), coeffs)

    def zero(self, degree: int) -> PiElement:
        return PiElement.zero(degree, self.group(degree))

    def generator(self, degree: int, index: int) -> PiElement:
        group = self.group(degree)
        if not 0 <= index < len(group.orders):
            raise DomainError(f"degree {degree} has no generator {index}")
        return PiElement(
            degree, group, [1 if i == index else 0 for i in range(len(group.orders))]
        )

    def generators(self, max_degree: Optional[int] = None) -> List[Generator]:
        top = self.truncation if max_degree is None else max_degree
        return [
            (d, i)
            for d in self.degrees
            if d <= top
            for i in range(len(self._groups[d].orders))
        ]

    def generator_order(self, gen: Generator) -> int:
        """Order of a generator, 0 for an infinite cyclic factor."""
        return self.group(gen[0]).orders[gen[1]]

    def bracket(self, x: PiElement, y: PiElement) -> PiElement:
        return bracket(self, x, y)

    def validate(self) -> List[Violation]:
        return validate_space(self)

    def __eq__(self, other: Any) -> bool:
        return (
            isinstance(other, SpaceModel)
            and other.name == self.name
            and other.truncation == self.truncation
            and other._groups == self._groups
            and other.brackets == self.brackets
            and other.notes == self.notes
        )

    def __repr__(self) -> str:
        return f"SpaceModel({self.name!r}, truncation={self.truncation})"


def bracket(model: SpaceModel, x: PiElement, y: PiElement) -> PiElement:
    """Bilinear extension of the generator table; zero above the truncation."""
    degree = x.degree + y.degree - 1
    target = model.group(degree)
    if degree > model.truncation or target.is_trivial:
        return PiElement.zero(degree, target)
    total = [0] * len(target.orders)
    for i, cx in enumerate(x.coeffs):
        if not cx:
            continue
        for j, cy in enumerate(y.coeffs):
            if not cy:
                continue
            entry = model.brackets.get((x.degree, i), (y.degree, j))
            if entry is None:
                continue
            for t, c in enumerate(entry.coeffs):
                total[t] += cx * cy * c
    return PiElement(degree, target, total)


def _check_entry_shape(model: SpaceModel, key: BracketKey, value: PiElement) -> List[Violation]:
    (p, i), (q, j) = key
    where = format_key(key)
    found: List[Violation] = []
    for d, idx in key:
        if not 0 <= idx < len(model.group(d).orders):
            found.append(
                Violation(
                    rule=ViolationRule.GENERATOR,
                    entry=where,
                    message=f"degree {d} has no generator {idx}",
                )
            )
    if p + q - 1 > model.truncation and not value.is_zero():
        found.append(
            Violation(
                rule=ViolationRule.DEGREE,
                entry=where,
                message=f"bracket lands in degree {p + q - 1} above truncation {model.truncation}",
            )
        )
    elif value.degree != p + q - 1:
        found.append(
            Violation(
                rule=ViolationRule.DEGREE,
                entry=where,
                message=f"value has degree {value.degree}, expected {p + q - 1}",
            )
        )
    return found


def _check_symmetry(model: SpaceModel, key: BracketKey, value: PiElement) -> List[Violation]:
    a, b = key
    where = format_key(key)
    sign = graded_sign(a[0], b[0])
    if a == b:
        if sign < 0 and not value.scale(2).is_zero():
            return [
                Violation(
                    rule=ViolationRule.SELF_BRACKET,
                    entry=where,
                    message=f"odd-degree self bracket {list(value.coeffs)} is not 2-torsion",
                )
            ]
        return []
    mirror = model.brackets.get(b, a)
    expected = value.scale(sign)
    actual = mirror if mirror is not None else PiElement.zero(value.degree, value.group)
    if actual != expected:
        return [
            Violation(
                rule=ViolationRule.SYMMETRY,
                entry=where,
                message=(
                    f"mirror {format_key((b, a))} is {list(actual.coeffs)}, "
                    f"expected {sign:+d} * {list(value.coeffs)}"
                ),
            )
        ]
    return []


def _check_torsion(model: SpaceModel, key: BracketKey, value: PiElement) -> List[Violation]:
    finite = [model.generator_order(g) for g in key]
    finite = [o for o in finite if o]
    if not finite or value.is_zero():
        return []
    bound = gcd(*finite) if len(finite) > 1 else finite[0]
    order = value.order()
    if order is INFINITE or bound % int(order):
        return [
            Violation(
                rule=ViolationRule.TORSION,
                entry=format_key(key),
                message=f"bracket of order {order} does not divide {bound}",
            )
        ]
    return []


def validate_space(model: SpaceModel) -> List[Violation]:
    """All invariant violations of the bracket table; empty when the model is sound."""
    violations: List[Violation] = []
    seen: Set[FrozenSet[Generator]] = set()
    for key, value in model.brackets.items():
        shape = _check_entry_shape(model, key, value)
        violations.extend(shape)
        if shape:
            continue
        unordered = frozenset(key)
        if unordered not in seen:
            seen.add(unordered)
            violations.extend(_check_symmetry(model, key, value))
        violations.extend(_check_torsion(model, key, value))
    return violations
