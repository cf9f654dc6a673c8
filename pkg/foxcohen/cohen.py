"""Cohen groups [J_n(S^1), ΩY] over a space model.

An element at level n is a tuple of coordinates in π_2, ..., π_{n+1}. The
product adds coordinates and corrects degree d by the Whitehead brackets of
lower coordinates weighted with Fox function values:

    (x # y)_d = x_d + y_d + Σ_{k+j=d+1, k,j>=2} φ(k-1, d-2) [x_k, y_j]

so the group is an iterated central extension and the level-(n-1) group is
the quotient by the top coordinate.
"""

import logging
import random

from itertools import product
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from pydantic import BaseModel

from foxcohen.exceptions import (
    BudgetExceeded,
    CoefficientMismatch,
    DomainError,
    ModelMismatchError,
)
from foxcohen.fox import phi_bruteforce, phi_closed
from foxcohen.homotopy import Generator, PiElement, SpaceModel, bracket
from foxcohen.types import EXCEEDS_BOUND, EXCEEDS_DEPTH, INFINITE, Order, Special
from foxcohen.utils import debug_enabled, enumeration_budget, order_bound

Term = Tuple[int, int, int]
CoordinateMap = Mapping[int, Sequence[int]]


class CohenElement:
    __slots__ = ("group", "coords")

    def __init__(self, group: "CohenGroup", coords: Sequence[PiElement]) -> None:
        self.group = group
        self.coords: Tuple[PiElement, ...] = tuple(coords)

    @property
    def level(self) -> int:
        return self.group.level

    def coordinate(self, degree: int) -> PiElement:
        return self.coords[degree - 2]

    def is_identity(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def support(self) -> List[int]:
        return [c.degree for c in self.coords if not c.is_zero()]

    def to_dict(self) -> Dict[str, List[int]]:
        """Coordinates in degrees with a nontrivial group, keyed by degree."""
        return {
            str(c.degree): list(c.coeffs) for c in self.coords if not c.group.is_trivial
        }

    def __mul__(self, other: "CohenElement") -> "CohenElement":
        return self.group.multiply(self, other)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, CohenElement)
            and other.group.model is self.group.model
            and other.coords == self.coords
        )

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"CohenElement(level={self.level}, {self.to_dict()})"


class AbelianReport(BaseModel):
    abelian: bool
    witness: Optional[Tuple[Generator, Generator]] = None


class GroupCensus(BaseModel):
    model: str
    level: int
    size: int
    elements: List[Dict[str, List[int]]]
    order_census: Dict[int, int]
    exponent: int
    cyclic: bool
    abelian: bool
    closed: bool


class CohenGroup:
    """The level-n Cohen group of a space model.

    Args:
        model: homotopy data; needs truncation at least level + 1.
        level: n >= 1, the filtration stage of the James construction.
        debug: recompute every Fox coefficient by brute force on each product.
            Defaults to the ``FOXCOHEN_DEBUG`` environment variable.
    """

    def __init__(self, model: SpaceModel, level: int, debug: Optional[bool] = None) -> None:
        if level < 1:
            raise DomainError(f"level must be at least 1, got {level}")
        if level + 1 > model.truncation:
            raise DomainError(
                f"level {level} needs truncation {level + 1}, "
                f"{model.name} stops at {model.truncation}"
            )
        self.logger = logging.getLogger(self.__class__.__name__)
        self.model = model
        self.level = level
        self.degrees = list(range(2, level + 2))
        self.debug = debug_enabled() if debug is None else debug
        self._terms: Dict[int, List[Term]] = {d: self._correction_terms(d) for d in self.degrees}
        self._parent: Optional["CohenGroup"] = None
        self.logger.debug(
            "Cohen group of %s at level %d with %d correction terms",
            model.name,
            level,
            sum(len(t) for t in self._terms.values()),
        )

    def _correction_terms(self, degree: int) -> List[Term]:
        if self.model.group(degree).is_trivial:
            return []
        terms: List[Term] = []
        for k in range(2, degree):
            j = degree + 1 - k
            if self.model.group(k).is_trivial or self.model.group(j).is_trivial:
                continue
            if coefficient := phi_closed(k - 1, degree - 2):
                terms.append((k, j, coefficient))
        return terms

    def _check_coefficients(self, degree: int) -> None:
        for k in range(2, degree):
            expected = phi_closed(k - 1, degree - 2)
            try:
                actual = phi_bruteforce(k - 1, degree - 2)
            except BudgetExceeded:
                self.logger.debug("Skipping brute force of phi(%d,%d)", k - 1, degree - 2)
                continue
            if actual != expected:
                raise CoefficientMismatch(
                    f"phi({k - 1},{degree - 2}): closed form {expected}, brute force {actual}"
                )

    def _check(self, *elements: CohenElement) -> None:
        for x in elements:
            if x.group.model is not self.model or x.level != self.level:
                raise ModelMismatchError(
                    f"element of {x.group.model.name} at level {x.level} used in "
                    f"{self.model.name} at level {self.level}"
                )

    def identity(self) -> CohenElement:
        return CohenElement(self, [self.model.zero(d) for d in self.degrees])

    def element(self, coords: CoordinateMap) -> CohenElement:
        """Element from coefficient lists by degree; omitted degrees are zero."""
        for d in coords:
            if d not in self._terms:
                raise DomainError(f"degree {d} outside 2..{self.level + 1}")
        return CohenElement(
            self,
            [
                self.model.element(d, coords[d]) if d in coords else self.model.zero(d)
                for d in self.degrees
            ],
        )

    def homogeneous(self, value: PiElement) -> CohenElement:
        return CohenElement(
            self,
            [value if d == value.degree else self.model.zero(d) for d in self.degrees],
        )

    def multiply(self, x: CohenElement, y: CohenElement) -> CohenElement:
        self._check(x, y)
        coords: List[PiElement] = []
        for d in self.degrees:
            value = x.coords[d - 2] + y.coords[d - 2]
            if self.debug:
                self._check_coefficients(d)
            for k, j, coefficient in self._terms[d]:
                term = bracket(self.model, x.coords[k - 2], y.coords[j - 2])
                if not term.is_zero():
                    value = value + term.scale(coefficient)
            coords.append(value)
        return CohenElement(self, coords)

    def inverse(self, x: CohenElement) -> CohenElement:
        """Solves x # v = identity one degree at a time, lowest degree first."""
        self._check(x)
        coords: List[PiElement] = []
        for d in self.degrees:
            value = -x.coords[d - 2]
            for k, j, coefficient in self._terms[d]:
                term = bracket(self.model, x.coords[k - 2], coords[j - 2])
                if not term.is_zero():
                    value = value - term.scale(coefficient)
            coords.append(value)
        return CohenElement(self, coords)

    def commutator(self, x: CohenElement, y: CohenElement) -> CohenElement:
        return self.multiply(
            self.multiply(self.multiply(x, y), self.inverse(x)), self.inverse(y)
        )

    def power(self, x: CohenElement, m: int) -> CohenElement:
        base = self.inverse(x) if m < 0 else x
        m = abs(m)
        result = self.identity()
        while m:
            if m & 1:
                result = self.multiply(result, base)
            m >>= 1
            if m:
                base = self.multiply(base, base)
        return result

    def order(self, x: CohenElement, bound: Optional[int] = None) -> Order:
        """Order of x, `INFINITE` or `EXCEEDS_BOUND`.

        The lowest nonzero coordinate of x^m is m times that of x, so a free
        component there makes the order infinite.
        """
        self._check(x)
        if x.is_identity():
            return 1
        lowest = next(c for c in x.coords if not c.is_zero())
        if lowest.order() is INFINITE:
            return INFINITE
        limit = order_bound() if bound is None else bound
        current = x
        for m in range(1, limit + 1):
            if current.is_identity():
                return m
            current = self.multiply(current, x)
        return EXCEEDS_BOUND

    def parent(self) -> "CohenGroup":
        if self.level == 1:
            raise DomainError("level 1 has no lower level to project to")
        if self._parent is None:
            self._parent = CohenGroup(self.model, self.level - 1, self.debug)
        return self._parent

    def project(self, x: CohenElement) -> CohenElement:
        self._check(x)
        parent = self.parent()
        return CohenElement(parent, x.coords[:-1])

    def generators(self) -> List[Tuple[Generator, CohenElement]]:
        """Homogeneous generator elements, one per cyclic factor of each degree."""
        return [
            (gen, self.homogeneous(self.model.generator(*gen)))
            for gen in self.model.generators(self.level + 1)
        ]

    def is_abelian(self) -> AbelianReport:
        gens = self.generators()
        for position, (a, x) in enumerate(gens):
            for b, y in gens[position + 1 :]:
                if not self.commutator(x, y).is_identity():
                    self.logger.debug("%s and %s do not commute", a, b)
                    return AbelianReport(abelian=False, witness=(a, b))
        return AbelianReport(abelian=True)

    def nilpotency_probe(self, depth: int) -> Union[int, Special]:
        """Smallest c <= depth whose (c+1)-fold left-normed generator commutators vanish."""
        if depth < 1:
            raise DomainError(f"depth must be at least 1, got {depth}")
        gens = [x for _, x in self.generators()]
        layer = [x for x in gens if not x.is_identity()]
        for c in range(1, depth + 1):
            following = {self.commutator(u, g) for u in layer for g in gens}
            layer = [u for u in following if not u.is_identity()]
            self.logger.debug("Weight %d: %d nontrivial commutators", c + 1, len(layer))
            if not layer:
                return c
        return EXCEEDS_DEPTH

    def size(self) -> Optional[int]:
        total = 1
        for d in self.degrees:
            if (part := self.model.group(d).size) is None:
                return None
            total *= part
        return total

    def elements(self) -> Iterable[CohenElement]:
        ranges = [
            product(*(range(o) for o in self.model.group(d).orders)) for d in self.degrees
        ]
        for choice in product(*ranges):
            yield CohenElement(
                self, [self.model.element(d, c) for d, c in zip(self.degrees, choice)]
            )

    def enumerate_group(self, size_bound: Optional[int] = None) -> GroupCensus:
        """Every element with its order census and a Cayley table closure check.

        Raises:
            DomainError: some degree carries an infinite cyclic factor.
            BudgetExceeded: the group has more than size_bound elements.
        """
        size = self.size()
        if size is None:
            raise DomainError(f"{self.model.name} at level {self.level} is infinite")
        bound = enumeration_budget() if size_bound is None else size_bound
        if size > bound:
            raise BudgetExceeded(f"group of {size} elements exceeds the bound {bound}")
        members = list(self.elements())
        census: Dict[int, int] = {}
        exponent = 1
        for x in members:
            order = self.order(x, size)
            assert isinstance(order, int)
            census[order] = census.get(order, 0) + 1
            exponent = exponent * order // gcd(exponent, order)
        lookup = set(members)
        closed = all(self.multiply(x, y) in lookup for x in members for y in members)
        self.logger.info(
            "Enumerated %s at level %d: %d elements", self.model.name, self.level, size
        )
        return GroupCensus(
            model=self.model.name,
            level=self.level,
            size=size,
            elements=[x.to_dict() for x in members],
            order_census=dict(sorted(census.items())),
            exponent=exponent,
            cyclic=size in census,
            abelian=self.is_abelian().abelian,
            closed=closed,
        )

    def associativity_failures(
        self, triples: Iterable[Tuple[CohenElement, CohenElement, CohenElement]]
    ) -> List[Tuple[CohenElement, CohenElement, CohenElement]]:
        failures: List[Tuple[CohenElement, CohenElement, CohenElement]] = []
        for x, y, z in triples:
            left = self.multiply(self.multiply(x, y), z)
            right = self.multiply(x, self.multiply(y, z))
            if left != right:
                failures.append((x, y, z))
        if failures:
            self.logger.warning(
                "%d associativity failures in %s at level %d",
                len(failures),
                self.model.name,
                self.level,
            )
        return failures

    def random_element(self, rng: random.Random, spread: int = 5) -> CohenElement:
        coords: List[PiElement] = []
        for d in self.degrees:
            group = self.model.group(d)
            coords.append(
                self.model.element(
                    d,
                    [
                        rng.randrange(o) if o else rng.randint(-spread, spread)
                        for o in group.orders
                    ],
                )
            )
        return CohenElement(self, coords)
