"""Named space models: spheres, Moore spaces and wedges at small truncations.

Fixed entries carry the truncations their groups need; the families
`Wedge@n`, `SphereStem1@n`, `SphereStem3@n`, `Connective@n` and
`ZeroBracket@n` build a model for any admissible parameter. Homotopy groups
that a model does not need are zeroed and the reduction is recorded in the
model description.
"""

import logging
import re

from functools import lru_cache
from typing import Callable, Dict, List, Tuple

from foxcohen.exceptions import CatalogError
from foxcohen.homotopy import Generator, SpaceModel

FamilyBuilder = Callable[[int], SpaceModel]

_FAMILY_NAME = re.compile(r"^([A-Za-z][A-Za-z0-9]*)@(\d+)$")


def sphere_two() -> SpaceModel:
    return SpaceModel.from_tables(
        "S2@4",
        4,
        {2: [0], 3: [0], 4: [2]},
        [((2, 0), (2, 0), [2], "[i2,i2] = 2 eta2; source: Hopf invariant one of eta2")],
        description=(
            "S^2 through degree 4: pi2 = Z<i2>, pi3 = Z<eta2>, pi4 = Z2<eta2 eta3>; "
            "only [i2,i2] is recorded"
        ),
    )


def moore_three() -> SpaceModel:
    return SpaceModel.from_tables(
        "M3@3",
        3,
        {2: [2], 3: [4]},
        [
            (
                (2, 0),
                (2, 0),
                [2],
                "[i,i] has order 2, the unique order-2 element of Z4; source: mod 2 Moore space",
            )
        ],
        description="Moore space M^3 with H2 = Z2: pi2 = Z2<i>, pi3 = Z4<i eta>",
    )


def moore_seven_reduced() -> SpaceModel:
    return SpaceModel.from_tables(
        "M7reduced@11",
        11,
        {6: [2], 11: [2]},
        [((6, 0), (6, 0), [1], "[i7,i7] has order 2; source: mod 2 Moore space")],
        description=(
            "Moore space M^7 with H6 = Z2 reduced to pi6 = Z2<i7> and the "
            "bracket [i7,i7] in pi11; middle stems are zeroed"
        ),
    )


def wedge(n: int) -> SpaceModel:
    """S^{2n} ∨ S^{2n+1} reduced to the two inclusions and their basic bracket."""
    if n < 1:
        raise CatalogError(f"Wedge@n needs n >= 1, got {n}")
    return SpaceModel.from_tables(
        f"Wedge@{n}",
        4 * n,
        {2 * n: [0], 2 * n + 1: [0], 4 * n: [0]},
        [
            (
                (2 * n, 0),
                (2 * n + 1, 0),
                [1],
                "basic product [i1,i2] generates; source: Hilton-Milnor",
            )
        ],
        description=(
            f"S^{2 * n} v S^{2 * n + 1}: inclusions i1, i2 and [i1,i2] in degree {4 * n}; "
            f"[i1,i1] in degree {4 * n - 1} is zeroed"
        ),
    )


def sphere_stem_one(n: int) -> SpaceModel:
    """S^{2n} reduced to ι, η and [ι, η]."""
    if n < 1:
        raise CatalogError(f"SphereStem1@n needs n >= 1, got {n}")
    return SpaceModel.from_tables(
        f"SphereStem1@{n}",
        4 * n,
        {2 * n: [0], 2 * n + 1: [2], 4 * n: [2]},
        [((2 * n, 0), (2 * n + 1, 0), [1], "[iota,eta] is nontrivial; source: Toda tables")],
        description=(
            f"S^{2 * n}: pi{2 * n} = Z<iota>, pi{2 * n + 1} = Z2<eta>, "
            f"[iota,eta] generates Z2 in degree {4 * n}; other stems are zeroed"
        ),
    )


def sphere_four_reduced() -> SpaceModel:
    model = sphere_stem_one(2)
    return SpaceModel(
        "S4reduced@8",
        model.truncation,
        {d: model.group(d) for d in model.degrees},
        model.brackets,
        model.notes,
        "S^4 reduced to iota4, eta4 and [iota4,eta4] in pi8; pi7 is zeroed",
    )


def sphere_stem_three(n: int) -> SpaceModel:
    """S^{2n} reduced to ι, ν and [ι, ν], the last of order 12 (n odd) or 24 (n even)."""
    if n < 1:
        raise CatalogError(f"SphereStem3@n needs n >= 1, got {n}")
    top = 12 if n % 2 else 24
    return SpaceModel.from_tables(
        f"SphereStem3@{n}",
        4 * n + 2,
        {2 * n: [0], 2 * n + 3: [24], 4 * n + 2: [top]},
        [((2 * n, 0), (2 * n + 3, 0), [1], f"[iota,nu] has order {top}; source: Toda tables")],
        description=(
            f"S^{2 * n}: pi{2 * n} = Z<iota>, pi{2 * n + 3} = Z24<nu>, "
            f"[iota,nu] generates Z{top} in degree {4 * n + 2}; valid for n not a "
            "power of 2, other stems are zeroed"
        ),
    )


def connective(n: int) -> SpaceModel:
    """A (2n-1)-connected model whose only bracket is [ι, ι] = 2g in degree 4n-1."""
    if n < 2:
        raise CatalogError(f"Connective@n needs n >= 2, got {n}")
    return SpaceModel.from_tables(
        f"Connective@{n}",
        4 * n - 1,
        {2 * n: [0], 2 * n + 1: [2], 4 * n - 1: [0]},
        [((2 * n, 0), (2 * n, 0), [2], "[iota,iota] = 2 g; source: synthetic model")],
        description=f"groups only in degrees >= {2 * n}",
    )


def zero_bracket(n: int) -> SpaceModel:
    """π_d = Z ⊕ Z_d for 2 <= d <= n with every bracket zero."""
    if n < 2:
        raise CatalogError(f"ZeroBracket@n needs n >= 2, got {n}")
    return SpaceModel.from_tables(
        f"ZeroBracket@{n}",
        n,
        {d: [0, d] for d in range(2, n + 1)},
        description="vanishing brackets: the Cohen group is the direct product",
    )


class SpaceCatalog:
    def __init__(self) -> None:
        self.logger = logging.getLogger(self.__class__.__name__)
        self.fixed: Dict[str, Callable[[], SpaceModel]] = {
            "S2@4": sphere_two,
            "M3@3": moore_three,
            "M7reduced@11": moore_seven_reduced,
            "S4reduced@8": sphere_four_reduced,
            "Wedge23@4": self._wedge23,
            "ZeroBracket@4": lambda: zero_bracket(4),
        }
        self.families: Dict[str, FamilyBuilder] = {
            "Wedge": wedge,
            "SphereStem1": sphere_stem_one,
            "SphereStem3": sphere_stem_three,
            "Connective": connective,
            "ZeroBracket": zero_bracket,
        }
        self._built: Dict[str, SpaceModel] = {}

    @staticmethod
    def _wedge23() -> SpaceModel:
        model = wedge(1)
        return SpaceModel(
            "Wedge23@4",
            model.truncation,
            {d: model.group(d) for d in model.degrees},
            model.brackets,
            model.notes,
            model.description,
        )

    def names(self) -> List[str]:
        return list(self.fixed)

    def get(self, name: str) -> SpaceModel:
        if (model := self._built.get(name)) is not None:
            return model
        if name in self.fixed:
            model = self.fixed[name]()
        else:
            family, n = self._parse(name)
            model = self.families[family](n)
        self.logger.info("Built catalog model %s", name)
        self._built[name] = model
        return model

    def _parse(self, name: str) -> Tuple[str, int]:
        match = _FAMILY_NAME.match(name)
        if not match or match.group(1) not in self.families:
            known = ", ".join(self.names() + [f"{f}@N" for f in self.families])
            raise CatalogError(f"unknown catalog model {name!r}; known: {known}")
        return match.group(1), int(match.group(2))


@lru_cache(maxsize=None)
def default_catalog() -> SpaceCatalog:
    return SpaceCatalog()


def catalog() -> Dict[str, SpaceModel]:
    """The fixed catalog entries by name."""
    models = default_catalog()
    return {name: models.get(name) for name in models.names()}


def get_space(name: str) -> SpaceModel:
    """A fixed entry or a family member such as ``Wedge@3``.

    Raises:
        CatalogError: the name is unknown or the family parameter is out of range.
    """
    return default_catalog().get(name)


def bracket_probe(p: int, q: int, truncation: int) -> SpaceModel:
    """Free generators α in degree p and β in degree q with [α, β] a free generator.

    When p equals q both generators live in one degree, as factors 0 and 1.
    """
    if min(p, q) < 2 or p + q - 1 > truncation:
        raise CatalogError(f"no bracket probe for degrees {p}, {q} below {truncation}")
    groups = {p: [0, 0]} if p == q else {p: [0], q: [0]}
    groups[p + q - 1] = [0]
    beta = (p, 1) if p == q else (q, 0)
    return SpaceModel.from_tables(
        f"Probe[{p},{q}]@{truncation}",
        truncation,
        groups,
        [((p, 0), beta, [1], "basic product; source: synthetic model")],
        description="one free basic product",
    )


def probe_generators(p: int, q: int) -> Tuple[Generator, Generator]:
    return (p, 0), ((p, 1) if p == q else (q, 0))
