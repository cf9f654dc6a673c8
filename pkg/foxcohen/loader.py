import json
import logging

from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

from pydantic import BaseModel, Extra, StrictInt, StrictStr, ValidationError, validator

from foxcohen.exceptions import (
    Location,
    SpaceParseError,
    SpaceSchemaError,
    SpaceValidationError,
)
from foxcohen.homotopy import BracketSpec, SpaceModel

logger = logging.getLogger("SpaceLoader")


class _Document(BaseModel):
    class Config:
        extra = Extra.forbid


class GroupDocument(_Document):
    orders: List[StrictInt]

    @validator("orders", each_item=True)
    def check_order(cls, v: int) -> int:
        if v < 0 or v == 1:
            raise ValueError("cyclic factor orders are 0 (infinite) or at least 2")
        return v


class ValueDocument(_Document):
    degree: StrictInt
    coeffs: List[StrictInt]


class BracketDocument(_Document):
    a: Tuple[StrictInt, StrictInt]
    b: Tuple[StrictInt, StrictInt]
    value: ValueDocument
    note: StrictStr = ""


class SpaceDocument(_Document):
    name: StrictStr
    truncation: StrictInt
    groups: Dict[str, GroupDocument]
    brackets: List[BracketDocument] = []

    @validator("truncation")
    def check_truncation(cls, v: int) -> int:
        if v < 2:
            raise ValueError("truncation must be at least 2")
        return v

    @validator("groups")
    def check_degrees(
        cls, v: Dict[str, GroupDocument], values: Dict[str, Any]
    ) -> Dict[str, GroupDocument]:
        truncation = values.get("truncation")
        for key in v:
            if not key.isdigit():
                raise ValueError(f"degree key {key!r} is not a decimal integer")
            degree = int(key)
            if degree < 2:
                raise ValueError(f"degree {degree} is below 2")
            if truncation is not None and degree > truncation:
                raise ValueError(f"degree {degree} is above truncation {truncation}")
        return v


def _check_brackets(document: SpaceDocument) -> None:
    factors = {int(k): len(g.orders) for k, g in document.groups.items()}
    first_seen: Dict[Tuple[Tuple[int, int], Tuple[int, int]], int] = {}
    locations: List[Location] = []
    messages: List[str] = []
    for position, entry in enumerate(document.brackets):
        key = (entry.a, entry.b)
        if key in first_seen:
            locations.extend([("brackets", first_seen[key]), ("brackets", position)])
            messages.append(f"bracket {list(entry.a)} x {list(entry.b)} is given twice")
        else:
            first_seen[key] = position
        for side in ("a", "b"):
            degree, index = getattr(entry, side)
            if not 0 <= index < factors.get(degree, 0):
                locations.append(("brackets", position, side))
                messages.append(f"degree {degree} has no generator {index}")
        target = entry.a[0] + entry.b[0] - 1
        if target > document.truncation:
            locations.append(("brackets", position))
            messages.append(f"bracket lands in degree {target}, above truncation")
        elif entry.value.degree != target:
            locations.append(("brackets", position, "value", "degree"))
            messages.append(f"value degree {entry.value.degree}, expected {target}")
        elif len(entry.value.coeffs) != factors.get(target, 0):
            locations.append(("brackets", position, "value", "coeffs"))
            messages.append(
                f"{len(entry.value.coeffs)} coefficients for degree {target}, "
                f"expected {factors.get(target, 0)}"
            )
    if messages:
        raise SpaceSchemaError("; ".join(messages), locations)


def parse_space(document: str) -> SpaceDocument:
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as e:
        raise SpaceParseError(e.msg, e.lineno, e.colno) from e
    try:
        parsed = SpaceDocument.parse_obj(raw)
    except ValidationError as e:
        locations = [tuple(error["loc"]) for error in e.errors()]
        raise SpaceSchemaError(str(e), locations) from e
    _check_brackets(parsed)
    return parsed


def load_space(document: str, validate: bool = True) -> SpaceModel:
    """Read a space model from its JSON document.

    Bracket entries given in one order only get their mirror with the graded
    sign before validation.

    Args:
        document: JSON text of the model.
        validate: raise on invariant violations; turned off to report them instead.

    Raises:
        SpaceParseError: the text is not JSON.
        SpaceSchemaError: the JSON does not match the model schema.
        SpaceValidationError: the bracket table breaks a model invariant.
    """
    parsed = parse_space(document)
    brackets: List[BracketSpec] = [
        (
            (entry.a[0], entry.a[1]),
            (entry.b[0], entry.b[1]),
            entry.value.coeffs,
            entry.note,
        )
        for entry in parsed.brackets
    ]
    model = SpaceModel.from_tables(
        parsed.name,
        parsed.truncation,
        {int(k): g.orders for k, g in parsed.groups.items()},
        brackets,
    )
    if validate and (violations := model.validate()):
        raise SpaceValidationError(violations)
    logger.info(
        "Loaded space %s: truncation %d, %d bracket entries",
        model.name,
        model.truncation,
        len(model.brackets),
    )
    return model


def load_space_file(path: Union[str, Path], validate: bool = True) -> SpaceModel:
    logger.debug("Reading space model from %s", path)
    return load_space(Path(path).read_text(encoding="utf-8"), validate)


def space_document(model: SpaceModel) -> SpaceDocument:
    brackets: List[BracketDocument] = []
    for key, value in model.brackets.items():
        a, b = key
        brackets.append(
            BracketDocument(
                a=a,
                b=b,
                value=ValueDocument(degree=value.degree, coeffs=list(value.coeffs)),
                note=model.notes.get(key, ""),
            )
        )
    return SpaceDocument(
        name=model.name,
        truncation=model.truncation,
        groups={
            str(d): GroupDocument(orders=list(model.group(d).orders))
            for d in model.degrees
        },
        brackets=brackets,
    )


def serialize_space(model: SpaceModel) -> str:
    """Canonical JSON text of a model; `load_space` reads it back unchanged."""
    document = space_document(model).dict()
    logger.debug(
        "Serializing %s with %d bracket entries", model.name, len(document["brackets"])
    )
    return json.dumps(document, sort_keys=True, indent=2) + "\n"

