from typing import List, Sequence, Tuple, Union

Location = Tuple[Union[int, str], ...]


class FoxCohenException(Exception):
    ...


class DomainError(FoxCohenException, ValueError):
    ...


class DisjointnessError(DomainError):
    ...


class BudgetExceeded(FoxCohenException):
    ...


class ModelMismatchError(FoxCohenException):
    ...


class ModelNotClass2(FoxCohenException):
    ...


class CoefficientMismatch(FoxCohenException):
    ...


class CatalogError(FoxCohenException):
    ...


class SpaceModelError(FoxCohenException):
    ...


class SpaceParseError(SpaceModelError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class SpaceSchemaError(SpaceModelError):
    def __init__(self, message: str, locations: Sequence[Location] = ()) -> None:
        super().__init__(message)
        self.locations: List[Location] = list(locations)


class SpaceValidationError(SpaceModelError):
    def __init__(self, violations: Sequence[object]) -> None:
        rendered = "; ".join(str(v) for v in violations)
        super().__init__(f"space model failed validation: {rendered}")
        self.violations = list(violations)
