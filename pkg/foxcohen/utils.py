import os

from typing import Optional

FOXCOHEN_DEBUG = "FOXCOHEN_DEBUG"
FOXCOHEN_ENUMERATION_BUDGET = "FOXCOHEN_ENUMERATION_BUDGET"
FOXCOHEN_ORDER_BOUND = "FOXCOHEN_ORDER_BOUND"

DEFAULT_ENUMERATION_BUDGET = 24
DEFAULT_ORDER_BOUND = 4096

CONVENTION_NOTE = (
    "phi(0,k) = -1 and phi(k,k) = (-1)^(k-1) follow the subset-sum definition; "
    "the printed boundary values phi(0,k) = 1, phi(k,k) = (-1)^k are not used"
)


def get_env_bool(name: str, default_value: Optional[bool] = None) -> bool:
    true_ = ("true", "1", "t")
    false_ = ("false", "0", "f")
    value: Optional[str] = os.getenv(name, None)
    if value is None:
        if default_value is None:
            raise ValueError(f"Variable `{name}` not set!")
        else:
            return default_value

    if value.lower() not in true_ + false_:
        return False
    return value.lower() in true_


def get_env_int(name: str, default_value: Optional[int] = None) -> int:
    value: Optional[str] = os.getenv(name, None)
    if value is None:
        if default_value is None:
            raise ValueError(f"Variable `{name}` not set!")
        return default_value
    try:
        return int(value.strip())
    except ValueError as e:
        raise ValueError(f"Variable `{name}` must be an integer, got {value!r}") from e


def debug_enabled() -> bool:
    return get_env_bool(FOXCOHEN_DEBUG, default_value=False)


def enumeration_budget() -> int:
    return get_env_int(FOXCOHEN_ENUMERATION_BUDGET, DEFAULT_ENUMERATION_BUDGET)


def order_bound() -> int:
    return get_env_int(FOXCOHEN_ORDER_BOUND, DEFAULT_ORDER_BOUND)
