from foxcohen.catalog import catalog, get_space
from foxcohen.cohen import CohenElement, CohenGroup
from foxcohen.fox import fox_sign, phi_bruteforce, phi_closed, phi_recurrence
from foxcohen.homotopy import FgAbelianGroup, PiElement, SpaceModel
from foxcohen.loader import load_space, serialize_space
from foxcohen.torus import TauElement, TorusGroup
from foxcohen.types import IndexSet

__all__ = [
    "CohenElement",
    "CohenGroup",
    "FgAbelianGroup",
    "IndexSet",
    "PiElement",
    "SpaceModel",
    "TauElement",
    "TorusGroup",
    "catalog",
    "fox_sign",
    "get_space",
    "load_space",
    "phi_bruteforce",
    "phi_closed",
    "phi_recurrence",
    "serialize_space",
]
