"""Enumerations and construction operation records"""

from dataclasses import dataclass
from typing import Union
import enum


class LieType(str, enum.Enum):
    """Lie type enumeration"""
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    G2 = "G2"
    E6 = "E6"


class TargetClass(str, enum.Enum):
    """Search target enumeration"""
    CY3 = "CY3"        # canonical degree 0
    FANO3 = "Fano3"    # canonical degree < 0


class OrderKind(str, enum.Enum):
    """Monomial order enumeration"""
    WDEGREVLEX = "wdegrevlex"
    WDEGLEX = "wdeglex"


class OpKind(str, enum.Enum):
    """Construction operation enumeration"""
    CONE = "cone"
    SECTION = "section"


@dataclass(frozen=True)
class Cone:
    """Projective cone adding one generator of the given weight"""
    weight: int = 1

    def label(self) -> str:
        return f"{OpKind.CONE.value}:{self.weight}"


@dataclass(frozen=True)
class Section:
    """Hypersurface section of the given degree"""
    degree: int
    quasilinear: bool = True

    def label(self) -> str:
        suffix = "" if self.quasilinear else ":general"
        return f"{OpKind.SECTION.value}:{self.degree}{suffix}"


Operation = Union[Cone, Section]
