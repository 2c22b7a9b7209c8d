"""Exact computations in the plane Cremona group."""

from .errors import CremonaError
from .exactnum import GF, QQ, Fp
from .hpoly import HPoly
from .cremap import CreMap, LinMap, ProjPoint, cm_compose, cm_sigma

__version__ = "0.1.0"

__all__ = [
    "CremonaError", "GF", "QQ", "Fp", "HPoly",
    "CreMap", "LinMap", "ProjPoint", "cm_compose", "cm_sigma",
]
