"""Concrete Bregman functions."""

from .base import CatalogEntropy
from .beta import AlphaBeta, Beta
from .burg import Burg
from .ell2 import Ell2Type, ell2_blocks
from .iterated_log import IteratedLog, translated_iterated_log
from .lp import L2Lp
from .quadratic import Quadratic
from .shannon import BGS
from .tsallis import HCT

__all__ = [
    "CatalogEntropy",
    "BGS",
    "HCT",
    "Burg",
    "IteratedLog",
    "Beta",
    "AlphaBeta",
    "L2Lp",
    "Quadratic",
    "Ell2Type",
    "ell2_blocks",
    "translated_iterated_log",
]
