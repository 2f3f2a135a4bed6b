"""Free-probability analogues of classical infinitely divisible laws."""

from .closedforms import VoiculescuFn
from .measures import (
    CATALOG_NAMES,
    CatalogEntry,
    FiniteMeasure,
    KhintchinePair,
    LevyTriple,
    LogCharFn,
    catalog_lookup,
    levy_exponent,
)
from .quad import QuadConfig
from .voiculescu import closed_form, level_a, level_z, level_z_symmetric, thm2_forward, thm2_inverse

__version__ = "0.1.0"

__all__ = [
    "CATALOG_NAMES",
    "CatalogEntry",
    "FiniteMeasure",
    "KhintchinePair",
    "LevyTriple",
    "LogCharFn",
    "QuadConfig",
    "VoiculescuFn",
    "catalog_lookup",
    "closed_form",
    "level_a",
    "level_z",
    "level_z_symmetric",
    "levy_exponent",
    "thm2_forward",
    "thm2_inverse",
]
