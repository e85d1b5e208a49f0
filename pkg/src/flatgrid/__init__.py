"""Translation surfaces built from bipartite grid graphs."""

from .rectangles import grid_surface
from .ribbon_graph import AugmentedGridGraph, GridGraph, augment, eigen_width, grid_graph
from .semiregular import semiregular_quotient, semiregular_surface
from .surface import TranslationSurface, is_translation_equivalent, stratum, validate

__version__ = "0.1.0"

__all__ = [
    "AugmentedGridGraph", "GridGraph", "TranslationSurface", "augment", "semiregular_quotient",
    "semiregular_surface", "eigen_width", "grid_graph", "grid_surface", "is_translation_equivalent",
    "stratum", "validate",
]
