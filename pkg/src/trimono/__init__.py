"""Colorings, monodromy and branched covers of triangulated surfaces."""

__version__ = "0.1.0"

from .surface import SimplicialSurface, build_surface, euler_characteristic, genus  # noqa: E402
from .cover import BranchedCover, unfolding  # noqa: E402
from .germs import space_of_germs  # noqa: E402

__all__ = [
    "SimplicialSurface",
    "BranchedCover",
    "build_surface",
    "euler_characteristic",
    "genus",
    "space_of_germs",
    "unfolding",
]
