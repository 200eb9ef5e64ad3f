"""Sets of lengths in numerical and Puiseux monoids.

The heavy lifting lives in submodules; the names below are the ones most
scripts need.
"""

from .errors import DomainError, InternalError, PuiseuxError, ResourceError, StateError
from .kernels import BACKEND
from .numsgp import IntSubmonoid, minimalize
from .puiseux import FGPuiseux, isomorphism_factor, normalize
from .realization import NotFound, SearchBounds, realize
from .staged import build_full_ssl, build_non_two, elementary_monoid

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DomainError",
    "FGPuiseux",
    "IntSubmonoid",
    "InternalError",
    "NotFound",
    "PuiseuxError",
    "ResourceError",
    "SearchBounds",
    "StateError",
    "build_full_ssl",
    "build_non_two",
    "elementary_monoid",
    "isomorphism_factor",
    "minimalize",
    "normalize",
    "realize",
]
