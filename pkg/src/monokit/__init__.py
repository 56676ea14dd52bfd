"""Exact computations for monodromy groups of vector bundles on p-adic curves."""

from ._accel import BACKEND
from .rootsystem import RootSystem, build_root_system, parse_root_system

__all__ = ["BACKEND", "RootSystem", "build_root_system", "parse_root_system"]
__version__ = "0.1.0"
