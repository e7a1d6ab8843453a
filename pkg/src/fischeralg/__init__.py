"""Algebras over GF(2) attached to 3-transposition groups via their Fischer spaces."""
from .fischer import FischerSpace
from .tralgebra import AlgebraReport, report

__version__ = "0.1.0"
__all__ = ["FischerSpace", "AlgebraReport", "report"]
