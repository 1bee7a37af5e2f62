"""Hecke Engine - exact Hecke algebras, BRST cohomology and Dirac reduction over Q."""

__version__ = "1.0.0"
__description__ = "Exact homological computations for augmented algebra pairs"
