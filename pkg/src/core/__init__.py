"""Exact linear algebra, complexes and the Hecke, Ext and BRST computations."""
