"""Utility functions and helpers for the Hecke engine."""
