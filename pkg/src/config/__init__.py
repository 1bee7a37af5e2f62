"""Configuration management for the Hecke engine."""
