"""Beltrami operators of the fundamental forms and finite-type analysis of tubes."""

__version__ = "0.1.0"
