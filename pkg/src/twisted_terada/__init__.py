"""Intersection numbers of twisted cycles on Terada polytopes, computed exactly."""

__version__ = "0.1.0"
