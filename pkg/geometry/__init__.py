"""Exact planar geometry: predicates and hulls."""
