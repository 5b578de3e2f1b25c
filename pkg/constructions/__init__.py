"""Shattered-family generators, random families and search."""
