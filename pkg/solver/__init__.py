"""Hitting-set approximation and range counting."""
