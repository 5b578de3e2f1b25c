"""Invariant checks for shattered families."""
