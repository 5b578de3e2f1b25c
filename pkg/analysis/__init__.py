"""Realized-subset enumeration, shattering and invariants."""
