"""Epsilon-nets and epsilon-approximations."""
