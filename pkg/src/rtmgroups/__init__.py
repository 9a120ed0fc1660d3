"""Generalized (d, n, k) Turing machines as elements of exact groups."""
