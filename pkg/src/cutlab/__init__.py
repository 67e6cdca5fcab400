"""Exact combinatorics of normally cut simplices, plus the tree, volume and
norm computations that sit around them."""

__version__ = "0.1.0"
