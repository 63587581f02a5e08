"""Exact loop-model / qKZ / K-theory computations."""
__version__ = "0.1.0"
