"""Exact rational linear algebra and set cover solvers."""
