"""Exact computations on symmetry-preserving degenerations of the generic symmetric matrix."""
