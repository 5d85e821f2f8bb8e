"""Exact F_p computations around free E_k-algebra homology, May-type E1 charts,
dual Steenrod quotients and Koszul resolutions over tensor algebras."""

__version__ = "0.1.0"
