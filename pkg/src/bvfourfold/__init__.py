"""Elliptically fibered Borcea-Voisin Calabi-Yau fourfolds with I5 fibers over a del Pezzo surface."""

__version__ = "0.1.0"
