"""Stability data, Harder-Narasimhan filtrations and torsion pairs on small
abelian categories: tubes, Dynkin quivers of type A, and windowed sheaf
categories, with a finite-field linear-algebra oracle backing every
combinatorial rule."""

__version__ = "0.1.0"
