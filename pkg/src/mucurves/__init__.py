"""Exact-arithmetic pipeline for torus-fixed rational curves on the
Mukai-Umemura threefold: sl2 representation calculus, the net of alternating
forms and its Pfaffians, Grassmannian charts, deformation modules, and the
Bialynicki-Birula assembly of Poincare polynomials."""

__version__ = "0.1.0"
