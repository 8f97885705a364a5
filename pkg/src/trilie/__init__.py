"""Exact computer algebra for triangular algebras over the rationals.

The package represents finite-dimensional unital associative algebras by
rational structure constants, assembles triangular algebras from a unital
algebra pair and a faithful bimodule, and solves level-by-level linear
systems for ordinary, Lie, higher, and Lie higher derivations.  Every
computation is exact; no floating point enters at any stage.
"""

__version__ = "0.1.0"
