"""Symbolic computation with a finitely presented group of piecewise projective homeomorphisms."""
