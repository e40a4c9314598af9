"""Lattice, Weyl-group and point-configuration machinery for blow-ups of P^3."""
