"""Fixed-point existence for boolean dynamical systems."""
