"""Exact verification engine for coupled Painlevé-type Hamiltonian systems."""
__version__ = "0.1.0"
