"""Two-qubit XYZ Hamiltonians with DM and KSEA couplings: symmetry families, Gibbs states, correlations."""

__version__ = "0.1.0"
