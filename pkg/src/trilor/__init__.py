"""Entanglement invariants of pure three-qubit states.

Computes the local-unitary invariant set (marginal purities, the
degree-6 permutation invariant, Cayley's hyperdeterminant), Wootters
concurrences, the three-tangle, and their SLOCC counterparts obtained
from the Lorentz-invariant spectra of the real matrices
Gamma = G Lambda G Lambda^T attached to the two-qubit marginals.
Includes the five-term canonical form of a three-qubit state and the
Bell-diagonal canonicalization of case-I two-qubit states.
"""

from ._backend import BACKEND

__all__ = ["BACKEND"]
__version__ = "0.1.0"
