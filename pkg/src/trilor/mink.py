"""Pauli correlation matrices and their Lorentz-squared spectra.

A two-qubit density matrix rho is encoded by the real 4x4 matrix
Lambda_{ab} = Tr[rho (sigma_a (x) sigma_b)], sigma_0 the identity.
With G = diag(1,-1,-1,-1) the products

    Gamma_A = G Lambda G Lambda^T      (first-qubit side)
    Gamma_B = G Lambda^T G Lambda      (second-qubit side)

share one spectrum mu_0 >= mu_1 >= mu_2 >= mu_3 that is invariant
under Lambda -> L_A Lambda L_B^T for proper orthochronous L's.  The
character of the dominant eigenvector (timelike or null) splits the
states into case I (Bell-diagonalizable frame exists) and case II.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import qmath
from ._backend import jacobi_eigh
from .errors import (
    ComplexSpectrum,
    DegenerateNormalization,
    NonHermitianInput,
    NotUnitDeterminant,
)

SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

G = np.diag([1.0, -1.0, -1.0, -1.0])

EPS = np.array([[0.0, 1.0], [-1.0, 0.0]])

# PP[a, b] = sigma_a (x) sigma_b, the 16-element operator basis
PP = np.array([[np.kron(SIGMA[a], SIGMA[b]) for b in range(4)] for a in range(4)])

POS_TOL = 1e-7

# The analytic quartic splits exact double roots by O(sqrt(eps));
# measured splits on Haar-state marginals reach 1.4e-7, so grouping
# needs more slack here than the generic kernel default.  Physical
# eigenvalue separations are many orders larger.
GAMMA_CLUSTER_TOL = 1e-6


@dataclass
class GammaSpectrum:
    """Spectral data of a Gamma matrix.

    mu: the four eigenvalues, descending, roundoff negatives clamped.
    clusters: (value, multiplicity) per degenerate group.
    dominant: the distinguished eigenvector of mu_0, scaled so its
    largest-magnitude component is +1.
    dominant_norm: its Minkowski norm X^T G X.
    case: 'I' (timelike), 'II' (null, with the paired spectrum
    pattern), or 'ambiguous'.
    """

    mu: tuple
    clusters: list
    dominant: np.ndarray
    dominant_norm: float
    case: str


def lambda_of(rho):
    """Pauli correlation matrix of a two-qubit density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise NonHermitianInput("expected a 4x4 density matrix")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
        raise NonHermitianInput("matrix is not Hermitian")
    lam = np.einsum("ij,abji->ab", rho, PP)
    if np.max(np.abs(lam.imag)) > 1e-10:
        raise NonHermitianInput("correlation traces are not real")
    return lam.real.copy()


def rho_of_lambda(lam):
    """Inverse map: rho = (1/4) sum_ab Lambda_ab sigma_a (x) sigma_b."""
    lam = np.asarray(lam, dtype=float)
    return 0.25 * np.einsum("ab,abij->ij", lam, PP)


def gamma_of(lam, side="A"):
    """G Lambda G Lambda^T (side 'A') or G Lambda^T G Lambda (side 'B')."""
    lam = np.asarray(lam, dtype=float)
    if side == "A":
        return G @ lam @ G @ lam.T
    if side == "B":
        return G @ lam.T @ G @ lam
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def _null_basis(M, value, tol_abs):
    """Orthonormal real basis of the (numerical) null space of M - value*I.

    Singular directions are read off the symmetric product N^T N; the
    basis always contains at least one vector (the least-singular
    direction) so degenerate callers can still make progress.  tol_abs
    must be the same absolute cut used to cluster the eigenvalues:
    directions merged there count as null here.
    """
    N = M - value * np.eye(4)
    K = N.T @ N
    w, V = jacobi_eigh(K.astype(complex))
    V = V.real
    keep = [i for i in range(4) if np.sqrt(max(w[i], 0.0)) <= tol_abs]
    if not keep:
        keep = [0]
    return V[:, keep]


def _g_extremal_direction(B):
    """Unit vector in span(B) maximizing X^T G X, via the restricted form."""
    S = B.T @ G @ B
    w, Q = jacobi_eigh(S.astype(complex))
    y = Q.real[:, -1]
    return B @ y, float(w[-1])


def gamma_spectrum(gamma, cluster_tol=GAMMA_CLUSTER_TOL, pos_tol=POS_TOL):
    """Eigenvalues, dominant eigenvector and case label of a Gamma matrix.

    The merge tolerance is cluster_tol * sqrt(spectral scale): Gamma is
    not normal, so roundoff splits an exactly degenerate pair by about
    sqrt(eps * mu0), while genuinely distinct eigenvalues of weakly
    entangled states can sit close together in absolute terms.  The
    sqrt law keeps a uniform safety margin between the two regimes.
    """
    gamma = np.asarray(gamma, dtype=float)
    raw = qmath.char_roots4(gamma)
    scale = max(abs(z.real) for z in raw)
    tol_abs = cluster_tol * math.sqrt(max(scale, 1e-12))
    roots, clustered = qmath.cluster_roots(raw, tol_abs)
    mu0_raw = max(z.real for z in roots)
    if max(abs(z.imag) for z in roots) > 1e-6 * max(1.0, abs(mu0_raw)):
        raise ComplexSpectrum("Gamma spectrum has a genuinely complex pair")
    mu = tuple(sorted((max(z.real, 0.0) for z in roots), reverse=True))
    clusters = [(max(float(np.real(v)), 0.0), m) for v, m in clustered]

    B = _null_basis(gamma, mu0_raw, tol_abs)
    X, norm = _g_extremal_direction(B)
    k = int(np.argmax(np.abs(X)))
    X = X / X[k]
    dominant_norm = float(X @ G @ X)

    paired = sorted(m for _, m in clusters) in ([4], [2, 2])
    if dominant_norm > pos_tol:
        case = "I"
    elif abs(dominant_norm) <= pos_tol and paired:
        case = "II"
    else:
        case = "ambiguous"
    return GammaSpectrum(mu, clusters, X, dominant_norm, case)


def lorentz_of_sl2c(A):
    """4x4 Lorentz matrix of a unit-determinant 2x2 operator.

    L_ab = Re Tr[sigma_a A sigma_b A^dagger] / 2.  The image is proper
    and orthochronous.
    """
    A = np.asarray(A, dtype=complex)
    if A.shape != (2, 2):
        raise NotUnitDeterminant("expected a 2x2 operator")
    det = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    if abs(det - 1.0) > 1e-10:
        raise NotUnitDeterminant(f"determinant {det} is not 1")
    L = 0.5 * np.einsum("aij,jk,bkl,il->ab", SIGMA, A, SIGMA, A.conj())
    return L.real.copy()


def act_slocc_on_lambda(lam, LA, LB):
    """Push Lambda through local Lorentz transforms and renormalize.

    Returns L_A Lambda L_B^T divided by its (0,0) entry, the unit-trace
    representative of the transformed state.
    """
    lam = np.asarray(lam, dtype=float)
    out = np.asarray(LA, dtype=float) @ lam @ np.asarray(LB, dtype=float).T
    f = out[0, 0]
    if not f > 1e-12:
        raise DegenerateNormalization("transformed (0,0) entry is not positive")
    return out / f


def det4(M):
    """Determinant of a real 4x4 matrix by cofactor expansion."""
    M = np.asarray(M, dtype=float)

    def det3(a):
        return (
            a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
            - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
            + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
        )

    cols = np.arange(4)
    total = 0.0
    for j in range(4):
        minor = M[1:][:, cols != j]
        total += (-1.0) ** j * M[0, j] * det3(minor)
    return total


def is_lorentz(L, tol=1e-9):
    """Check L^T G L = G, det = +1, orthochronous.  Returns (ok, residuals)."""
    L = np.asarray(L, dtype=float)
    metric = float(np.max(np.abs(L.T @ G @ L - G)))
    det = det4(L)
    residuals = {"metric": metric, "det": det, "l00": float(L[0, 0])}
    ok = metric <= tol and abs(det - 1.0) <= tol and L[0, 0] >= 1.0 - 1e-12
    return ok, residuals
