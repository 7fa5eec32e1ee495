"""Fixed-size numeric kernels with contract checks.

Hermitian eigensystems (2x2 / 4x4 / 8x8), analytic eigenvalues of real
4x4 matrices via Newton-identity power traces, and 2x2 complex SVD.
The heavy lifting lives in the backend (compiled when available).
"""

import numpy as np

from . import _backend
from .errors import NoConvergence, NotHermitian

DEFAULT_CLUSTER_TOL = 1e-8


def hermitian_eigensystem(H, hermiticity_tol=1e-12):
    """Diagonalize a complex Hermitian matrix.

    Parameters
    ----------
    H : (n, n) complex array, Hermitian within hermiticity_tol (max norm).

    Returns
    -------
    (w, V) : eigenvalues ascending, eigenvector columns (unitary).
    """
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise NotHermitian("expected a square matrix")
    dev = np.max(np.abs(H - H.conj().T))
    if dev > hermiticity_tol:
        raise NotHermitian(f"max |H - H^dag| = {dev:.3e} > {hermiticity_tol:.3e}")
    Hs = 0.5 * (H + H.conj().T)
    try:
        w, V = _backend.jacobi_eigh(Hs)
    except RuntimeError as exc:
        raise NoConvergence(str(exc)) from exc
    return w, V


def char_roots4(M):
    """Raw analytic eigenvalues of a real 4x4 matrix, no clustering.

    Power traces p_k = Tr[M^k] feed the Newton identities for the
    characteristic polynomial, whose roots come from the closed-form
    quartic.
    """
    M = np.asarray(M, dtype=float)
    if M.shape != (4, 4):
        raise ValueError("expected a 4x4 real matrix")
    M2 = M @ M
    M3 = M2 @ M
    p1 = np.trace(M)
    p2 = np.trace(M2)
    p3 = np.trace(M3)
    p4 = np.trace(M2 @ M2)
    e1 = p1
    e2 = (e1 * p1 - p2) / 2.0
    e3 = (e2 * p1 - e1 * p2 + p3) / 3.0
    e4 = (e3 * p1 - e2 * p2 + e1 * p3 - p4) / 4.0
    return _backend.quartic_roots(-e1, e2, -e3, e4)


def cluster_roots(raw, tol_abs):
    """Group roots lying within tol_abs of a running cluster mean.

    Every root is replaced by its cluster mean, which cancels the
    first-order error the analytic quartic makes at (near-)multiple
    roots.

    Returns
    -------
    (roots, clustered) : the roots, descending by real part, and a
    list of (value, multiplicity) per cluster.  A cluster value is
    real whenever its imaginary part is below tol_abs; otherwise it
    stays complex for the caller to judge.
    """
    raw = sorted(raw, key=lambda z: (z.real, z.imag), reverse=True)
    groups = []
    for z in raw:
        if groups and abs(z - groups[-1][0]) <= tol_abs:
            groups[-1].append(z)
            groups[-1][0] = sum(groups[-1][1:], 0j) / len(groups[-1][1:])
        else:
            groups.append([z, z])
    roots = []
    clustered = []
    for g in groups:
        members = g[1:]
        mean = sum(members, 0j) / len(members)
        roots.extend([mean] * len(members))
        value = mean.real if abs(mean.imag) <= tol_abs else mean
        clustered.append((value, len(members)))
    return tuple(roots), clustered


def real4_eigenvalues(M, cluster_tol=DEFAULT_CLUSTER_TOL):
    """Eigenvalues of a real 4x4 matrix, degeneracy-friendly.

    Roots of the analytic characteristic quartic, grouped whenever two
    lie within cluster_tol * max(1, |largest|) of each other.

    Returns
    -------
    (roots, clustered) : as cluster_roots.
    """
    raw = char_roots4(M)
    return cluster_roots(raw, cluster_tol * max(1.0, max(abs(z) for z in raw)))


def svd_2x2(M):
    """2x2 complex SVD (U, s, V), s descending, M = U diag(s) V^H.

    det(U) = 1 always; det(V) = 1 whenever the remaining phase gauge
    allows (rank-deficient input, or det(M) real non-negative).
    """
    M = np.asarray(M, dtype=complex)
    if M.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    if not np.all(np.isfinite(M.view(float))):
        raise ValueError("non-finite entries")
    return _backend.svd_2x2(M)
