"""Entanglement invariants of pure three-qubit states.

Local-unitary invariants I_1..I_5 and the Kempe invariant fix a pure
three-qubit state up to local unitaries; the mixed-state functionals
K_1..K_5 built from spin-flipped pair marginals are the natural
quantities for the coarser equivalence generated by invertible local
operators.  Wherever two independent computations of the same number
exist (operator traces vs. correlation-matrix contractions) both are
evaluated and compared.
"""

from dataclasses import dataclass

import numpy as np

from . import mink, qmath, states
from ._backend import hyperdet_contraction
from .errors import (
    BridgeViolation,
    KempeInconsistent,
    PermutationAsymmetry,
    RouteMismatch,
)

_FLIP = np.kron(mink.SIGMA[2], mink.SIGMA[2]).real

_PAIRS = ("AB", "BC", "AC")


@dataclass
class LUInvariants:
    i1: float
    i2: float
    i3: float
    i4: float
    i5: float
    kempe: float


@dataclass
class PairEntanglement:
    """Two-qubit marginal data: top spin-flip eigenvalues, concurrence,
    and the extreme Gamma eigenvalues mu_0 >= mu_2."""

    pair: str
    nus: tuple
    concurrence: float
    mu0: float
    mu2: float


@dataclass
class SLOCCInvariants:
    k1: float
    k2: float
    k3: float
    k4: float
    k5: float


def spin_flip(rho):
    """(sigma_2 (x) sigma_2) rho^T (sigma_2 (x) sigma_2)."""
    rho = np.asarray(rho, dtype=complex)
    return _FLIP @ rho.T @ _FLIP


def wootters(rho):
    """Spin-flip eigenvalues and concurrence of a two-qubit state.

    The nu_i are the eigenvalues of sqrt(sqrt(rho) rho~ sqrt(rho)),
    descending; C = max(0, nu_1 - nu_2 - nu_3 - nu_4).
    """
    rho = np.asarray(rho, dtype=complex)
    w, V = qmath.hermitian_eigensystem(rho)
    w = np.maximum(w, 0.0)
    sq = (V * np.sqrt(w)) @ V.conj().T
    M = sq @ spin_flip(rho) @ sq
    M = 0.5 * (M + M.conj().T)
    w2, _ = qmath.hermitian_eigensystem(M)
    # roundoff noise at exact zeros would explode under the square
    # root and leak into the concurrence sum, so snap it out first
    scale = float(np.max(np.abs(w2))) if np.max(np.abs(w2)) > 0 else 1.0
    w2 = np.where(w2 > 1e-14 * scale, w2, 0.0)
    nus = tuple(np.sqrt(w2)[::-1])
    conc = max(0.0, nus[0] - nus[1] - nus[2] - nus[3])
    return nus, conc


def hyperdeterminant(c):
    """|epsilon-contraction|^2 / 4 of the amplitude tensor.

    Equals the squared three-tangle over 16; vanishes exactly on the
    W class and every biseparable state.
    """
    c = states.as_state(c)
    return 0.25 * abs(hyperdet_contraction(c)) ** 2


def _purity(rho):
    return float(np.sum(np.abs(rho) ** 2))


def _cube_trace(rho):
    return float(np.trace(rho @ rho @ rho).real)


def _pair_i4(c, pair):
    """Tr[(rho_X (x) rho_Y) rho_XY] for pair 'XY', by the operator trace."""
    rho_xy = states.partial_trace(c, pair)
    rho_x = states.partial_trace(c, pair[0])
    rho_y = states.partial_trace(c, pair[1])
    return float(np.trace(np.kron(rho_x, rho_y) @ rho_xy).real)


def lu_invariants(c):
    """The six local-unitary invariants of a normalized pure state.

    i1..i3 are the single-qubit purities; i4 is the two-route pair
    functional Tr[(rho_A (x) rho_B) rho_AB]; i5 the hyperdeterminant
    modulus squared; kempe the permutation-symmetric cubic, averaged
    over its three equal presentations.
    """
    c = states.as_state(c)
    rho1 = {q: states.partial_trace(c, q) for q in "ABC"}
    i1, i2, i3 = (_purity(rho1[q]) for q in "ABC")

    i4_trace = _pair_i4(c, "AB")
    lam = mink.lambda_of(states.partial_trace(c, "AB"))
    i4_corr = 0.25 * float(lam[:, 0] @ lam @ lam[0, :])
    if abs(i4_trace - i4_corr) > 1e-10:
        raise RouteMismatch(
            f"I4 operator trace {i4_trace} vs correlation route {i4_corr}"
        )

    i5 = hyperdeterminant(c)

    cubes = {q: _cube_trace(rho1[q]) for q in "ABC"}
    kempes = [
        3.0 * _pair_i4(c, pair) - cubes[pair[0]] - cubes[pair[1]]
        for pair in _PAIRS
    ]
    spread = max(kempes) - min(kempes)
    if spread > 1e-8:
        raise KempeInconsistent(f"permutation spread {spread}")
    kempe = sum(kempes) / 3.0

    return LUInvariants(i1, i2, i3, i4_trace, i5, kempe)


def _pair_spectrum(c, pair):
    lam = mink.lambda_of(states.partial_trace(c, pair))
    return mink.gamma_spectrum(mink.gamma_of(lam, "A"))


def pair_entanglement(c, pair):
    """Concurrence and Gamma spectrum of one two-qubit marginal.

    For a pure parent state mu_2 = C^2 and mu_0 - mu_2 = 4 nu_1 nu_2;
    both identities are enforced here, so a violation flags a broken
    input rather than passing silently.
    """
    if pair not in _PAIRS:
        raise ValueError(f"pair must be one of {_PAIRS}")
    c = states.as_state(c)
    rho = states.partial_trace(c, pair)
    gs = _pair_spectrum(c, pair)
    mu0, mu2 = gs.mu[0], gs.mu[2]
    nus, conc = wootters(rho)
    if abs(mu2 - conc**2) > 1e-8:
        raise BridgeViolation(f"mu_2 = {mu2} but C^2 = {conc ** 2}")
    if abs((mu0 - mu2) - 4.0 * nus[0] * nus[1]) > 1e-8:
        raise BridgeViolation(
            f"gap {mu0 - mu2} vs 4 nu_1 nu_2 = {4.0 * nus[0] * nus[1]}"
        )
    return PairEntanglement(pair, (nus[0], nus[1]), conc, mu0, mu2)


def three_tangle(c):
    """Residual tangle tau = 4 sqrt(I_5).

    Cross-checked against the pair-independent gap mu_0 - mu_2 of all
    three marginal Gamma spectra.
    """
    c = states.as_state(c)
    tau = 4.0 * np.sqrt(hyperdeterminant(c))
    gaps = []
    for pair in _PAIRS:
        gs = _pair_spectrum(c, pair)
        gaps.append(gs.mu[0] - gs.mu[2])
    if max(gaps) - min(gaps) > 1e-7:
        raise PermutationAsymmetry(f"marginal gaps disagree: {gaps}")
    worst = max(abs(g - tau) for g in gaps)
    if worst > 1e-8:
        raise BridgeViolation(f"gap vs 4 sqrt(I5) residual {worst}")
    return float(tau)


def slocc_invariants(c):
    """K_1..K_5 of a normalized pure state, each by two routes.

    k1..k3 are Tr[rho rho~] of the AB, BC, AC marginals, checked
    against Tr[Gamma]/4; k4 is Tr[(rho_A (x) rho_B) rho~_AB] checked
    against the correlation contraction s_A^T G Lambda G s_B / 4; k5
    is the hyperdeterminant modulus squared.
    """
    c = states.as_state(c)
    ks = []
    for pair in _PAIRS:
        rho = states.partial_trace(c, pair)
        trace_route = float(np.trace(rho @ spin_flip(rho)).real)
        lam = mink.lambda_of(rho)
        gamma_route = 0.25 * float(np.trace(mink.gamma_of(lam, "A")))
        if abs(trace_route - gamma_route) > 1e-10:
            raise RouteMismatch(
                f"K({pair}) trace route {trace_route} vs Gamma route {gamma_route}"
            )
        ks.append(trace_route)

    rho_ab = states.partial_trace(c, "AB")
    rho_a = states.partial_trace(c, "A")
    rho_b = states.partial_trace(c, "B")
    k4_trace = float(np.trace(np.kron(rho_a, rho_b) @ spin_flip(rho_ab)).real)
    lam = mink.lambda_of(rho_ab)
    k4_corr = 0.25 * float(lam[:, 0] @ mink.G @ lam @ mink.G @ lam[0, :])
    if abs(k4_trace - k4_corr) > 1e-10:
        raise RouteMismatch(f"K4 trace route {k4_trace} vs contraction {k4_corr}")

    k5 = hyperdeterminant(c)
    return SLOCCInvariants(ks[0], ks[1], ks[2], k4_trace, k5)
