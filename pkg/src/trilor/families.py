"""Closed-form benchmark families of three-qubit states.

Two symmetric families whose marginal Gamma spectra are known in
closed form, used to pin the numerical pipeline to exact expressions:
a one-parameter superposition of |000> with the W state, and the
three-parameter superposition of |000> with a rotated product state
|beta beta beta>.
"""

import numpy as np

from .errors import DegenerateNormalization, DomainError
from .states import as_state


def _check_beta(beta):
    if not 0.0 < beta <= np.pi:
        raise DomainError(f"beta must be in (0, pi], got {beta}")


def one_param_state(beta):
    """(sqrt(3) cos(beta/2)|000> + sin(beta/2)|W>) / sqrt(2 + cos beta)."""
    _check_beta(beta)
    c = np.zeros(8, dtype=complex)
    n = np.sqrt(2.0 + np.cos(beta))
    c[0] = np.sqrt(3.0) * np.cos(0.5 * beta) / n
    c[1] = c[2] = c[4] = np.sin(0.5 * beta) / (np.sqrt(3.0) * n)
    return as_state(c)


def one_param_closed_forms(beta):
    """(u, C, tau) of the |000>+|W> family.

    Every pair marginal has the quadruple Gamma spectrum {u, u, u, u}
    with u = ((1 - cos beta) / (3 (2 + cos beta)))^2; the concurrence
    is sqrt(u) and the three-tangle vanishes identically.
    """
    _check_beta(beta)
    u = ((1.0 - np.cos(beta)) / (3.0 * (2.0 + np.cos(beta)))) ** 2
    return u, np.sqrt(u), 0.0


def three_param_state(y, beta, phi):
    """Normalized |000> + y e^{i phi} |beta beta beta>.

    |beta> = cos(beta/2)|0> + sin(beta/2)|1>.  The normalization
    1 + y^2 + 2 y cos phi cos^3(beta/2) must stay away from zero.
    """
    if not 0.0 < y <= 1.0:
        raise DomainError(f"y must be in (0, 1], got {y}")
    _check_beta(beta)
    if not 0.0 <= phi <= 2.0 * np.pi:
        raise DomainError(f"phi must be in [0, 2 pi], got {phi}")
    d = 1.0 + y * y + 2.0 * y * np.cos(phi) * np.cos(0.5 * beta) ** 3
    if d < 1e-12:
        raise DegenerateNormalization(f"normalization collapsed: D = {d}")
    single = np.array([np.cos(0.5 * beta), np.sin(0.5 * beta)], dtype=complex)
    product = np.einsum("i,j,k->ijk", single, single, single).reshape(8)
    c = np.zeros(8, dtype=complex)
    c[0] = 1.0
    c = c + y * np.exp(1j * phi) * product
    return as_state(c / np.sqrt(d))


def three_param_closed_forms(y, beta, phi):
    """(B, mu0, mu2, tau, C_paper, C_consistent) for the family above.

    With D = 1 + y^2 + 2 y cos phi cos^3(beta/2) and
    B = y^2 (1 - cos beta)^2 / (2 D^2), every pair marginal has
    mu0 = 2B, mu2 = B (1 + cos beta), and tau = mu0 - mu2.

    Two concurrence expressions circulate for this family and they
    differ by an exact factor of 2: C_paper = 2 y sin(beta) sin(beta/2)
    / D, while C_consistent = sqrt(mu2) is the one that satisfies
    C^2 = mu2.  Symbolically C_paper = 2 C_consistent, so downstream
    consumers must divide C_paper by 2 before comparing with the
    spectrum.  Both are returned so the discrepancy stays visible.
    """
    if not 0.0 < y <= 1.0:
        raise DomainError(f"y must be in (0, 1], got {y}")
    _check_beta(beta)
    if not 0.0 <= phi <= 2.0 * np.pi:
        raise DomainError(f"phi must be in [0, 2 pi], got {phi}")
    d = 1.0 + y * y + 2.0 * y * np.cos(phi) * np.cos(0.5 * beta) ** 3
    if d < 1e-12:
        raise DegenerateNormalization(f"normalization collapsed: D = {d}")
    b = y * y * (1.0 - np.cos(beta)) ** 2 / (2.0 * d * d)
    mu0 = 2.0 * b
    mu2 = b * (1.0 + np.cos(beta))
    tau = b * (1.0 - np.cos(beta))
    c_paper = 2.0 * y * np.sin(beta) * np.sin(0.5 * beta) / d
    c_consistent = np.sqrt(mu2)
    return b, mu0, mu2, tau, c_paper, c_consistent
