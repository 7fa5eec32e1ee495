"""Canonical forms: five-term reduction and Lorentz normal frames.

Every pure three-qubit state is local-unitary equivalent to

    l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>

with l_i >= 0 and phi in [0, pi].  The reducing unitary on the first
qubit is found from the roots of a quadratic built from the two
A-slices of the amplitude tensor; the rest is a 2x2 SVD and diagonal
phase gauging.

For two-qubit density matrices whose Gamma matrix has a timelike
dominant eigenvector (case I), bell_diagonal_form builds the pair of
proper orthochronous Lorentz transforms bringing the correlation
matrix to diag(1, c1, c2, c3).  Case II states instead match a rigid
sparsity pattern handled by recognize_case_two.
"""

import cmath
from dataclasses import dataclass

import numpy as np

from . import mink, qmath, states
from ._backend import jacobi_eigh
from .errors import (
    DegenerateFrame,
    NotCaseI,
    NotCaseII,
    ReductionFailure,
)

_SUPPORT_TOL = 1e-8
_GAUGE_TOL = 1e-10
_PHASE_SLACK = 1e-9
_NORM_TOL = 1e-8
_RETRY_SEEDS = (101, 103, 107)


@dataclass
class AcinParams:
    """Five non-negative amplitudes, the phase, and Delta =
    |l1 l4 e^{i phi} - l2 l3|^2."""

    lam: tuple
    phi: float
    delta: float


@dataclass
class AcinDecomposition:
    params: AcinParams
    unitaries: tuple


@dataclass
class CaseTwoForm:
    """Parameters read off a case-II Gamma in its normal frame.

    phi0 is Gamma_00; gamma0 = mu0/phi0 and gamma2 = sqrt(mu2/phi0)
    are the frame-independent shape parameters.  All three are None
    when the matrix has the case-II spectrum but is not presented in
    the normal frame.
    """

    phi0: float
    mu0: float
    mu2: float
    gamma0: float
    gamma2: float


def _det2(m):
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def _quadratic_roots(a2, a1, a0):
    """Roots of a2 x^2 + a1 x + a0 with a2 != 0, Viete-stabilized."""
    disc = cmath.sqrt(a1 * a1 - 4.0 * a2 * a0)
    if abs(a1 + disc) >= abs(a1 - disc):
        u = -0.5 * (a1 + disc)
    else:
        u = -0.5 * (a1 - disc)
    if abs(u) < 1e-300:
        return 0.0 + 0.0j, 0.0 + 0.0j
    return u / a2, a0 / u


def _slice_rows(c):
    """Candidate first rows (a, b) of the reducing A-unitary.

    (a, b) must make det(a T0 + b T1) = 0, a quadratic on the
    projective line; both finite roots enter, plus the point at
    infinity (slice swap) and the identity when they solve it.
    """
    T0 = c.reshape(2, 2, 2)[0]
    T1 = c.reshape(2, 2, 2)[1]
    a0 = _det2(T0)
    a2 = _det2(T1)
    a1 = _det2(T0 + T1) - a0 - a2
    scale = max(abs(a0), abs(a1), abs(a2), 1e-300)
    tol = 1e-12 * scale

    rows = []
    if abs(a2) > tol:
        for x in _quadratic_roots(a2, a1, a0):
            rows.append((1.0 + 0.0j, x))
    else:
        rows.append((0.0 + 0.0j, 1.0 + 0.0j))
        if abs(a1) > tol:
            rows.append((1.0 + 0.0j, -a0 / a1))
    if abs(a0) <= tol:
        rows.append((1.0 + 0.0j, 0.0 + 0.0j))
    return rows


def _phase_gauge(amps):
    """Diagonal phase unitaries making the five-term form standard.

    Phases compose as alpha on |000>, alpha+r on |100>, then +t for
    the C bit and +s for the B bit.  The generic solution zeroes the
    phases of slots 0,5,6,7 and leaves phi = p4+p7-p5-p6 on slot 4;
    when l1 l4 or l2 l3 vanishes the leftover phase is a gauge freedom
    and everything is made real, phi = 0.
    """
    mags = np.abs(amps)
    p = np.where(mags > 1e-15, np.angle(amps), 0.0)
    l1, l2, l3, l4 = mags[4], mags[5], mags[6], mags[7]

    gauge = l1 * l4 < _GAUGE_TOL or l2 * l3 < _GAUGE_TOL
    free = None
    if gauge:
        if l1 * l4 < _GAUGE_TOL:
            free = 4 if l1 <= l4 else 7
        else:
            free = 5 if l2 <= l3 else 6

    alpha = -p[0]
    if free in (None, 4):
        s = p[5] - p[7]
        t = p[6] - p[7]
        r = p[0] - p[5] - p[6] + p[7]
    elif free == 5:
        r = p[0] - p[4]
        s = p[4] - p[6]
        t = p[6] - p[7]
    elif free == 6:
        r = p[0] - p[4]
        t = p[4] - p[5]
        s = p[5] - p[7]
    else:  # free == 7
        r = p[0] - p[4]
        t = p[4] - p[5]
        s = p[4] - p[6]

    PA = np.diag([np.exp(1j * alpha), np.exp(1j * (alpha + r))])
    PB = np.diag([1.0, np.exp(1j * s)]).astype(complex)
    PC = np.diag([1.0, np.exp(1j * t)]).astype(complex)
    return PA, PB, PC, gauge


def _random_su2(seed):
    m = np.random.default_rng(seed).standard_normal((2, 2, 2))
    U, _, _ = qmath.svd_2x2(m[0] + 1j * m[1])
    return U


def _reduce_candidates(c):
    """All five-term reductions of c reachable from one slice gauge."""
    out = []
    for a, b in _slice_rows(c):
        n = np.sqrt(abs(a) ** 2 + abs(b) ** 2)
        a, b = a / n, b / n
        anchor = a if abs(a) > 1e-12 else b
        ph = anchor / abs(anchor)
        a, b = a / ph, b / ph
        UA = np.array([[a, b], [-b.conjugate(), a.conjugate()]])

        T0p = a * c.reshape(2, 2, 2)[0] + b * c.reshape(2, 2, 2)[1]
        U, _, V = qmath.svd_2x2(T0p)
        UB = U.conj().T
        UC = V.T

        cc = states.apply_local(c, UA, UB, UC, renormalize=False)
        support = float(np.max(np.abs(cc[1:4])))
        if support > _SUPPORT_TOL:
            continue

        PA, PB, PC, gauge = _phase_gauge(cc)
        final = states.apply_local(cc, PA, PB, PC, renormalize=False)
        lams = (
            abs(final[0]),
            abs(final[4]),
            abs(final[5]),
            abs(final[6]),
            abs(final[7]),
        )
        phi = 0.0 if gauge else float(np.angle(final[4]))
        if -_PHASE_SLACK <= phi < 0.0:
            phi = 0.0
        elif np.pi < phi <= np.pi + _PHASE_SLACK:
            phi = np.pi
        out.append(
            {
                "lams": lams,
                "phi": phi,
                "unitaries": (PA @ UA, PB @ UB, PC @ UC),
                "support": support,
            }
        )
    return out


def acin_reduce(c):
    """Five-term canonical decomposition of a pure three-qubit state.

    Returns the parameters and the three local unitaries that realize
    them.  Among the slice-gauge branches the one with phi in [0, pi]
    and the largest l0 wins (smaller phi breaks ties), which makes the
    output a deterministic function of the input ray.
    """
    c = states.normalize(c)
    pre = (None,) + _RETRY_SEEDS
    for seed in pre:
        if seed is None:
            VA = np.eye(2, dtype=complex)
            cw = c
        else:
            VA = _random_su2(seed)
            cw = states.apply_local(c, VA, np.eye(2), np.eye(2), renormalize=False)
        cands = [
            k for k in _reduce_candidates(cw) if 0.0 <= k["phi"] <= np.pi
        ]
        if not cands:
            continue
        cands.sort(key=lambda k: (-k["lams"][0], k["phi"]))
        best = cands[0]

        lams = best["lams"]
        ssum = sum(l * l for l in lams)
        if abs(ssum - 1.0) > 1e-9:
            raise ReductionFailure(f"amplitude norm drifted: sum l^2 = {ssum}")
        UA, UB, UC = best["unitaries"]
        UA = UA @ VA
        phi = best["phi"]
        delta = abs(lams[1] * lams[4] * np.exp(1j * phi) - lams[2] * lams[3]) ** 2
        params = AcinParams(tuple(float(l) for l in lams), float(phi), float(delta))
        return AcinDecomposition(params, (UA, UB, UC))
    raise ReductionFailure("no slice-gauge branch reached the five-term form")


def acin_lambda_closed_form(params, pair):
    """Correlation matrix of one pair marginal, straight from the
    five-term parameters (no state construction)."""
    l0, l1, l2, l3, l4 = params.lam
    phi = params.phi
    cph, sph = np.cos(phi), np.sin(phi)
    if pair == "AC":
        l2, l3 = l3, l2
    if pair in ("AB", "AC"):
        return np.array(
            [
                [
                    1.0,
                    2.0 * (l2 * l4 + l1 * l3 * cph),
                    -2.0 * l1 * l3 * sph,
                    1.0 - 2.0 * (l3 * l3 + l4 * l4),
                ],
                [2.0 * l0 * l1 * cph, 2.0 * l0 * l3, 0.0, 2.0 * l0 * l1 * cph],
                [2.0 * l0 * l1 * sph, 0.0, -2.0 * l0 * l3, 2.0 * l0 * l1 * sph],
                [
                    2.0 * l0 * l0 - 1.0,
                    -2.0 * (l2 * l4 + l1 * l3 * cph),
                    2.0 * l1 * l3 * sph,
                    1.0 - 2.0 * (l1 * l1 + l2 * l2),
                ],
            ]
        )
    if pair == "BC":
        return np.array(
            [
                [
                    1.0,
                    2.0 * (l3 * l4 + l1 * l2 * cph),
                    -2.0 * l1 * l2 * sph,
                    1.0 - 2.0 * (l2 * l2 + l4 * l4),
                ],
                [
                    2.0 * (l2 * l4 + l1 * l3 * cph),
                    2.0 * (l2 * l3 + l1 * l4 * cph),
                    -2.0 * l1 * l4 * sph,
                    -2.0 * (l2 * l4 - l1 * l3 * cph),
                ],
                [
                    -2.0 * l1 * l3 * sph,
                    -2.0 * l1 * l4 * sph,
                    2.0 * (l2 * l3 - l1 * l4 * cph),
                    -2.0 * l1 * l3 * sph,
                ],
                [
                    1.0 - 2.0 * (l3 * l3 + l4 * l4),
                    -2.0 * (l3 * l4 - l1 * l2 * cph),
                    -2.0 * l1 * l2 * sph,
                    1.0 - 2.0 * (l2 * l2 + l3 * l3),
                ],
            ]
        )
    raise ValueError(f"pair must be 'AB', 'BC' or 'AC', got {pair!r}")


def acin_gamma_eigs_closed_form(params, pair):
    """The extreme Gamma eigenvalues (mu0, mu2) of one pair marginal."""
    l0, l1, l2, l3, l4 = params.lam
    if pair == "AB":
        return (
            4.0 * l0 * l0 * (l3 * l3 + l4 * l4),
            4.0 * l0 * l0 * l3 * l3,
        )
    if pair == "AC":
        return (
            4.0 * l0 * l0 * (l2 * l2 + l4 * l4),
            4.0 * l0 * l0 * l2 * l2,
        )
    if pair == "BC":
        return (
            4.0 * (params.delta + l0 * l0 * l4 * l4),
            4.0 * params.delta,
        )
    raise ValueError(f"pair must be 'AB', 'BC' or 'AC', got {pair!r}")


def classify_two_qubit(rho):
    """Case label and full spectral data of a two-qubit state."""
    lam = mink.lambda_of(rho)
    gs = mink.gamma_spectrum(mink.gamma_of(lam, "A"))
    return gs.case, gs


def _cluster_basis(M, value, mult):
    """The mult least-singular directions of M - value*I, orthonormal."""
    N = M - value * np.eye(4)
    w, V = jacobi_eigh((N.T @ N).astype(complex))
    del w
    return V.real[:, :mult]


def _random_orthogonal(m, rng):
    """Random m x m rotation as a product of Givens rotations."""
    R = np.eye(m)
    for i in range(m):
        for j in range(i + 1, m):
            th = rng.uniform(0.0, 2.0 * np.pi)
            giv = np.eye(m)
            giv[i, i] = giv[j, j] = np.cos(th)
            giv[i, j] = -np.sin(th)
            giv[j, i] = np.sin(th)
            R = R @ giv
    return R


def _g_split(B, norm_tol):
    """G-orthonormal directions spanned by B, split by norm sign.

    Diagonalizing the restricted Gram form B^T G B yields directions
    of definite Minkowski norm; |norm| at or below norm_tol means the
    span grazes the light cone and no frame exists in it.
    """
    S = B.T @ mink.G @ B
    eta, Q = jacobi_eigh(S.astype(complex))
    Q = Q.real
    timelike, spacelike = [], []
    for i in range(B.shape[1]):
        if abs(eta[i]) <= norm_tol:
            raise DegenerateFrame("eigenspace direction is lightlike")
        v = B @ Q[:, i]
        if eta[i] > 0.0:
            timelike.append(v / np.sqrt(eta[i]))
        else:
            v = v / np.sqrt(-eta[i])
            k = int(np.argmax(np.abs(v)))
            spacelike.append(v if v[k] > 0 else -v)
    return timelike, spacelike


def _frame_attempt(lam, gamma_a, gamma_b, clusters, rng=None):
    def remix(B):
        if rng is None or B.shape[1] == 1:
            return B
        return B @ _random_orthogonal(B.shape[1], rng)

    xs_time, xs_space, ys_space_tail = [], [], []
    mus_space = []
    mu0 = clusters[0][0]
    for idx, (val, mult) in enumerate(clusters):
        if val > 1e-12:
            B = remix(_cluster_basis(gamma_a, val, mult))
            timelike, spacelike = _g_split(B, _NORM_TOL)
            if idx == 0:
                if len(timelike) != 1:
                    raise DegenerateFrame("dominant eigenspace is not timelike")
                xs_time = timelike
            elif timelike:
                raise DegenerateFrame("unexpected timelike direction")
            xs_space.extend(spacelike)
            mus_space.extend([val] * len(spacelike))
        else:
            Ba = remix(_cluster_basis(gamma_a, val, mult))
            timelike, spacelike = _g_split(Ba, _NORM_TOL)
            if timelike:
                raise DegenerateFrame("timelike direction at zero eigenvalue")
            xs_space.extend(spacelike)
            mus_space.extend([0.0] * len(spacelike))
            Bb = remix(_cluster_basis(gamma_b, val, mult))
            timelike, spacelike = _g_split(Bb, _NORM_TOL)
            if timelike:
                raise DegenerateFrame("timelike direction at zero eigenvalue")
            ys_space_tail.extend(spacelike)

    X0 = xs_time[0]
    if X0[0] < 0:
        X0 = -X0
    Y0 = mink.G @ lam.T @ X0 / np.sqrt(mu0)
    if Y0[0] <= 0:
        raise DegenerateFrame("image of the timelike axis is not future-pointing")

    ys = [Y0]
    n_mapped = len([m for m in mus_space if m > 1e-12])
    for X, mu in zip(xs_space[:n_mapped], mus_space[:n_mapped]):
        ys.append(-mink.G @ lam.T @ X / np.sqrt(mu))
    ys.extend(ys_space_tail)

    LA = np.array([X0] + xs_space)
    LB = np.array(ys)
    if LA.shape != (4, 4) or LB.shape != (4, 4):
        raise DegenerateFrame("frame is not complete")
    if mink.det4(LA) < 0:
        LA[3] = -LA[3]
    if mink.det4(LB) < 0:
        LB[3] = -LB[3]
    return LA, LB


def bell_diagonal_form(rho):
    """Lorentz normal form of a case-I two-qubit density matrix.

    Returns (L_A, L_B, lam_bar, rho_bar) with lam_bar =
    L_A Lambda L_B^T normalized to unit (0,0) entry and diagonal:
    diag(1, sqrt(mu1/mu0), sqrt(mu2/mu0), +-sqrt(mu3/mu0)), the last
    sign tracking det Lambda.  rho_bar is the Bell-diagonal density
    matrix it encodes.
    """
    lam = mink.lambda_of(rho)
    gamma_a = mink.gamma_of(lam, "A")
    gamma_b = mink.gamma_of(lam, "B")
    gs = mink.gamma_spectrum(gamma_a)
    if gs.case != "I":
        raise NotCaseI(f"dominant eigenvector is not timelike (case {gs.case})")
    clusters = gs.clusters
    if clusters[0][0] <= 1e-12:
        raise DegenerateFrame("Gamma vanishes; no timelike image exists")

    last = None
    for seed in (None,) + _RETRY_SEEDS:
        rng = None if seed is None else np.random.default_rng(seed)
        try:
            LA, LB = _frame_attempt(lam, gamma_a, gamma_b, clusters, rng)
            break
        except DegenerateFrame as exc:
            last = exc
    else:
        raise DegenerateFrame(str(last))

    raw = LA @ lam @ LB.T
    f = raw[0, 0]
    if not f > 1e-12:
        raise DegenerateFrame("frame collapsed the time-time entry")
    lam_bar = raw / f
    off = lam_bar - np.diag(np.diag(lam_bar))
    if np.max(np.abs(off)) > 1e-7:
        raise DegenerateFrame("normal form is not diagonal")
    return LA, LB, lam_bar, mink.rho_of_lambda(lam_bar)


_CASE_TWO_ZEROS = ((0, 1), (0, 2), (1, 0), (2, 0), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2))


def recognize_case_two(gamma):
    """Read the case-II normal-form parameters off a Gamma matrix.

    The normal frame is [[phi0,0,0,phi0-mu0], [0,mu2,0,0], [0,0,mu2,0],
    [mu0-phi0,0,0,2mu0-phi0]].  When gamma has the case-II spectrum but
    different entries the spectral fields are still filled in and the
    frame-bound ones are None.
    """
    gamma = np.asarray(gamma, dtype=float)
    gs = mink.gamma_spectrum(gamma)
    if gs.case != "II":
        raise NotCaseII(f"case {gs.case}")
    if len(gs.clusters) == 1:
        mu0 = mu2 = gs.clusters[0][0]
    else:
        mu0 = max(v for v, _ in gs.clusters)
        mu2 = min(v for v, _ in gs.clusters)

    tol = 1e-7 * max(1.0, float(np.max(np.abs(gamma))))
    phi0 = gamma[0, 0]
    in_frame = all(abs(gamma[i, j]) <= tol for i, j in _CASE_TWO_ZEROS)
    in_frame = in_frame and abs(gamma[1, 1] - mu2) <= tol
    in_frame = in_frame and abs(gamma[2, 2] - mu2) <= tol
    in_frame = in_frame and abs(gamma[0, 3] - (phi0 - mu0)) <= tol
    in_frame = in_frame and abs(gamma[3, 0] - (mu0 - phi0)) <= tol
    in_frame = in_frame and abs(gamma[3, 3] - (2.0 * mu0 - phi0)) <= tol
    in_frame = in_frame and phi0 > 1e-12

    if not in_frame:
        return CaseTwoForm(None, float(mu0), float(mu2), None, None)
    return CaseTwoForm(
        float(phi0),
        float(mu0),
        float(mu2),
        float(mu0 / phi0),
        float(np.sqrt(mu2 / phi0)),
    )
