"""Pure-Python numeric kernels.

Fallback implementations of the small fixed-size kernels that the
compiled core (trilor._core) accelerates.  Both backends implement
the same algorithms with the same tolerances so results agree to
roundoff; trilor._backend picks whichever is importable.
"""

import cmath
import math

import numpy as np

MACHEPS = 2.220446049250313e-16

_JACOBI_MAX_SWEEPS = 60
_JACOBI_TOL = 1e-14


def jacobi_eigh(H):
    """Eigenvalues and eigenvectors of a complex Hermitian matrix.

    Cyclic Jacobi with complex rotations.  Returns (w, V) with w
    ascending and V unitary, H V = V diag(w).  Raises RuntimeError
    if the sweep budget is exhausted before the off-diagonal mass
    drops below 1e-14 * ||H||_F.
    """
    A = np.array(H, dtype=complex)
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    scale = math.sqrt(abs(np.vdot(A, A).real))
    if scale == 0.0:
        return np.zeros(n), V
    thresh = _JACOBI_TOL * scale
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += abs(A[p, q]) ** 2
        off = math.sqrt(2.0 * off)
        if off <= thresh:
            w = A.diagonal().real.copy()
            order = np.argsort(w, kind="stable")
            return w[order], V[:, order]
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r <= _JACOBI_TOL * scale / (n * n):
                    continue
                phase = apq / r
                tau = (A[q, q].real - A[p, p].real) / (2.0 * r)
                # smaller-angle root of t^2 + 2 tau t - 1 = 0
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = phase * (t * c)
                # A <- J^H A J with J[p,p]=J[q,q]=c, J[p,q]=s, J[q,p]=-conj(s)
                colp = A[:, p].copy()
                colq = A[:, q].copy()
                A[:, p] = c * colp - np.conj(s) * colq
                A[:, q] = s * colp + c * colq
                rowp = A[p, :].copy()
                rowq = A[q, :].copy()
                A[p, :] = c * rowp - s * rowq
                A[q, :] = np.conj(s) * rowp + c * rowq
                A[p, q] = 0.0
                A[q, p] = 0.0
                colp = V[:, p].copy()
                colq = V[:, q].copy()
                V[:, p] = c * colp - np.conj(s) * colq
                V[:, q] = s * colp + c * colq
    raise RuntimeError("jacobi_eigh: no convergence within sweep budget")


def _solve_quadratic(b, c):
    """Roots of t^2 + b t + c with complex coefficients, stable form."""
    d = cmath.sqrt(b * b - 4.0 * c)
    if (b.conjugate() * d).real < 0.0:
        d = -d
    q = -0.5 * (b + d)
    if q == 0.0:
        return 0.0 + 0.0j, -b
    return q, c / q


def _biquadratic_ts(p, r):
    """Half-roots of t^4 + p t^2 + r.

    The u-quadratic discriminant p^2 - 4r vanishes exactly for a
    spectrum of two double roots; snapping a noise-level discriminant
    to zero keeps such pairs exactly degenerate instead of split by
    its square root.
    """
    disc = p * p - 4.0 * r
    if abs(disc) <= 1e-12 * max(1.0, p * p, abs(4.0 * r)):
        s1 = cmath.sqrt(complex(-0.5 * p))
        return s1, -s1, s1, -s1
    z1, z2 = _solve_quadratic(complex(p), complex(r))
    s1 = cmath.sqrt(z1)
    s2 = cmath.sqrt(z2)
    return s1, -s1, s2, -s2


def _cubic_largest_real(b2, b1, b0):
    """Largest real root of u^3 + b2 u^2 + b1 u + b0 (real coefficients)."""
    shift = b2 / 3.0
    p = b1 - b2 * b2 / 3.0
    q = b0 - b2 * b1 / 3.0 + 2.0 * b2 ** 3 / 27.0
    disc = 0.25 * q * q + p ** 3 / 27.0
    if disc > 0.0:
        rt = math.sqrt(disc)
        u = math.copysign(abs(-0.5 * q + rt) ** (1.0 / 3.0), -0.5 * q + rt)
        v = math.copysign(abs(-0.5 * q - rt) ** (1.0 / 3.0), -0.5 * q - rt)
        best = u + v - shift
    elif p == 0.0:
        # disc <= 0 forces p <= 0, so this is the triple root
        best = -shift
    else:
        # three real roots, p < 0 here
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        arg = min(1.0, max(-1.0, arg))
        theta = math.acos(arg) / 3.0
        best = m * math.cos(theta)
        for k in (1, 2):
            u = m * math.cos(theta - 2.0 * math.pi * k / 3.0)
            if u > best:
                best = u
        best -= shift
    # near the disc = 0 boundary both closed forms carry sqrt(eps)-level
    # absolute error; guarded Newton steps restore full precision
    f = ((best + b2) * best + b1) * best + b0
    for _ in range(3):
        fp = (3.0 * best + 2.0 * b2) * best + b1
        if f == 0.0 or fp == 0.0:
            break
        cand = best - f / fp
        fc = ((cand + b2) * cand + b1) * cand + b0
        if abs(fc) >= abs(f):
            break
        best, f = cand, fc
    return best


def _polish_quartic_root(z, a3, a2, a1, a0):
    """Guarded complex Newton steps against the undepressed quartic.

    The depression shift wrecks small roots when a3 dominates them;
    polishing restores full precision and never increases the residual.
    """
    f = (((z + a3) * z + a2) * z + a1) * z + a0
    for _ in range(3):
        fp = ((4.0 * z + 3.0 * a3) * z + 2.0 * a2) * z + a1
        if f == 0.0 or fp == 0.0:
            break
        cand = z - f / fp
        fc = (((cand + a3) * cand + a2) * cand + a1) * cand + a0
        if abs(fc) >= abs(f):
            break
        z, f = cand, fc
    return z


def quartic_roots(a3, a2, a1, a0):
    """Four roots of y^4 + a3 y^3 + a2 y^2 + a1 y + a0 (real coefficients).

    Analytic: depressed quartic, resolvent cubic, two quadratics.
    Returns a 4-tuple of complex numbers, unordered.
    """
    scale3 = abs(a3)
    if (scale3 > 1e3 and abs(a2) <= 1e-3 * scale3 ** 2
            and abs(a1) <= 1e-3 * scale3 ** 3 and abs(a0) <= 1e-3 * scale3 ** 4):
        # one root dwarfing the other three starves the depressed
        # coefficients of their digits; split it off and solve the
        # leftover cubic at its own scale
        zb = _polish_quartic_root(complex(-a3), a3, a2, a1, a0).real
        # backward synthetic division: dividing by the large zb shrinks
        # errors, where the forward chain would amplify them by zb^2
        c0 = -a0 / zb
        c1 = (c0 - a1) / zb
        c2 = (c1 - a2) / zb
        m = _cubic_largest_real(c2, c1, c0)
        t1, t2 = _solve_quadratic(complex(c2 + m), complex(c1 + m * (c2 + m)))
        return tuple(_polish_quartic_root(t, a3, a2, a1, a0)
                     for t in (complex(zb), complex(m), t1, t2))
    shift = a3 / 4.0
    p = a2 - 3.0 * a3 * a3 / 8.0
    q = a1 - 0.5 * a3 * a2 + a3 ** 3 / 8.0
    r = a0 - 0.25 * a3 * a1 + a3 * a3 * a2 / 16.0 - 3.0 * a3 ** 4 / 256.0
    # q vanishes identically for paired spectra; its roundoff floor is
    # set by the depression terms, not by p or r, which can be small
    qscale = max(1.0, abs(a1), 0.5 * abs(a3 * a2), 0.125 * abs(a3) ** 3)
    if abs(q) <= 1e-12 * qscale:
        ts = _biquadratic_ts(p, r)
    else:
        m = _cubic_largest_real(p, 0.25 * p * p - r, -0.125 * q * q)
        if 2.0 * m <= 0.0:
            # roundoff pushed the resolvent root to zero; q is tiny
            ts = _biquadratic_ts(p, r)
        else:
            s = math.sqrt(2.0 * m)
            half = 0.5 * p + m
            u = half - 0.5 * q / s
            w = half + 0.5 * q / s
            # u*w equals r exactly; rebuilding the smaller factor from the
            # product sidesteps the cancellation when q/(2s) is near half
            if abs(u) < abs(w) and w != 0.0:
                u = r / w
            elif abs(w) <= abs(u) and u != 0.0:
                w = r / u
            t1, t2 = _solve_quadratic(complex(s), complex(u))
            t3, t4 = _solve_quadratic(complex(-s), complex(w))
            return tuple(_polish_quartic_root(t - shift, a3, a2, a1, a0)
                         for t in (t1, t2, t3, t4))
    return tuple(t - shift for t in ts)


def svd_2x2(M):
    """Singular value decomposition of a 2x2 complex matrix.

    Returns (U, s, V) with M = U diag(s) V^H and s descending.
    det(U) = 1 always; det(V) = 1 whenever the gauge allows it
    (rank-deficient M, or det(M) real non-negative).
    """
    M = np.asarray(M, dtype=complex)
    a = (abs(M[0, 0]) ** 2 + abs(M[1, 0]) ** 2).real
    d = (abs(M[0, 1]) ** 2 + abs(M[1, 1]) ** 2).real
    b = M[0, 0].conjugate() * M[0, 1] + M[1, 0].conjugate() * M[1, 1]
    h = 0.5 * (a + d)
    delta = math.sqrt(max(0.25 * (a - d) ** 2 + abs(b) ** 2, 0.0))
    l1 = max(h + delta, 0.0)
    s1 = math.sqrt(l1)

    v1a = np.array([b, l1 - a], dtype=complex)
    v1b = np.array([l1 - d, b.conjugate()], dtype=complex)
    n1a = abs(v1a[0]) ** 2 + abs(v1a[1]) ** 2
    n1b = abs(v1b[0]) ** 2 + abs(v1b[1]) ** 2
    # relative to a + d, not an absolute floor: tiny-norm matrices still
    # have a well separated dominant eigenvector
    if max(n1a, n1b) <= (MACHEPS * (a + d)) ** 2:
        v1 = np.array([1.0, 0.0], dtype=complex)
    elif n1a >= n1b:
        v1 = v1a / math.sqrt(n1a)
    else:
        v1 = v1b / math.sqrt(n1b)
    # orthonormal complement; makes det([v1 v2]) = 1 exactly
    v2 = np.array([-v1[1].conjugate(), v1[0].conjugate()], dtype=complex)

    u1 = M @ v1
    s1 = math.sqrt((abs(u1[0]) ** 2 + abs(u1[1]) ** 2).real)
    if s1 <= MACHEPS * max(1.0, math.sqrt(a + d)):
        U = np.eye(2, dtype=complex)
        V = np.eye(2, dtype=complex)
        return U, np.array([0.0, 0.0]), V
    u1 = u1 / s1
    # complement of a unit u1: U is unitary and det(U) = 1 exactly
    u2 = np.array([-u1[1].conjugate(), u1[0].conjugate()], dtype=complex)
    # s2 from the residual u2^H M v2; the l2 = h - delta route cancels
    # catastrophically near rank deficiency and inflates s2 to sqrt(eps)
    w = u2.conjugate() @ (M @ v2)
    s2 = min(abs(w), s1)
    if s2 > 1e-12 * max(1.0, s1):
        v2 = v2 * (w.conjugate() / s2)
    # below the floor v2 stays the plain complement, det(V) = 1

    U = np.column_stack([u1, u2])
    V = np.column_stack([v1, v2])
    return U, np.array([s1, s2]), V


_EPS_PAIRS = ((0, 1, 1.0), (1, 0, -1.0))


def hyperdet_contraction(c):
    """Epsilon contraction over four copies of the amplitudes.

    Sum over twelve binary indices of
    eps(i1,i2) eps(i3,i4) eps(j1,j2) eps(j3,j4) eps(k1,k3) eps(k2,k4)
    * c_{i1 j1 k1} c_{i2 j2 k2} c_{i3 j3 k3} c_{i4 j4 k4};
    only the 64 terms with all epsilon factors nonzero contribute.
    """
    total = 0.0 + 0.0j
    for i1, i2, si in _EPS_PAIRS:
        for i3, i4, ti in _EPS_PAIRS:
            for j1, j2, sj in _EPS_PAIRS:
                for j3, j4, tj in _EPS_PAIRS:
                    for k1, k3, sk in _EPS_PAIRS:
                        for k2, k4, tk in _EPS_PAIRS:
                            total += (
                                si * ti * sj * tj * sk * tk
                                * c[4 * i1 + 2 * j1 + k1]
                                * c[4 * i2 + 2 * j2 + k2]
                                * c[4 * i3 + 2 * j3 + k3]
                                * c[4 * i4 + 2 * j4 + k4]
                            )
    return total
