# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled numeric kernels.

Same algorithms and tolerances as trilor._kernels_py; that module is
the readable reference, this one is the fast path picked up by
trilor._backend when the extension was built.
"""

import numpy as np

from libc.math cimport sqrt, fabs, acos, cos, copysign, pow, M_PI

cdef extern from "complex.h":
    double complex csqrt(double complex) nogil
    double cabs(double complex) nogil
    double creal(double complex) nogil
    double complex conj(double complex) nogil

DEF MACHEPS = 2.220446049250313e-16
DEF JACOBI_MAX_SWEEPS = 60
DEF JACOBI_TOL = 1e-14


def jacobi_eigh(H):
    """Eigenvalues and eigenvectors of a complex Hermitian matrix.

    Cyclic Jacobi with complex rotations; (w ascending, V unitary).
    """
    A = np.array(H, dtype=complex, order="C")
    cdef Py_ssize_t n = A.shape[0]
    V = np.eye(n, dtype=complex)
    cdef double complex[:, :] a = A
    cdef double complex[:, :] v = V
    cdef Py_ssize_t p, q, k, sweep
    cdef double scale = 0.0, off, r, tau, t, c
    cdef double complex apq, phase, s, tp, tq

    for p in range(n):
        for q in range(n):
            scale += cabs(a[p, q]) ** 2
    scale = sqrt(scale)
    if scale == 0.0:
        return np.zeros(n), V
    cdef double thresh = JACOBI_TOL * scale
    cdef double skip = JACOBI_TOL * scale / (n * n)

    for sweep in range(JACOBI_MAX_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += cabs(a[p, q]) ** 2
        off = sqrt(2.0 * off)
        if off <= thresh:
            w = A.diagonal().real.copy()
            order = np.argsort(w, kind="stable")
            return w[order], V[:, order]
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = cabs(apq)
                if r <= skip:
                    continue
                phase = apq / r
                tau = (creal(a[q, q]) - creal(a[p, p])) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = phase * (t * c)
                for k in range(n):
                    tp = a[k, p]
                    tq = a[k, q]
                    a[k, p] = c * tp - conj(s) * tq
                    a[k, q] = s * tp + c * tq
                for k in range(n):
                    tp = a[p, k]
                    tq = a[q, k]
                    a[p, k] = c * tp - s * tq
                    a[q, k] = conj(s) * tp + c * tq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    tp = v[k, p]
                    tq = v[k, q]
                    v[k, p] = c * tp - conj(s) * tq
                    v[k, q] = s * tp + c * tq
    raise RuntimeError("jacobi_eigh: no convergence within sweep budget")


cdef void _solve_quadratic(double complex b, double complex c,
                           double complex *r1, double complex *r2) nogil:
    cdef double complex d = csqrt(b * b - 4.0 * c)
    cdef double complex q
    if creal(conj(b) * d) < 0.0:
        d = -d
    q = -0.5 * (b + d)
    if q == 0.0:
        r1[0] = 0.0
        r2[0] = -b
    else:
        r1[0] = q
        r2[0] = c / q


cdef double _cubic_largest_real(double b2, double b1, double b0) nogil:
    cdef double shift = b2 / 3.0
    cdef double p = b1 - b2 * b2 / 3.0
    cdef double q = b0 - b2 * b1 / 3.0 + 2.0 * b2 * b2 * b2 / 27.0
    cdef double disc, rt, u, vv, m, arg, theta, best, cand, f, fp, fc
    cdef int k
    disc = 0.25 * q * q + p * p * p / 27.0
    if disc > 0.0:
        rt = sqrt(disc)
        u = copysign(pow(fabs(-0.5 * q + rt), 1.0 / 3.0), -0.5 * q + rt)
        vv = copysign(pow(fabs(-0.5 * q - rt), 1.0 / 3.0), -0.5 * q - rt)
        best = u + vv - shift
    elif p == 0.0:
        # disc <= 0 forces p <= 0, so this is the triple root
        best = -shift
    else:
        m = 2.0 * sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        if arg > 1.0:
            arg = 1.0
        elif arg < -1.0:
            arg = -1.0
        theta = acos(arg) / 3.0
        best = m * cos(theta)
        for k in range(1, 3):
            cand = m * cos(theta - 2.0 * M_PI * k / 3.0)
            if cand > best:
                best = cand
        best -= shift
    # near the disc = 0 boundary both closed forms carry sqrt(eps)-level
    # absolute error; guarded Newton steps restore full precision
    f = ((best + b2) * best + b1) * best + b0
    for k in range(3):
        fp = (3.0 * best + 2.0 * b2) * best + b1
        if f == 0.0 or fp == 0.0:
            break
        cand = best - f / fp
        fc = ((cand + b2) * cand + b1) * cand + b0
        if fabs(fc) >= fabs(f):
            break
        best = cand
        f = fc
    return best


cdef double complex _polish_quartic_root(double complex z, double a3, double a2,
                                         double a1, double a0) nogil:
    # guarded complex Newton against the undepressed quartic; the shift
    # wrecks small roots when a3 dominates them, polishing restores them
    cdef double complex f, fp, cand, fc
    cdef int k
    f = (((z + a3) * z + a2) * z + a1) * z + a0
    for k in range(3):
        fp = ((4.0 * z + 3.0 * a3) * z + 2.0 * a2) * z + a1
        if f == 0.0 or fp == 0.0:
            break
        cand = z - f / fp
        fc = (((cand + a3) * cand + a2) * cand + a1) * cand + a0
        if cabs(fc) >= cabs(f):
            break
        z = cand
        f = fc
    return z


def quartic_roots(double a3, double a2, double a1, double a0):
    """Four roots of y^4 + a3 y^3 + a2 y^2 + a1 y + a0, unordered."""
    cdef double scale3 = fabs(a3)
    cdef double zb, c2, c1, c0, mm
    cdef double complex tt1, tt2
    if (scale3 > 1e3 and fabs(a2) <= 1e-3 * scale3 ** 2
            and fabs(a1) <= 1e-3 * scale3 ** 3 and fabs(a0) <= 1e-3 * scale3 ** 4):
        # one root dwarfing the other three starves the depressed
        # coefficients of their digits; split it off and solve the
        # leftover cubic at its own scale
        zb = creal(_polish_quartic_root(-a3 + 0j, a3, a2, a1, a0))
        # backward synthetic division: dividing by the large zb shrinks
        # errors, where the forward chain would amplify them by zb^2
        c0 = -a0 / zb
        c1 = (c0 - a1) / zb
        c2 = (c1 - a2) / zb
        mm = _cubic_largest_real(c2, c1, c0)
        _solve_quadratic(c2 + mm, c1 + mm * (c2 + mm), &tt1, &tt2)
        return (_polish_quartic_root(zb + 0j, a3, a2, a1, a0),
                _polish_quartic_root(mm + 0j, a3, a2, a1, a0),
                _polish_quartic_root(tt1, a3, a2, a1, a0),
                _polish_quartic_root(tt2, a3, a2, a1, a0))
    cdef double shift = a3 / 4.0
    cdef double p = a2 - 3.0 * a3 * a3 / 8.0
    cdef double q = a1 - 0.5 * a3 * a2 + a3 * a3 * a3 / 8.0
    cdef double r = (a0 - 0.25 * a3 * a1 + a3 * a3 * a2 / 16.0
                     - 3.0 * a3 * a3 * a3 * a3 / 256.0)
    # q vanishes identically for paired spectra; its roundoff floor is
    # set by the depression terms, not by p or r, which can be small
    cdef double qscale = max(1.0, max(fabs(a1),
                             max(0.5 * fabs(a3 * a2), 0.125 * fabs(a3) ** 3)))
    cdef double complex z1, z2, s1c, s2c, t1, t2, t3, t4
    cdef double m, s, half, u, w
    cdef bint biquad = fabs(q) <= 1e-12 * qscale
    if not biquad:
        m = _cubic_largest_real(p, 0.25 * p * p - r, -0.125 * q * q)
        if 2.0 * m <= 0.0:
            biquad = True
    if biquad:
        # a zero u-discriminant means two exact double roots; snapping
        # noise keeps them degenerate instead of split by its sqrt
        if fabs(p * p - 4.0 * r) <= 1e-12 * max(1.0, max(p * p, fabs(4.0 * r))):
            s1c = csqrt(-0.5 * p + 0j)
            s2c = s1c
        else:
            _solve_quadratic(p, r, &z1, &z2)
            s1c = csqrt(z1)
            s2c = csqrt(z2)
        t1, t2, t3, t4 = s1c, -s1c, s2c, -s2c
    else:
        s = sqrt(2.0 * m)
        half = 0.5 * p + m
        u = half - 0.5 * q / s
        w = half + 0.5 * q / s
        # u*w equals r exactly; rebuilding the smaller factor from the
        # product sidesteps the cancellation when q/(2s) is near half
        if fabs(u) < fabs(w) and w != 0.0:
            u = r / w
        elif fabs(w) <= fabs(u) and u != 0.0:
            w = r / u
        _solve_quadratic(s, u, &t1, &t2)
        _solve_quadratic(-s, w, &t3, &t4)
        return (_polish_quartic_root(t1 - shift, a3, a2, a1, a0),
                _polish_quartic_root(t2 - shift, a3, a2, a1, a0),
                _polish_quartic_root(t3 - shift, a3, a2, a1, a0),
                _polish_quartic_root(t4 - shift, a3, a2, a1, a0))
    return (t1 - shift, t2 - shift, t3 - shift, t4 - shift)


def svd_2x2(M):
    """2x2 complex SVD, (U, s, V) with det(U) = 1; see reference module."""
    Mc = np.ascontiguousarray(M, dtype=complex)
    cdef double complex[:, :] mm = Mc
    cdef double complex m00 = mm[0, 0], m01 = mm[0, 1]
    cdef double complex m10 = mm[1, 0], m11 = mm[1, 1]
    cdef double a = cabs(m00) ** 2 + cabs(m10) ** 2
    cdef double d = cabs(m01) ** 2 + cabs(m11) ** 2
    cdef double complex b = conj(m00) * m01 + conj(m10) * m11
    cdef double h = 0.5 * (a + d)
    cdef double delta = sqrt(max(0.25 * (a - d) * (a - d) + cabs(b) ** 2, 0.0))
    cdef double l1 = max(h + delta, 0.0)
    cdef double s1 = sqrt(l1)
    cdef double s2
    cdef double complex v10, v11, v20, v21, u10, u11, u20, u21, w, ph
    cdef double n1a = cabs(b) ** 2 + (l1 - a) * (l1 - a)
    cdef double n1b = (l1 - d) * (l1 - d) + cabs(b) ** 2
    cdef double nn

    # relative to a + d, not an absolute floor: tiny-norm matrices still
    # have a well separated dominant eigenvector
    if max(n1a, n1b) <= (MACHEPS * (a + d)) ** 2:
        v10, v11 = 1.0, 0.0
    elif n1a >= n1b:
        nn = sqrt(n1a)
        v10, v11 = b / nn, (l1 - a) / nn
    else:
        nn = sqrt(n1b)
        v10, v11 = (l1 - d) / nn, conj(b) / nn
    v20 = -conj(v11)
    v21 = conj(v10)

    u10 = m00 * v10 + m01 * v11
    u11 = m10 * v10 + m11 * v11
    s1 = sqrt(cabs(u10) ** 2 + cabs(u11) ** 2)
    if s1 <= MACHEPS * max(1.0, sqrt(a + d)):
        return np.eye(2, dtype=complex), np.array([0.0, 0.0]), np.eye(2, dtype=complex)
    u10 /= s1
    u11 /= s1
    # complement of a unit u1: U is unitary and det(U) = 1 exactly
    u20 = -conj(u11)
    u21 = conj(u10)
    # s2 from the residual u2^H M v2; the l2 = h - delta route cancels
    # catastrophically near rank deficiency and inflates s2 to sqrt(eps)
    w = (conj(u20) * (m00 * v20 + m01 * v21)
         + conj(u21) * (m10 * v20 + m11 * v21))
    s2 = min(cabs(w), s1)
    if s2 > 1e-12 * max(1.0, s1):
        ph = conj(w) / s2
        v20 *= ph
        v21 *= ph
    # below the floor v2 stays the plain complement, det(V) = 1

    U = np.array([[u10, u20], [u11, u21]], dtype=complex)
    V = np.array([[v10, v20], [v11, v21]], dtype=complex)
    return U, np.array([s1, s2]), V


def hyperdet_contraction(c):
    """Epsilon contraction over four amplitude copies (64 nonzero terms)."""
    cc = np.ascontiguousarray(c, dtype=complex)
    cdef double complex[:] z = cc
    cdef int i1, i3, j1, j3, k1, k2
    cdef double si, ti, sj, tj, sk, tk
    cdef double complex total = 0.0
    for i1 in range(2):
        si = 1.0 if i1 == 0 else -1.0
        for i3 in range(2):
            ti = 1.0 if i3 == 0 else -1.0
            for j1 in range(2):
                sj = 1.0 if j1 == 0 else -1.0
                for j3 in range(2):
                    tj = 1.0 if j3 == 0 else -1.0
                    for k1 in range(2):
                        sk = 1.0 if k1 == 0 else -1.0
                        for k2 in range(2):
                            tk = 1.0 if k2 == 0 else -1.0
                            total += (
                                si * ti * sj * tj * sk * tk
                                * z[4 * i1 + 2 * j1 + k1]
                                * z[4 * (1 - i1) + 2 * (1 - j1) + k2]
                                * z[4 * i3 + 2 * j3 + (1 - k1)]
                                * z[4 * (1 - i3) + 2 * (1 - j3) + (1 - k2)]
                            )
    return complex(total)
