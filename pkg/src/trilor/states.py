"""Three-qubit pure states and their reduced density matrices.

A pure state is a length-8 complex vector c with c[4i+2j+k] the
amplitude of |i j k>, qubit A the most significant bit.  Reduced
density matrices for every subsystem choice come from explicit
per-pair index contractions; nothing ever relabels the state storage.
"""

import json

import numpy as np

from .errors import DomainError, SingularOperator, ZeroState

STATE_FORMAT = "3q-pure-v1"

_SL2C_MAX_TRIES = 200

GHZ = np.zeros(8, dtype=complex)
GHZ[0] = GHZ[7] = 1.0 / np.sqrt(2.0)

W = np.zeros(8, dtype=complex)
W[1] = W[2] = W[4] = 1.0 / np.sqrt(3.0)


def as_state(c):
    """Coerce to a length-8 complex vector, checking finiteness."""
    c = np.asarray(c, dtype=complex).reshape(-1)
    if c.shape != (8,):
        raise DomainError("state must have 8 amplitudes")
    if not np.all(np.isfinite(c.view(float))):
        raise DomainError("non-finite amplitude")
    return c


def normalize(c):
    """Unit norm and canonical global phase.

    The largest-magnitude amplitude (ties: lowest index) is made real
    non-negative, so equal states compare equal.
    """
    c = as_state(c)
    norm = np.sqrt(np.sum(np.abs(c) ** 2))
    if norm < 1e-14:
        raise ZeroState("cannot normalize a zero state")
    c = c / norm
    k = int(np.argmax(np.abs(c)))
    phase = c[k] / abs(c[k])
    return c / phase


def partial_trace(c, keep):
    """Reduced density matrix of the given subsystem(s).

    keep is one of 'A','B','C','AB','BC','AC'.  Two-qubit results are
    4x4 with the first named qubit most significant.
    """
    T = as_state(c).reshape(2, 2, 2)
    Tc = T.conj()
    if keep == "AB":
        return np.einsum("ijk,lmk->ijlm", T, Tc).reshape(4, 4)
    if keep == "BC":
        return np.einsum("ijk,ilm->jklm", T, Tc).reshape(4, 4)
    if keep == "AC":
        return np.einsum("ijk,ljm->iklm", T, Tc).reshape(4, 4)
    if keep == "A":
        return np.einsum("ijk,ljk->il", T, Tc)
    if keep == "B":
        return np.einsum("ijk,imk->jm", T, Tc)
    if keep == "C":
        return np.einsum("ijk,ijm->km", T, Tc)
    raise DomainError(f"unknown subsystem {keep!r}")


def apply_local(c, opA, opB, opC, renormalize=True):
    """Apply a product operator A (x) B (x) C to the state.

    Operators must be invertible.  With renormalize set the result is
    scaled back to unit norm (the phase is left untouched).
    """
    T = as_state(c).reshape(2, 2, 2)
    ops = []
    for op in (opA, opB, opC):
        op = np.asarray(op, dtype=complex)
        if op.shape != (2, 2):
            raise DomainError("local operators must be 2x2")
        det = op[0, 0] * op[1, 1] - op[0, 1] * op[1, 0]
        if abs(det) <= 1e-12:
            raise SingularOperator("local operator is singular")
        ops.append(op)
    out = np.einsum("ia,jb,kc,abc->ijk", ops[0], ops[1], ops[2], T).reshape(8)
    if renormalize:
        norm = np.sqrt(np.sum(np.abs(out) ** 2))
        if norm < 1e-14:
            raise ZeroState("operator annihilated the state")
        out = out / norm
    return out


def haar_random_state(seed):
    """Haar-random pure state: 8 standard complex Gaussians, normalized."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    return z / np.sqrt(np.sum(np.abs(z) ** 2))


def random_sl2c(seed, scale_bound=4.0):
    """Random unit-determinant 2x2 complex operator, conditioned.

    Gaussian matrix, rejected while |det| < 0.1, divided by a square
    root of its determinant.  Draws whose largest singular value
    exceeds scale_bound are rejected too, which caps the condition
    number at scale_bound^2 (singular values multiply to 1).
    """
    if scale_bound < 1.0:
        raise DomainError("scale_bound must be >= 1")
    from . import qmath  # local import, avoids a cycle at package init

    rng = np.random.default_rng(seed)
    for _ in range(_SL2C_MAX_TRIES):
        m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if abs(det) < 0.1:
            continue
        m = m / np.sqrt(complex(det))
        _, s, _ = qmath.svd_2x2(m)
        if s[0] > scale_bound:
            continue
        return m
    raise RuntimeError("random_sl2c: rejection sampling failed")


def save_state(path, c):
    """Write a state as format '3q-pure-v1' JSON."""
    c = as_state(c)
    doc = {
        "format": STATE_FORMAT,
        "amplitudes": [{"re": float(z.real), "im": float(z.imag)} for z in c],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_state(path):
    """Read a '3q-pure-v1' JSON state file."""
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DomainError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != STATE_FORMAT:
        raise DomainError(f"expected format {STATE_FORMAT!r}")
    amps = doc.get("amplitudes")
    if not isinstance(amps, list) or len(amps) != 8:
        raise DomainError("expected 8 amplitudes")
    try:
        c = np.array([complex(a["re"], a["im"]) for a in amps])
    except (TypeError, KeyError) as exc:
        raise DomainError("amplitudes must be {re, im} objects") from exc
    return as_state(c)
