"""In-house dense complex Schur decomposition.

Householder reduction to upper Hessenberg form followed by shifted QR
iteration with deterministic Wilkinson shifts, a fixed exceptional-shift
schedule, and direct triangularization of trailing 2x2 blocks.
Eigenvectors come from back-substitution on the triangular factor.

Matrices in this package are desk scale (well under 200x200), so the
dense O(n^3) path with explicit shifts is the right tool and keeps the
numerical core of the package self-contained.
"""

from __future__ import annotations

import hashlib

import numpy as np

from .errors import NumericalError

__all__ = ["eig", "eigvals", "hessenberg", "matrix_fingerprint", "schur"]

_EPS = float(np.finfo(float).eps)

#: QR sweeps allowed per matrix dimension before giving up.
SWEEP_CAP_FACTOR = 100

#: Every this many sweeps without a deflation, take an exceptional shift.
_EXCEPTIONAL_EVERY = 12


def matrix_fingerprint(a) -> str:
    """Short content hash of a complex matrix, for error messages."""
    data = np.ascontiguousarray(a, dtype=complex)
    return hashlib.sha256(data.tobytes()).hexdigest()[:16]


def _as_square(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NumericalError(f"expected a square matrix, got shape {a.shape}")
    if a.size and not np.all(np.isfinite(a)):
        raise NumericalError("matrix contains non-finite entries")
    return a


def hessenberg(a, want_q: bool = True):
    """Reduce ``a`` to upper Hessenberg form ``h`` with ``a = q h q^H``.

    Returns ``(h, q)``; ``q`` is None when ``want_q`` is false.
    """
    t = np.array(_as_square(a), dtype=complex, copy=True)
    n = t.shape[0]
    q = np.eye(n, dtype=complex) if want_q else None
    for k in range(n - 2):
        x = t[k + 1:, k]
        xnorm = float(np.linalg.norm(x))
        if xnorm == 0.0:
            continue
        # Reflect x onto -phase(x[0]) * |x| * e1 to avoid cancellation.
        if x[0] != 0.0:
            alpha = -x[0] / abs(x[0]) * xnorm
        else:
            alpha = complex(-xnorm)
        v = x.copy()
        v[0] -= alpha
        vnorm = float(np.linalg.norm(v))
        if vnorm == 0.0:
            continue
        v /= vnorm
        t[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ t[k + 1:, k:])
        t[:, k + 1:] -= 2.0 * np.outer(t[:, k + 1:] @ v, v.conj())
        if q is not None:
            q[:, k + 1:] -= 2.0 * np.outer(q[:, k + 1:] @ v, v.conj())
        t[k + 1, k] = alpha
        t[k + 2:, k] = 0.0
    return t, q


def _rotation(a: complex, b: complex):
    """2x2 unitary U with U @ [a, b] = [r, 0], r real nonnegative."""
    norm = float(np.hypot(abs(a), abs(b)))
    if norm == 0.0:
        return np.eye(2, dtype=complex)
    return np.array(
        [[np.conj(a), np.conj(b)], [-b, a]], dtype=complex
    ) / norm


def _wilkinson_shift(t, hi):
    a, b = t[hi - 1, hi - 1], t[hi - 1, hi]
    c, d = t[hi, hi - 1], t[hi, hi]
    half = 0.5 * (a + d)
    disc = np.sqrt(complex(0.25 * (a - d) ** 2 + b * c))
    lam1 = half + disc
    lam2 = half - disc
    return lam1 if abs(lam1 - d) <= abs(lam2 - d) else lam2


def _qr_step(t, q, lo, hi, shift):
    """One explicit-shift QR sweep on the active window [lo, hi]."""
    for r in range(lo, hi + 1):
        t[r, r] -= shift
    rotations = []
    for r in range(lo, hi):
        u = _rotation(t[r, r], t[r + 1, r])
        t[r:r + 2, r:] = u @ t[r:r + 2, r:]
        rotations.append(u)
    for r in range(lo, hi):
        uh = rotations[r - lo].conj().T
        t[: r + 2, r:r + 2] = t[: r + 2, r:r + 2] @ uh
        if q is not None:
            q[:, r:r + 2] = q[:, r:r + 2] @ uh
    for r in range(lo, hi + 1):
        t[r, r] += shift


def _deflate_2x2(t, q, lo):
    """Directly triangularize the 2x2 block at [lo, lo+1]."""
    hi = lo + 1
    a, b = t[lo, lo], t[lo, hi]
    c, d = t[hi, lo], t[hi, hi]
    half = 0.5 * (a + d)
    disc = np.sqrt(complex(0.25 * (a - d) ** 2 + b * c))
    lam1 = half + disc
    lam2 = half - disc
    lam = lam1 if abs(lam1 - d) >= abs(lam2 - d) else lam2
    # (lam - d, c) is an eigenvector of the block; c != 0 on entry.
    u = _rotation(lam - d, c)
    t[lo:hi + 1, lo:] = u @ t[lo:hi + 1, lo:]
    t[: hi + 1, lo:hi + 1] = t[: hi + 1, lo:hi + 1] @ u.conj().T
    if q is not None:
        q[:, lo:hi + 1] = q[:, lo:hi + 1] @ u.conj().T
    t[hi, lo] = 0.0


def schur(a, want_q: bool = True):
    """Schur decomposition ``a = q t q^H`` with ``t`` upper triangular.

    Parameters
    ----------
    a : array_like
        Square complex matrix.
    want_q : bool
        When false, skip accumulating the unitary factor (faster when
        only eigenvalues are needed).

    Raises
    ------
    NumericalError
        If the QR iteration exceeds ``SWEEP_CAP_FACTOR * n`` sweeps.
    """
    a = _as_square(a)
    n = a.shape[0]
    if n == 0:
        return a.copy(), np.eye(0, dtype=complex) if want_q else None
    t, q = hessenberg(a, want_q)
    anorm = float(np.linalg.norm(t))
    if anorm == 0.0:
        return t, q
    cap = SWEEP_CAP_FACTOR * n
    sweeps = 0
    since_deflation = 0
    hi = n - 1
    while hi > 0:
        lo = hi
        while lo > 0:
            scale = abs(t[lo - 1, lo - 1]) + abs(t[lo, lo])
            if scale == 0.0:
                scale = anorm
            if abs(t[lo, lo - 1]) <= _EPS * scale:
                t[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            hi -= 1
            since_deflation = 0
            continue
        if lo == hi - 1:
            _deflate_2x2(t, q, lo)
            hi = lo - 1
            since_deflation = 0
            continue
        sweeps += 1
        since_deflation += 1
        if sweeps > cap:
            raise NumericalError(
                f"QR iteration did not converge within {cap} sweeps "
                f"(matrix fingerprint {matrix_fingerprint(a)})"
            )
        if since_deflation % _EXCEPTIONAL_EVERY == 0:
            shift = t[hi, hi] + 0.75 * abs(t[hi, hi - 1])
        else:
            shift = _wilkinson_shift(t, hi)
        _qr_step(t, q, lo, hi, shift)
    if n > 1:
        t[np.tril_indices(n, k=-1)] = 0.0
    return t, q


def eigvals(a) -> np.ndarray:
    """Eigenvalues of a square complex matrix, in Schur order."""
    t, _ = schur(a, want_q=False)
    return np.diag(t).copy()


def _triangular_eigvecs(t) -> np.ndarray:
    """Unit eigenvectors of an upper triangular matrix, one per column.

    Near-singular pivots (clustered eigenvalues) are perturbed to
    machine scale, the standard safeguard for repeated roots.
    """
    n = t.shape[0]
    vecs = np.zeros((n, n), dtype=complex)
    scale = max(float(np.max(np.abs(t))) if n else 0.0, 1e-300)
    for col in range(n):
        lam = t[col, col]
        x = np.zeros(col + 1, dtype=complex)
        x[col] = 1.0
        for row in range(col - 1, -1, -1):
            s = t[row, row + 1: col + 1] @ x[row + 1: col + 1]
            den = t[row, row] - lam
            if abs(den) < _EPS * scale:
                den = complex(_EPS * scale)
            x[row] = -s / den
        vecs[: col + 1, col] = x / np.linalg.norm(x)
    return vecs


def eig(a):
    """Eigenvalues and unit right eigenvectors of a square matrix.

    Returns ``(values, vectors)`` with ``vectors[:, k]`` belonging to
    ``values[k]``.  No deterministic ordering is applied here; callers
    that need one sort the pairs themselves.
    """
    t, q = schur(a, want_q=True)
    values = np.diag(t).copy()
    vectors = q @ _triangular_eigvecs(t)
    return values, vectors
