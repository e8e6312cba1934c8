"""Dense quaternionic matrices and right-eigenvalue machinery.

A quaternionic matrix ``M = A + j*B`` is stored by its complex simplex
part ``A`` and perplex part ``B``.  The complex embedding

    psi(M) = [[A, -conj(B)], [B, conj(A)]]

is an injective real-algebra homomorphism on square matrices, so right
eigenvalues, minimal polynomials, and root subspaces of ``M`` are all
recovered from the ordinary complex spectrum of ``psi(M)``:

* ``Mv = v*lam`` for ``v = u + j*w`` exactly when ``psi(M) z = lam*z``
  for the stacked vector ``z = (u; w)``.
* The spectrum of ``psi(M)`` is closed under conjugation and every real
  eigenvalue has even multiplicity, because psi-images commute with the
  antilinear map ``z -> J*conj(z)`` whose square is ``-I``.  A conjugacy
  class of right eigenvalues therefore carries quaternionic multiplicity
  equal to half the number of psi-eigenvalues lying in it.
* The minimal polynomial of ``M`` (monic, real coefficients, factors of
  degree 1 or 2) coincides with the minimal polynomial of ``psi(M)``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import _schur
from .errors import NumericalError, ValidationError
from .quaternion import CLASS_TOL, ConjugacyClass, Quaternion, as_quaternion

__all__ = [
    "CLUSTER_TOL",
    "EIG_TOL",
    "MP_TOL",
    "MinimalPolynomial",
    "PolyFactor",
    "QMatrix",
    "RANK_TOL",
    "RootSubspace",
    "complex_eigen",
    "from_psi",
    "h_linear_independent",
    "is_unitary",
    "minimal_polynomial",
    "psi",
    "qvec",
    "right_eigenbasis",
    "right_eigenvalues",
    "right_eigenvector",
    "root_subspaces",
]

#: Residual target for eigenpairs of the complex solver.
EIG_TOL = 1e-10
#: Singular values below RANK_TOL * sigma_max count as zero.
RANK_TOL = 1e-8
#: Minimal-polynomial annihilation tolerance (scaled by norm**degree).
MP_TOL = 1e-8
#: Eigenvalue clustering tolerance for minimal polynomials.
CLUSTER_TOL = 1e-6


class QMatrix:
    """A quaternionic matrix held as complex simplex/perplex parts."""

    __slots__ = ("a", "b")

    def __init__(self, simplex, perplex=None):
        a = np.array(simplex, dtype=complex, copy=True)
        if a.ndim != 2:
            raise ValidationError(f"QMatrix parts must be 2-D, got {a.ndim}-D")
        if perplex is None:
            b = np.zeros_like(a)
        else:
            b = np.array(perplex, dtype=complex, copy=True)
        if b.shape != a.shape:
            raise ValidationError(
                f"simplex/perplex shapes differ: {a.shape} vs {b.shape}"
            )
        self.a = a
        self.b = b

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rows(cls, rows) -> "QMatrix":
        """Build from nested sequences of Quaternion/complex/real entries."""
        grid = [[as_quaternion(e) for e in row] for row in rows]
        if not grid or not grid[0]:
            raise ValidationError("QMatrix needs at least one row and column")
        ncol = len(grid[0])
        if any(len(row) != ncol for row in grid):
            raise ValidationError("ragged rows in QMatrix input")
        a = np.array([[e.simplex for e in row] for row in grid], dtype=complex)
        b = np.array([[e.perplex for e in row] for row in grid], dtype=complex)
        return cls(a, b)

    @classmethod
    def from_real(cls, mat) -> "QMatrix":
        mat = np.asarray(mat)
        if np.iscomplexobj(mat) and np.max(np.abs(mat.imag)) != 0.0:
            raise ValidationError("from_real expects a real matrix")
        return cls(np.asarray(mat, dtype=complex).real.astype(complex))

    @classmethod
    def from_complex(cls, mat) -> "QMatrix":
        return cls(np.asarray(mat, dtype=complex))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(np.zeros((rows, cols), dtype=complex))

    @classmethod
    def eye(cls, n: int) -> "QMatrix":
        return cls(np.eye(n, dtype=complex))

    @classmethod
    def diag(cls, entries) -> "QMatrix":
        qs = [as_quaternion(e) for e in entries]
        a = np.diag([q.simplex for q in qs]).astype(complex)
        b = np.diag([q.perplex for q in qs]).astype(complex)
        return cls(a, b)

    # -- structure ----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def entry(self, r: int, c: int) -> Quaternion:
        return Quaternion.from_symplectic(self.a[r, c], self.b[r, c])

    def to_rows(self) -> list[list[Quaternion]]:
        return [
            [self.entry(r, c) for c in range(self.cols)]
            for r in range(self.rows)
        ]

    def column(self, c: int) -> "QMatrix":
        return QMatrix(self.a[:, c:c + 1], self.b[:, c:c + 1])

    # -- algebra ------------------------------------------------------

    def __add__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "QMatrix":
        return QMatrix(-self.a, -self.b)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValidationError(
                f"shape mismatch in product: {self.shape} @ {other.shape}"
            )
        # (A1 + j B1)(A2 + j B2) = (A1 A2 - conj(B1) B2) + j (B1 A2 + conj(A1) B2)
        a = self.a @ other.a - np.conj(self.b) @ other.b
        b = self.b @ other.a + np.conj(self.a) @ other.b
        return QMatrix(a, b)

    def scale(self, factor: float) -> "QMatrix":
        """Multiply by a real scalar (these commute with everything)."""
        return QMatrix(self.a * float(factor), self.b * float(factor))

    def right_scalar(self, value) -> "QMatrix":
        """Right multiplication ``M * q`` by a quaternion scalar."""
        q = as_quaternion(value)
        s, p = q.simplex, q.perplex
        a = self.a * s - np.conj(self.b) * p
        b = self.b * s + np.conj(self.a) * p
        return QMatrix(a, b)

    def conj_transpose(self) -> "QMatrix":
        """Quaternionic conjugate transpose; satisfies psi(M*) = psi(M)^H
        exactly (no floating-point arithmetic involved)."""
        return QMatrix(self.a.conj().T, -self.b.T)

    @property
    def H(self) -> "QMatrix":
        return self.conj_transpose()

    def power(self, k: int) -> "QMatrix":
        if self.rows != self.cols:
            raise ValidationError("matrix power needs a square matrix")
        if k < 0:
            raise ValidationError("negative matrix powers are not supported")
        out = QMatrix.eye(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base if k > 1 else base
            k >>= 1
        return out

    # -- norms --------------------------------------------------------

    def entry_norms(self) -> np.ndarray:
        return np.sqrt(np.abs(self.a) ** 2 + np.abs(self.b) ** 2)

    def max_entry_norm(self) -> float:
        return float(np.max(self.entry_norms()))

    def fro_norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.a) ** 2 + np.abs(self.b) ** 2)))

    def __repr__(self) -> str:
        return f"QMatrix({self.rows}x{self.cols})"


def qvec(entries) -> QMatrix:
    """Column vector from a sequence of quaternion-like entries."""
    return QMatrix.from_rows([[e] for e in entries])


def psi(m: QMatrix) -> np.ndarray:
    """Complex embedding ``[[A, -conj(B)], [B, conj(A)]]`` of ``M = A + jB``.

    Multiplicative (``psi(MN) = psi(M) psi(N)``), additive, and exact on
    conjugate transposes.  Shape is ``(2r, 2c)`` for an ``r x c`` input.
    """
    return np.block([[m.a, -np.conj(m.b)], [m.b, np.conj(m.a)]])


def from_psi(c) -> QMatrix:
    """Inverse of :func:`psi` on matrices of the embedded form."""
    c = np.asarray(c, dtype=complex)
    if c.ndim != 2 or c.shape[0] % 2 or c.shape[1] % 2:
        raise ValidationError(f"not a psi image: shape {c.shape}")
    r, s = c.shape[0] // 2, c.shape[1] // 2
    return QMatrix(c[:r, :s], c[r:, :s])


def _j_conj(z: np.ndarray) -> np.ndarray:
    """The antilinear companion map ``z -> J conj(z)``; commutes with
    every psi image and squares to ``-I``."""
    half = z.shape[0] // 2
    return np.concatenate([-np.conj(z[half:]), np.conj(z[:half])])


def _vec_from_complex(z: np.ndarray) -> QMatrix:
    half = z.shape[0] // 2
    return QMatrix(z[:half].reshape(-1, 1), z[half:].reshape(-1, 1))


def _require_square(m: QMatrix) -> int:
    if m.rows != m.cols:
        raise ValidationError(f"expected a square matrix, got {m.shape}")
    return m.rows


def complex_eigen(c):
    """Eigenpairs of a complex matrix in a deterministic order.

    Returns a list of ``(eigenvalue, unit eigenvector)`` sorted by
    descending ``|lam|`` and, on ties, ascending argument in
    ``[0, 2*pi)``.
    """
    c = np.asarray(c, dtype=complex)
    values, vectors = _schur.eig(c)
    order = sorted(range(len(values)), key=lambda r: _eig_sort_key(values[r]))
    return [(complex(values[r]), vectors[:, r].copy()) for r in order]


def _eig_sort_key(lam: complex):
    arg = float(np.angle(lam))
    if arg < 0.0:
        arg += 2.0 * np.pi
    return (-abs(lam), arg)


def right_eigenvalues(m: QMatrix, tol: float = CLASS_TOL):
    """Right spectrum of ``M`` as conjugacy classes with multiplicities.

    Returns ``[(ConjugacyClass, multiplicity)]`` sorted by the real then
    imaginary part of the class representative.  Multiplicities sum to
    the matrix dimension: each class soaks up an even number of
    eigenvalues of ``psi(M)`` and counts half of them.
    """
    n = _require_square(m)
    values = _schur.eigvals(psi(m))
    scale = max(1.0, float(np.max(np.abs(values))) if len(values) else 1.0)
    groups: list[list[complex]] = []
    for lam in values:
        key = complex(lam.real, abs(lam.imag))
        placed = False
        for group in groups:
            anchor = group[0]
            if (
                abs(anchor.real - key.real) <= tol * scale
                and abs(abs(anchor) - abs(key)) <= tol * scale
            ):
                group.append(key)
                placed = True
                break
        if not placed:
            groups.append([key])
    out = []
    total = 0
    for group in groups:
        if len(group) % 2:
            raise NumericalError(
                "conjugate pairing failed: a class received an odd number "
                f"of psi eigenvalues near {group[0]:.6g}"
            )
        rep = complex(
            float(np.mean([g.real for g in group])),
            float(np.mean([g.imag for g in group])),
        )
        mult = len(group) // 2
        total += mult
        out.append((ConjugacyClass(rep), mult))
    if total != n:
        raise NumericalError(
            f"class multiplicities sum to {total}, expected {n}"
        )
    out.sort(key=lambda item: (item[0].rep.real, item[0].rep.imag))
    return out


def right_eigenvector(m: QMatrix, lam: complex, atol: float = 1e-7) -> QMatrix:
    """One unit right eigenvector ``v`` with ``M v = v * lam``.

    ``lam`` must sit within ``atol`` of the spectrum of ``psi(M)``.  The
    companion ``v * j`` is then an eigenvector for ``conj(lam)``; callers
    wanting it multiply by ``Quaternion(0, 0, 1, 0)`` on the right.
    """
    _require_square(m)
    lam = complex(lam)
    c = psi(m)
    values, vectors = _schur.eig(c)
    dists = np.abs(values - lam)
    idx = int(np.argmin(dists))
    if dists[idx] > atol * max(1.0, abs(lam)):
        nearest = values[idx]
        raise ValidationError(
            f"{lam:.6g} is not an eigenvalue of psi(M); nearest is "
            f"{nearest:.6g} at distance {dists[idx]:.3g}"
        )
    z = vectors[:, idx]
    cnorm = float(np.linalg.norm(c, 2))
    residual = float(np.linalg.norm(c @ z - values[idx] * z))
    if residual > EIG_TOL * max(1.0, cnorm):
        raise NumericalError(
            f"eigenpair residual {residual:.3g} exceeds target "
            f"{EIG_TOL * max(1.0, cnorm):.3g}"
        )
    return _vec_from_complex(z)


def _nullspace(c: np.ndarray, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal nullspace basis (columns) of a complex matrix."""
    u, s, vh = np.linalg.svd(c)
    if s.size == 0 or s[0] == 0.0:
        rank = 0
    else:
        rank = int(np.sum(s > rank_tol * s[0]))
    return vh[rank:, :].conj().T


def _pair_j_invariant(basis: np.ndarray) -> list[np.ndarray]:
    """Halve a j-invariant complex subspace into quaternionic generators.

    ``basis`` holds orthonormal columns of a subspace closed under
    ``z -> J conj(z)``.  Greedily pick a vector, project out the plane it
    spans with its companion, and repeat; each pick corresponds to one
    quaternionic basis vector.
    """
    picks: list[np.ndarray] = []
    work = basis
    while work.shape[1] > 0:
        z = work[:, 0]
        z = z / np.linalg.norm(z)
        zj = _j_conj(z)
        # z and J conj(z) are orthogonal by construction; re-orthonormalize
        # against rounding before deflating.
        zj = zj - (np.conj(z) @ zj) * z
        zj = zj / np.linalg.norm(zj)
        picks.append(z)
        if work.shape[1] == 1:
            break
        proj = work - np.outer(z, np.conj(z) @ work) - np.outer(zj, np.conj(zj) @ work)
        u, s, _ = np.linalg.svd(proj, full_matrices=False)
        work = u[:, s > 0.5]
    return picks


def right_eigenbasis(m: QMatrix, lam: complex, rank_tol: float = RANK_TOL):
    """All H-linearly-independent right eigenvectors for the class of ``lam``.

    For a non-real ``lam`` every complex basis vector of the
    ``psi``-eigenspace yields one quaternionic eigenvector.  For a real
    ``lam`` the eigenspace is invariant under the antilinear companion
    map and is halved by pairing before conversion.
    """
    _require_square(m)
    lam = complex(lam)
    c = psi(m)
    ns = _nullspace(c - lam * np.eye(c.shape[0]), rank_tol)
    if ns.shape[1] == 0:
        raise ValidationError(
            f"{lam:.6g} is not an eigenvalue of psi(M) at rank tolerance"
        )
    scale = max(1.0, float(np.linalg.norm(c, 2)))
    if abs(lam.imag) > CLASS_TOL * scale:
        return [_vec_from_complex(ns[:, r]) for r in range(ns.shape[1])]
    if ns.shape[1] % 2:
        raise NumericalError(
            "eigenspace of a real eigenvalue has odd complex dimension"
        )
    return [_vec_from_complex(z) for z in _pair_j_invariant(ns)]


def h_linear_independent(vectors, rank_tol: float = RANK_TOL) -> bool:
    """Right H-linear independence test for quaternionic column vectors.

    Accepts a sequence of n x 1 QMatrix columns (or one n x k QMatrix)
    and checks that ``psi`` of the stacked matrix has full column rank;
    singular values below ``rank_tol * sigma_max`` count as zero.
    """
    if isinstance(vectors, QMatrix):
        stacked = vectors
    else:
        vectors = list(vectors)
        if not vectors:
            raise ValidationError("need at least one vector")
        length = vectors[0].rows
        for v in vectors:
            if v.cols != 1 or v.rows != length:
                raise ValidationError(
                    "expected column vectors of a common length"
                )
        stacked = QMatrix(
            np.hstack([v.a for v in vectors]),
            np.hstack([v.b for v in vectors]),
        )
    s = np.linalg.svd(psi(stacked), compute_uv=False)
    if s[0] == 0.0:
        return False
    rank = int(np.sum(s > rank_tol * s[0]))
    return rank == 2 * stacked.cols


def is_unitary(m: QMatrix, tol: float = 1e-10) -> bool:
    """Whether ``M* M = I`` entrywise within ``tol``.

    One side suffices: quaternionic matrices embed injectively into
    square complex matrices, where a one-sided inverse is two-sided.
    """
    n = _require_square(m)
    return (m.H @ m - QMatrix.eye(n)).max_entry_norm() <= tol


@dataclass(frozen=True)
class PolyFactor:
    """An irreducible real factor of degree 1 or 2 with its exponent.

    ``coefficients`` are monic and descending: ``(1.0, c0)`` encodes
    ``y + c0``; ``(1.0, c1, c0)`` encodes ``y^2 + c1*y + c0``.  ``root``
    is the canonical root with nonnegative imaginary part.
    """

    coefficients: tuple[float, ...]
    exponent: int
    root: complex

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate_matrix(self, m: QMatrix) -> QMatrix:
        """The factor (without exponent) evaluated at a square QMatrix."""
        n = _require_square(m)
        eye = QMatrix.eye(n)
        if self.degree == 1:
            return m + eye.scale(self.coefficients[1])
        return (
            m @ m
            + m.scale(self.coefficients[1])
            + eye.scale(self.coefficients[2])
        )


@dataclass(frozen=True)
class MinimalPolynomial:
    """Monic real minimal polynomial as powers of irreducible factors.

    Factors are sorted by ascending real part of the root, then by root
    magnitude.  Real coefficients are forced by conjugation-closure of
    the psi spectrum; uniqueness follows from monic minimality.
    """

    factors: tuple[PolyFactor, ...]
    warnings: tuple[str, ...] = ()

    @property
    def degree(self) -> int:
        return sum(f.degree * f.exponent for f in self.factors)

    def coefficients(self) -> tuple[float, ...]:
        """Full expanded coefficients, monic and descending."""
        poly = np.array([1.0])
        for f in self.factors:
            for _ in range(f.exponent):
                poly = np.polymul(poly, np.array(f.coefficients))
        return tuple(float(c) for c in poly)

    def evaluate_matrix(self, m: QMatrix) -> QMatrix:
        out = QMatrix.eye(_require_square(m))
        for f in self.factors:
            out = out @ f.evaluate_matrix(m).power(f.exponent)
        return out


def _cluster_values(values: np.ndarray, threshold: float):
    """Single-linkage clustering of complex values at ``threshold``."""
    n = len(values)
    parent = list(range(n))

    def find(r):
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    for r in range(n):
        for s in range(r + 1, n):
            if abs(values[r] - values[s]) <= threshold:
                parent[find(r)] = find(s)
    groups: dict[int, list[int]] = {}
    for r in range(n):
        groups.setdefault(find(r), []).append(r)
    return [np.array([values[i] for i in idx]) for idx in groups.values()]


def minimal_polynomial(
    m: QMatrix,
    cluster_tol: float = CLUSTER_TOL,
    rank_tol: float = RANK_TOL,
) -> MinimalPolynomial:
    """Minimal polynomial of a square quaternionic matrix.

    Eigenvalues of ``psi(M)`` are clustered at ``cluster_tol`` (relative
    to the spectral radius, floored at 1) into candidate roots; factor
    exponents come from nullity stabilization of factor powers.  When
    two clusters pass within three times the merge threshold a warning
    is emitted and recorded on the result, since the factorization is
    then sensitive to the tolerance choice.
    """
    n = _require_square(m)
    values = _schur.eigvals(psi(m))
    scale = max(1.0, float(np.max(np.abs(values))))
    threshold = cluster_tol * scale
    clusters = _cluster_values(values, threshold)

    notes: list[str] = []
    min_gap = np.inf
    for r in range(len(clusters)):
        for s in range(r + 1, len(clusters)):
            gap = np.min(
                np.abs(clusters[r][:, None] - clusters[s][None, :])
            )
            min_gap = min(min_gap, float(gap))
    if min_gap < 3.0 * threshold:
        message = (
            f"eigenvalue clusters separated by {min_gap:.3g}, close to the "
            f"merge threshold {threshold:.3g}; factorization may be "
            "tolerance-sensitive"
        )
        warnings.warn(message)
        notes.append(message)

    # Conjugation-closed bookkeeping: process upper-half-plane clusters,
    # consume their mirror clusters, emit degree-1 or degree-2 factors.
    centers = [complex(np.mean(c)) for c in clusters]
    consumed = [False] * len(clusters)
    raw_factors: list[tuple[tuple[float, ...], complex]] = []
    for idx, center in enumerate(centers):
        if consumed[idx]:
            continue
        if abs(center.imag) <= threshold:
            consumed[idx] = True
            root = complex(center.real, 0.0)
            raw_factors.append(((1.0, -root.real), root))
            continue
        if center.imag < 0.0:
            continue
        mirror = None
        for jdx, other in enumerate(centers):
            if jdx == idx or consumed[jdx] or other.imag > 0:
                continue
            if abs(np.conj(other) - center) <= 10.0 * threshold:
                mirror = jdx
                break
        if mirror is None:
            raise NumericalError(
                f"no conjugate partner for eigenvalue cluster at {center:.6g}"
            )
        consumed[idx] = True
        consumed[mirror] = True
        root = complex(
            0.5 * (center.real + centers[mirror].real),
            0.5 * (center.imag - centers[mirror].imag),
        )
        raw_factors.append(
            ((1.0, -2.0 * root.real, abs(root) ** 2), root)
        )
    for idx, done in enumerate(consumed):
        if not done:
            raise NumericalError(
                f"unpaired lower-half-plane cluster at {centers[idx]:.6g}"
            )

    raw_factors.sort(key=lambda item: (item[1].real, abs(item[1])))

    factors = []
    for coeffs, root in raw_factors:
        base = PolyFactor(coeffs, 1, root)
        block = base.evaluate_matrix(m)
        power = block
        nullity = _nullspace(psi(power), rank_tol).shape[1]
        exponent = 1
        while True:
            nxt = power @ block
            nullity_next = _nullspace(psi(nxt), rank_tol).shape[1]
            if nullity_next == nullity:
                break
            exponent += 1
            if exponent > n:
                raise NumericalError(
                    "factor exponent search exceeded the matrix dimension"
                )
            power = nxt
            nullity = nullity_next
        factors.append(PolyFactor(coeffs, exponent, root))

    result = MinimalPolynomial(tuple(factors), tuple(notes))
    mnorm = float(np.linalg.norm(psi(m), 2))
    bound = MP_TOL * max(1.0, mnorm) ** result.degree
    residual = result.evaluate_matrix(m).max_entry_norm()
    if residual > bound:
        raise NumericalError(
            f"minimal polynomial fails to annihilate: residual {residual:.3g} "
            f"exceeds {bound:.3g}"
        )
    return result


@dataclass(frozen=True)
class RootSubspace:
    """Kernel of one minimal-polynomial factor power, as a right H-span."""

    factor: PolyFactor
    basis: tuple[QMatrix, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def root_subspaces(
    m: QMatrix,
    cluster_tol: float = CLUSTER_TOL,
    rank_tol: float = RANK_TOL,
) -> list[RootSubspace]:
    """Root subspace decomposition along the minimal polynomial.

    Each subspace is ``ker p_s(M)^{m_s}``; their dimensions sum to the
    full dimension and the union of the returned bases is H-linearly
    independent.  Kernels of real-coefficient polynomials in ``M`` are
    invariant under the antilinear companion map, so the complex kernel
    of the psi image is halved by pairing.
    """
    n = _require_square(m)
    mp = minimal_polynomial(m, cluster_tol, rank_tol)
    out: list[RootSubspace] = []
    for factor in mp.factors:
        power = factor.evaluate_matrix(m).power(factor.exponent)
        ns = _nullspace(psi(power), rank_tol)
        if ns.shape[1] % 2:
            raise NumericalError(
                "root subspace has odd complex dimension; rank tolerance "
                "is ambiguous here"
            )
        basis = tuple(_vec_from_complex(z) for z in _pair_j_invariant(ns))
        out.append(RootSubspace(factor, basis))
    total = sum(s.dimension for s in out)
    if total != n:
        raise NumericalError(
            f"root subspace dimensions sum to {total}, expected {n}"
        )
    combined = [v for s in out for v in s.basis]
    if not h_linear_independent(combined, rank_tol):
        raise NumericalError("combined root subspace bases are dependent")
    return out
