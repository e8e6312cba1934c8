"""Graph zeta determinant identities, machine-checked at sample points.

Three families of identities relate arc-level determinants to
vertex-level ones:

* Ihara/Bass (loopless, connected): with ``B[e,f] = [t(e) = o(f)]``,

      det(I - t(B - J0)) = (1 - t^2)^(m - n) det(I - tA + t^2 (D - I)).

* Second weighted (loopless, connected): with a complex weight matrix
  ``W`` supported on arcs and ``Bw[e,f] = w(f) [t(e) = o(f)]``,

      det(I - t(Bw - J0))
          = (1 - t^2)^(m - n) det(I - tW + t^2 (Dw - I)),

  together with the transposed variant (Bw^T and W^T, same Dw).

* Quaternionic (loops allowed): for arbitrary arc maps ``a, b`` with
  ``K, L`` the incidence weight matrices, ``W = L* K``, ``D = L* J0 K``,

      det(I - t psi(K L* - J0))
          = (1 - t^2)^(2 m0 - 2 n) (1 + t)^(2 m1)
            det(I - t psi(W) + t^2 (psi(D) - I)).

Tree-shaped graphs make the prefactor exponent negative; the check then
cross-multiplies the factor to the arc side instead of dividing, so both
sides stay polynomial.  The underlying cancellation lemma

    det(alpha I_m - A B) alpha^n = alpha^m det(alpha I_n - B A)

is exposed as its own check.  Default samples are eight uniform points
on the circle ``|t| = 1/4`` plus ``t = 0``; an opt-in mode interpolates
both sides as polynomials in ``t`` and compares coefficients.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .graph import Graph
from .qmatrix import QMatrix, psi
from .quaternion import as_quaternion
from .szegedy import build_kl

__all__ = [
    "EdgeMatrices",
    "IdentityCheck",
    "build_edge_matrices",
    "default_samples",
    "ihara_identity",
    "quaternionic_identity",
    "second_weighted_identity",
    "sylvester_det_property",
]

#: Relative error allowed at each sample point.
IDENTITY_TOL = 1e-8
#: Tolerance for the determinant cancellation lemma.
SYLVESTER_TOL = 1e-10
#: Tolerance for interpolated polynomial coefficients (opt-in mode).
POLY_TOL = 1e-7

DEFAULT_SAMPLE_COUNT = 8
DEFAULT_SAMPLE_RADIUS = 0.25


def default_samples(
    count: int = DEFAULT_SAMPLE_COUNT,
    radius: float = DEFAULT_SAMPLE_RADIUS,
) -> list[complex]:
    """Uniform points on ``|t| = radius`` plus the origin."""
    if count < 1:
        raise ValidationError("need at least one sample point")
    points = [
        radius * cmath.exp(2j * cmath.pi * k / count) for k in range(count)
    ]
    points.append(0j)
    return points


@dataclass(frozen=True)
class EdgeMatrices:
    """Arc-indexed matrices of a graph: adjacency-with-weights and J0."""

    b: np.ndarray
    bw: np.ndarray | None
    j0: np.ndarray

    @property
    def size(self) -> int:
        return self.b.shape[0]


def build_edge_matrices(graph: Graph, w=None) -> EdgeMatrices:
    """Arc matrices ``B`` (and ``Bw`` when ``w`` is given) plus ``J0``.

    ``B[e, f] = 1`` when ``t(e) = o(f)``; ``Bw`` scales column ``f`` by
    the arc weight ``w(f)`` drawn from a vertex-pair matrix.
    """
    m = graph.m_prime
    b = np.zeros((m, m), dtype=complex)
    bw = np.zeros((m, m), dtype=complex) if w is not None else None
    for e in graph.arcs:
        for f in graph.arcs:
            if e.terminus != f.origin:
                continue
            b[e.index, f.index] = 1.0
            if bw is not None:
                bw[e.index, f.index] = w[f.origin, f.terminus]
    return EdgeMatrices(b=b, bw=bw, j0=graph.j0_matrix())


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of comparing two determinant expressions at samples."""

    name: str
    samples: tuple[complex, ...]
    lhs: tuple[complex, ...]
    rhs: tuple[complex, ...]
    max_rel_error: float
    passed: bool
    variants: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "max_rel_error": self.max_rel_error,
            "samples": [[t.real, t.imag] for t in self.samples],
            "lhs": [[z.real, z.imag] for z in self.lhs],
            "rhs": [[z.real, z.imag] for z in self.rhs],
            "variants": dict(self.variants),
        }


def _rel_error(lhs: complex, rhs: complex) -> float:
    # Relative on the scale of the larger side, floored at 1 so that
    # near-zero values are compared absolutely.
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1.0)


def _check_samples(samples) -> list[complex]:
    out = [complex(t) for t in samples]
    for t in out:
        if min(abs(t - 1.0), abs(t + 1.0)) < 1e-9:
            raise ValidationError(
                f"sample t = {t:.6g} sits on the prefactor zeros at +-1"
            )
    return out


def _compare(name, samples, sides, tol) -> IdentityCheck:
    """Evaluate ``{variant: (lhs_fn, rhs_fn)}`` at samples and compare."""
    samples = _check_samples(samples)
    variants: dict[str, float] = {}
    first_lhs: list[complex] = []
    first_rhs: list[complex] = []
    worst = 0.0
    for idx, (label, (lhs_fn, rhs_fn)) in enumerate(sides.items()):
        errs = []
        for t in samples:
            lhs = complex(lhs_fn(t))
            rhs = complex(rhs_fn(t))
            if idx == 0:
                first_lhs.append(lhs)
                first_rhs.append(rhs)
            errs.append(_rel_error(lhs, rhs))
        variants[label] = max(errs)
        worst = max(worst, variants[label])
    return IdentityCheck(
        name=name,
        samples=tuple(samples),
        lhs=tuple(first_lhs),
        rhs=tuple(first_rhs),
        max_rel_error=worst,
        passed=worst <= tol,
        variants=variants,
    )


def _poly_coeff_error(lhs_fn, rhs_fn, degree: int) -> float:
    """Interpolate both sides on roots of unity and compare coefficients.

    Both callables must already be polynomial (prefactors cross-
    multiplied), so sampling on ``|t| = 1`` is stable and the inverse
    FFT recovers coefficients without radius amplification.
    """
    count = degree + 1
    points = np.exp(2j * np.pi * np.arange(count) / count)
    lhs = np.fft.ifft(np.array([lhs_fn(t) for t in points]))
    rhs = np.fft.ifft(np.array([rhs_fn(t) for t in points]))
    scale = max(1.0, float(np.max(np.abs(lhs))), float(np.max(np.abs(rhs))))
    return float(np.max(np.abs(lhs - rhs))) / scale


def _splitfactor(exponent: int):
    """Return (lhs_multiplier, rhs_multiplier) for (1-t^2)**exponent.

    Negative exponents move the factor to the arc side so both sides
    stay polynomial on tree-shaped graphs.
    """
    if exponent >= 0:
        return (lambda t: 1.0), (lambda t: (1.0 - t * t) ** exponent)
    return (lambda t: (1.0 - t * t) ** (-exponent)), (lambda t: 1.0)


def _require_loopless_connected(graph: Graph, what: str):
    if graph.m1:
        raise ValidationError(f"{what} requires a loopless graph")
    if not graph.is_connected():
        raise ValidationError(f"{what} requires a connected graph")


def ihara_identity(
    graph: Graph,
    t_samples=None,
    tol: float = IDENTITY_TOL,
    polynomial: bool = False,
) -> IdentityCheck:
    """Bass determinant form of the Ihara zeta function."""
    _require_loopless_connected(graph, "the Ihara identity")
    samples = default_samples() if t_samples is None else t_samples
    em = build_edge_matrices(graph)
    n, m = graph.n, graph.m0
    adjacency = graph.adjacency()
    deg = np.diag(graph.degrees().astype(complex))
    eye_m = np.eye(em.size, dtype=complex)
    eye_n = np.eye(n, dtype=complex)
    lhs_mul, rhs_mul = _splitfactor(m - n)

    def lhs(t):
        return np.linalg.det(eye_m - t * (em.b - em.j0)) * lhs_mul(t)

    def rhs(t):
        return (
            np.linalg.det(eye_n - t * adjacency + t * t * (deg - eye_n))
            * rhs_mul(t)
        )

    check = _compare("ihara", samples, {"standard": (lhs, rhs)}, tol)
    if polynomial:
        err = _poly_coeff_error(lhs, rhs, 2 * em.size + 2 * abs(m - n) + 2)
        check.variants["polynomial"] = err
        check = IdentityCheck(
            check.name, check.samples, check.lhs, check.rhs,
            max(check.max_rel_error, err),
            check.passed and err <= POLY_TOL,
            check.variants,
        )
    return check


def _validate_weight_matrix(graph: Graph, w) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    if w.shape != (graph.n, graph.n):
        raise ValidationError(
            f"weight matrix must be {graph.n} x {graph.n}, got {w.shape}"
        )
    off = ~graph.arc_mask() & (w != 0)
    if np.any(off):
        u, v = np.argwhere(off)[0]
        raise ValidationError(
            f"weight matrix is nonzero at non-arc position ({u},{v})"
        )
    return w


def second_weighted_identity(
    graph: Graph,
    w,
    t_samples=None,
    tol: float = IDENTITY_TOL,
    polynomial: bool = False,
) -> IdentityCheck:
    """Second weighted zeta identity, plus its transposed variant.

    ``w`` is a complex vertex-pair matrix supported on arcs (zero
    entries on arcs are fine).  With all-ones weights this reduces to
    the Ihara identity.
    """
    _require_loopless_connected(graph, "the second weighted identity")
    w = _validate_weight_matrix(graph, w)
    samples = default_samples() if t_samples is None else t_samples
    em = build_edge_matrices(graph, w)
    n, m = graph.n, graph.m0
    dw = np.diag(np.sum(w, axis=1))
    eye_m = np.eye(em.size, dtype=complex)
    eye_n = np.eye(n, dtype=complex)
    lhs_mul, rhs_mul = _splitfactor(m - n)

    def make_sides(arc_mat, vert_mat):
        def lhs(t):
            return np.linalg.det(eye_m - t * (arc_mat - em.j0)) * lhs_mul(t)

        def rhs(t):
            return (
                np.linalg.det(eye_n - t * vert_mat + t * t * (dw - eye_n))
                * rhs_mul(t)
            )

        return lhs, rhs

    sides = {
        "standard": make_sides(em.bw, w),
        "transposed": make_sides(em.bw.T, w.T),
    }
    check = _compare("second-weighted", samples, sides, tol)
    if polynomial:
        lhs, rhs = sides["standard"]
        err = _poly_coeff_error(lhs, rhs, 2 * em.size + 2 * abs(m - n) + 2)
        check.variants["polynomial"] = err
        check = IdentityCheck(
            check.name, check.samples, check.lhs, check.rhs,
            max(check.max_rel_error, err),
            check.passed and err <= POLY_TOL,
            check.variants,
        )
    return check


def quaternionic_identity(
    graph: Graph,
    a,
    b,
    t_samples=None,
    tol: float = IDENTITY_TOL,
    polynomial: bool = False,
) -> IdentityCheck:
    """Quaternionic determinant identity over the complex embedding.

    ``a`` and ``b`` are arbitrary quaternionic arc maps, given either
    aligned with the canonical arc order or as ``{(u, v): value}``
    mappings; no unitarity is assumed.  Loops are allowed and feed the
    ``(1 + t)^(2 m1)`` prefactor.
    """
    a = _arc_map(graph, a, "a")
    b = _arc_map(graph, b, "b")
    samples = default_samples() if t_samples is None else t_samples
    K, L = build_kl(graph, a, b)
    j0q = QMatrix.from_real(graph.j0_matrix().real)
    u_edge = psi(K @ L.H - j0q)
    w_base = psi(L.H @ K)
    d_base = psi(L.H @ j0q @ K)
    two_m, two_n = u_edge.shape[0], w_base.shape[0]
    eye_m = np.eye(two_m, dtype=complex)
    eye_n = np.eye(two_n, dtype=complex)
    exponent = 2 * graph.m0 - 2 * graph.n
    lhs_mul, rhs_mul = _splitfactor(exponent)

    def lhs(t):
        return np.linalg.det(eye_m - t * u_edge) * lhs_mul(t)

    def rhs(t):
        return (
            (1.0 + t) ** (2 * graph.m1)
            * np.linalg.det(eye_n - t * w_base + t * t * (d_base - eye_n))
            * rhs_mul(t)
        )

    check = _compare("quaternionic", samples, {"standard": (lhs, rhs)}, tol)
    if polynomial:
        err = _poly_coeff_error(
            lhs, rhs, two_m + two_n + 2 * abs(exponent) + 2 * graph.m1 + 2
        )
        check.variants["polynomial"] = err
        check = IdentityCheck(
            check.name, check.samples, check.lhs, check.rhs,
            max(check.max_rel_error, err),
            check.passed and err <= POLY_TOL,
            check.variants,
        )
    return check


def _arc_map(graph: Graph, values, what: str):
    """Normalize an arc map to a list aligned with the arc order."""
    if isinstance(values, dict):
        wm_keys = {(int(u), int(v)): as_quaternion(q) for (u, v), q in values.items()}
        arc_keys = {arc.key for arc in graph.arcs}
        if set(wm_keys) != arc_keys:
            raise ValidationError(
                f"arc map {what!r} keys do not match the arc set"
            )
        return [wm_keys[arc.key] for arc in graph.arcs]
    values = [as_quaternion(v) for v in values]
    if len(values) != graph.m_prime:
        raise ValidationError(
            f"arc map {what!r} has {len(values)} entries, "
            f"expected {graph.m_prime}"
        )
    return values


def sylvester_det_property(
    a, b, alpha: complex, tol: float = SYLVESTER_TOL
) -> IdentityCheck:
    """Determinant cancellation ``det(aI - AB) a^n = a^m det(aI - BA)``.

    ``a`` is ``m x n`` and ``b`` is ``n x m``; holds for every complex
    ``alpha``, including 0.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or b.ndim != 2 or a.shape != b.shape[::-1]:
        raise ValidationError(
            f"need A (m x n) and B (n x m); got {a.shape} and {b.shape}"
        )
    m, n = a.shape
    alpha = complex(alpha)
    lhs = np.linalg.det(alpha * np.eye(m) - a @ b) * alpha**n
    rhs = alpha**m * np.linalg.det(alpha * np.eye(n) - b @ a)
    err = _rel_error(lhs, rhs)
    return IdentityCheck(
        name="sylvester",
        samples=(alpha,),
        lhs=(complex(lhs),),
        rhs=(complex(rhs),),
        max_rel_error=err,
        passed=err <= tol,
    )
