from __future__ import annotations

import math

import numpy as np
import pytest

from qszegedy.errors import NumericalError, ValidationError
from qszegedy.qmatrix import (
    QMatrix,
    from_psi,
    h_linear_independent,
    is_unitary,
    minimal_polynomial,
    psi,
    qvec,
    right_eigenbasis,
    right_eigenvalues,
    right_eigenvector,
    root_subspaces,
)
from qszegedy.quaternion import I, J, K, ONE, Quaternion

SQ2 = math.sqrt(2.0)


def _random_qmatrix(rows: int, cols: int, seed: int) -> QMatrix:
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    b = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    return QMatrix(a, b)


def test_entry_roundtrip_and_shapes():
    m = QMatrix.from_rows([[ONE, I], [J, K]])
    assert m.shape == (2, 2)
    assert m.entry(0, 1) == I
    assert m.entry(1, 0) == J
    assert m.to_rows() == [[ONE, I], [J, K]]
    with pytest.raises(ValidationError):
        QMatrix.from_rows([[ONE], [I, J]])


def test_psi_golden_diag_1_k():
    m = QMatrix.diag([ONE, K])
    # A = diag(1, 0), B = diag(0, -i); psi = [[A, -conj(B)], [B, conj(A)]].
    want = np.array(
        [
            [1, 0, 0, 0],
            [0, 0, 0, -1j],
            [0, 0, 1, 0],
            [0, -1j, 0, 0],
        ],
        dtype=complex,
    )
    assert np.allclose(psi(m), want, atol=0.0)
    # Characteristic polynomial of psi is (x - 1)^2 (x^2 + 1).
    coeffs = np.poly(psi(m))
    want_coeffs = np.polymul([1, -1], np.polymul([1, -1], [1, 0, 1]))
    assert np.allclose(coeffs, want_coeffs, atol=1e-12)


def test_psi_multiplicative_and_additive():
    for seed in range(5):
        m = _random_qmatrix(4, 3, seed)
        n = _random_qmatrix(3, 5, 100 + seed)
        lhs = psi(m @ n)
        rhs = psi(m) @ psi(n)
        scale = max(1.0, np.abs(rhs).max())
        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale
        m2 = _random_qmatrix(4, 3, 200 + seed)
        assert np.allclose(psi(m + m2), psi(m) + psi(m2), atol=0.0)


def test_psi_conj_transpose_exact():
    m = _random_qmatrix(5, 3, 7)
    assert np.array_equal(psi(m.conj_transpose()), psi(m).conj().T)


def test_from_psi_roundtrip():
    m = _random_qmatrix(4, 4, 11)
    back = from_psi(psi(m))
    assert np.array_equal(back.a, m.a)
    assert np.array_equal(back.b, m.b)


def test_right_scalar_vs_matrix_product():
    v = qvec([Quaternion(1, 2, 3, 4), Quaternion(0, -1, 0.5, 2)])
    s = Quaternion(0.3, -1.2, 0.7, 0.1)
    direct = v.right_scalar(s)
    via_diag = v @ QMatrix.diag([s])
    assert (direct - via_diag).max_entry_norm() <= 1e-14


def test_right_eigenvalues_diag_1_k():
    classes = right_eigenvalues(QMatrix.diag([ONE, K]))
    assert len(classes) == 2
    (c1, m1), (c2, m2) = classes
    assert abs(c1.rep - 1j) <= 1e-9 and m1 == 1
    assert abs(c2.rep - 1.0) <= 1e-9 and m2 == 1


def test_right_eigenvalues_offdiag_ij():
    classes = right_eigenvalues(
        QMatrix.from_rows([[Quaternion(), I], [J, Quaternion()]])
    )
    want = [complex(-1, 1) / SQ2, complex(1, 1) / SQ2]
    assert len(classes) == 2
    for (cls, mult), target in zip(classes, want):
        assert abs(cls.rep - target) <= 1e-9
        assert mult == 1


def test_right_eigenvalue_multiplicities_sum():
    for seed in range(3):
        m = _random_qmatrix(4, 4, 300 + seed)
        classes = right_eigenvalues(m)
        assert sum(mult for _cls, mult in classes) == 4


def test_right_eigenvector_golden():
    m = QMatrix.diag([ONE, K])
    v = right_eigenvector(m, 1j)
    golden = qvec([Quaternion(), Quaternion(1, 0, -1, 0)])
    assert not h_linear_independent([v, golden])
    residual = (m @ v - v.right_scalar(1j)).max_entry_norm()
    assert residual <= 1e-10


def test_right_eigenvector_rejects_non_eigenvalue():
    with pytest.raises(ValidationError):
        right_eigenvector(QMatrix.diag([ONE, K]), complex(3.0))


def test_companion_eigenvector_for_conjugate():
    m = _random_qmatrix(3, 3, 17)
    classes = right_eigenvalues(m)
    lam = classes[0][0].rep
    v = right_eigenvector(m, lam)
    w = v.right_scalar(J)
    residual = (m @ w - w.right_scalar(lam.conjugate())).max_entry_norm()
    assert residual <= 1e-9 * max(1.0, m.max_entry_norm())


def test_h_linear_independence():
    v = qvec([ONE, J])
    assert h_linear_independent([v])
    assert not h_linear_independent([v, v.right_scalar(Quaternion(0, 1, 1, 0))])
    assert h_linear_independent([qvec([ONE, Quaternion()]), qvec([Quaternion(), J])])


def test_minimal_polynomial_diag_1_k():
    mp = minimal_polynomial(QMatrix.diag([ONE, K]))
    assert [f.exponent for f in mp.factors] == [1, 1]
    assert np.allclose(mp.factors[0].coefficients, [1, 0, 1], atol=1e-9)
    assert np.allclose(mp.factors[1].coefficients, [1, -1], atol=1e-9)
    assert mp.degree == 3
    # Full coefficients: (y^2 + 1)(y - 1) = y^3 - y^2 + y - 1.
    assert np.allclose(mp.coefficients(), [1, -1, 1, -1], atol=1e-9)
    residual = mp.evaluate_matrix(QMatrix.diag([ONE, K])).max_entry_norm()
    assert residual <= 1e-9


def test_minimal_polynomial_repeated_block():
    # diag(i, i) has minimal polynomial y^2 + 1 (degree 2, not 4).
    mp = minimal_polynomial(QMatrix.diag([I, I]))
    assert len(mp.factors) == 1
    assert mp.factors[0].exponent == 1
    assert np.allclose(mp.factors[0].coefficients, [1, 0, 1], atol=1e-9)


def test_minimal_polynomial_detects_near_clusters():
    gap = 2.5e-7  # below 3x the cluster threshold, above the merge radius
    m = QMatrix.diag([Quaternion(1.0), Quaternion(1.0 + gap)])
    with pytest.warns(UserWarning, match="cluster"):
        mp = minimal_polynomial(m, cluster_tol=1e-7)
    assert mp.warnings
    assert "cluster" in mp.warnings[0]


def test_root_subspaces_diag_1_k():
    m = QMatrix.diag([ONE, K])
    subspaces = root_subspaces(m)
    assert [s.dimension for s in subspaces] == [1, 1]
    assert sum(s.dimension for s in subspaces) == 2
    for s in subspaces:
        for v in s.basis:
            annihilated = s.factor.evaluate_matrix(m).power(s.factor.exponent) @ v
            assert annihilated.max_entry_norm() <= 1e-9


def test_hermitian_psi_real_spectrum():
    m = _random_qmatrix(5, 5, 23)
    herm = m + m.conj_transpose()
    values = np.linalg.eigvals(psi(herm))
    assert np.max(np.abs(values.imag)) <= 1e-10 * max(1.0, np.abs(values).max())


def test_conjugate_pair_spectrum_closure():
    m = _random_qmatrix(4, 4, 29)
    values = np.linalg.eigvals(psi(m))
    conj = np.conj(values)
    # Greedy match values against their conjugates.
    pool = conj.tolist()
    worst = 0.0
    for z in values:
        gaps = [abs(z - w) for w in pool]
        idx = int(np.argmin(gaps))
        worst = max(worst, gaps[idx])
        pool.pop(idx)
    assert worst <= 1e-9


def test_is_unitary():
    phase = complex(math.cos(0.3), math.sin(0.3))
    m = QMatrix.diag([Quaternion(phase.real, phase.imag), J])
    assert is_unitary(m)
    assert not is_unitary(QMatrix.diag([Quaternion(2.0), J]))


def test_power():
    m = QMatrix.from_rows([[ONE, I], [J, K]])
    assert (m.power(3) - m @ m @ m).max_entry_norm() <= 1e-13
    assert (m.power(0) - QMatrix.eye(2)).max_entry_norm() == 0.0
