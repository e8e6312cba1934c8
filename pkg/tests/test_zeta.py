from __future__ import annotations

import math

import numpy as np
import pytest

from qszegedy.errors import ValidationError
from qszegedy.graph import build_graph
from qszegedy.instances import load_bundled
from qszegedy.quaternion import Quaternion
from qszegedy.szegedy import build_walk
from qszegedy.zeta import (
    build_edge_matrices,
    default_samples,
    ihara_identity,
    quaternionic_identity,
    second_weighted_identity,
    sylvester_det_property,
)

SQ2 = math.sqrt(2.0)


def _k3():
    return build_graph(3, [(0, 1), (1, 2), (2, 0)])


def test_default_samples_layout():
    samples = default_samples(4)
    assert len(samples) == 5
    assert samples[-1] == 0j
    assert all(abs(abs(t) - 0.25) <= 1e-15 for t in samples[:-1])
    with pytest.raises(ValidationError):
        default_samples(0)


def test_samples_near_prefactor_zeros_rejected():
    with pytest.raises(ValidationError, match="prefactor zeros"):
        ihara_identity(_k3(), t_samples=[0.5, 1.0])


def test_edge_matrix_excludes_nothing_but_nonadjacent():
    g = _k3()
    em = build_edge_matrices(g)
    # B counts tail-to-head incidences including backtracking.
    assert em.b[0, 2] == 1.0  # (0,1) then (1,2)
    assert em.b[0, 1] == 1.0  # (0,1) then (1,0): backtracking included
    assert em.b[0, 4] == 0.0  # (0,1) then (2,0): not incident
    assert np.array_equal(em.j0, g.j0_matrix())


def test_ihara_triangle_frozen_value():
    # Adjacency spectrum of the triangle is {2, -1, -1}, so both sides
    # equal (1-t)^2 (1+t+t^2)^2 = 49/64 at t = 1/2.
    check = ihara_identity(_k3(), t_samples=[0.5])
    assert check.passed
    assert abs(check.lhs[0] - 49.0 / 64.0) <= 1e-12
    assert abs(check.rhs[0] - 49.0 / 64.0) <= 1e-12


def test_ihara_square_cycle_frozen_value():
    # C4 spectrum {2, 0, 0, -2}: product is (1-t)^2 (1+t)^2 (1+t^2)^2.
    g = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    check = ihara_identity(g, t_samples=[0.5])
    assert check.passed
    assert abs(check.lhs[0] - 225.0 / 256.0) <= 1e-12


def test_ihara_tree_cross_multiplied():
    # Single edge: the arc side is constant 1 and m - n = -1 moves the
    # (1 - t^2) factor onto the arc side; both sides become 1 - t^2.
    g = build_graph(2, [(0, 1)])
    check = ihara_identity(g, t_samples=[0.3])
    assert check.passed
    assert abs(check.lhs[0] - 0.91) <= 1e-12
    assert abs(check.rhs[0] - 0.91) <= 1e-12


def test_ihara_rejects_loops_and_disconnection():
    with pytest.raises(ValidationError, match="loopless"):
        ihara_identity(load_bundled("k3_loops").graph)
    with pytest.raises(ValidationError, match="connected"):
        ihara_identity(build_graph(4, [(0, 1), (2, 3)]))


def test_ihara_polynomial_mode():
    check = ihara_identity(_k3(), polynomial=True)
    assert check.passed
    assert check.variants["polynomial"] <= 1e-10


def test_second_weighted_reduces_to_ihara():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    samples = [0.3, 0.2 + 0.1j, 0j]
    base = ihara_identity(g, t_samples=samples)
    reduced = second_weighted_identity(g, g.adjacency(), t_samples=samples)
    assert reduced.passed
    assert "transposed" in reduced.variants
    for lhs, rhs in zip(base.lhs, reduced.lhs):
        assert abs(lhs - rhs) <= 1e-12


def test_second_weighted_random_weights():
    rng = np.random.default_rng(5)
    for g in (_k3(), build_graph(3, [(0, 1), (1, 2)])):
        w = np.where(
            g.arc_mask(),
            rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)),
            0.0,
        )
        check = second_weighted_identity(g, w, polynomial=True)
        assert check.passed, check.variants
        assert check.max_rel_error <= 1e-8


def test_second_weighted_rejects_off_arc_support():
    g = build_graph(3, [(0, 1), (1, 2)])
    w = np.ones((3, 3), dtype=complex)  # (0,2) is not an arc
    with pytest.raises(ValidationError, match="non-arc"):
        second_weighted_identity(g, w)
    with pytest.raises(ValidationError, match="3 x 3"):
        second_weighted_identity(g, np.ones((2, 2)))


def test_quaternionic_identity_matches_frozen_spectrum():
    # For the triangle-with-loops walk the arc-side determinant is the
    # characteristic-like product over the known psi(U) spectrum.
    inst = load_bundled("k3_loops")
    graph = inst.graph
    ops = build_walk(graph, inst.weights)
    a = [q * SQ2 for q in ops.q]
    b = [ops.q[graph.inverse_index(r)] * SQ2 for r in range(graph.m_prime)]
    samples = [0.5, 0.25]
    check = quaternionic_identity(graph, a, b, t_samples=samples)
    assert check.passed
    lam1 = complex(-1 / 3, 2 * SQ2 / 3)
    lam2 = complex(2 / 3, math.sqrt(5) / 3)
    for t, lhs in zip(check.samples, check.lhs):
        product = (
            (1 + t) ** 6
            * abs(1 - t * lam1) ** 4
            * abs(1 - t * lam2) ** 8
        )
        assert abs(lhs - product) <= 1e-10 * abs(product)


def test_quaternionic_identity_random_nonunitary():
    rng = np.random.default_rng(17)

    def draw(m):
        return [Quaternion(*rng.standard_normal(4)) for _ in range(m)]

    for maker in (
        lambda: build_graph(3, [(0, 1), (1, 2)], loops=[1]),
        lambda: build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
        _k3,
    ):
        g = maker()
        check = quaternionic_identity(
            g, draw(g.m_prime), draw(g.m_prime), polynomial=True
        )
        assert check.passed, (g.n, check.max_rel_error)


def test_quaternionic_identity_accepts_dict_maps():
    g = build_graph(2, [(0, 1)], loops=[0])
    a = {(0, 1): Quaternion(1), (1, 0): Quaternion(0, 1), (0, 0): Quaternion(0, 0, 1)}
    b = {(0, 1): Quaternion(2), (1, 0): Quaternion(0, 0, 0, 1), (0, 0): Quaternion(1, 1)}
    assert quaternionic_identity(g, a, b).passed
    with pytest.raises(ValidationError, match="entries"):
        quaternionic_identity(g, [Quaternion(1)], b)
    bad = dict(a)
    del bad[(0, 0)]
    with pytest.raises(ValidationError, match="keys"):
        quaternionic_identity(g, bad, b)


def test_sylvester_rectangular_frozen():
    a = np.array([[1.0, 2.0]])
    b = np.array([[3.0], [4.0]])
    check = sylvester_det_property(a, b, 2.0)
    assert check.passed
    # det(2 - 11) * 2^2 = -36 and 2^1 * det(2I - BA) = 2 * (-18) = -36.
    assert abs(check.lhs[0] - (-36.0)) <= 1e-12
    assert abs(check.rhs[0] - (-36.0)) <= 1e-12


def test_sylvester_alpha_zero_and_random():
    rng = np.random.default_rng(23)
    for _ in range(20):
        m, n = rng.integers(1, 6, size=2)
        a = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        b = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
        for alpha in (0.0, 1.0, complex(rng.standard_normal(), rng.standard_normal())):
            assert sylvester_det_property(a, b, alpha).passed
    with pytest.raises(ValidationError, match="m x n"):
        sylvester_det_property(np.ones((2, 2)), np.ones((3, 2)), 1.0)
