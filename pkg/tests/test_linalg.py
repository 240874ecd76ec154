# -*- coding: utf-8 -*-
"""Pruebas de los núcleos de álgebra lineal"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qopt.config import config
from qopt.errors import DimensionMismatch, InvalidParameters, NotPositiveDefinite, NotSymmetric
from qopt.linalg import (adjoint, jacobi_eigh, largest_generalized_eig, least_squares, null_space,
                         numeric_rank, range_basis, spd_factor, subordinate_norm, sym_generalized_eigs,
                         symmetric_eigh, symmetrize)
from tests.helpers import random_spd, random_symmetric

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)
dims = st.integers(min_value=1, max_value=12)


def test_spd_factor_matches_numpy():
    a = np.array([[4.0, 2.0, 0.6],
                  [2.0, 5.0, 1.0],
                  [0.6, 1.0, 3.0]])
    fact = spd_factor(a)
    np.testing.assert_allclose(fact.factor, np.linalg.cholesky(a), rtol=1e-12)
    assert fact.reconstruction_error() <= 1e-13
    x = fact.solve(np.array([1.0, 2.0, 3.0]))
    np.testing.assert_allclose(a.dot(x), [1.0, 2.0, 3.0], rtol=1e-12)


def test_spd_factor_reports_failing_pivot():
    with pytest.raises(NotPositiveDefinite) as excinfo:
        spd_factor(np.diag([1.0, 2.0, -1.0, 3.0]))
    assert excinfo.value.pivot == 2
    with pytest.raises(NotPositiveDefinite) as excinfo:
        spd_factor(np.array([[1.0, 2.0], [2.0, 1.0]]))
    assert excinfo.value.pivot == 1


def test_nonsymmetric_and_malformed_input():
    with pytest.raises(NotSymmetric):
        spd_factor(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(DimensionMismatch):
        symmetrize(np.ones((2, 3)))
    with pytest.raises(DimensionMismatch):
        symmetrize(np.ones(3))
    with pytest.raises(InvalidParameters):
        symmetrize(np.array([[1.0, np.nan], [np.nan, 1.0]]))


def test_empty_factorization():
    fact = spd_factor(np.zeros((0, 0)))
    assert fact.dim == 0
    assert fact.solve(np.zeros(0)).shape == (0,)


@given(seed=seeds, n=dims)
def test_jacobi_matches_lapack(seed, n):
    rng = np.random.default_rng(seed)
    a = random_symmetric(rng, n)
    values, vectors = jacobi_eigh(a)
    scale = max(1.0, np.linalg.norm(a))
    np.testing.assert_allclose(np.sort(values), np.linalg.eigvalsh(a), atol=1e-10 * scale)
    np.testing.assert_allclose(vectors.T.dot(vectors), np.eye(n), atol=1e-10)
    np.testing.assert_allclose(a.dot(vectors), vectors * values, atol=1e-9 * scale)


def test_jacobi_trivial_cases():
    values, vectors = jacobi_eigh(np.array([[3.0]]))
    assert values.tolist() == [3.0]
    values, vectors = jacobi_eigh(np.diag([1.0, -2.0, 5.0]))
    assert sorted(values.tolist()) == [-2.0, 1.0, 5.0]
    np.testing.assert_array_equal(vectors, np.eye(3))


def test_jacobi_sweep_limit_logs_warning(caplog):
    rng = np.random.default_rng(7)
    a = random_symmetric(rng, 6)
    with caplog.at_level('WARNING', logger='qopt.linalg'):
        jacobi_eigh(a, tol=0.0, max_sweeps=1)
    assert any('Jacobi' in record.message for record in caplog.records)


def test_eigensolver_selection(monkeypatch):
    rng = np.random.default_rng(3)
    a = random_symmetric(rng, 5)
    jacobi_values, _ = symmetric_eigh(a)
    monkeypatch.setitem(config, 'eigensolver', 'lapack')
    lapack_values, _ = symmetric_eigh(a)
    np.testing.assert_allclose(jacobi_values, lapack_values, atol=1e-10)
    assert np.all(np.diff(lapack_values) <= 0.0)


@given(seed=seeds, n=dims)
def test_generalized_eigenpairs(seed, n):
    rng = np.random.default_rng(seed)
    a = random_symmetric(rng, n)
    g = random_spd(rng, n)
    values, vectors = sym_generalized_eigs(a, g)
    assert np.all(np.diff(values) <= 1e-12 * max(1.0, abs(values[0])))
    np.testing.assert_allclose(vectors.T.dot(g).dot(vectors), np.eye(n), atol=1e-8)
    np.testing.assert_allclose(a.dot(vectors), g.dot(vectors) * values, atol=1e-8 * max(1.0, abs(values).max()))


def test_generalized_eigs_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        sym_generalized_eigs(np.eye(2), np.eye(3))
    assert largest_generalized_eig(np.zeros((0, 0)), np.zeros((0, 0))) == 0.0


@given(seed=seeds, rows=dims, cols=dims)
def test_subordinate_norm_euclidean_is_spectral(seed, rows, cols):
    rng = np.random.default_rng(seed)
    t = rng.standard_normal((rows, cols))
    norm = subordinate_norm(t, np.eye(cols), np.eye(rows))
    assert norm == pytest.approx(np.linalg.norm(t, 2), rel=1e-9)


def test_subordinate_norm_with_weights():
    # ‖x‖² = 4·x², ‖y‖² = y² para la identidad en ℝ: norma 1/2
    assert subordinate_norm(np.eye(1), 4.0 * np.eye(1), np.eye(1)) == pytest.approx(0.5)
    assert subordinate_norm(np.zeros((0, 0)), np.zeros((0, 0)), np.zeros((0, 0))) == 0.0
    with pytest.raises(DimensionMismatch):
        subordinate_norm(np.eye(2), np.eye(3), np.eye(2))


def test_adjoint_satisfies_duality():
    rng = np.random.default_rng(11)
    t = rng.standard_normal((3, 4))
    g_dom, g_cod = random_spd(rng, 4), random_spd(rng, 3)
    t_star = adjoint(t, g_dom, g_cod)
    x, y = rng.standard_normal(4), rng.standard_normal(3)
    assert np.dot(t.dot(x), g_cod.dot(y)) == pytest.approx(np.dot(x, g_dom.dot(t_star.dot(y))), rel=1e-10)


def test_rank_null_space_and_range():
    m = np.array([[1.0, 2.0, 3.0],
                  [2.0, 4.0, 6.0]])
    assert numeric_rank(m) == 1
    kernel = null_space(m)
    assert kernel.shape == (3, 2)
    np.testing.assert_allclose(m.dot(kernel), 0.0, atol=1e-12)
    assert range_basis(m).shape == (2, 1)
    assert range_basis(np.zeros((3, 2))).shape == (3, 0)
    assert null_space(np.zeros((0, 3))).shape == (3, 3)
    assert null_space(np.zeros((2, 0))).shape == (0, 0)
    assert numeric_rank(np.zeros((0, 0))) == 0


def test_least_squares_residual():
    a = np.array([[1.0], [1.0]])
    lsq = least_squares(a, np.array([1.0, 3.0]))
    np.testing.assert_allclose(lsq.solution, [2.0])
    np.testing.assert_allclose(lsq.residual, [-1.0, 1.0])
    empty = least_squares(np.zeros((2, 0)), np.array([1.0, 3.0]))
    assert empty.solution.shape == (0,)


@settings(max_examples=100)
@given(seed=seeds, n=st.integers(min_value=1, max_value=50))
def test_spd_solve_residual(seed, n):
    rng = np.random.default_rng(seed)
    a = random_spd(rng, n)
    b = rng.standard_normal(n)
    x = spd_factor(a).solve(b)
    assert np.linalg.norm(a.dot(x) - b) <= 1e-9 * max(1.0, np.linalg.norm(b))


@given(seed=seeds, rows=dims, cols=dims)
def test_adjoint_has_same_norm(seed, rows, cols):
    rng = np.random.default_rng(seed)
    t = rng.standard_normal((rows, cols))
    g_dom, g_cod = random_spd(rng, cols), random_spd(rng, rows)
    norm = subordinate_norm(t, g_dom, g_cod)
    assert subordinate_norm(adjoint(t, g_dom, g_cod), g_cod, g_dom) == pytest.approx(norm, rel=1e-8)


@given(seed=seeds, rows=dims, cols=dims)
def test_subordinate_norm_invariant_under_basis_change(seed, rows, cols):
    rng = np.random.default_rng(seed)
    t = rng.standard_normal((rows, cols))
    g_dom, g_cod = random_spd(rng, cols), random_spd(rng, rows)
    # cambios de base bien condicionados
    q = np.eye(cols) + 0.3 * rng.standard_normal((cols, cols)) / np.sqrt(cols)
    r = np.eye(rows) + 0.3 * rng.standard_normal((rows, rows)) / np.sqrt(rows)
    changed = np.linalg.solve(r, t.dot(q))
    norm = subordinate_norm(changed, q.T.dot(g_dom).dot(q), r.T.dot(g_cod).dot(r))
    assert norm == pytest.approx(subordinate_norm(t, g_dom, g_cod), rel=1e-8)
