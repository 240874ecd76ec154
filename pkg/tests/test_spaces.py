# -*- coding: utf-8 -*-
"""Pruebas de proyecciones, complementos, ángulos e intersecciones"""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qopt.clases import GramSpace, Subspace
from qopt.errors import InvalidParameters, TrivialSubspace
from qopt.spaces import (intersect_subspaces, make_setup, orthogonal_complement, principal_angles,
                         relative_complement, ritz_projection, subspace_angle)
from tests.helpers import random_spd


def _random_space(seed, n):
    rng = np.random.default_rng(seed)
    return rng, GramSpace(random_spd(rng, n))


@given(seed=st.integers(min_value=0, max_value=2 ** 32 - 1), n=st.integers(min_value=2, max_value=10))
def test_ritz_projection_is_orthogonal_projection(seed, n):
    rng, space = _random_space(seed, n)
    k = int(rng.integers(1, n))
    y = Subspace(space, rng.standard_normal((n, k)))
    proj = y.basis.dot(ritz_projection(space, y).matrix)
    np.testing.assert_allclose(proj.dot(proj), proj, atol=1e-9)
    x = rng.standard_normal(n)
    residual = x - proj.dot(x)
    np.testing.assert_allclose(y.basis.T.dot(space.gram).dot(residual), 0.0, atol=1e-9)
    np.testing.assert_allclose(y.project(x), proj.dot(x), atol=1e-9)


def test_orthogonal_complement_dimensions_and_orthogonality():
    rng, space = _random_space(5, 6)
    y = Subspace(space, rng.standard_normal((6, 2)))
    comp = orthogonal_complement(space, y)
    assert comp.dim == 4
    np.testing.assert_allclose(y.basis.T.dot(space.gram).dot(comp.basis), 0.0, atol=1e-10)
    np.testing.assert_allclose(comp.gram, np.eye(4), atol=1e-10)
    whole = orthogonal_complement(space, Subspace(space, np.zeros((6, 0))))
    assert whole.dim == 6
    assert orthogonal_complement(space, Subspace(space, np.eye(6))).dim == 0


def test_relative_complement_stays_inside():
    space = GramSpace.euclidean(3)
    plane = Subspace(space, np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]))
    line = Subspace(space, np.array([1.0, 1.0, 0.0]))
    comp = relative_complement(space, line, plane)
    assert comp.dim == 1
    direction = comp.basis[:, 0] / np.linalg.norm(comp.basis[:, 0])
    np.testing.assert_allclose(abs(direction), [math.sqrt(0.5), math.sqrt(0.5), 0.0], atol=1e-12)


def test_subspace_angle_pi_over_4():
    space = GramSpace.euclidean(2)
    s = Subspace(space, np.array([1.0, 0.0]))
    k = Subspace(space, np.array([1.0, 1.0]))
    angle = subspace_angle(space, s, k)
    assert angle.angle == pytest.approx(math.pi / 4, abs=1e-14)
    assert not angle.degenerate


def test_subspace_angle_degenerate_and_trivial():
    space = GramSpace.euclidean(3)
    y = Subspace(space, np.eye(3)[:, :2])
    angle = subspace_angle(space, y, Subspace(space, np.array([1.0, 1.0, 0.0])))
    assert angle.degenerate
    assert angle.angle == pytest.approx(0.0, abs=1e-6)
    with pytest.raises(TrivialSubspace):
        subspace_angle(space, y, Subspace(space, np.zeros((3, 0))))


def test_principal_angles_ascending():
    space = GramSpace.euclidean(4)
    y1 = Subspace(space, np.eye(4)[:, :2])
    y2 = Subspace(space, np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 1.0], [0.0, 0.0]]))
    angles = principal_angles(space, y1, y2)
    np.testing.assert_allclose(angles, [0.0, math.pi / 4], atol=1e-7)


def test_intersection_of_planes():
    space = GramSpace.euclidean(3)
    p1 = Subspace(space, np.eye(3)[:, :2])
    p2 = Subspace(space, np.eye(3)[:, 1:])
    meet = intersect_subspaces(space, p1, p2)
    assert meet.dim == 1
    np.testing.assert_allclose(abs(meet.basis[:, 0]), [0.0, 1.0, 0.0], atol=1e-12)
    line = Subspace(space, np.array([1.0, 0.0, 0.0]))
    assert intersect_subspaces(space, line, p2).dim == 0


def test_make_setup_requires_spanning():
    space = GramSpace.euclidean(3)
    with pytest.raises(InvalidParameters):
        make_setup(space, np.eye(3)[:, :1], np.eye(3)[:, 1:2])
    setup = make_setup(space, np.eye(3)[:, :2], np.eye(3)[:, 1:])
    assert setup.s_conforming.dim == 1
    assert not setup.is_conforming


def test_foreign_subspace_rejected():
    a, b = GramSpace.euclidean(2), GramSpace.euclidean(2)
    with pytest.raises(InvalidParameters):
        ritz_projection(a, Subspace(b, np.array([1.0, 0.0])))


@given(seed=st.integers(min_value=0, max_value=2 ** 32 - 1), n=st.integers(min_value=2, max_value=10))
def test_ritz_projection_pythagoras_and_best_approximation(seed, n):
    rng, space = _random_space(seed, n)
    y = Subspace(space, rng.standard_normal((n, int(rng.integers(1, n)))))
    x = rng.standard_normal(n)
    px = y.basis.dot(ritz_projection(space, y).matrix.dot(x))
    assert space.norm(x) ** 2 == pytest.approx(space.norm(px) ** 2 + space.norm(x - px) ** 2, rel=1e-9)
    for _ in range(5):
        other = y.basis.dot(rng.standard_normal(y.dim))
        assert space.norm(x - px) <= space.norm(x - other) * (1 + 1e-12) + 1e-12


@given(seed=st.integers(min_value=0, max_value=2 ** 32 - 1), n=st.integers(min_value=2, max_value=10))
def test_double_complement_is_original(seed, n):
    rng, space = _random_space(seed, n)
    y = Subspace(space, rng.standard_normal((n, int(rng.integers(1, n)))))
    back = orthogonal_complement(space, orthogonal_complement(space, y))
    assert back.dim == y.dim
    x = rng.standard_normal(n)
    np.testing.assert_allclose(back.project(x), y.project(x), atol=1e-8 * max(1.0, np.abs(x).max()))
