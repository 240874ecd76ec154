#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
#   spaces.py
#   Geometría del espacio extendido V̂ = V + S
#
#   Copyright (C) 2026 QOptLab developers
#
#   This program is free software; you can redistribute it and/or
#   modify it under the terms of the GNU General Public License
#   as published by the Free Software Foundation; either version 2
#   of the License, or (at your option) any later version.
#
#   This program is distributed in the hope that it will be useful,
#   but WITHOUT ANY WARRANTY; without even the implied warranty of
#   MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#   GNU General Public License for more details.
#
#   You should have received a copy of the GNU General Public License
#   along with this program; if not, write to the Free Software
#   Foundation, Inc., 51 Franklin Street, Fifth Floor, Boston, MA
#   02110-1301, USA.
"""Proyecciones de Ritz, complementos ortogonales, ángulos e intersecciones

Las funciones aceptan como primer argumento un HilbertSetup o directamente el
GramSpace ambiente.
"""

import logging
from collections import namedtuple

import numpy as np

from .clases import GramSpace, HilbertSetup, OperatorMatrix, Subspace
from .errors import InvalidParameters, TrivialSubspace
from .linalg import congruence, null_space, range_basis, singular_values, spd_factor

logger = logging.getLogger(__name__)

DEGENERATE_COS = 1.0 - 1e-12

SubspaceAngle = namedtuple('SubspaceAngle', ['angle', 'cosine', 'degenerate'])


def _ambient(setup):
    if isinstance(setup, HilbertSetup):
        return setup.vhat
    elif isinstance(setup, GramSpace):
        return setup
    raise InvalidParameters(u'Se esperaba HilbertSetup o GramSpace: %r' % (setup,))


def _check_member(space, y):
    if y.ambient is not space:
        raise InvalidParameters(u'%r no pertenece a %r' % (y, space))


def make_setup(vhat, v_basis, s_basis, s_conforming_basis=None):
    """Construye un HilbertSetup a partir de las bases de V, S y S∩V

    Si no se da la base de S∩V se calcula con intersect_subspaces.
    """
    v = Subspace(vhat, v_basis, 'V')
    s = Subspace(vhat, s_basis, 'S')
    if s_conforming_basis is None:
        sc = intersect_subspaces(vhat, v, s, tag='S∩V')
    else:
        sc = Subspace(vhat, np.asarray(s_conforming_basis, dtype=float).reshape(vhat.dim, -1), 'S∩V')
    return HilbertSetup(vhat, v, s, sc)


def ritz_projection(setup, target):
    """Proyección â-ortogonal de V̂ sobre target

    Devuelve R (target.dim × N) tal que target.basis·R·x es la proyección de x.
    """
    space = _ambient(setup)
    _check_member(space, target)
    r = target.factorization.solve(target.basis.T.dot(space.gram))
    return OperatorMatrix(r.reshape(target.dim, space.dim), space, target,
                          u'Π_%s' % target.tag)


def _orthonormalize(space, basis):
    """Base â-ortonormal del subespacio generado por las columnas de basis"""
    if not basis.shape[1]:
        return basis
    return spd_factor(congruence(basis, space.gram)).whiten(basis.T).T


def orthogonal_complement(setup, y):
    """Complemento â-ortogonal Y⊥ de y en V̂, con base â-ortonormal"""
    space = _ambient(setup)
    _check_member(space, y)
    if y.is_trivial:
        z = np.eye(space.dim)
    else:
        z = null_space(y.basis.T.dot(space.gram))
    return Subspace(space, _orthonormalize(space, z), 'other')


def complement_coefficients(within, y):
    """Coeficientes en la base de within del complemento â-ortogonal de y

    y debe estar contenido en within. La base resultante es â-ortonormal.
    """
    if y.is_trivial:
        c = np.eye(within.dim)
    else:
        c = null_space(y.basis.T.dot(within.ambient.gram).dot(within.basis))
    if not c.shape[1]:
        return c
    return spd_factor(congruence(c, within.gram)).whiten(c.T).T


def relative_complement(setup, y, within):
    """Complemento â-ortogonal de y dentro de within (y ⊆ within)"""
    space = _ambient(setup)
    _check_member(space, y)
    _check_member(space, within)
    return Subspace(space, within.basis.dot(complement_coefficients(within, y)), 'other')


def cross_gram(setup, y1, y2):
    """Productos escalares entre bases â-ortonormales de y1 e y2"""
    space = _ambient(setup)
    return y1.orthonormal_basis.T.dot(space.gram).dot(y2.orthonormal_basis)


def principal_angles(setup, y1, y2):
    """Ángulos principales entre y1 e y2 en orden creciente [rad]"""
    space = _ambient(setup)
    _check_member(space, y1)
    _check_member(space, y2)
    if y1.is_trivial or y2.is_trivial:
        return np.zeros(0)
    cosines = np.clip(singular_values(cross_gram(space, y1, y2)), 0.0, 1.0)
    return np.arccos(cosines)


def subspace_angle(setup, y1, y2):
    """Ángulo mínimo entre dos subespacios no triviales

    El coseno es el mayor valor singular del Gram cruzado de bases
    â-ortonormales. Si el coseno es 1 (subespacios con intersección no
    trivial) el resultado se marca como degenerado, sin lanzar error.
    """
    space = _ambient(setup)
    _check_member(space, y1)
    _check_member(space, y2)
    if y1.is_trivial or y2.is_trivial:
        raise TrivialSubspace(u'Ángulo con un subespacio de dimensión 0')
    cosine = float(np.clip(singular_values(cross_gram(space, y1, y2))[0], 0.0, 1.0))
    degenerate = cosine >= DEGENERATE_COS
    if degenerate:
        logger.info(u'Ángulo degenerado entre %r y %r (cos = %.16f)', y1, y2, cosine)
    return SubspaceAngle(float(np.arccos(cosine)), cosine, degenerate)


def intersect_subspaces(setup, y1, y2, tag='other'):
    """Intersección de dos subespacios

    Se calcula con el núcleo de [B₁, −B₂]; la base resultante es B₁·N₁, con N₁
    el bloque superior de la base del núcleo.
    """
    space = _ambient(setup)
    _check_member(space, y1)
    _check_member(space, y2)
    if y1.is_trivial or y2.is_trivial:
        return Subspace(space, np.zeros((space.dim, 0)), tag)
    kernel = null_space(np.hstack([y1.basis, -y2.basis]))
    basis = y1.basis.dot(kernel[:y1.dim, :])
    if basis.shape[1]:
        basis = range_basis(basis)
    return Subspace(space, basis, tag)
