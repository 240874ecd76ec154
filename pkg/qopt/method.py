#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
#   method.py
#   Métodos no conformes con suavizador
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
"""Resolución discreta, operador de aproximación y operadores extendidos

El problema discreto con carga ℓ es: hallar U ∈ S con

    b(U, σ) = ⟨ℓ, E·σ⟩  para todo σ ∈ S

que con b(s, σ) = sᵀ·B·σ se escribe Bᵀ·U = Eᵀ·ℓ.
"""

import logging
from collections import OrderedDict, namedtuple

import numpy as np
import scipy.linalg

from .clases import ExtendedOperators, LoadFunctional, OperatorMatrix
from .errors import DimensionMismatch, InconsistentMethod, InvalidParameters
from .linalg import least_squares, numeric_rank
from .spaces import complement_coefficients, ritz_projection
from .util import maxabs

logger = logging.getLogger(__name__)

CONSISTENCYTOL = 1e-9 # Tolerancia relativa de las comprobaciones estructurales
REPRESENTABLETOL = 1e-8

ConsistencyCheck = namedtuple('ConsistencyCheck',
                              ['consistent', 'residual', 'projection_residual', 'scale'])
GalerkinCheck = namedtuple('GalerkinCheck', ['ok', 'form_residual', 'smoother_residual'])
InjectivityCheck = namedtuple('InjectivityCheck',
                              ['injective', 'smoother_rank', 'range_rank', 'dim_s'])


def consistency_scale(m):
    """Escala de las tolerancias: max(|b|, |G_V|)"""
    return max(maxabs(m.b_matrix), maxabs(m.setup.gram_v), np.finfo(float).tiny)


def solve_discrete(m, load):
    """Solución discreta U (coeficientes en S) para la carga ℓ"""
    if not isinstance(load, LoadFunctional):
        load = LoadFunctional(load)
    if load.values.shape[0] != m.setup.v.dim:
        raise DimensionMismatch(u'Carga de longitud %i para dim V = %i'
                                % (load.values.shape[0], m.setup.v.dim))
    return m.solve_transposed(m.smoother.T.dot(load.values))


def approximation_operator(m):
    """Operador de aproximación P = M·A = B⁻¹·L·A (V → S)

    La columna j es la solución discreta con carga a(φⱼ, ·).
    """
    p = m.solve_transposed(m.smoother.T.dot(m.setup.gram_v))
    return OperatorMatrix(p.reshape(m.setup.s.dim, m.setup.v.dim), m.setup.v, m.setup.s, u'P')


def smoother_from_approximation(setup, b_matrix, p):
    """Suavizador E con â(v, E·σ) = b(P·v, σ) para un P dado (S-coef. × V-coef.)"""
    p = np.asarray(p, dtype=float)
    if p.shape != (setup.s.dim, setup.v.dim):
        raise DimensionMismatch(u'P de forma %r, esperada %r' % (p.shape, (setup.s.dim, setup.v.dim)))
    return setup.v.factorization.solve(p.T.dot(b_matrix))


def ritz_smoother(setup):
    """E = Π_V sobre S (suavizado óptimo)"""
    return setup.v.factorization.solve(setup.cross)


def inclusion_smoother(setup):
    """E = id_S, solamente realizable si S ⊆ V"""
    residuals = check_id_smoother_representability(setup)
    if residuals.size and residuals.max() > REPRESENTABLETOL:
        raise InvalidParameters(u'E = id_S no es realizable: S no está contenido en V '
                                u'(residuo máximo %.3e)' % residuals.max())
    return least_squares(setup.v.basis, setup.s.basis).solution


def check_full_consistency(m):
    """Consistencia algebraica completa: b(u, σ) = â(u, E·σ) en (S∩V) × S

    Comprueba además la forma equivalente P·u = u en S∩V.
    """
    setup = m.setup
    scale = consistency_scale(m)
    if setup.s_conforming.is_trivial:
        return ConsistencyCheck(True, 0.0, 0.0, scale)
    cs, cv = setup.conforming_s_coeffs, setup.conforming_v_coeffs
    residual = maxabs(cs.T.dot(m.b_matrix) - cv.T.dot(setup.gram_v).dot(m.smoother))
    p = approximation_operator(m).matrix
    projection_residual = maxabs(p.dot(cv) - cs)
    consistent = (residual <= CONSISTENCYTOL * scale and
                  projection_residual <= CONSISTENCYTOL * max(1.0, maxabs(cs)))
    if not consistent:
        logger.info(u'%s sin consistencia algebraica completa (residuo %.3e)', m.label, residual)
    return ConsistencyCheck(consistent, residual, projection_residual, scale)


def nonconforming_complement(setup):
    """Coeficientes en S de una base del complemento â-ortogonal de S∩V en S"""
    return complement_coefficients(setup.s, setup.s_conforming)


def assemble_bext(m, complement=None):
    """Forma extendida b̂ como matriz N × k en coordenadas de V̂

    Sobre V vale b̂(v, σ) = â(v, E·σ) y sobre el complemento no conforme de S∩V
    en S vale b(s, σ). complement permite elegir otro complemento (coeficientes
    en la base de S); el resultado no depende de la elección.
    """
    check = check_full_consistency(m)
    if not check.consistent:
        raise InconsistentMethod(u'b̂ no existe para %s: residuo de consistencia %.3e'
                                 % (m.label, check.residual))
    setup = m.setup
    c_nc = nonconforming_complement(setup) if complement is None else np.asarray(complement, dtype=float)
    w = np.hstack([setup.v.basis, setup.s.basis.dot(c_nc)])
    if w.shape[0] != w.shape[1]:
        raise InvalidParameters(u'V y el complemento no conforme no forman base de V̂ (%r)' % (w.shape,))
    values = np.vstack([setup.gram_v.dot(m.smoother), c_nc.T.dot(m.b_matrix)])
    return scipy.linalg.solve(w.T, values)


def galerkin_orthogonality_residual(m, ops):
    """max |b̂(x − P̂·x, σ)| sobre las bases de V̂ y S, relativo a la escala"""
    n = m.setup.vhat.dim
    defect = (np.eye(n) - ops.p_ext_ambient).T.dot(ops.b_ext)
    return maxabs(defect) / consistency_scale(m)


def extended_projection(m):
    """Operador de aproximación extendido P̂ a partir de b̂

    P̂·x ∈ S resuelve b(P̂·x, σ) = b̂(x, σ) para todo σ ∈ S.
    """
    setup = m.setup
    b_ext = assemble_bext(m)
    p = approximation_operator(m)
    pc = m.solve_transposed(b_ext.T)
    p_ext = OperatorMatrix(pc, setup.vhat, setup.s, u'P̂')
    ops = ExtendedOperators(p, p_ext, b_ext)
    ambient = ops.p_ext_ambient
    scale = max(1.0, maxabs(ambient))
    residuals = OrderedDict()
    residuals['pext-identity-on-s'] = maxabs(pc.dot(setup.s.basis) - np.eye(setup.s.dim))
    residuals['pext-extends-p'] = maxabs(pc.dot(setup.v.basis) - p.matrix) / scale
    residuals['pext-idempotent'] = maxabs(ambient.dot(ambient) - ambient) / scale
    residuals['galerkin-orthogonality'] = galerkin_orthogonality_residual(m, ops)
    for name, value in residuals.items():
        if value > CONSISTENCYTOL:
            logger.warning(u'%s: residuo %s = %.3e', m.label, name, value)
    ops.residuals = residuals
    return ops


def check_smoother_injectivity(m):
    """E inyectivo ⇔ la imagen de M es todo S

    Con E no inyectivo se verifica además rango(P) = rango(E), con P evaluado
    sobre las cargas a(φⱼ, ·), que generan V′.
    """
    smoother_rank = numeric_rank(m.smoother)
    range_rank = numeric_rank(approximation_operator(m).matrix)
    injective = smoother_rank == m.setup.s.dim
    if not injective and range_rank != smoother_rank:
        logger.warning(u'%s: rango(P) = %i distinto de rango(E) = %i',
                       m.label, range_rank, smoother_rank)
    return InjectivityCheck(injective, smoother_rank, range_rank, m.setup.s.dim)


def check_nonconforming_galerkin(m):
    """b = a en S∩V × S∩V y E·u = u en S∩V"""
    setup = m.setup
    if setup.s_conforming.is_trivial:
        return GalerkinCheck(True, 0.0, 0.0)
    scale = consistency_scale(m)
    cs, cv = setup.conforming_s_coeffs, setup.conforming_v_coeffs
    form_residual = maxabs(cs.T.dot(m.b_matrix).dot(cs) - setup.s_conforming.gram)
    smoother_residual = maxabs(m.smoother.dot(cs) - cv)
    ok = (form_residual <= CONSISTENCYTOL * scale and
          smoother_residual <= CONSISTENCYTOL * max(1.0, maxabs(cv)))
    return GalerkinCheck(ok, form_residual, smoother_residual)


def check_id_smoother_representability(setup):
    """Distancia de energía a V de cada columna de la base de S

    Un valor > 1e-8 certifica que E = id_S no es una aplicación S → V en esa
    dirección; las columnas conformes dan 0.
    """
    proj = setup.v.basis.dot(ritz_projection(setup, setup.v).matrix)
    defect = setup.s.basis - proj.dot(setup.s.basis)
    gram = setup.vhat.gram
    return np.sqrt(np.maximum(np.einsum('ij,ij->j', defect, gram.dot(defect)), 0.0))
