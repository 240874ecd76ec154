#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
#   clases.py
#   Clases para la representación de espacios, métodos e informes
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
"""Clases base de QOptLab

Todos los objetos son inmutables tras su construcción: las operaciones de
los módulos spaces, method y analysis devuelven objetos nuevos.

Convenios de coordenadas:
    - un elemento de V̂ se representa por sus coeficientes en la base de
      coordenadas del espacio ambiente (GramSpace)
    - un elemento de un subespacio (V, S, S∩V) por sus coeficientes en la
      base de columnas del subespacio
"""

from collections import OrderedDict, namedtuple
from functools import cached_property

import numpy as np
import scipy.linalg

from .errors import DegenerateB, DimensionMismatch, InvalidParameters
from .linalg import (RANKTOL, as_matrix, congruence, has_independent_columns, numeric_rank,
                     least_squares, singular_values, spd_factor, subordinate_norm)

SUBSPACE_TAGS = ('V', 'S', 'S∩V', 'other')
MEMBERSHIPTOL = 1e-10 # Residuo relativo de pertenencia a un subespacio


class Unbounded(object):
    """Valor +∞ de las constantes de métodos no cuasi-óptimos

    Es un centinela: nunca entra en operaciones de álgebra lineal.
    """
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = object.__new__(cls)
        return cls._instance

    def __repr__(self):
        return 'inf'

    __str__ = __repr__

    def __float__(self):
        return float('inf')

    def __reduce__(self):
        return (Unbounded, ())

UNBOUNDED = Unbounded()

def is_unbounded(value):
    return value is UNBOUNDED


class GramSpace(object):
    """Espacio de dimensión finita V̂ con producto escalar â

    dim - dimensión del espacio
    gram - matriz de Gram simétrica definida positiva, â(φᵢ, φⱼ) [energía²]
    label - etiqueta del espacio
    factorization - factorización de Cholesky de gram
    """
    def __init__(self, gram, label=u'V̂'):
        self.factorization = spd_factor(gram)
        self.gram = self.factorization.source
        self.label = label

    @classmethod
    def euclidean(cls, dim, label=u'V̂'):
        """ℝ^dim con el producto escalar euclídeo"""
        return cls(np.eye(dim), label)

    @property
    def dim(self):
        return self.gram.shape[0]

    def inner(self, x, y):
        """Producto escalar â(x, y)"""
        return float(np.dot(x, self.gram.dot(y)))

    def norm(self, x):
        """Norma de energía extendida √â(x, x)"""
        return float(np.sqrt(max(self.inner(x, x), 0.0)))

    def subspace(self, basis, tag='other'):
        return Subspace(self, basis, tag)

    def __repr__(self):
        return 'GramSpace(%s, dim=%i)' % (self.label, self.dim)


class Subspace(object):
    """Subespacio de un GramSpace dado por columnas de coeficientes

    ambient - espacio ambiente (GramSpace)
    basis - matriz dim × k con los coeficientes de la base en el ambiente
    tag - uno de 'V', 'S', 'S∩V', 'other'
    gram - Gram inducida basisᵀ·gram·basis [energía²]

    La base se guarda tal como se da; la base â-ortonormal se calcula bajo
    demanda.
    """
    def __init__(self, ambient, basis, tag='other'):
        basis = np.asarray(basis, dtype=float)
        if basis.ndim == 1:
            basis = basis.reshape(-1, 1)
        basis = as_matrix(basis, 'base')
        if basis.shape[0] != ambient.dim:
            raise DimensionMismatch(u'Base con %i filas en un espacio de dimensión %i'
                                    % (basis.shape[0], ambient.dim))
        if tag not in SUBSPACE_TAGS:
            raise InvalidParameters(u'Etiqueta de subespacio desconocida: %s' % tag)
        if basis.shape[1] and not has_independent_columns(basis):
            raise InvalidParameters(u'Columnas de la base linealmente dependientes (%s)' % tag)
        self.ambient = ambient
        self.basis = basis
        self.tag = tag
        self.factorization = spd_factor(congruence(basis, ambient.gram))
        self.gram = self.factorization.source

    @property
    def dim(self):
        return self.basis.shape[1]

    @property
    def is_trivial(self):
        return self.dim == 0

    @cached_property
    def orthonormal_basis(self):
        """Base â-ortonormal del mismo subespacio (dim × k)"""
        return self.factorization.whiten(self.basis.T).T

    def coordinates(self, x):
        """Coeficientes de la proyección â-ortogonal de x (coordenadas ambiente)"""
        rhs = self.basis.T.dot(self.ambient.gram).dot(x)
        return self.factorization.solve(rhs)

    def project(self, x):
        """Proyección â-ortogonal de x en coordenadas ambiente"""
        return self.basis.dot(self.coordinates(x))

    def distance(self, x):
        """Distancia de energía de x al subespacio"""
        return self.ambient.norm(np.asarray(x, dtype=float) - self.project(x))

    def element(self, coeffs):
        """Elemento del subespacio en coordenadas ambiente"""
        return self.basis.dot(coeffs)

    def __repr__(self):
        return 'Subspace(%s, dim=%i)' % (self.tag, self.dim)


def _in_span(basis, columns):
    """Coeficientes de columns en basis y máximo residuo relativo"""
    if not columns.shape[1]:
        return np.zeros((basis.shape[1], 0)), 0.0
    lsq = least_squares(basis, columns)
    scale = np.maximum(1.0, np.linalg.norm(columns, axis=0))
    return lsq.solution, float(np.max(np.linalg.norm(lsq.residual, axis=0) / scale))


class HilbertSetup(object):
    """Espacio extendido V̂ = V + S con sus subespacios

    vhat - espacio ambiente V̂ con el producto escalar â
    v - subespacio V (aproximación de dimensión finita del espacio continuo)
    s - espacio discreto S
    s_conforming - parte conforme S∩V (posiblemente de dimensión 0)

    Propiedades derivadas (en coeficientes de las bases de V y S):
    gram_v - G_V = Φ_Vᵀ·G·Φ_V
    gram_s - G_S = Φ_Sᵀ·G·Φ_S
    cross - Φ_Vᵀ·G·Φ_S
    conforming_s_coeffs - coeficientes de S∩V en la base de S (k × kc)
    conforming_v_coeffs - coeficientes de S∩V en la base de V (m × kc)
    """
    def __init__(self, vhat, v, s, s_conforming):
        for sub, tag in ((v, 'V'), (s, 'S'), (s_conforming, 'S∩V')):
            if sub.ambient is not vhat:
                raise InvalidParameters(u'El subespacio %s no pertenece a %s' % (tag, vhat.label))
            if sub.tag != tag:
                raise InvalidParameters(u'Se esperaba un subespacio %s (recibido %s)' % (tag, sub.tag))
        if s.is_trivial:
            raise InvalidParameters(u'El espacio discreto S no puede ser trivial')
        rank = numeric_rank(np.hstack([v.basis, s.basis]))
        if rank != vhat.dim:
            raise InvalidParameters(u'V + S no genera V̂ (rango %i, dimensión %i)' % (rank, vhat.dim))
        self.vhat = vhat
        self.v = v
        self.s = s
        self.s_conforming = s_conforming
        self.conforming_v_coeffs, rv = _in_span(v.basis, s_conforming.basis)
        self.conforming_s_coeffs, rs = _in_span(s.basis, s_conforming.basis)
        if max(rv, rs) > MEMBERSHIPTOL:
            raise InvalidParameters(u'S∩V no está contenido en V y en S (residuo %.3e)' % max(rv, rs))

    @property
    def gram_v(self):
        return self.v.gram

    @property
    def gram_s(self):
        return self.s.gram

    @cached_property
    def cross(self):
        return self.v.basis.T.dot(self.vhat.gram).dot(self.s.basis)

    @property
    def proxy_dim(self):
        """Dimensión de la aproximación de V"""
        return self.v.dim

    @property
    def is_conforming(self):
        """S ⊆ V"""
        return self.s_conforming.dim == self.s.dim

    def __repr__(self):
        return 'HilbertSetup(dim V̂=%i, dim V=%i, dim S=%i, dim S∩V=%i)' % (
            self.vhat.dim, self.v.dim, self.s.dim, self.s_conforming.dim)


class OperatorMatrix(object):
    """Aplicación lineal entre espacios en forma de coeficientes

    matrix - matriz codomain.dim × domain.dim
    domain, codomain - GramSpace o Subspace (coordenadas de su base)
    label - nombre del operador
    """
    def __init__(self, matrix, domain, codomain, label=''):
        matrix = as_matrix(matrix, label or 'operador')
        if matrix.shape != (codomain.dim, domain.dim):
            raise DimensionMismatch(u'Operador %s de forma %r, esperada %r'
                                    % (label, matrix.shape, (codomain.dim, domain.dim)))
        self.matrix = matrix
        self.domain = domain
        self.codomain = codomain
        self.label = label

    def __call__(self, x):
        return self.matrix.dot(x)

    def norm(self):
        """Norma de operador respecto de las normas de energía"""
        return subordinate_norm(self.matrix, self.domain.gram, self.codomain.gram)

    def ambient(self):
        """Matriz con la imagen en coordenadas del espacio ambiente"""
        if isinstance(self.codomain, Subspace):
            return self.codomain.basis.dot(self.matrix)
        return self.matrix

    def __repr__(self):
        return 'OperatorMatrix(%s, %i×%i)' % (self.label, self.matrix.shape[0], self.matrix.shape[1])


class MethodSpec(object):
    """Método no conforme M = (S, b, L) con L = E*

    setup - HilbertSetup del problema
    b_matrix - matriz k × k con b(sᵢ, sⱼ) [energía²]; b(s, σ) = sᵀ·b_matrix·σ
    smoother - matriz m × k; la columna j son los coeficientes en V de E·sⱼ
    label - nombre del método
    """
    def __init__(self, setup, b_matrix, smoother, label=''):
        k, m = setup.s.dim, setup.v.dim
        b_matrix = as_matrix(b_matrix, 'b')
        smoother = as_matrix(smoother, 'E')
        if b_matrix.shape != (k, k):
            raise DimensionMismatch(u'b de forma %r, esperada %r' % (b_matrix.shape, (k, k)))
        if smoother.shape != (m, k):
            raise DimensionMismatch(u'E de forma %r, esperada %r' % (smoother.shape, (m, k)))
        sv = singular_values(b_matrix)
        if sv[0] == 0.0 or sv[-1] <= RANKTOL * sv[0]:
            raise DegenerateB(u'b degenerada (valores singulares extremos %.3e, %.3e)' % (sv[0], sv[-1]))
        self.setup = setup
        self.b_matrix = b_matrix
        self.smoother = smoother
        self.label = label
        self._lu = scipy.linalg.lu_factor(b_matrix)

    def b(self, s, sigma):
        """b(s, σ) para coeficientes en la base de S"""
        return float(np.dot(s, self.b_matrix.dot(sigma)))

    def solve_transposed(self, rhs):
        """Resuelve b_matrixᵀ·x = rhs (la incógnita ocupa el primer argumento de b)"""
        return scipy.linalg.lu_solve(self._lu, rhs, trans=1)

    def with_b(self, b_matrix, label=None):
        return MethodSpec(self.setup, b_matrix, self.smoother, label or self.label)

    def with_smoother(self, smoother, label=None):
        return MethodSpec(self.setup, self.b_matrix, smoother, label or self.label)

    def __repr__(self):
        return 'MethodSpec(%s, %r)' % (self.label, self.setup)


class LoadFunctional(object):
    """Funcional de carga ℓ ∈ V′

    values - vector con ⟨ℓ, φᵢ⟩ para la base de V [energía²]
    """
    def __init__(self, values):
        values = np.asarray(values, dtype=float).ravel()
        if not np.all(np.isfinite(values)):
            raise InvalidParameters(u'Carga con entradas no finitas')
        self.values = values

    @classmethod
    def from_element(cls, setup, v):
        """Funcional a(v, ·) para v dado por coeficientes en V"""
        return cls(setup.gram_v.dot(v))

    def riesz_representative(self, setup):
        """A⁻¹ℓ en coeficientes de V"""
        return setup.v.factorization.solve(self.values)

    def dual_norm(self, setup):
        """‖ℓ‖_{V′} = √(valuesᵀ·G_V⁻¹·values)"""
        return float(np.sqrt(max(np.dot(self.values, self.riesz_representative(setup)), 0.0)))


class ExtendedOperators(object):
    """Operadores extendidos de un método con consistencia algebraica completa

    p - operador de aproximación P: V → S
    p_ext - operador de aproximación extendido P̂: V̂ → S
    b_ext - matriz N × k de la forma extendida b̂ (filas en coordenadas de V̂)
    residuals - residuos de las propiedades de P̂ (restricciones, proyección,
                ortogonalidad de Galerkin generalizada)
    """
    def __init__(self, p, p_ext, b_ext, residuals=None):
        self.p = p
        self.p_ext = p_ext
        self.b_ext = b_ext
        self.residuals = residuals if residuals is not None else OrderedDict()

    @cached_property
    def p_ext_ambient(self):
        """P̂ como aplicación V̂ → V̂ (N × N)"""
        return self.p_ext.ambient()


REPORT_FIELDS = ['model', 'parameters', 'proxy_dim', 'consistent',
                 'c_stab', 'c_qopt_opnorm', 'c_qopt_dualnorm', 'c_qopt_angle',
                 'delta_v', 'delta_s', 'angle_alpha', 'classical_bound',
                 'inf_sup_beta', 'continuity_cbext', 'consistency_residual_sup',
                 'identity_residuals', 'flags']

AnalysisReport = namedtuple('AnalysisReport', REPORT_FIELDS)
AnalysisReport.__doc__ = u"""Constantes calculadas para un método

model - identificador del modelo
parameters - diccionario ordenado de parámetros del modelo
proxy_dim - dimensión de la aproximación de V
consistent - el método tiene consistencia algebraica completa
c_stab - constante de estabilidad C_stab
c_qopt_opnorm - C_qopt = ‖P̂‖ (UNBOUNDED si no es consistente)
c_qopt_dualnorm - C_qopt por la norma dual extendida
c_qopt_angle - C_qopt = 1/sin α
delta_v, delta_s - medidas de consistencia δ_V y δ_S
angle_alpha - ángulo α entre S y R(id_V − P) [rad]
classical_bound - cota clásica C_b̂/β
inf_sup_beta - constante inf-sup β de b
continuity_cbext - constante de continuidad C_b̂ de b̂
consistency_residual_sup - ‖Π_S − P‖ sobre V (error de consistencia)
identity_residuals - diccionario ordenado nombre → discrepancia
flags - lista de avisos (p.e. 'fully-conforming', 'degenerate-angle')
"""
