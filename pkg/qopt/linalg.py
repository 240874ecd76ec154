#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
#   linalg.py
#   Núcleos de álgebra lineal densa simétrica
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
"""Núcleos numéricos densos

Factorización de Cholesky, problemas de autovalores generalizados simétricos
definidos, valores singulares y mínimos cuadrados. Las matrices son arrays de
numpy de tipo float64; las funciones no modifican sus argumentos.

Las normas de operador de todo el paquete se obtienen como el supremo de un
cociente de Rayleigh xᵀ·a·x / xᵀ·g·x, es decir, como el mayor autovalor
generalizado del par (a, g).
"""

import logging
from collections import namedtuple

import numpy as np
import scipy.linalg
from scipy.linalg import lapack

from .config import config
from .errors import DimensionMismatch, InvalidParameters, NotPositiveDefinite, NotSymmetric
from .util import maxabs

logger = logging.getLogger(__name__)

SYMTOL = 1e-12 # Tolerancia relativa de simetría
RANKTOL = 1e-10 # Umbral relativo de rango / independencia lineal

GeneralizedEigs = namedtuple('GeneralizedEigs', ['values', 'vectors'])
LeastSquares = namedtuple('LeastSquares', ['solution', 'residual'])


def as_matrix(m, name='matriz'):
    """Copia m como matriz float64 de dos dimensiones con entradas finitas"""
    a = np.array(m, dtype=float)
    if a.ndim != 2:
        raise DimensionMismatch(u'%s debe ser bidimensional (ndim=%i)' % (name, a.ndim))
    if not np.all(np.isfinite(a)):
        raise InvalidParameters(u'%s contiene entradas no finitas' % name)
    return a


def _square(a, name='matriz'):
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(u'%s no es cuadrada: %r' % (name, a.shape))
    return a


def sym(a):
    """Parte simétrica (a + aᵀ)/2, sin comprobaciones"""
    return 0.5 * (a + a.T)


def symmetrize(m, tol=SYMTOL, name='matriz'):
    """Comprueba la simetría relativa de m y devuelve (m + mᵀ)/2"""
    a = _square(as_matrix(m, name), name)
    gap = maxabs(a - a.T)
    if gap > tol * max(maxabs(a), np.finfo(float).tiny):
        raise NotSymmetric(u'%s no es simétrica (asimetría %.3e)' % (name, gap))
    return sym(a)


def congruence(t, g):
    """Matriz simétrica tᵀ·g·t"""
    return sym(t.T.dot(g).dot(t))


class SpdFactorization(object):
    """Factorización de Cholesky source = factor·factorᵀ

    source - matriz simétrica definida positiva (simetrizada)
    factor - factor triangular inferior
    """
    def __init__(self, source, factor):
        self.source = source
        self.factor = factor

    @property
    def dim(self):
        return self.source.shape[0]

    def solve(self, y):
        """Resuelve source·x = y (y vector o matriz de columnas)"""
        y = np.asarray(y, dtype=float)
        if self.dim == 0:
            return np.zeros_like(y)
        return scipy.linalg.cho_solve((self.factor, True), y)

    def whiten(self, x):
        """factor⁻¹·x"""
        x = np.asarray(x, dtype=float)
        if self.dim == 0:
            return np.zeros_like(x)
        return scipy.linalg.solve_triangular(self.factor, x, lower=True)

    def whiten_t(self, x):
        """factor⁻ᵀ·x"""
        x = np.asarray(x, dtype=float)
        if self.dim == 0:
            return np.zeros_like(x)
        return scipy.linalg.solve_triangular(self.factor, x, lower=True, trans='T')

    def reconstruction_error(self):
        """‖factor·factorᵀ − source‖_max"""
        return maxabs(self.factor.dot(self.factor.T) - self.source)


def spd_factor(m):
    """Factorización de Cholesky de una matriz simétrica definida positiva

    Lanza NotSymmetric o NotPositiveDefinite (con el índice, desde 0, del
    pivote que falla).
    """
    a = symmetrize(m)
    n = a.shape[0]
    if n == 0:
        return SpdFactorization(a, np.zeros((0, 0)))
    factor, info = lapack.dpotrf(a, lower=1, clean=1)
    if info > 0:
        raise NotPositiveDefinite(info - 1)
    elif info < 0:
        raise InvalidParameters(u'dpotrf: argumento %i no válido' % -info)
    return SpdFactorization(a, factor)


def jacobi_eigh(a, tol=None, max_sweeps=None):
    """Autovalores y autovectores de una matriz simétrica por Jacobi cíclico

    Recorre los pares (p, q) por filas aplicando rotaciones que anulan a[p, q]
    hasta que off(A) <= tol·‖A‖_F o se agotan max_sweeps barridos. Devuelve
    (valores, vectores) sin ordenar; los vectores son ortonormales.
    """
    tol = config['jacobi_tol'] if tol is None else tol
    max_sweeps = config['jacobi_max_sweeps'] if max_sweeps is None else max_sweeps
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    normf = np.linalg.norm(a)
    if n < 2 or normf == 0.0:
        return np.diag(a).copy(), v
    threshold = tol * normf
    for sweep in range(max_sweeps):
        off = np.sqrt(max(np.sum(a * a) - np.sum(np.diag(a) ** 2), 0.0))
        if off <= threshold:
            logger.debug(u'Jacobi convergido en %i barridos (n=%i)', sweep, n)
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / abs(theta)
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        logger.warning(u'Jacobi sin convergencia tras %i barridos (n=%i)', max_sweeps, n)
    return np.diag(a).copy(), v


def symmetric_eigh(a):
    """Autovalores (descendentes) y autovectores de una matriz simétrica

    El método se elige con la clave eigensolver de la configuración.
    """
    if config['eigensolver'] == 'lapack':
        values, vectors = np.linalg.eigh(a)
    else:
        values, vectors = jacobi_eigh(a)
    order = np.argsort(values)[::-1]
    return values[order], vectors[:, order]


def sym_generalized_eigs(a, g, gfactor=None):
    """Problema generalizado simétrico definido a·v = λ·g·v

    Se reduce a forma estándar con el factor de Cholesky de g (g = L·Lᵀ,
    C = L⁻¹·a·L⁻ᵀ). Devuelve GeneralizedEigs con los autovalores en orden
    descendente y los autovectores g-ortonormales por columnas.
    """
    a = symmetrize(a, name='a')
    fact = gfactor if gfactor is not None else spd_factor(g)
    if a.shape[0] != fact.dim:
        raise DimensionMismatch(u'a (%i) y g (%i) de distinta dimensión'
                                % (a.shape[0], fact.dim))
    if fact.dim == 0:
        return GeneralizedEigs(np.zeros(0), np.zeros((0, 0)))
    c = sym(fact.whiten(fact.whiten(a).T))
    values, y = symmetric_eigh(c)
    return GeneralizedEigs(values, fact.whiten_t(y))


def largest_generalized_eig(a, g, gfactor=None):
    """Mayor autovalor generalizado de (a, g) (0 en dimensión 0)"""
    values = sym_generalized_eigs(a, g, gfactor).values
    return float(values[0]) if values.size else 0.0


def subordinate_norm(t, g_dom, g_cod):
    """Norma de t como operador entre espacios con Gram g_dom y g_cod

    sup_{x≠0} √(xᵀ·tᵀ·g_cod·t·x / xᵀ·g_dom·x)
    """
    t = as_matrix(t, 't')
    g_dom = np.asarray(g_dom, dtype=float)
    g_cod = np.asarray(g_cod, dtype=float)
    if t.shape != (g_cod.shape[0], g_dom.shape[0]):
        raise DimensionMismatch(u't %r incompatible con Gram %r -> %r'
                                % (t.shape, g_dom.shape, g_cod.shape))
    if t.size == 0:
        return 0.0
    lam = largest_generalized_eig(congruence(t, g_cod), g_dom)
    return float(np.sqrt(max(lam, 0.0)))


def adjoint(t, g_dom, g_cod):
    """Adjunto de t respecto de los productos escalares g_dom y g_cod"""
    t = as_matrix(t, 't')
    return spd_factor(g_dom).solve(t.T.dot(g_cod))


def singular_values(m):
    """Valores singulares en orden descendente"""
    a = as_matrix(m)
    if a.size == 0:
        return np.zeros(0)
    return scipy.linalg.svdvals(a)


def numeric_rank(m, rtol=RANKTOL):
    """Rango numérico: valores singulares > rtol·(mayor valor singular)"""
    s = singular_values(m)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def has_independent_columns(m, rtol=RANKTOL):
    a = as_matrix(m)
    return numeric_rank(a, rtol) == a.shape[1]


def least_squares(a, b):
    """Solución de mínimos cuadrados de a·x ≈ b y su residuo b − a·x"""
    a = as_matrix(a, 'a')
    b = np.asarray(b, dtype=float)
    if a.shape[1] == 0:
        return LeastSquares(np.zeros((0,) + b.shape[1:]), b.copy())
    x = scipy.linalg.lstsq(a, b)[0]
    return LeastSquares(x, b - a.dot(x))


def null_space(m, rtol=RANKTOL):
    """Base ortonormal (euclídea) del núcleo de m"""
    a = as_matrix(m)
    if a.shape[1] == 0:
        return np.zeros((0, 0))
    if a.shape[0] == 0 or maxabs(a) == 0.0:
        return np.eye(a.shape[1])
    return scipy.linalg.null_space(a, rcond=rtol)


def range_basis(m, rtol=RANKTOL):
    """Base ortonormal (euclídea) de la imagen de m"""
    a = as_matrix(m)
    if a.shape[1] == 0 or maxabs(a) == 0.0:
        return np.zeros((a.shape[0], 0))
    return scipy.linalg.orth(a, rcond=rtol)
