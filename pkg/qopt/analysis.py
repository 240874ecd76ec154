#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
#   analysis.py
#   Constantes de estabilidad, cuasi-optimalidad y consistencia
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
"""Cálculo y verificación cruzada de las constantes de un método

Notación (coeficientes en las bases de V y S):
    G - Gram de V̂;  G_V, G_S - Gram inducidas en V y S
    B - matriz de b;  E - matriz del suavizador (coeficientes en V)
    D = Bᵀ·G_S⁻¹·B - Gram de la norma ‖b(·, σ)‖_{S′}

Cada constante es el supremo de un cociente de Rayleigh y se obtiene con
un problema de autovalores generalizado (linalg.largest_generalized_eig).
"""

import logging
import math
from collections import OrderedDict, namedtuple

import numpy as np
import scipy.optimize

from .clases import UNBOUNDED, AnalysisReport, Subspace, is_unbounded
from .errors import DimensionMismatch, InvalidParameters
from .linalg import (congruence, largest_generalized_eig, least_squares, range_basis,
                     singular_values, subordinate_norm, sym)
from .method import (CONSISTENCYTOL, approximation_operator, check_full_consistency,
                     consistency_scale, extended_projection, nonconforming_complement)
from .spaces import complement_coefficients, orthogonal_complement, subspace_angle
from .util import maxabs, relscale

logger = logging.getLogger(__name__)

OperatorNorms = namedtuple('OperatorNorms', ['c_qopt', 'complement_norm'])
AngleRoute = namedtuple('AngleRoute', ['c_qopt', 'alpha', 'degenerate'])
ClassicalBound = namedtuple('ClassicalBound', ['c_bext', 'beta', 'ratio'])
RestrictionCheck = namedtuple('RestrictionCheck', ['c', 'delta', 'norm', 'lower_ok', 'upper_ok'])


def b_dual_gram(m):
    """D = Bᵀ·G_S⁻¹·B, con ‖b(·, σ)‖²_{S′} = σᵀ·D·σ"""
    return sym(m.b_matrix.T.dot(m.setup.s.factorization.solve(m.b_matrix)))


def b_dual_norm(m, sigma):
    """‖σ‖_b = sup_{‖s‖=1} b(s, σ)"""
    w = m.b_matrix.dot(np.asarray(sigma, dtype=float))
    return float(np.sqrt(max(np.dot(w, m.setup.s.factorization.solve(w)), 0.0)))


def compute_cstab(m):
    """C_stab = sup_σ ‖E·σ‖ / ‖b(·, σ)‖_{S′}"""
    num = congruence(m.smoother, m.setup.gram_v)
    return math.sqrt(max(largest_generalized_eig(num, b_dual_gram(m)), 0.0))


def inf_sup_beta(m):
    """β = inf_s sup_σ b(s, σ)/(‖s‖·‖σ‖): menor valor singular de L_S⁻¹·B·L_S⁻ᵀ"""
    fact = m.setup.s.factorization
    whitened = fact.whiten(fact.whiten(m.b_matrix).T).T
    return float(singular_values(whitened)[-1])


def compute_cqopt_opnorm(ops, setup):
    """C_qopt = ‖P̂‖ y ‖I − P̂‖ con la Gram de V̂ en ambos lados"""
    g = setup.vhat.gram
    ambient = ops.p_ext_ambient
    norm = subordinate_norm(ambient, g, g)
    complement = subordinate_norm(np.eye(setup.vhat.dim) - ambient, g, g)
    return OperatorNorms(norm, complement)


def compute_cqopt_dualnorm(m, ops):
    """C_qopt = sup_σ ‖b̂(·, σ)‖_{V̂′} / ‖b(·, σ)‖_{S′}"""
    num = sym(ops.b_ext.T.dot(m.setup.vhat.factorization.solve(ops.b_ext)))
    return math.sqrt(max(largest_generalized_eig(num, b_dual_gram(m)), 0.0))


def kernel_subspace(setup, ops):
    """N(P̂) = R(id_V − P) como subespacio de V̂ (posiblemente trivial)"""
    defect = setup.v.basis - setup.s.basis.dot(ops.p.matrix)
    return Subspace(setup.vhat, range_basis(defect), 'other')


def compute_cqopt_angle(setup, ops):
    """C_qopt = 1/sin α, con α el ángulo entre S y R(id_V − P)

    El seno se obtiene de la distancia a S de una base â-ortonormal de
    R(id_V − P) para no perder precisión cuando α es pequeño.
    """
    kernel = kernel_subspace(setup, ops)
    if kernel.is_trivial:
        return AngleRoute(1.0, math.pi / 2, False)
    angle = subspace_angle(setup, setup.s, kernel)
    q = kernel.orthonormal_basis
    residual = q - setup.s.project(q)
    sine = float(singular_values(setup.vhat.factorization.factor.T.dot(residual))[-1])
    if sine <= 0.0:
        return AngleRoute(UNBOUNDED, 0.0, True)
    alpha = math.atan2(sine, angle.cosine)
    return AngleRoute(1.0 / sine, alpha, angle.degenerate)


def _restricted_norm(setup, ops, y):
    """Norma de P̂ restringido al complemento â-ortogonal de y"""
    q = orthogonal_complement(setup, y).basis
    if not q.shape[1]:
        return 0.0
    return subordinate_norm(ops.p_ext_ambient.dot(q), np.eye(q.shape[1]), setup.vhat.gram)


def compute_delta_v(setup, ops):
    """δ_V = ‖P̂ restringido a S⊥‖"""
    return _restricted_norm(setup, ops, setup.s)


def compute_delta_s(setup, ops):
    """δ_S = ‖P̂ restringido a V⊥‖ (0 si S ⊆ V)"""
    return _restricted_norm(setup, ops, setup.v)


def _ritz_s_on_v(setup):
    """Coeficientes en S de Π_S·v para v dado en coeficientes de V"""
    return setup.s.factorization.solve(setup.cross.T)


def _ritz_v_on_s(setup):
    """Coeficientes en V de Π_V·s para s dado en coeficientes de S"""
    return setup.v.factorization.solve(setup.cross)


def _quotient_sup(num, den):
    """sup √(xᵀ·num·x / xᵀ·den·x), 0 en dimensión 0"""
    if not num.shape[0]:
        return 0.0
    return math.sqrt(max(largest_generalized_eig(num, den), 0.0))


def compute_delta_v_direct(m, ops=None):
    """δ_V = sup_{v∈V} ‖Π_S·v − P·v‖ / ‖v − Π_S·v‖

    El supremo se restringe al complemento de S∩V en V, donde el denominador
    no se anula.
    """
    setup = m.setup
    c = complement_coefficients(setup.v, setup.s_conforming)
    rs = _ritz_s_on_v(setup)
    p = ops.p.matrix if ops is not None else approximation_operator(m).matrix
    num = congruence((rs - p).dot(c), setup.gram_s)
    den = congruence((setup.v.basis - setup.s.basis.dot(rs)).dot(c), setup.vhat.gram)
    return _quotient_sup(num, den)


def compute_delta_s_direct(m, ops=None):
    """δ_S = sup_{s∈S} ‖s − P·Π_V·s‖ / ‖s − Π_V·s‖ (sobre el complemento de S∩V en S)"""
    setup = m.setup
    c = nonconforming_complement(setup)
    rv = _ritz_v_on_s(setup)
    p = ops.p.matrix if ops is not None else approximation_operator(m).matrix
    num = congruence((np.eye(setup.s.dim) - p.dot(rv)).dot(c), setup.gram_s)
    den = congruence((setup.s.basis - setup.v.basis.dot(rv)).dot(c), setup.vhat.gram)
    return _quotient_sup(num, den)


def compute_classical_bound(m, ops):
    """Continuidad C_b̂ de b̂, constante inf-sup β de b y cociente C_b̂/β"""
    num = sym(ops.b_ext.T.dot(m.setup.vhat.factorization.solve(ops.b_ext)))
    c_bext = math.sqrt(max(largest_generalized_eig(num, m.setup.gram_s), 0.0))
    beta = inf_sup_beta(m)
    return ClassicalBound(c_bext, beta, c_bext / beta)


def consistency_residual(m, ops, v):
    """‖ρ‖ con ρ(σ) = b(Π_S·v, σ) − â(v, E·σ), en la norma dual de ‖·‖_b

    v se da en coeficientes de V. ops no es necesario (puede ser None).
    """
    setup = m.setup
    v = np.asarray(v, dtype=float)
    rho = m.b_matrix.T.dot(_ritz_s_on_v(setup).dot(v)) - m.smoother.T.dot(setup.gram_v.dot(v))
    # sup_σ ρ·σ / √(σᵀ·D·σ) = √(ρᵀ·D⁻¹·ρ) con D⁻¹ = B⁻¹·G_S·B⁻ᵀ
    x = m.solve_transposed(rho)
    return float(np.sqrt(max(np.dot(x, setup.gram_s.dot(x)), 0.0)))


def consistency_residual_sup(m):
    """sup_{‖v‖=1} ‖ρ(v)‖ = ‖Π_S − P‖ como operador V → S"""
    setup = m.setup
    defect = _ritz_s_on_v(setup) - approximation_operator(m).matrix
    return subordinate_norm(defect, setup.gram_v, setup.gram_s)


def verify_restriction_lemma(t, g, y, tol=1e-9):
    """Cotas max{C, δ} ≤ ‖T‖ ≤ √(C² + δ²)

    C = ‖T restringido a Y‖, δ = ‖T restringido a Y⊥‖, con y un Subspace del
    espacio de Gram g.
    """
    t = np.asarray(t, dtype=float)
    g = np.asarray(g, dtype=float)
    space = y.ambient
    if g.shape != space.gram.shape or maxabs(g - space.gram) > 1e-12 * max(1.0, maxabs(g)):
        raise DimensionMismatch(u'y no pertenece al espacio de Gram g')
    qy = y.orthonormal_basis
    qc = orthogonal_complement(space, y).basis
    c = subordinate_norm(t.dot(qy), np.eye(qy.shape[1]), g) if qy.shape[1] else 0.0
    delta = subordinate_norm(t.dot(qc), np.eye(qc.shape[1]), g) if qc.shape[1] else 0.0
    norm = subordinate_norm(t, g, g)
    slack = tol * max(1.0, norm)
    lower_ok = max(c, delta) <= norm + slack
    upper_ok = norm <= math.sqrt(c * c + delta * delta) + slack
    return RestrictionCheck(c, delta, norm, lower_ok, upper_ok)


def _unit_directions(gram, thetas):
    """Vectores de coeficientes â-unitarios de un espacio de dimensión 2"""
    l = np.linalg.cholesky(gram)
    circle = np.vstack([np.cos(thetas), np.sin(thetas)])
    return np.linalg.solve(l.T, circle)


def cqopt_supinf(m, ops, samples=720):
    """sup_{‖s‖=1} inf_{‖σ‖=1} ‖b̂(·, σ)‖_{V̂′} / |b(s, σ)|

    Exacto para dim S = 1; para dim S = 2 se muestrea el ángulo de s y σ y se
    refina con una minimización acotada en una variable.
    """
    setup = m.setup
    k = setup.s.dim
    num = sym(ops.b_ext.T.dot(setup.vhat.factorization.solve(ops.b_ext)))
    if k == 1:
        g = setup.gram_s[0, 0]
        return math.sqrt(num[0, 0] * g) / abs(m.b_matrix[0, 0])
    if k != 2:
        raise InvalidParameters(u'Fórmula sup-inf solamente para dim S ≤ 2 (dim S = %i)' % k)
    gram = setup.gram_s
    step = math.pi / samples

    def ratio(theta_s, theta_sigma):
        s = _unit_directions(gram, np.atleast_1d(theta_s))
        sigma = _unit_directions(gram, np.atleast_1d(theta_sigma))
        top = np.sqrt(np.maximum(np.einsum('ij,ij->j', sigma, num.dot(sigma)), 0.0))
        bottom = np.abs(s.T.dot(m.b_matrix).dot(sigma)).ravel()
        with np.errstate(divide='ignore'):
            return np.where(bottom > 0.0, top / bottom, np.inf)

    grid = np.arange(samples) * step

    def inner(theta_s):
        values = ratio(theta_s, grid)
        best = grid[int(np.argmin(values))]
        res = scipy.optimize.minimize_scalar(lambda t: float(ratio(theta_s, t)[0]),
                                             bounds=(best - step, best + step), method='bounded',
                                             options={'xatol': 1e-13})
        return min(float(res.fun), float(values.min()))

    outer = np.array([inner(t) for t in grid])
    best = grid[int(np.argmax(outer))]
    res = scipy.optimize.minimize_scalar(lambda t: -inner(t), bounds=(best - step, best + step),
                                         method='bounded', options={'xatol': 1e-13})
    return max(-float(res.fun), float(outer.max()))


def quasi_optimality_characterizations(m):
    """Reformulaciones equivalentes de la cuasi-optimalidad, evaluadas por separado

    fully-consistent - b(u, σ) = â(u, E·σ) en (S∩V) × S
    p-fixes-conforming - P·u = u en S∩V
    pext-exists - existe una proyección lineal de V̂ sobre S que extiende P
    bext-exists - b y ⟨LA·,·⟩ tienen una extensión común b̂
    galerkin-orthogonality - existen b̂, P̂ con b̂(x − P̂·x, σ) = 0
    """
    setup = m.setup
    scale = consistency_scale(m)
    check = check_full_consistency(m)
    result = OrderedDict()
    result['fully-consistent'] = check.residual <= CONSISTENCYTOL * scale
    result['p-fixes-conforming'] = check.projection_residual <= CONSISTENCYTOL * max(
        1.0, maxabs(setup.conforming_s_coeffs))
    stacked = np.hstack([setup.v.basis, setup.s.basis]).T
    p = approximation_operator(m).matrix
    # X·[Φ_V, Φ_S] = [P, I]
    images = np.hstack([p, np.eye(setup.s.dim)]).T
    lsq = least_squares(stacked, images)
    result['pext-exists'] = maxabs(lsq.residual) <= CONSISTENCYTOL * max(1.0, maxabs(images))
    # [Φ_V, Φ_S]ᵀ·b̂ = [G_V·E; B]
    values = np.vstack([setup.gram_v.dot(m.smoother), m.b_matrix])
    lsq = least_squares(stacked, values)
    result['bext-exists'] = maxabs(lsq.residual) <= CONSISTENCYTOL * scale
    b_ext = lsq.solution
    pc = m.solve_transposed(b_ext.T)
    ambient = setup.s.basis.dot(pc)
    defect = max(maxabs(pc.dot(setup.v.basis) - p),
                 maxabs(pc.dot(setup.s.basis) - np.eye(setup.s.dim)),
                 maxabs((np.eye(setup.vhat.dim) - ambient).T.dot(b_ext)) / scale)
    result['galerkin-orthogonality'] = defect <= CONSISTENCYTOL * max(1.0, maxabs(ambient))
    return result


def _inclusion_coefficients(setup):
    """Coeficientes en V de la base de S si S ⊆ V (None en otro caso)"""
    if not setup.is_conforming:
        return None
    lsq = least_squares(setup.v.basis, setup.s.basis)
    if maxabs(lsq.residual) > 1e-10 * max(1.0, maxabs(setup.s.basis)):
        return None
    return lsq.solution


def analyze_method(m, model='', parameters=None):
    """Calcula todas las constantes de m y sus verificaciones cruzadas

    Para métodos sin consistencia algebraica completa, C_qopt, δ_V y δ_S valen
    UNBOUNDED y las cantidades que dependen de b̂ quedan sin definir (None).
    """
    setup = m.setup
    parameters = OrderedDict() if parameters is None else parameters
    flags = []
    residuals = OrderedDict()

    c_stab = compute_cstab(m)
    beta = inf_sup_beta(m)
    residuals['cstab-routes'] = abs(c_stab - approximation_operator(m).norm())
    inclusion = _inclusion_coefficients(setup)
    if inclusion is not None and maxabs(m.smoother - inclusion) <= 1e-12 * max(1.0, maxabs(inclusion)):
        residuals['cstab-inverse-infsup'] = abs(c_stab - 1.0 / beta)
    if setup.is_conforming:
        flags.append('fully-conforming')
    residual_sup = consistency_residual_sup(m)

    check = check_full_consistency(m)
    characterizations = quasi_optimality_characterizations(m)
    residuals['characterizations-agree'] = 0.0 if len(set(characterizations.values())) == 1 else 1.0
    residuals['full-consistency'] = check.residual / check.scale
    if not check.consistent:
        flags.append('inconsistent')
        logger.info(u'%s: método no cuasi-óptimo, C_qopt = inf', m.label)
        return AnalysisReport(model, parameters, setup.proxy_dim, False,
                              c_stab, UNBOUNDED, UNBOUNDED, UNBOUNDED,
                              UNBOUNDED, UNBOUNDED, None, UNBOUNDED,
                              beta, None, residual_sup, residuals, flags)

    ops = extended_projection(m)
    opnorms = compute_cqopt_opnorm(ops, setup)
    c_qopt = opnorms.c_qopt
    dual = compute_cqopt_dualnorm(m, ops)
    angle = compute_cqopt_angle(setup, ops)
    delta_v = compute_delta_v(setup, ops)
    delta_s = compute_delta_s(setup, ops)
    classical = compute_classical_bound(m, ops)
    if angle.degenerate:
        flags.append('degenerate-angle')

    scale = relscale(c_qopt)
    residuals['pext-projection'] = max(ops.residuals['pext-identity-on-s'],
                                       ops.residuals['pext-extends-p'],
                                       ops.residuals['pext-idempotent'])
    residuals['galerkin-orthogonality'] = ops.residuals['galerkin-orthogonality']
    residuals['cqopt-eq-sqrt1-plus-deltaV2'] = abs(c_qopt - math.sqrt(1.0 + delta_v ** 2))
    residuals['deltaS-two-sided-bound'] = max(max(c_stab, delta_s) - c_qopt,
                                              c_qopt - math.sqrt(c_stab ** 2 + delta_s ** 2))
    residuals['route-agreement-dualnorm'] = abs(c_qopt - dual)
    if not is_unbounded(angle.c_qopt):
        residuals['angle-route'] = abs(c_qopt - angle.c_qopt)
    residuals['classical-upper-bound'] = c_qopt - classical.ratio
    if 0 < setup.s.dim < setup.vhat.dim:
        residuals['buckholtz-norm-identity'] = abs(c_qopt - opnorms.complement_norm)
    residuals['cqopt-geq-cstab'] = c_stab - c_qopt
    residuals['cqopt-geq-one'] = 1.0 - c_qopt
    residuals['deltaS-zero-implies-cstab'] = abs(c_qopt - c_stab) if delta_s <= 1e-8 * scale else 0.0
    residuals['deltaV-stability-bound'] = (math.sqrt(c_stab ** 2 - 1.0) - delta_v) if c_stab >= 1.0 else 0.0
    residuals['deltaV-routes'] = abs(delta_v - compute_delta_v_direct(m, ops))
    residuals['deltaS-routes'] = abs(delta_s - compute_delta_s_direct(m, ops))
    residuals['consistency-residual-bound'] = residual_sup - delta_v
    if setup.is_conforming and delta_s != 0.0:
        logger.warning(u'%s: δ_S = %.3e en un espacio conforme', m.label, delta_s)

    return AnalysisReport(model, parameters, setup.proxy_dim, True,
                          c_stab, c_qopt, dual, angle.c_qopt,
                          delta_v, delta_s, angle.alpha, classical.ratio,
                          classical.beta, classical.c_bext, residual_sup, residuals, flags)
