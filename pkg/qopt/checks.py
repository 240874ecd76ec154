#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
#   checks.py
#   Registro de comprobaciones de identidades y cotas
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
"""Comprobaciones con nombre estable

Cada comprobación lee una entrada de identity_residuals del informe. El valor
guardado es una discrepancia: la comprobación pasa si es menor o igual que
tol·escala, con escala = max(1, C_qopt).

Para métodos sin consistencia completa (C_qopt = inf) las identidades y cotas
se cumplen con los convenios de +∞ y se marcan como no aplicables; solamente
full-consistency falla.
"""

import logging
from collections import OrderedDict, namedtuple

from .clases import is_unbounded
from .errors import UnknownCheck
from .util import relscale

logger = logging.getLogger(__name__)

CheckSpec = namedtuple('CheckSpec', ['name', 'tolerance', 'description'])
CheckResult = namedtuple('CheckResult', ['name', 'passed', 'residual', 'tolerance', 'applicable'])

_CHECKS = [
    CheckSpec('full-consistency', 1e-9,
              u'b(u, σ) = â(u, E·σ) en (S∩V) × S'),
    CheckSpec('characterizations-agree', 0.5,
              u'las reformulaciones de la cuasi-optimalidad coinciden'),
    CheckSpec('cqopt-eq-sqrt1-plus-deltaV2', 1e-8,
              u'C_qopt = √(1 + δ_V²)'),
    CheckSpec('deltaS-two-sided-bound', 1e-8,
              u'max{C_stab, δ_S} ≤ C_qopt ≤ √(C_stab² + δ_S²)'),
    CheckSpec('route-agreement-dualnorm', 1e-8,
              u'‖P̂‖ = sup ‖b̂(·, σ)‖/‖b(·, σ)‖'),
    CheckSpec('angle-route', 1e-7,
              u'‖P̂‖ = 1/sin α'),
    CheckSpec('classical-upper-bound', 1e-8,
              u'C_qopt ≤ C_b̂/β'),
    CheckSpec('buckholtz-norm-identity', 1e-8,
              u'‖P̂‖ = ‖I − P̂‖'),
    CheckSpec('pext-projection', 1e-9,
              u'P̂ es una proyección sobre S que extiende P'),
    CheckSpec('galerkin-orthogonality', 1e-9,
              u'b̂(x − P̂·x, σ) = 0'),
    CheckSpec('cqopt-geq-cstab', 1e-8,
              u'C_qopt ≥ C_stab'),
    CheckSpec('cqopt-geq-one', 1e-8,
              u'C_qopt ≥ 1'),
    CheckSpec('deltaS-zero-implies-cstab', 1e-8,
              u'δ_S = 0 ⇒ C_qopt = C_stab'),
    CheckSpec('deltaV-stability-bound', 1e-8,
              u'δ_V ≥ √(C_stab² − 1)'),
    CheckSpec('cstab-routes', 1e-8,
              u'C_stab por el suavizador y como ‖P‖'),
    CheckSpec('cstab-inverse-infsup', 1e-8,
              u'C_stab = 1/β para S ⊆ V y E = id_S'),
    CheckSpec('deltaV-routes', 1e-7,
              u'δ_V por restricción y por el cociente directo'),
    CheckSpec('deltaS-routes', 1e-7,
              u'δ_S por restricción y por el cociente directo'),
    CheckSpec('consistency-residual-bound', 1e-9,
              u'‖Π_S − P‖ ≤ δ_V'),
    ]

CHECKS = OrderedDict((spec.name, spec) for spec in _CHECKS)


def resolve_checks(names=None):
    """Lista de CheckSpec para los nombres dados (todas si names está vacío)"""
    if not names:
        return list(CHECKS.values())
    unknown = [name for name in names if name not in CHECKS]
    if unknown:
        raise UnknownCheck(u'Comprobaciones desconocidas: %s' % ', '.join(unknown))
    return [CHECKS[name] for name in names]


def evaluate_check(report, spec, tolerance=None):
    """Evalúa una comprobación sobre un AnalysisReport"""
    tol = spec.tolerance if tolerance is None else float(tolerance)
    residual = report.identity_residuals.get(spec.name)
    if residual is None:
        # p.e. cstab-inverse-infsup con E ≠ id_S, o un método inconsistente
        return CheckResult(spec.name, True, None, tol, False)
    scale = 1.0 if is_unbounded(report.c_qopt_opnorm) else relscale(report.c_qopt_opnorm)
    passed = residual <= tol * scale
    if not passed:
        logger.warning(u'%s: comprobación %s fallida (residuo %.3e, tolerancia %.1e)',
                       report.model, spec.name, residual, tol * scale)
    return CheckResult(spec.name, passed, residual, tol, True)


def evaluate_checks(report, names=None, overrides=None):
    """Evalúa las comprobaciones pedidas; devuelve OrderedDict nombre → CheckResult"""
    overrides = overrides or {}
    unknown = [name for name in overrides if name not in CHECKS]
    if unknown:
        raise UnknownCheck(u'Tolerancias para comprobaciones desconocidas: %s' % ', '.join(unknown))
    results = OrderedDict()
    for spec in resolve_checks(names):
        results[spec.name] = evaluate_check(report, spec, overrides.get(spec.name))
    return results


def all_passed(results):
    return all(result.passed for result in results.values())
