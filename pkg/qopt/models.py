#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
#   models.py
#   Generadores de problemas de prueba
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
"""Modelos incorporados

sequence-example - ℓ₂ truncado con espacio discreto Sₙ no conforme
poisson-1d - Poisson 1D con P1 continuo o P1 roto sobre una malla gruesa
synthetic-2d - casos exactos en ℝ²
random - configuraciones aleatorias pequeñas con consistencia completa

Cada generador devuelve (HilbertSetup, MethodSpec).
"""

import logging
from collections import OrderedDict, namedtuple

import numpy as np

from .clases import GramSpace, MethodSpec, OperatorMatrix, Subspace
from .errors import InvalidParameters, UnknownModel
from .linalg import singular_values
from .method import inclusion_smoother, ritz_smoother, smoother_from_approximation
from .spaces import make_setup

logger = logging.getLogger(__name__)

SEQUENCE_VARIANTS = ('1', '2', 'zero', 'ritz')
POISSON_SPACES = ('conforming-P1', 'broken-P1')
POISSON_SMOOTHERS = ('identity-on-conforming-average', 'ritz', 'none')
POISSON_FORMS = ('auto', 'energy', 'sip')
SYNTHETIC_CASES = ('identity-T1', 'half-ones-T2', 'angle-pi-4')

SequenceExampleParams = namedtuple('SequenceExampleParams',
                                   ['n', 'alpha', 'beta', 'truncation', 'variant', 'b_scale'],
                                   defaults=(2, 1.0, 1.0, None, '1', 1.0))
Poisson1dParams = namedtuple('Poisson1dParams',
                             ['coarse_cells', 'fine_refinement', 'discrete_space',
                              'penalty_weight', 'smoother', 'bilinear_form'],
                             defaults=(4, 4, 'broken-P1', 1.0,
                                       'identity-on-conforming-average', 'auto'))
SyntheticParams = namedtuple('SyntheticParams', ['case'], defaults=('angle-pi-4',))
RandomSetupParams = namedtuple('RandomSetupParams',
                               ['seed', 'dim', 's_dim', 'conforming_dim', 'consistent'],
                               defaults=(0, 6, None, None, True))

SyntheticCase = namedtuple('SyntheticCase', ['space', 'operator', 'subspace', 'setup', 'method'])


def _require(condition, message):
    if not condition:
        raise InvalidParameters(message)


def _integer(value, name):
    """Valor entero de un parámetro; rechaza valores con parte fraccionaria"""
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise InvalidParameters(u'%s debe ser entero (%r)' % (name, value))
    _require(number.is_integer(), u'%s debe ser entero (%r)' % (name, value))
    return int(number)


# ---------------------------------------------------------------------------
# Sucesiones: V̂ = ℝᴺ, V = span{e₁, …, e_{N−1}}, Sₙ = span{e₁, …, e_{n−1}, s̄}
# con s̄ = α·e₀ + eₙ

def _sequence_params(p):
    variant = str(p.variant)
    n = _integer(p.n, u'n')
    truncation = n + 2 if p.truncation is None else _integer(p.truncation, u'truncation')
    p = p._replace(n=n, alpha=float(p.alpha), beta=float(p.beta),
                   truncation=truncation, variant=variant, b_scale=float(p.b_scale))
    _require(p.n >= 1, u'n debe ser ≥ 1 (n = %r)' % p.n)
    _require(p.alpha > 0.0, u'α debe ser positivo (α = %r)' % p.alpha)
    _require(p.beta > 0.0, u'β debe ser positivo (β = %r)' % p.beta)
    _require(p.b_scale > 0.0, u'El factor de b debe ser positivo (%r)' % p.b_scale)
    _require(p.truncation >= p.n + 2, u'Truncación N = %i menor que n + 2 = %i'
             % (p.truncation, p.n + 2))
    _require(variant in SEQUENCE_VARIANTS, u'Variante desconocida: %s' % variant)
    _require(variant != 'zero' or p.n == 1,
             u'La variante zero solamente es consistente para n = 1')
    return p


def build_sequence_example(p=None):
    """Ejemplo en ℓ₂ con P_{1,n} (ignora s̄), P_{2,n} (explota s̄), P = 0 o P = Π_S"""
    p = _sequence_params(p if p is not None else SequenceExampleParams())
    n, big_n, alpha = p.n, p.truncation, p.alpha
    eye = np.eye(big_n)
    vhat = GramSpace.euclidean(big_n)
    sbar = alpha * eye[:, 0] + eye[:, n]
    s_basis = np.column_stack([eye[:, 1:n], sbar])
    setup = make_setup(vhat, eye[:, 1:], s_basis, eye[:, 1:n])
    # b(s̄, ·) escalado por b_scale; las filas de S∩V no cambian
    b_matrix = setup.gram_s.copy()
    b_matrix[n - 1, :] *= p.b_scale
    label = u'sucesiones-%s' % p.variant
    if p.variant == 'ritz':
        return setup, MethodSpec(setup, b_matrix, ritz_smoother(setup), label)
    # P en coeficientes: columna j ↔ e_{j+1}, fila i < n−1 ↔ e_{i+1}, fila n−1 ↔ s̄
    proj = np.zeros((setup.s.dim, setup.v.dim))
    if p.variant in ('1', '2'):
        proj[:n - 1, :n - 1] = np.eye(n - 1)
    if p.variant == '2':
        proj[n - 1, n - 1] = 1.0
        proj[n - 1, n] = p.beta / (1.0 + alpha ** 2)
    smoother = smoother_from_approximation(setup, b_matrix, proj)
    return setup, MethodSpec(setup, b_matrix, smoother, label)


# ---------------------------------------------------------------------------
# Poisson 1D en (0, 1) con valores de contorno nulos

class FineMesh(object):
    """Malla fina anidada en la gruesa y coordenadas de V̂

    Cada nodo interior de la malla fina tiene un valor; si el espacio es roto
    los nodos gruesos interiores tienen dos (límite por la izquierda y por la
    derecha). Los nodos de contorno no tienen coordenada (valor 0).
    """
    def __init__(self, coarse_cells, refinement, broken):
        self.coarse_cells = coarse_cells
        self.refinement = refinement
        self.fine_cells = coarse_cells * refinement
        self.h_fine = 1.0 / self.fine_cells
        self.h_coarse = 1.0 / coarse_cells
        self.broken = broken
        self._slots = {}
        index = 0
        for j in range(1, self.fine_cells):
            if broken and self.is_coarse(j):
                self._slots[j] = (index, index + 1)
                index += 2
            else:
                self._slots[j] = (index, index)
                index += 1
        self.dim = index

    def is_coarse(self, j):
        return j % self.refinement == 0

    def slot(self, j, side):
        """Coordenada del valor en el nodo j por el lado side ('left', 'right')"""
        if j not in self._slots:
            return None
        return self._slots[j][0 if side == 'left' else 1]

    def coarse_nodes(self):
        """Índices finos de los nodos gruesos interiores"""
        return [c * self.refinement for c in range(1, self.coarse_cells)]

    def gram(self, penalty_weight):
        """â = Σ ∫v′w′ + η/h_gruesa·Σ [v][w]"""
        g = np.zeros((self.dim, self.dim))
        local = np.array([[1.0, -1.0], [-1.0, 1.0]])
        for j in range(self.fine_cells):
            self._add(g, self.slot(j, 'right'), self.slot(j + 1, 'left'), local / self.h_fine)
        if self.broken:
            for j in self.coarse_nodes():
                self._add(g, self.slot(j, 'left'), self.slot(j, 'right'),
                          local * penalty_weight / self.h_coarse)
        return g

    @staticmethod
    def _add(g, a, b, block):
        for (i, row) in ((a, 0), (b, 1)):
            for (k, col) in ((a, 0), (b, 1)):
                if i is not None and k is not None:
                    g[i, k] += block[row, col]

    def vector(self, values):
        """Coordenadas de una función dada por {(nodo, lado): valor}"""
        x = np.zeros(self.dim)
        for (j, side), value in values.items():
            idx = self.slot(j, side)
            if idx is not None:
                x[idx] = value
        return x

    def fine_hats(self):
        return np.column_stack([self.vector({(j, 'left'): 1.0, (j, 'right'): 1.0})
                                for j in range(1, self.fine_cells)])

    def coarse_hats(self):
        r = self.refinement
        columns = []
        for c in self.coarse_nodes():
            values = {}
            for j in range(c - r + 1, c + r):
                w = 1.0 - abs(j - c) / float(r)
                values[(j, 'left')] = values[(j, 'right')] = w
            columns.append(self.vector(values))
        return np.column_stack(columns) if columns else np.zeros((self.dim, 0))

    def broken_functions(self):
        """P1 por celdas gruesas, sin las funciones no nulas en el contorno"""
        r = self.refinement
        columns = []
        for c in range(self.coarse_cells):
            first, last = c * r, (c + 1) * r
            for end in ('left', 'right'):
                if (end == 'left' and first == 0) or (end == 'right' and last == self.fine_cells):
                    continue
                values = {}
                for j in range(first, last + 1):
                    t = (j - first) / float(r)
                    w = 1.0 - t if end == 'left' else t
                    if j == first:
                        values[(j, 'right')] = w
                    elif j == last:
                        values[(j, 'left')] = w
                    else:
                        values[(j, 'left')] = values[(j, 'right')] = w
                columns.append(self.vector(values))
        return np.column_stack(columns)

    def _value(self, u, j, side):
        idx = self.slot(j, side)
        return 0.0 if idx is None else u[idx]

    def coarse_derivatives(self, functions):
        """Derivada en cada celda gruesa (funciones lineales por celda gruesa)"""
        r = self.refinement
        rows = []
        for c in range(self.coarse_cells):
            first, last = c * r, (c + 1) * r
            rows.append([(self._value(u, last, 'left') - self._value(u, first, 'right')) / self.h_coarse
                         for u in functions.T])
        return np.array(rows)

    def jumps(self, functions):
        """[u] = u⁻ − u⁺ en los nodos gruesos interiores"""
        return np.array([[self._value(u, j, 'left') - self._value(u, j, 'right') for u in functions.T]
                         for j in self.coarse_nodes()]).reshape(-1, functions.shape[1])

    def averaging(self, functions):
        """Coeficientes de hat fino del promedio nodal de cada función"""
        columns = []
        for u in functions.T:
            columns.append([0.5 * (self._value(u, j, 'left') + self._value(u, j, 'right'))
                            for j in range(1, self.fine_cells)])
        return np.array(columns).T


def _poisson_params(p):
    p = p._replace(coarse_cells=_integer(p.coarse_cells, u'coarse_cells'),
                   fine_refinement=_integer(p.fine_refinement, u'fine_refinement'),
                   penalty_weight=float(p.penalty_weight))
    _require(p.coarse_cells >= 2, u'Se necesitan al menos 2 celdas gruesas (%i)' % p.coarse_cells)
    _require(p.fine_refinement >= 2, u'El refinamiento debe ser ≥ 2 (%i)' % p.fine_refinement)
    _require(p.penalty_weight > 0.0, u'El peso de penalización debe ser positivo (%r)' % p.penalty_weight)
    _require(p.discrete_space in POISSON_SPACES, u'Espacio discreto desconocido: %s' % p.discrete_space)
    _require(p.smoother in POISSON_SMOOTHERS, u'Suavizador desconocido: %s' % p.smoother)
    _require(p.bilinear_form in POISSON_FORMS, u'Forma bilineal desconocida: %s' % p.bilinear_form)
    return p


def sip_form(mesh, functions, penalty_weight):
    """Forma de penalización interior simétrica sobre funciones P1 por celdas gruesas

    b(s, σ) = Σ∫s′σ′ − Σ{s′}[σ] − Σ[s]{σ′} + η/h·Σ[s][σ]
    """
    deriv = mesh.coarse_derivatives(functions)
    jumps = mesh.jumps(functions)
    stiffness = mesh.h_coarse * deriv.T.dot(deriv)
    average = 0.5 * (deriv[:-1, :] + deriv[1:, :])
    consistency = average.T.dot(jumps)
    penalty = penalty_weight / mesh.h_coarse * jumps.T.dot(jumps)
    return stiffness - consistency - consistency.T + penalty


def build_poisson_1d(p=None):
    """Poisson 1D: V = P1 continuo fino, S = P1 (continuo o roto) grueso"""
    p = _poisson_params(p if p is not None else Poisson1dParams())
    broken = p.discrete_space == 'broken-P1'
    mesh = FineMesh(p.coarse_cells, p.fine_refinement, broken)
    vhat = GramSpace(mesh.gram(p.penalty_weight), u'V̂ (%s)' % p.discrete_space)
    hats = mesh.coarse_hats()
    s_basis = mesh.broken_functions() if broken else hats
    setup = make_setup(vhat, mesh.fine_hats(), s_basis, hats)
    if p.smoother == 'ritz':
        smoother = ritz_smoother(setup)
    elif p.smoother == 'none':
        smoother = inclusion_smoother(setup)
    else:
        smoother = mesh.averaging(s_basis)
    form = p.bilinear_form
    if form == 'auto':
        form = 'sip' if p.smoother == 'identity-on-conforming-average' and broken else 'energy'
    if form == 'sip':
        b_matrix = sip_form(mesh, s_basis, p.penalty_weight)
    else:
        b_matrix = setup.gram_s
    logger.debug(u'poisson-1d: %r, forma %s', setup, form)
    return setup, MethodSpec(setup, b_matrix, smoother, u'poisson-1d-%s-%s' % (p.discrete_space, p.smoother))


# ---------------------------------------------------------------------------
# Casos exactos en ℝ²

def build_synthetic_2d(case='angle-pi-4'):
    """Casos 2 × 2: identity-T1, half-ones-T2 (operador y subespacio Y) y angle-pi-4

    angle-pi-4 es un método con S = span{e₀}, V = span{e₁} y P·e₁ = −e₀, de
    modo que R(id_V − P) = span{(1, 1)} forma un ángulo π/4 con S.
    """
    if isinstance(case, SyntheticParams):
        case = case.case
    if case not in SYNTHETIC_CASES:
        raise InvalidParameters(u'Caso sintético desconocido: %s' % case)
    space = GramSpace.euclidean(2, u'ℝ²')
    ordinate = Subspace(space, np.array([0.0, 1.0]))
    if case == 'identity-T1':
        return SyntheticCase(space, OperatorMatrix(np.eye(2), space, space, u'T₁'), ordinate, None, None)
    if case == 'half-ones-T2':
        return SyntheticCase(space, OperatorMatrix(0.5 * np.ones((2, 2)), space, space, u'T₂'),
                             ordinate, None, None)
    setup = make_setup(space, np.array([[0.0], [1.0]]), np.array([[1.0], [0.0]]))
    method = MethodSpec(setup, np.array([[1.0]]), np.array([[-1.0]]), u'angle-pi-4')
    return SyntheticCase(space, None, None, setup, method)


# ---------------------------------------------------------------------------
# Configuraciones aleatorias

def _random_gram(rng, dim):
    a = rng.standard_normal((dim, dim))
    return a.T.dot(a) / dim + 0.5 * np.eye(dim)


def _well_conditioned(a, limit=1e3):
    sv = singular_values(a)
    return sv[-1] > sv[0] / limit


def build_random_setup(seed=0, dim=6, s_dim=None, conforming_dim=None, consistent=True):
    """Configuración aleatoria con Gram SPD, V + S = V̂ y dim V̂ ≤ 12

    Con consistent=True las filas de b correspondientes a S∩V se fijan por la
    consistencia algebraica completa; el resto de b y el suavizador son
    aleatorios. La matriz b se vuelve a sortear si está mal condicionada.
    """
    if isinstance(seed, RandomSetupParams):
        seed, dim, s_dim, conforming_dim, consistent = seed
    dim = _integer(dim, u'dim')
    _require(2 <= dim <= 12, u'dim V̂ debe estar entre 2 y 12 (%r)' % dim)
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, dim + 1)) if s_dim is None else _integer(s_dim, u's_dim')
    _require(1 <= k <= dim, u'dim S fuera de rango (%r)' % k)
    if conforming_dim is None:
        kc = int(rng.integers(max(0, k - dim + 1), k + 1))
    else:
        kc = _integer(conforming_dim, u'conforming_dim')
    _require(max(0, k - dim + 1) <= kc <= k, u'dim S∩V fuera de rango (%r)' % kc)
    m = dim - (k - kc)

    gram = _random_gram(rng, dim)
    q = rng.standard_normal((dim, dim))
    while not _well_conditioned(q):
        q = rng.standard_normal((dim, dim))
    v_basis = q[:, :m]
    r = rng.standard_normal((m, kc))
    s0 = np.hstack([v_basis.dot(r), q[:, m:] + v_basis.dot(rng.standard_normal((m, k - kc)))])
    vhat = GramSpace(gram, u'V̂ (semilla %r)' % (seed,))
    mix = np.eye(k) + 0.5 * rng.standard_normal((k, k))
    while not _well_conditioned(mix):
        mix = np.eye(k) + 0.5 * rng.standard_normal((k, k))
    setup = make_setup(vhat, v_basis, s0.dot(mix), v_basis.dot(r))

    gram_v = setup.gram_v
    for attempt in range(100):
        e0 = rng.standard_normal((m, k))
        b0 = rng.standard_normal((k, k)) + k * np.eye(k)
        if consistent and kc:
            # b(u, σ) = â(u, E·σ) para u ∈ S∩V
            b0[:kc, :] = r.T.dot(gram_v).dot(e0)
        b_matrix = mix.T.dot(b0).dot(mix)
        sv = singular_values(b_matrix)
        if sv[-1] > 1e-4 * sv[0]:
            break
    else:
        raise InvalidParameters(u'No se obtuvo una b no degenerada (semilla %r)' % (seed,))
    return setup, MethodSpec(setup, b_matrix, e0.dot(mix), u'random-%r' % (seed,))


# ---------------------------------------------------------------------------
# Registro

ModelEntry = namedtuple('ModelEntry', ['name', 'params', 'builder', 'description'])


def _build_synthetic_method(p):
    case = build_synthetic_2d(p)
    if case.method is None:
        raise InvalidParameters(u'El caso %s no define un método' % p.case)
    return case.setup, case.method


def _build_random(p):
    return build_random_setup(*p)


MODELS = OrderedDict((entry.name, entry) for entry in [
    ModelEntry('sequence-example', SequenceExampleParams, build_sequence_example,
               u'ℓ₂ truncado con Sₙ = span{e₁, …, e_{n−1}, α·e₀ + eₙ}'),
    ModelEntry('poisson-1d', Poisson1dParams, build_poisson_1d,
               u'Poisson 1D, P1 continuo o roto con penalización de saltos'),
    ModelEntry('synthetic-2d', SyntheticParams, _build_synthetic_method,
               u'casos exactos en ℝ² (angle-pi-4)'),
    ModelEntry('random', RandomSetupParams, _build_random,
               u'configuraciones aleatorias con consistencia completa'),
    ])


def get_model(name):
    try:
        return MODELS[name]
    except KeyError:
        raise UnknownModel(u'Modelo desconocido: %s (disponibles: %s)' % (name, ', '.join(MODELS)))


def make_params(name, values=None):
    """Parámetros del modelo name a partir de un diccionario"""
    entry = get_model(name)
    values = dict(values or {})
    unknown = [key for key in values if key not in entry.params._fields]
    if unknown:
        raise InvalidParameters(u'Parámetros desconocidos para %s: %s' % (name, ', '.join(unknown)))
    return entry.params(**values)


def build_model(name, params=None):
    """(HilbertSetup, MethodSpec) del modelo name"""
    entry = get_model(name)
    if params is None or isinstance(params, dict):
        params = make_params(name, params)
    return entry.builder(params)
