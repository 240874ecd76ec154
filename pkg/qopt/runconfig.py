#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
#   runconfig.py
#   Lectura y validación de archivos de configuración de ejecución
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
"""Analizador de archivos de configuración de ejecución (JSON)

Estructura (schema_version 1, ver docs/config.rst):

    {
      "schema_version": 1,
      "model": {"name": "sequence-example", "params": {"n": 2, "alpha": 1.0}},
      "sweep": [{"path": "alpha", "values": [1.0, 0.5, 0.1]}],
      "checks": ["cqopt-eq-sqrt1-plus-deltaV2"],
      "output": {"path": "informe.json", "format": "json"},
      "tolerance_overrides": {"angle-route": 1e-6},
      "monotone": [{"field": "delta_s", "direction": "nonincreasing"}]
    }

Solamente "schema_version" y "model" son obligatorios.
"""

import io
import itertools
import json
import logging
import numbers
from collections import OrderedDict, namedtuple

from .checks import CHECKS, resolve_checks
from .clases import REPORT_FIELDS
from .config import config
from .errors import ConfigParse, QoptError, UnknownCheck, UnknownModel
from .models import get_model, make_params

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
FORMATS = ('json', 'csv')
DIRECTIONS = ('nonincreasing', 'nondecreasing')
NUMERIC_FIELDS = [field for field in REPORT_FIELDS
                  if field not in ('model', 'parameters', 'consistent', 'identity_residuals', 'flags')]

SweepAxis = namedtuple('SweepAxis', ['path', 'values'])
OutputSpec = namedtuple('OutputSpec', ['path', 'format'])
MonotoneSpec = namedtuple('MonotoneSpec', ['field', 'direction'])
RunConfig = namedtuple('RunConfig', ['schema_version', 'model', 'params', 'sweep', 'checks',
                                     'output', 'tolerance_overrides', 'monotone', 'source'])


def _get(mapping, key, kind, default=None, where='configuración'):
    value = mapping.get(key, default)
    if value is not None and not isinstance(value, kind):
        raise ConfigParse(u'%s: el valor de "%s" tiene un tipo no válido (%s)'
                          % (where, key, type(value).__name__))
    return value


def _is_number(value):
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


def _sweep_field(path):
    """Nombre del parámetro para las rutas alpha, params.alpha o model.params.alpha"""
    parts = path.split('.')
    if parts[:2] == ['model', 'params']:
        parts = parts[2:]
    elif parts[:1] == ['params']:
        parts = parts[1:]
    if len(parts) != 1 or not parts[0]:
        raise ConfigParse(u'Ruta de barrido no válida: %s' % path)
    return parts[0]


def parse(data, source=None):
    """RunConfig a partir del diccionario data (ya decodificado)"""
    if not isinstance(data, dict):
        raise ConfigParse(u'La configuración debe ser un objeto JSON')
    version = data.get('schema_version')
    if version != SCHEMA_VERSION:
        raise ConfigParse(u'schema_version %r no soportada (se esperaba %i)' % (version, SCHEMA_VERSION))

    model = _get(data, 'model', dict)
    if model is None:
        raise ConfigParse(u'Falta la sección "model"')
    name = _get(model, 'name', str, where='model')
    if name is None:
        raise ConfigParse(u'Falta el nombre del modelo')
    entry = get_model(name)
    values = OrderedDict(_get(model, 'params', dict, {}, where='model'))
    make_params(name, values)

    sweep = []
    for axis in _get(data, 'sweep', list, []):
        if not isinstance(axis, dict) or 'path' not in axis or 'values' not in axis:
            raise ConfigParse(u'Cada barrido necesita "path" y "values": %r' % (axis,))
        field = _sweep_field(axis['path'])
        if field not in entry.params._fields:
            raise ConfigParse(u'El modelo %s no tiene el parámetro %s' % (name, field))
        axis_values = axis['values']
        if not isinstance(axis_values, list) or not axis_values:
            raise ConfigParse(u'Lista de valores vacía o no válida para %s' % field)
        if not all(_is_number(value) for value in axis_values):
            raise ConfigParse(u'El barrido de %s debe tener valores numéricos' % field)
        sweep.append(SweepAxis(field, list(axis_values)))

    checks = [str(check) for check in _get(data, 'checks', list, [])]
    resolve_checks(checks)
    overrides = OrderedDict(_get(data, 'tolerance_overrides', dict, {}))
    unknown = [key for key in overrides if key not in CHECKS]
    if unknown:
        raise UnknownCheck(u'Tolerancias para comprobaciones desconocidas: %s' % ', '.join(unknown))
    for key, value in overrides.items():
        if not _is_number(value) or value <= 0:
            raise ConfigParse(u'Tolerancia no válida para %s: %r' % (key, value))

    output = _get(data, 'output', dict, {})
    fmt = _get(output, 'format', str, config['out_format'], where='output')
    if fmt not in FORMATS:
        raise ConfigParse(u'Formato de salida desconocido: %s' % fmt)
    outspec = OutputSpec(_get(output, 'path', str, where='output'), fmt)

    monotone = []
    for item in _get(data, 'monotone', list, []):
        if not isinstance(item, dict):
            raise ConfigParse(u'Aserción de monotonía no válida: %r' % (item,))
        field, direction = item.get('field'), item.get('direction')
        if field not in NUMERIC_FIELDS:
            raise ConfigParse(u'Campo no numérico o desconocido en monotone: %r' % (field,))
        if direction not in DIRECTIONS:
            raise ConfigParse(u'Dirección de monotonía desconocida: %r' % (direction,))
        monotone.append(MonotoneSpec(field, direction))

    return RunConfig(version, name, values, sweep, checks, outspec, overrides, monotone, source)


def loadfile(path):
    """Devuelve un RunConfig a partir del archivo JSON path"""
    try:
        with io.open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except IOError:
        logger.error(u'Errores leyendo el archivo %s', path)
        raise ConfigParse(u'No se puede leer %s' % path)
    try:
        data = json.loads(text, object_pairs_hook=OrderedDict)
    except ValueError as e:
        logger.error(u'Errores de formato del archivo %s', path)
        raise ConfigParse(u'%s: JSON no válido (%s)' % (path, e))
    try:
        return parse(data, source=path)
    except (ConfigParse, UnknownModel, UnknownCheck):
        logger.error(u'Configuración no válida en %s', path)
        raise
    except QoptError as e:
        logger.error(u'Configuración no válida en %s', path)
        raise ConfigParse(u'%s: %s' % (path, e))


def sweep_points(cfg):
    """Parámetros de cada punto del barrido (producto cartesiano, en orden)

    Sin barrido hay un único punto con los parámetros del modelo.
    """
    if not cfg.sweep:
        return [OrderedDict(cfg.params)]
    points = []
    for combination in itertools.product(*[axis.values for axis in cfg.sweep]):
        params = OrderedDict(cfg.params)
        for axis, value in zip(cfg.sweep, combination):
            params[axis.path] = value
        points.append(params)
    return points
