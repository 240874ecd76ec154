#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
#   reports.py
#   Escritura de informes en JSON y CSV
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
"""Informes de ejecución

JSON (completo):

    {"schema_version": 1, "model": ..., "passed": true|false,
     "records": [{"model": ..., "parameters": {...}, "c_stab": ...,
                  "identity_residuals": {...}, "flags": [...],
                  "checks": {"nombre": {"passed": ..., "residual": ...,
                                        "tolerance": ..., "applicable": ...}}}]}

CSV (tabla plana, una fila por punto de barrido). Columnas, en este orden:

    model, param.<nombre>..., proxy_dim, consistent, <constantes>...,
    flags, residual.<nombre>..., check.<nombre>.passed, check.<nombre>.residual

Los reales se escriben con 17 cifras significativas (JSON usa la
representación más corta que recupera el mismo double) y +∞ como "inf".
Los valores no definidos son null en JSON y celdas vacías en CSV. El tiempo
de cálculo no se incluye salvo que se pida (with_timing).
"""

import io
import json
import logging
import math
from collections import OrderedDict, namedtuple

import numpy as np
import pandas as pd

from .checks import CHECKS
from .clases import REPORT_FIELDS, is_unbounded
from .runconfig import SCHEMA_VERSION

logger = logging.getLogger(__name__)

CONSTANT_FIELDS = ['c_stab', 'c_qopt_opnorm', 'c_qopt_dualnorm', 'c_qopt_angle',
                   'delta_v', 'delta_s', 'angle_alpha', 'classical_bound',
                   'inf_sup_beta', 'continuity_cbext', 'consistency_residual_sup']
INF = 'inf'

ReportRecord = namedtuple('ReportRecord', ['report', 'checks', 'wall_time'])
ReportRecord.__doc__ = u"""Resultado de un punto de barrido

report - AnalysisReport (modelo, parámetros y constantes)
checks - OrderedDict nombre → CheckResult de las comprobaciones exigidas
wall_time - tiempo de cálculo [s]
"""


def record_passed(record):
    return all(check.passed for check in record.checks.values())


def encode_value(value):
    """Valor serializable: +∞ como "inf", escalares de numpy como tipos nativos"""
    if value is None:
        return None
    if is_unbounded(value):
        return INF
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return INF if math.isinf(value) and value > 0 else value
    if isinstance(value, dict):
        return OrderedDict((key, encode_value(item)) for key, item in value.items())
    if isinstance(value, (list, tuple)):
        return [encode_value(item) for item in value]
    return value


def decode_value(value):
    """Inverso de encode_value para los reales ("inf" → float('inf'))"""
    if value == INF:
        return float('inf')
    return value


def record_to_dict(record, with_timing=False):
    """Diccionario ordenado de un ReportRecord"""
    report = record.report
    data = OrderedDict()
    for field in REPORT_FIELDS:
        data[field] = encode_value(getattr(report, field))
    data['checks'] = OrderedDict(
        (name, OrderedDict([('passed', result.passed),
                            ('residual', encode_value(result.residual)),
                            ('tolerance', result.tolerance),
                            ('applicable', result.applicable)]))
        for name, result in record.checks.items())
    data['passed'] = record_passed(record)
    if with_timing:
        data['wall_time'] = record.wall_time
    return data


def dumps_json(records, model, with_timing=False):
    """Texto JSON del informe (determinista para los mismos registros)"""
    document = OrderedDict([('schema_version', SCHEMA_VERSION),
                            ('model', model),
                            ('passed', all(record_passed(r) for r in records)),
                            ('records', [record_to_dict(r, with_timing) for r in records])])
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False) + '\n'


def records_frame(records, with_timing=False):
    """DataFrame plano con una fila por registro y columnas fijas"""
    param_names = []
    residual_names = []
    check_names = []
    for record in records:
        for name in record.report.parameters:
            if name not in param_names:
                param_names.append(name)
        for name in record.report.identity_residuals:
            if name not in residual_names:
                residual_names.append(name)
        for name in record.checks:
            if name not in check_names:
                check_names.append(name)
    # orden estable del registro de comprobaciones
    residual_names.sort(key=lambda name: list(CHECKS).index(name) if name in CHECKS else len(CHECKS))
    rows = []
    for record in records:
        report = record.report
        row = OrderedDict()
        row['model'] = report.model
        for name in param_names:
            row['param.%s' % name] = encode_value(report.parameters.get(name))
        row['proxy_dim'] = report.proxy_dim
        row['consistent'] = bool(report.consistent)
        for field in CONSTANT_FIELDS:
            row[field] = encode_value(getattr(report, field))
        row['flags'] = ';'.join(report.flags)
        for name in residual_names:
            row['residual.%s' % name] = encode_value(report.identity_residuals.get(name))
        for name in check_names:
            result = record.checks.get(name)
            row['check.%s.passed' % name] = None if result is None else bool(result.passed)
            row['check.%s.residual' % name] = None if result is None else encode_value(result.residual)
        if with_timing:
            row['wall_time'] = record.wall_time
        rows.append(row)
    return pd.DataFrame(rows, columns=list(rows[0].keys()) if rows else None)


def dumps_csv(records, with_timing=False):
    buf = io.StringIO()
    records_frame(records, with_timing).to_csv(buf, index=False, float_format='%.17g', na_rep='')
    return buf.getvalue()


def write_report(records, model, path, fmt='json', with_timing=False):
    """Escribe el informe en path ('-' para la salida estándar)"""
    text = dumps_json(records, model, with_timing) if fmt == 'json' else dumps_csv(records, with_timing)
    if path == '-':
        return text
    with io.open(path, 'w', encoding='utf-8', newline='') as f:
        f.write(text)
    logger.info(u'Informe %s escrito en %s (%i registros)', fmt, path, len(records))
    return text


def load_json_report(path):
    with io.open(path, 'r', encoding='utf-8') as f:
        return json.load(f, object_pairs_hook=OrderedDict)


def load_csv_report(path):
    """DataFrame de un informe CSV con "inf" convertido a float"""
    frame = pd.read_csv(path, keep_default_na=False, na_values=[''], float_precision='round_trip')
    for column in frame.columns:
        if frame[column].dtype == object:
            converted = pd.to_numeric(frame[column].replace(INF, np.inf), errors='coerce')
            if converted.notna().sum() == frame[column].notna().sum():
                frame[column] = converted
    return frame


def sweep_table(records, fields=None):
    """Tabla de constantes frente a los parámetros barridos

    Añade para cada constante la variación relativa respecto del punto
    anterior (columna <campo>.rel_change).
    """
    fields = fields or ['c_stab', 'c_qopt_opnorm', 'delta_v', 'delta_s', 'classical_bound']
    frame = records_frame(records)
    table = frame[[c for c in frame.columns if c.startswith('param.')] + fields].copy()
    for field in fields:
        values = pd.to_numeric(table[field].replace(INF, np.inf), errors='coerce')
        table[field] = values
        with np.errstate(divide='ignore', invalid='ignore'):
            table['%s.rel_change' % field] = values.diff() / values.shift(1).abs()
    return table
