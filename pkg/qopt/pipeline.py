#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
#   pipeline.py
#   Modelo de ejecución de QOptLab
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
"""Modelo de datos de una ejecución: configuración, puntos y registros"""

import logging
import os
import time
from collections import OrderedDict, namedtuple
from concurrent.futures import ThreadPoolExecutor

from . import runconfig
from .analysis import analyze_method
from .checks import evaluate_checks
from .clases import is_unbounded
from .config import config
from .models import build_model
from .reports import ReportRecord

logger = logging.getLogger(__name__)

MonotoneFailure = namedtuple('MonotoneFailure', ['field', 'direction', 'index', 'previous', 'value'])


def analyze_point(name, params, checks=None, overrides=None):
    """ReportRecord del modelo name con los parámetros params"""
    start = time.perf_counter()
    setup, method = build_model(name, params)
    report = analyze_method(method, name, OrderedDict(params))
    results = evaluate_checks(report, checks, overrides)
    elapsed = time.perf_counter() - start
    logger.info(u'%s %s: C_qopt = %s (%.3f s)', name, dict(params), report.c_qopt_opnorm, elapsed)
    return ReportRecord(report, results, elapsed)


def _as_float(value):
    return float('inf') if is_unbounded(value) else float(value)


def check_monotone(records, specs):
    """Lista de MonotoneFailure de las aserciones de monotonía"""
    failures = []
    for spec in specs:
        values = [getattr(record.report, spec.field) for record in records]
        for i in range(1, len(values)):
            if values[i] is None or values[i - 1] is None:
                continue
            previous, value = _as_float(values[i - 1]), _as_float(values[i])
            slack = 1e-9 * max(1.0, abs(previous)) if previous != float('inf') else 0.0
            if spec.direction == 'nondecreasing':
                bad = value < previous - slack
            else:
                bad = value > previous + slack
            if bad:
                failures.append(MonotoneFailure(spec.field, spec.direction, i, previous, value))
    for failure in failures:
        logger.warning(u'%s no es %s en el punto %i (%r -> %r)', failure.field, failure.direction,
                       failure.index, failure.previous, failure.value)
    return failures


class QOptRun(object):
    """Ejecución de una configuración: puntos de barrido y registros

    cfg - RunConfig validado
    threads - número de hilos (0 = uno por punto, hasta el número de CPU)
    records - registros calculados, en el orden de los puntos de barrido
    """
    def __init__(self, cfg, threads=None):
        self.cfg = cfg
        self.threads = config['threads'] if threads is None else threads
        self.records = None

    @classmethod
    def from_file(cls, path, threads=None):
        return cls(runconfig.loadfile(path), threads)

    @property
    def points(self):
        return runconfig.sweep_points(self.cfg)

    @property
    def workers(self):
        npoints = len(self.points)
        if self.threads and self.threads > 0:
            return max(1, min(self.threads, npoints))
        return max(1, min(npoints, os.cpu_count() or 1))

    def _evaluate(self, params):
        return analyze_point(self.cfg.model, params, self.cfg.checks, self.cfg.tolerance_overrides)

    def run(self):
        """Calcula todos los puntos; el orden de salida es el de los puntos"""
        points = self.points
        if self.workers == 1:
            self.records = [self._evaluate(params) for params in points]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as executor:
                self.records = list(executor.map(self._evaluate, points))
        return self.records

    @property
    def passed(self):
        return self.records is not None and all(
            all(check.passed for check in record.checks.values()) for record in self.records)

    def monotone_failures(self):
        return check_monotone(self.records or [], self.cfg.monotone)
