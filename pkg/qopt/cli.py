#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
#   cli.py
#   Interfaz de línea de órdenes de QOptLab
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
"""Interfaz de línea de órdenes

    qopt analyze --config config.json [--out informe.json] [--format json|csv]
    qopt sweep --config config.json [--out informe.csv] [--format json|csv]
    qopt list-models
    qopt list-checks

Códigos de salida: 0 todas las comprobaciones se cumplen, 1 error de entrada,
2 alguna comprobación o aserción de monotonía falla.
"""

import argparse
import logging
import sys

import pandas as pd

from . import __version__
from .checks import CHECKS
from .config import config
from .errors import QoptError
from .models import MODELS
from .pipeline import QOptRun
from .reports import sweep_table, write_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CHECK = 2


def setup_logging(level=None):
    level = level or config['loglevel']
    logging.basicConfig(level=getattr(logging, str(level).upper(), logging.WARNING),
                        format='%(levelname)s %(name)s: %(message)s')


def _output(run, out=None, fmt=None):
    fmt = fmt or run.cfg.output.format
    path = out or run.cfg.output.path or '%s.%s' % (config['out_basename'], fmt)
    return path, fmt


def _emit(run, out, fmt, stream, with_timing=False):
    path, fmt = _output(run, out, fmt)
    try:
        text = write_report(run.records, run.cfg.model, path, fmt, with_timing)
    except (IOError, OSError) as e:
        logger.error(u'No se puede escribir el informe %s: %s', path, e)
        return None
    if path == '-':
        stream.write(text)
    return path


def _load(config_path, threads):
    try:
        return QOptRun.from_file(config_path, threads)
    except QoptError as e:
        logger.error(u'%s', e)
        return None


def run_analyze(config_path, out=None, fmt=None, threads=None, stream=None, with_timing=False):
    """Analiza cada punto de la configuración y escribe el informe

    Devuelve el código de salida.
    """
    stream = stream or sys.stdout
    run = _load(config_path, threads)
    if run is None:
        return EXIT_INPUT
    try:
        run.run()
    except QoptError as e:
        logger.error(u'%s: %s', config_path, e)
        return EXIT_INPUT
    if _emit(run, out, fmt, stream, with_timing) is None:
        return EXIT_INPUT
    failures = run.monotone_failures()
    return EXIT_OK if run.passed and not failures else EXIT_CHECK


def run_sweep(config_path, out=None, fmt=None, threads=None, stream=None, with_timing=False):
    """Como run_analyze, mostrando además la tabla de constantes del barrido"""
    stream = stream or sys.stdout
    run = _load(config_path, threads)
    if run is None:
        return EXIT_INPUT
    if not run.cfg.sweep:
        logger.error(u'%s: la configuración no tiene barrido', config_path)
        return EXIT_INPUT
    try:
        run.run()
    except QoptError as e:
        logger.error(u'%s: %s', config_path, e)
        return EXIT_INPUT
    path = _emit(run, out, fmt, stream, with_timing)
    if path is None:
        return EXIT_INPUT
    if path != '-':
        with pd.option_context('display.width', 160, 'display.max_columns', 40):
            stream.write(sweep_table(run.records).to_string(index=False) + '\n')
    failures = run.monotone_failures()
    for failure in failures:
        stream.write(u'Monotonía: %s no es %s en el punto %i (%r -> %r)\n' % failure[:5])
    return EXIT_OK if run.passed and not failures else EXIT_CHECK


def list_models(stream=None):
    stream = stream or sys.stdout
    for entry in MODELS.values():
        fields = ', '.join('%s=%r' % item for item in zip(entry.params._fields, entry.params._field_defaults.values()))
        stream.write(u'%s - %s\n    %s\n' % (entry.name, entry.description, fields))
    return EXIT_OK


def list_checks(stream=None):
    stream = stream or sys.stdout
    for spec in CHECKS.values():
        stream.write(u'%-30s %.0e  %s\n' % (spec.name, spec.tolerance, spec.description))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog='qopt',
                                     description=u'Constantes de cuasi-optimalidad de métodos no conformes')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help=u'Más mensajes (-v INFO, -vv DEBUG)')
    sub = parser.add_subparsers(dest='command')
    for name, help_text in (('analyze', u'Analiza un modelo (y su barrido)'),
                            ('sweep', u'Barrido de parámetros con tabla de constantes')):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument('--config', required=True, help=u'Archivo de configuración JSON')
        cmd.add_argument('--out', help=u"Archivo de informe ('-' para la salida estándar)")
        cmd.add_argument('--format', choices=('json', 'csv'), help=u'Formato del informe')
        cmd.add_argument('--threads', type=int, help=u'Hilos de evaluación del barrido')
        cmd.add_argument('--timing', action='store_true', help=u'Incluye el tiempo de cálculo')
    sub.add_parser('list-models', help=u'Modelos disponibles')
    sub.add_parser('list-checks', help=u'Comprobaciones disponibles')
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        setup_logging('DEBUG' if args.verbose > 1 else 'INFO')
    else:
        setup_logging()
    if args.command == 'list-models':
        return list_models()
    elif args.command == 'list-checks':
        return list_checks()
    elif args.command in ('analyze', 'sweep'):
        runner = run_analyze if args.command == 'analyze' else run_sweep
        return runner(args.config, args.out, args.format, args.threads, with_timing=args.timing)
    parser.print_help()
    return EXIT_INPUT


if __name__ == '__main__':
    sys.exit(main())
