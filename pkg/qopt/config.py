#!/usr/bin/env python
#encoding: utf-8
#
#   config.py
#   Configuración general de QOptLab
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
"""Configuración de la herramienta QOptLab

Lee el archivo data/qopt.cfg (líneas clave=valor) y aplica la variable de
entorno QOPT_THREADS.
"""

import os

from .errors import ConfigParse
from .util import get_resource

CONFIGFILE = get_resource('data', 'qopt.cfg')

_validkeys = dict([('threads', 'int'), # Hilos de evaluación de barridos
                   ('eigensolver', 'str'), # jacobi|lapack
                   ('jacobi_tol', 'float'), # Umbral relativo de Jacobi
                   ('jacobi_max_sweeps', 'int'), # Barridos máximos de Jacobi
                   ('out_format', 'str'), # Formato de informes (json|csv)
                   ('out_basename', 'str'), # Nombre base de informes
                   ('loglevel', 'str'), # Nivel de registro
])

DEFAULTS = {'threads': 0,
            'eigensolver': 'jacobi',
            'jacobi_tol': 1e-12,
            'jacobi_max_sweeps': 100,
            'out_format': 'json',
            'out_basename': 'qopt_report',
            'loglevel': 'WARNING'}


def parsevalue(key, value):
    """Convierte el valor de texto al tipo declarado para la clave"""
    ktype = _validkeys[key]
    try:
        if ktype == 'bool':
            return value not in ('False', 'No', 'false', 'f', '0')
        elif ktype == 'int':
            return int(value)
        elif ktype == 'float':
            return float(value)
        return value
    except ValueError:
        raise ConfigParse(u'Valor no válido para %s: %r' % (key, value))


def loadconfig(path=CONFIGFILE, environ=None):
    """Devuelve el diccionario de configuración

    Parte de los valores predeterminados, aplica el archivo path (si existe)
    y finalmente la variable de entorno QOPT_THREADS.
    """
    environ = os.environ if environ is None else environ
    conf = dict(DEFAULTS)
    if os.path.exists(path):
        with open(path, encoding='utf-8') as cfgfile:
            for line in cfgfile:
                line = line.strip()
                if not line or line.startswith('#'):
                    continue
                if '=' not in line:
                    raise ConfigParse(u'Línea sin "=" en %s: %r' % (path, line))
                key, value = line.split('=', 1)
                key, value = key.strip(), value.strip()
                if key in _validkeys:
                    conf[key] = parsevalue(key, value)
    threads = environ.get('QOPT_THREADS')
    if threads:
        try:
            conf['threads'] = int(threads)
        except ValueError:
            raise ConfigParse(u'QOPT_THREADS debe ser un entero: %r' % threads)
    if conf['eigensolver'] not in ('jacobi', 'lapack'):
        raise ConfigParse(u'eigensolver desconocido: %s' % conf['eigensolver'])
    if conf['out_format'] not in ('json', 'csv'):
        raise ConfigParse(u'out_format desconocido: %s' % conf['out_format'])
    return conf

config = loadconfig()
