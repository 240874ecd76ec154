#!/usr/bin/env python
#encoding: utf-8
#
#   Utilidades varias
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
"""Módulo de utilidades varias"""

import os

import numpy as np


def get_main_dir():
    """Localiza el directorio base (el que contiene data/)"""
    md = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
    # ejecución de pruebas
    if not os.path.isdir(os.path.join(md, 'data')):
        md = os.path.abspath(os.path.join(md, '..'))
        if not os.path.isdir(os.path.join(md, 'data')):
            raise ValueError('No se encuentra directorio base')
    return md

APPROOT = get_main_dir()

def get_resource(*path_list):
    "Localiza un recurso del proyecto en base al directorio base del paquete"
    return os.path.abspath(os.path.join(APPROOT, *path_list))

def maxabs(m):
    """Máximo valor absoluto de las entradas (0 para matrices vacías)"""
    m = np.asarray(m, dtype=float)
    return float(np.max(np.abs(m))) if m.size else 0.0

def relscale(*values):
    """Escala para tolerancias relativas: max(1, |valores|)

    Los valores no finitos (p.e. UNBOUNDED) se ignoran.
    """
    finite = [abs(float(v)) for v in values
              if isinstance(v, (int, float, np.floating)) and np.isfinite(v)]
    return max([1.0] + finite)
