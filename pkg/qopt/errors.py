#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
#   errors.py
#   Excepciones de QOptLab
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
"""Jerarquía de excepciones de QOptLab

Los núcleos numéricos lanzan estas excepciones y la interfaz de línea de
órdenes las traduce a códigos de salida.
"""


class QoptError(Exception):
    """Error base de QOptLab"""


class NotSymmetric(QoptError):
    """Matriz no simétrica dentro de la tolerancia relativa"""


class NotPositiveDefinite(QoptError):
    """Matriz no definida positiva

    pivot - índice (desde 0) del pivote de Cholesky que falla
    """
    def __init__(self, pivot, msg=None):
        self.pivot = pivot
        if msg is None:
            msg = u'Matriz no definida positiva (pivote %i)' % pivot
        QoptError.__init__(self, msg)


class DimensionMismatch(QoptError):
    """Dimensiones incompatibles"""


class TrivialSubspace(QoptError):
    """Operación no definida sobre un subespacio de dimensión 0"""


class DegenerateB(QoptError):
    """Forma bilineal discreta b degenerada"""


class InconsistentMethod(QoptError):
    """Método sin consistencia algebraica completa: b̂ no existe"""


class InvalidParameters(QoptError):
    """Parámetros de modelo no válidos"""


class ConfigParse(QoptError):
    """Archivo de configuración mal formado"""


class UnknownModel(QoptError):
    """Nombre de modelo no registrado"""


class UnknownCheck(QoptError):
    """Nombre de comprobación no registrado"""
