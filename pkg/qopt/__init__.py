#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Laboratorio numérico de métodos no conformes con suavizador"""

__version__ = '1.0'
