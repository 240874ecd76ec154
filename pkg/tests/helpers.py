# -*- coding: utf-8 -*-
"""Utilidades de construcción de matrices para las pruebas"""

import numpy as np


def random_spd(rng, n, shift=0.5):
    a = rng.standard_normal((n, n))
    return a.T.dot(a) / n + shift * np.eye(n)


def random_symmetric(rng, n):
    a = rng.standard_normal((n, n))
    return 0.5 * (a + a.T)
