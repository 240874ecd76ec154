# -*- coding: utf-8 -*-
"""Configuración común de las pruebas"""

import os

from hypothesis import Verbosity, settings

settings.register_profile('default', max_examples=50, deadline=None)
settings.register_profile('fast', max_examples=10, deadline=None)
settings.register_profile('debugger', max_examples=10, deadline=None, verbosity=Verbosity.verbose)
settings.load_profile(os.getenv('HYPOTHESIS_PROFILE', 'default'))
