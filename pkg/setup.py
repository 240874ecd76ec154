#!/usr/bin/env python
#encoding: utf-8
#
#   Programa QOptLab: constantes de cuasi-optimalidad de métodos no conformes
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
"""Configuración de QOptLab"""

import glob
import os

from setuptools import setup, find_packages
from qopt import __version__

here = os.path.abspath(os.path.dirname(__file__))
README = open(os.path.join(here, 'README.rst'), encoding='utf-8').read()
NEWS = open(os.path.join(here, 'NEWS.txt'), encoding='utf-8').read()

data_files = [('data', ['data/qopt.cfg']),
              ('data/examples', glob.glob('data/examples/*.json')),
              ('docs', glob.glob('docs/*.rst')),
              ('.', ['README.rst', 'NEWS.txt', 'HACKING.txt', 'TODO.txt']),
]

install_requires = ['numpy', 'scipy', 'pandas']

tests_require = ['pytest', 'hypothesis']

entry_points = {'console_scripts': ['qopt=qopt.cli:main']}

setup(name='qoptlab',
    version=__version__,
    description="Constantes de cuasi-optimalidad de métodos no conformes",
    long_description=README + '\n\n' + NEWS,
    classifiers=[
    'Development Status :: 4 - Beta',
    'Environment :: Console',
    'Intended Audience :: Science/Research',
    'License :: OSI Approved :: GNU General Public License v2 or later (GPLv2+)',
    'Natural Language :: Spanish',
    'Programming Language :: Python :: 3',
    'Programming Language :: Python :: Implementation :: CPython',
    'Topic :: Scientific/Engineering :: Mathematics'
    ],
    keywords='elementos finitos,métodos no conformes,cuasi-optimalidad,inf-sup',
    author='QOptLab developers',
    license='GPL-2.0+',
    python_requires='>=3.8',
    packages=find_packages(exclude=['tests']),
    include_package_data=True,
    zip_safe=False,
    install_requires=install_requires,
    extras_require={'test': tests_require},
    entry_points=entry_points,
    data_files=data_files
)
