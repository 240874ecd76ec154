# -*- coding: utf-8 -*-
"""Pruebas de la configuración de la herramienta"""

import builtins
import io
import os

import pytest

from qopt.config import CONFIGFILE, DEFAULTS, loadconfig, parsevalue
from qopt.errors import ConfigParse
from qopt.util import APPROOT, get_main_dir


def _write(tmp_path, text):
    path = tmp_path / 'qopt.cfg'
    with io.open(str(path), 'w', encoding='utf-8') as f:
        f.write(text)
    return str(path)


def test_shipped_file_loads():
    conf = loadconfig(CONFIGFILE, environ={})
    assert conf['eigensolver'] in ('jacobi', 'lapack')
    assert conf['jacobi_tol'] == pytest.approx(1e-12)
    assert conf['jacobi_max_sweeps'] == 100


def test_missing_file_gives_defaults(tmp_path):
    assert loadconfig(str(tmp_path / 'nada.cfg'), environ={}) == DEFAULTS


def test_file_values_and_comments(tmp_path):
    path = _write(tmp_path, u'# comentario\nthreads = 3\neigensolver=lapack\n\nclave_desconocida = 1\n')
    conf = loadconfig(path, environ={})
    assert conf['threads'] == 3
    assert conf['eigensolver'] == 'lapack'
    assert 'clave_desconocida' not in conf


def test_environment_overrides_threads(tmp_path):
    path = _write(tmp_path, u'threads = 3\n')
    assert loadconfig(path, environ={'QOPT_THREADS': '8'})['threads'] == 8
    with pytest.raises(ConfigParse):
        loadconfig(path, environ={'QOPT_THREADS': 'muchos'})


@pytest.mark.parametrize('text', [u'threads = tres\n', u'eigensolver = qr\n',
                                  u'out_format = xml\n', u'sin signo igual\n'])
def test_malformed_values(tmp_path, text):
    with pytest.raises(ConfigParse):
        loadconfig(_write(tmp_path, text), environ={})


def test_parsevalue_types():
    assert parsevalue('jacobi_tol', '1e-10') == 1e-10
    assert parsevalue('out_basename', 'informe') == 'informe'


def test_config_file_is_closed(tmp_path, monkeypatch):
    path = _write(tmp_path, u'# ñ\nthreads = 2\n')
    opened = []
    real_open = builtins.open

    def tracking_open(*args, **kwargs):
        f = real_open(*args, **kwargs)
        opened.append(f)
        return f

    monkeypatch.setattr(builtins, 'open', tracking_open)
    assert loadconfig(path, environ={})['threads'] == 2
    assert opened and all(f.closed for f in opened)


def test_main_dir_holds_data():
    assert get_main_dir() == APPROOT
    assert os.path.isfile(os.path.join(APPROOT, 'data', 'qopt.cfg'))
