# -*- coding: utf-8 -*-
"""Pruebas de la interfaz de línea de órdenes"""

import io
import json
import math

import pytest

from qopt.cli import EXIT_CHECK, EXIT_INPUT, EXIT_OK, main, run_analyze, run_sweep
from qopt.reports import load_csv_report, load_json_report
from qopt.util import get_resource


def example(name):
    return get_resource('data', 'examples', name)


def write_config(tmp_path, data, name='config.json'):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding='utf-8')
    return str(path)


def sequence_config(**extra):
    data = {'schema_version': 1,
            'model': {'name': 'sequence-example', 'params': {'n': 2, 'variant': '1'}}}
    data.update(extra)
    return data


def test_analyze_sequence_example(tmp_path):
    out = str(tmp_path / 'informe.json')
    assert run_analyze(example('sequence-variant1.json'), out=out) == EXIT_OK
    report = load_json_report(out)
    assert report['passed'] is True
    record = report['records'][0]
    assert record['delta_s'] == pytest.approx(math.sqrt(2.0), rel=1e-10)
    assert record['c_qopt_opnorm'] == pytest.approx(math.sqrt(2.0), rel=1e-10)
    assert 'wall_time' not in record


def test_unknown_model_is_input_error(tmp_path, caplog):
    path = write_config(tmp_path, {'schema_version': 1, 'model': {'name': 'stokes-2d'}})
    with caplog.at_level('ERROR'):
        assert run_analyze(path, out=str(tmp_path / 'x.json')) == EXIT_INPUT
    assert 'stokes-2d' in caplog.text
    assert not (tmp_path / 'x.json').exists()


@pytest.mark.parametrize('data', [
    {'schema_version': 2, 'model': {'name': 'sequence-example'}},
    {'schema_version': 1},
    sequence_config(checks=['no-such-check']),
    sequence_config(sweep=[{'path': 'gamma', 'values': [1.0]}]),
    sequence_config(output={'format': 'xml'}),
    {'schema_version': 1, 'model': {'name': 'sequence-example', 'params': {'alpha': -1.0}}},
    ])
def test_invalid_configurations(tmp_path, data):
    path = write_config(tmp_path, data)
    assert run_analyze(path, out=str(tmp_path / 'x.json')) == EXIT_INPUT


def test_unreadable_configuration(tmp_path):
    assert run_analyze(str(tmp_path / 'missing.json')) == EXIT_INPUT
    bad = tmp_path / 'bad.json'
    bad.write_text(u'{"schema_version": 1,', encoding='utf-8')
    assert run_analyze(str(bad)) == EXIT_INPUT


def test_inconsistent_model_fails_checks(tmp_path):
    path = write_config(tmp_path, {
        'schema_version': 1,
        'model': {'name': 'random',
                  'params': {'seed': 1, 'dim': 6, 's_dim': 3, 'conforming_dim': 2, 'consistent': False}}})
    out = str(tmp_path / 'informe.json')
    assert run_analyze(path, out=out) == EXIT_CHECK
    record = load_json_report(out)['records'][0]
    assert record['c_qopt_opnorm'] == 'inf'
    assert record['checks']['full-consistency']['passed'] is False
    assert record['checks']['angle-route']['applicable'] is False


def test_alpha_sweep_values(tmp_path):
    out = str(tmp_path / 'barrido.csv')
    stream = io.StringIO()
    assert run_sweep(example('sequence-alpha-sweep.json'), out=out, stream=stream) == EXIT_OK
    frame = load_csv_report(out)
    expected = [math.sqrt(2.0), math.sqrt(5.0), math.sqrt(101.0)]
    assert list(frame['param.alpha']) == [1.0, 0.5, 0.1]
    assert list(frame['delta_s']) == pytest.approx(expected, rel=1e-10)
    assert 'delta_s.rel_change' in stream.getvalue()


def test_monotone_violation(tmp_path):
    path = write_config(tmp_path, sequence_config(
        sweep=[{'path': 'model.params.alpha', 'values': [1.0, 0.5]}],
        monotone=[{'field': 'delta_s', 'direction': 'nonincreasing'}]))
    stream = io.StringIO()
    assert run_sweep(path, out=str(tmp_path / 'x.csv'), stream=stream) == EXIT_CHECK
    assert 'delta_s' in stream.getvalue()


def test_sweep_requires_sweep(tmp_path):
    path = write_config(tmp_path, sequence_config())
    assert run_sweep(path, out=str(tmp_path / 'x.csv'), stream=io.StringIO()) == EXIT_INPUT


def test_reports_are_deterministic(tmp_path):
    path = write_config(tmp_path, sequence_config(sweep=[{'path': 'alpha', 'values': [1.0, 0.5, 0.25]}]))
    first, second = str(tmp_path / 'a.json'), str(tmp_path / 'b.json')
    assert run_analyze(path, out=first, threads=1) == EXIT_OK
    assert run_analyze(path, out=second, threads=3) == EXIT_OK
    with io.open(first, 'rb') as f1, io.open(second, 'rb') as f2:
        assert f1.read() == f2.read()


def test_json_and_csv_carry_same_values(tmp_path):
    path = write_config(tmp_path, sequence_config(sweep=[{'path': 'alpha', 'values': [1.0, 0.3]}]))
    jpath, cpath = str(tmp_path / 'r.json'), str(tmp_path / 'r.csv')
    assert run_analyze(path, out=jpath) == EXIT_OK
    assert run_analyze(path, out=cpath, fmt='csv') == EXIT_OK
    records = load_json_report(jpath)['records']
    frame = load_csv_report(cpath)
    for field in ('c_stab', 'c_qopt_opnorm', 'delta_v', 'delta_s', 'classical_bound'):
        assert list(frame[field]) == [record[field] for record in records]


def test_timing_and_stdout(tmp_path):
    path = write_config(tmp_path, sequence_config())
    stream = io.StringIO()
    assert run_analyze(path, out='-', stream=stream, with_timing=True) == EXIT_OK
    document = json.loads(stream.getvalue())
    assert document['records'][0]['wall_time'] >= 0.0


def test_main_commands(tmp_path, capsys):
    assert main(['list-models']) == EXIT_OK
    assert 'poisson-1d' in capsys.readouterr().out
    assert main(['list-checks']) == EXIT_OK
    assert 'buckholtz-norm-identity' in capsys.readouterr().out
    assert main([]) == EXIT_INPUT
    out = str(tmp_path / 'r.json')
    assert main(['analyze', '--config', example('sequence-variant1.json'), '--out', out]) == EXIT_OK
    assert load_json_report(out)['model'] == 'sequence-example'


def test_small_alpha_runs_cleanly(tmp_path):
    data = {'schema_version': 1,
            'model': {'name': 'sequence-example', 'params': {'n': 2, 'alpha': 1e-7, 'variant': '1'}}}
    out = str(tmp_path / 'informe.json')
    assert run_analyze(write_config(tmp_path, data), out=out) == EXIT_OK
    record = load_json_report(out)['records'][0]
    assert record['c_qopt_opnorm'] == pytest.approx(1e7, rel=1e-8)
    assert 'degenerate-angle' in record['flags']
    assert record['checks']['angle-route']['passed'] is True


def test_broken_refinement_sweep(tmp_path):
    out = str(tmp_path / 'refinamiento.csv')
    stream = io.StringIO()
    assert run_sweep(example('poisson-broken-refinement.json'), out=out, stream=stream) == EXIT_OK
    table = load_csv_report(out)
    assert list(table['param.fine_refinement']) == [2, 4, 8]
    assert list(table['c_qopt_opnorm']) == pytest.approx([3.6955181300451483, 10.004162189843047,
                                                          16.520777065957652], rel=1e-10)
    assert list(table['delta_s']) == pytest.approx([1.0, 1.0, 1.0], rel=1e-10)
    assert table['c_qopt_opnorm'].is_monotonic_increasing
    assert table['c_stab'].is_monotonic_increasing
    assert 'c_qopt_opnorm.rel_change' in stream.getvalue()
