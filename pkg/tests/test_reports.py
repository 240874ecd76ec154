# -*- coding: utf-8 -*-
"""Pruebas de la serialización de informes"""

import json
import math

import numpy as np
import pytest

from qopt.clases import UNBOUNDED
from qopt.pipeline import MonotoneFailure, analyze_point, check_monotone
from qopt.reports import decode_value, dumps_csv, dumps_json, encode_value, records_frame, sweep_table
from qopt.runconfig import MonotoneSpec


def _records(alphas):
    return [analyze_point('sequence-example', {'n': 2, 'variant': '1', 'alpha': a}) for a in alphas]


def test_encode_values():
    assert encode_value(UNBOUNDED) == 'inf'
    assert encode_value(float('inf')) == 'inf'
    assert encode_value(np.float64(0.1)) == 0.1
    assert encode_value(np.int64(3)) == 3
    assert encode_value(np.bool_(True)) is True
    assert encode_value({'a': [None, UNBOUNDED]}) == {'a': [None, 'inf']}
    assert decode_value('inf') == float('inf')


def test_json_document_structure():
    text = dumps_json(_records([1.0]), 'sequence-example')
    document = json.loads(text)
    assert document['schema_version'] == 1
    assert document['passed'] is True
    record = document['records'][0]
    assert record['parameters'] == {'n': 2, 'variant': '1', 'alpha': 1.0}
    assert record['consistent'] is True
    assert set(record['checks']['angle-route']) == {'passed', 'residual', 'tolerance', 'applicable'}


def test_json_floats_round_trip_exactly():
    records = _records([0.3])
    document = json.loads(dumps_json(records, 'sequence-example'))
    assert document['records'][0]['delta_v'] == records[0].report.delta_v


def test_csv_columns():
    frame = records_frame(_records([1.0, 0.5]))
    columns = list(frame.columns)
    assert columns[:4] == ['model', 'param.n', 'param.variant', 'param.alpha']
    assert columns.index('proxy_dim') < columns.index('c_stab') < columns.index('flags')
    assert 'residual.angle-route' in columns
    assert 'check.angle-route.passed' in columns
    text = dumps_csv(_records([0.5]))
    assert text.splitlines()[0].startswith('model,param.n')


def test_sweep_table_relative_change():
    table = sweep_table(_records([1.0, 0.5]))
    expected = (math.sqrt(5.0) - math.sqrt(2.0)) / math.sqrt(2.0)
    assert table['delta_s.rel_change'].iloc[1] == pytest.approx(expected, rel=1e-10)
    assert np.isnan(table['delta_s.rel_change'].iloc[0])


def test_check_monotone():
    records = _records([1.0, 0.5, 0.1])
    assert check_monotone(records, [MonotoneSpec('delta_s', 'nondecreasing')]) == []
    failures = check_monotone(records, [MonotoneSpec('delta_v', 'nonincreasing')])
    assert [f.index for f in failures] == [1, 2]
    assert isinstance(failures[0], MonotoneFailure)
