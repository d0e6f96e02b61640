import io
import json

from fractions import Fraction

import pytest

from plcube.constructors import random_pl1d, random_pl2d, suspend
from plcube.distortion import power_growth
from plcube.errors import SchemaError, ValidationError
from plcube.plmap import PLMap, apply, equals
from plcube.serialization import (
    braidWordToJson,
    mapFromJson,
    mapToJson,
    parse_map,
    serialize_map,
    validationToJson,
    writeGrowthCsv,
)
from plcube.words import BraidWord


def _cell1d(lo, hi, slope='1', shift='0'):
    return {'simplex': [[lo], [hi]], 'linear': [[slope]], 'translation': [shift]}


def test_map_to_json(f1d):
    obj = mapToJson(f1d)
    assert obj['dim'] == 1
    assert obj['kind'] == 'generic'
    assert obj['cells'][0] == _cell1d('-1/1', '0/1', '3/2', '1/2')


def test_parse_round_trip(f1d, h):
    for f in (f1d, h):
        assert equals(parse_map(serialize_map(f)), f)


def test_suspension_keeps_its_base(h):
    s = suspend(h)
    obj = mapToJson(s)
    assert set(obj) == {'dim', 'kind'}
    assert obj['kind']['suspension_of']['dim'] == 2
    assert obj['kind']['suspension_of']['kind'] == 'generic'
    assert equals(parse_map(json.dumps(obj)), s)


def test_documented_layout_is_read():
    text = json.dumps({'dim': 1, 'kind': 'generic', 'cells': [
        {'simplex': [['-1'], ['1']], 'linear': [['1']], 'translation': ['0']}]})
    f = parse_map(text)
    assert f.isIdentity()
    assert mapToJson(f) == {'dim': 1, 'kind': 'generic', 'cells': [
        {'simplex': [['-1/1'], ['1/1']], 'linear': [['1/1']], 'translation': ['0/1']}]}


def test_documented_suspension_layout_is_read(f1d):
    text = json.dumps({'dim': 2, 'kind': {'suspension_of': mapToJson(f1d)}})
    s = parse_map(text)
    assert equals(s, suspend(f1d))
    assert apply(s, (Fraction(0), Fraction(0))) == (Fraction(1, 2), 0)


def test_integers_and_decimals_are_accepted():
    text = json.dumps({'dim': 1, 'cells': [
        _cell1d(-1, '0.0'), _cell1d('0', 1)]})
    assert parse_map(text).isIdentity()


@pytest.mark.parametrize('obj, path', [
    ([], '$'),
    ({'cells': []}, '$'),
    ({'dim': True, 'cells': []}, '$.dim'),
    ({'dim': 1, 'kind': 'spline', 'cells': []}, '$.kind'),
    ({'dim': 1, 'cells': {}}, '$.cells'),
    ({'dim': 1, 'cells': [_cell1d('-1', 'x')]}, '$.cells[0].simplex[1][0]'),
    ({'dim': 1, 'cells': [_cell1d('-1', '1', slope=0.5)]}, '$.cells[0].linear[0][0]'),
    ({'dim': 1, 'cells': [_cell1d('-1', '1', shift='1/0')]}, '$.cells[0].translation[0]'),
    ({'dim': 1, 'cells': [{'simplex': [['-1']], 'linear': [['1']], 'translation': ['0']}]},
     '$.cells[0].simplex'),
    ({'dim': 1, 'cells': [{'simplex': [['-1'], ['1']], 'linear': [['1']]}]}, '$.cells[0]'),
    ({'dim': 2, 'kind': {'suspension_of': {'dim': 2, 'cells': []}}}, '$.kind.suspension_of'),
    ({'dim': 2, 'kind': {'base': {}}}, '$.kind'),
])
def test_schema_errors(obj, path):
    with pytest.raises(SchemaError) as e:
        mapFromJson(obj)
    assert e.value.path == path


def test_bad_json():
    with pytest.raises(SchemaError) as e:
        parse_map('{"dim": 1,')
    assert e.value.path.startswith('line 1')


def test_invalid_map_is_rejected():
    text = json.dumps({'dim': 1, 'cells': [_cell1d('-1', '0')]})
    with pytest.raises(ValidationError) as e:
        parse_map(text)
    report = validationToJson(e.value.report)
    assert not report['passed']
    assert report['violations']


def test_identity_serializes_to_valid_json():
    obj = json.loads(serialize_map(PLMap.identity(2)))
    assert obj['dim'] == 2
    assert all(c['translation'] == ['0/1', '0/1'] for c in obj['cells'])


def test_braid_word_json():
    w = BraidWord(3, ((1, 1), (2, -1), (2, -1)))
    assert braidWordToJson(w) == {'strands': 3, 'letters': [[1, 1], [2, -1], [2, -1]],
                                  'exponent_sum': -1}


def test_growth_csv(f1d):
    fd = io.StringIO()
    writeGrowthCsv(power_growth(f1d, 2), fd)
    lines = fd.getvalue().splitlines()
    assert lines == ['n,word_length,D,cell_count,breakpoints', '1,1,3/2,2,1', '2,2,9/4,3,2']


def test_random_maps_survive_serialization(rng):
    for i in range(100):
        f = random_pl2d(rng) if i % 4 == 0 else random_pl1d(rng, nodes=4)
        back = parse_map(serialize_map(f))
        assert mapToJson(back) == mapToJson(f)
        assert back == f
