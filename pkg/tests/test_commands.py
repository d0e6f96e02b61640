import io
import json

import pytest

from plcube import acceptance, commands, serialization
from plcube.constructors import FIGURE2_SPEC, BreakpointSpec, germAtOrigin, pl1d, twist_power
from plcube.plmap import PLMap
from plcube.serialization import serialize_map

TWIST = {'inner': '1/2', 'fraction': '1/12'}


@pytest.fixture
def mapFile(tmp_path):
    def write(f, name='map.json'):
        path = tmp_path / name
        path.write_text(serialize_map(f), encoding='utf-8')
        return str(path)
    return write


def _stdin(f):
    return io.StringIO(serialize_map(f))


def test_usage():
    assert commands.run([]).status == 2
    r = commands.run(['frobnicate'])
    assert r.status == 2
    assert r.summary == commands.USAGE


def test_construct_twist_then_check():
    r = commands.run(['construct', 'twist'], TWIST)
    assert r.status == 0
    assert r.payload['dim'] == 2
    r = commands.run(['check', '-'], {}, io.StringIO(json.dumps(r.payload)))
    assert r.status == 0
    assert r.payload['valid']
    assert r.payload['preserves_area']


@pytest.mark.parametrize('arguments, options', [
    (['construct', 'twist'], {'inner': '1/2'}),
    (['construct', 'twist'], {'inner': '1/2', 'fraction': 'x'}),
    (['construct', 'identity', 'two'], {}),
    (['construct', 'identity'], {}),
    (['construct', 'pl1d', '-1:-1', '1'], {}),
    (['construct', 'spiral'], {}),
])
def test_construct_usage_errors(arguments, options):
    assert commands.run(arguments, options).status == 2


def test_construct_pl1d():
    r = commands.run(['construct', 'pl1d', '-1:-1', '0:1/2', '1:1'])
    assert r.status == 0
    assert [c['linear'] for c in r.payload['cells']] == [[['3/2']], [['1/2']]]
    r = commands.run(['construct', 'pl1d', '-1:-1', '0:1/2', '1/2:1/4', '1:1'])
    assert r.status == 1
    assert r.payload['error'] == 'SpecError'


def test_construct_figure2():
    r = commands.run(['construct', 'figure2'])
    assert r.status == 0
    assert set(r.payload) == {'f', 'g'}


def test_apply_and_invariants(f1d, mapFile):
    name = mapFile(f1d)
    r = commands.run(['apply', name, '0'])
    assert r.status == 0
    assert r.payload['image'] == ['1/2']
    assert r.summary == '1/2'
    r = commands.run(['invariants', name])
    assert r.payload['D'] == '3/2'
    assert r.payload['cell_count'] == 2
    assert r.payload['breakpoints'] == ['0/1']
    assert not r.payload['volume']['preserves_area']


def test_compose_and_inverse(f1d, mapFile):
    name = mapFile(f1d)
    r = commands.run(['compose', name, name])
    assert [c['linear'] for c in r.payload['cells']] == [[['9/4']], [['3/4']], [['1/4']]]
    r = commands.run(['inverse', name])
    assert [c['linear'] for c in r.payload['cells']] == [[['2/3']], [['2/1']]]


def test_orders(f1d, mapFile):
    r = commands.run(['order', 'sign', '-'], {}, _stdin(PLMap.identity(1)))
    assert r.status == 0
    assert r.payload == {'sign': 0}
    r = commands.run(['order', 'compare', mapFile(f1d), mapFile(PLMap.identity(1), 'id.json')])
    assert r.payload == {'comparison': '>'}
    r = commands.run(['order', 'cocycle-test'], {'samples': 50, 'seed': 1})
    assert r.status == 0
    assert r.payload == {'samples': 50, 'failures': 0}


def test_fixed_set_and_witness(h, mapFile):
    name = mapFile(h)
    r = commands.run(['fixed-set', name])
    assert r.status == 0
    assert r.payload['containment_holds']
    r = commands.run(['witness', name])
    assert r.status == 0
    assert r.payload['point'] == ['1/1', '0/1']


def test_witness_of_identity_fails(mapFile):
    r = commands.run(['witness', mapFile(PLMap.identity(2))])
    assert r.status == 1
    assert r.payload['error'] == 'TrivialGroupError'


def test_unreadable_inputs(tmp_path):
    r = commands.run(['check', str(tmp_path / 'missing.json')])
    assert r.status == 2
    bad = tmp_path / 'bad.json'
    bad.write_text('{"dim": ', encoding='utf-8')
    r = commands.run(['check', str(bad)])
    assert r.status == 2
    assert r.payload['error'] == 'schema'
    assert commands.run(['check', '-']).status == 2


def test_invalid_map(tmp_path):
    path = tmp_path / 'half.json'
    path.write_text(json.dumps({'dim': 1, 'cells': [
        {'simplex': [['-1'], ['0']], 'linear': [['1']], 'translation': ['0']}]}),
        encoding='utf-8')
    r = commands.run(['check', str(path)])
    assert r.status == 1
    assert r.payload['error'] == 'validation'
    assert not r.payload['validation']['passed']


def test_braid_word(mapFile):
    name = mapFile(PLMap.identity(2))
    r = commands.run(['braid', 'word', name, '1/5', '1/7', '-2/3', '1/2'])
    assert r.status == 0
    assert r.payload['letters'] == []
    r = commands.run(['braid', 'word', name, '0', '1/4', '0', '-1/4'])
    assert r.status == 1
    assert r.payload['error'] == 'degenerate'
    assert r.payload['pair'] == [1, 2]
    assert commands.run(['braid', 'word', name, '0', '1/4', '0']).status == 2


def test_braid_phi(mapFile):
    name = mapFile(PLMap.identity(2))
    r = commands.run(['braid', 'phi', name], {'samples': 8, 'seed': 2, 'jobs': 1})
    assert r.status == 0
    assert r.payload['estimate'] == '0/1'
    assert r.payload['samples'] == 8
    assert commands.run(['braid', 'phi', name], {'mu': 'table'}).status == 2
    r = commands.run(['braid', 'phi', name], {'mu': 'signature', 'samples': 8})
    assert r.status == 1


def test_distortion(f1d, mapFile, tmp_path):
    name = mapFile(f1d)
    assert commands.run(['distortion', 'ball', name]).status == 2
    r = commands.run(['distortion', 'ball', name], {'radius': 3, 'jobs': 1})
    assert r.status == 0
    assert r.payload['size'] == 7
    csvPath = tmp_path / 'growth.csv'
    r = commands.run(['distortion', 'powers', name], {'n-max': 3, 'csv': str(csvPath)})
    assert r.status == 0
    assert r.payload['C'] == '9/8'
    assert csvPath.read_text(encoding='utf-8').startswith('n,word_length,D')
    r = commands.run(['distortion', 'verify', name], {'radius': 2, 'jobs': 1})
    assert r.status == 0
    assert r.payload['passed']


def test_distortion_cap(f1d, mapFile):
    r = commands.run(['distortion', 'ball', mapFile(f1d)], {'radius': 7})
    assert r.status == 1
    assert r.payload['error'] == 'CapExceededError'


@pytest.mark.parametrize('suite', ['klein-relation', 'twist'])
def test_verify(suite):
    r = commands.run(['verify', suite])
    assert r.status == 0
    assert all(r.payload[suite].values())


def test_verify_unknown_suite():
    assert commands.run(['verify', 'everything']).status == 2


def test_verify_runs_every_suite():
    assert list(acceptance.suites(0)) == [
        'group-axioms', 'twist', 'klein-relation', 'suspension', 'distortion', 'undistorted',
        'order-axioms', 'circular-order', 'braid-cocycle', 'phi', 'witness', 'serialization']


@pytest.mark.slow
def test_verify_all():
    r = commands.run(['verify', 'all'], {'seed': 11, 'samples': 1024, 'grid': 16})
    assert r.status == 0
    assert set(r.payload) == set(acceptance.suites(11))
    assert all(all(checks.values()) for checks in r.payload.values())


def test_construct_free_pair():
    r = commands.run(['construct', 'free-pair'])
    assert r.status == 0
    assert set(r.payload) == {'a', 'b'}
    a = serialization.mapFromJson(r.payload['a'])
    assert germAtOrigin(a) == ((1, 2), (0, 1))
    assert commands.run(['construct', 'free-pair', '1/4', '1/8']).status == 2


def test_oracle_command(mapFile):
    h12 = twist_power(FIGURE2_SPEC, 12)
    r = commands.run(['braid', 'oracle', mapFile(h12)],
                     {'mu': 'pair_linking', 'strands': 2, 'grid': 4, 'jobs': 2})
    assert r.status == 0
    assert r.payload['used'] + r.payload['skipped'] == 16 * 16


def test_pl1d_command_matches_library(f1d):
    r = commands.run(['construct', 'pl1d', '-1:-1', '0:1/2', '1:1'])
    assert r.payload == json.loads(serialize_map(pl1d(BreakpointSpec(
        ((-1, -1), (0, '1/2'), (1, 1))))))
