# plcube: exact computations with PL homeomorphisms of cubes.
#
# Copyright (C) 2024 The plcube developers
#
# This program is free software; you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation; either version 2 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along
# with this program; if not, write to the Free Software Foundation, Inc.,
# 51 Franklin Street, Fifth Floor, Boston, MA 02110-1301 USA.

# JSON codecs for maps and reports.  Rationals are always written as "p/q"
# strings; on input integers and decimal strings are accepted too.

import csv
import json

from fractions import Fraction
from gettext import gettext as _
from typing import Any, Dict, List, TextIO

from plcube.braid import GridOracle, PhiEstimate, Trajectory
from plcube.distortion import BoundsReport, GrowthReport, WordBall
from plcube.errors import PlcubeError, SchemaError, ValidationError
from plcube.geometry import RatAffineMap, RatPoint, Simplex
from plcube.invariants import GroupFixedReport, PolyhedralSet, VolumeCheck, WitnessReport
from plcube.plmap import PLMap, ValidationReport, validate
from plcube.utils import frac, fracToString
from plcube.words import BraidWord


def ratToJson(q: Fraction) -> str:
    return fracToString(q)


def pointToJson(p: RatPoint) -> List[str]:
    return [fracToString(c) for c in p]


def mapToJson(f: PLMap) -> Dict[str, Any]:
    if f.base is not None:
        return {'dim': f.dim, 'kind': {'suspension_of': mapToJson(f.base)}}
    return {
        'dim': f.dim,
        'kind': 'generic',
        'cells': [{
            'simplex': [pointToJson(v) for v in s.vertices],
            'linear': [pointToJson(row) for row in m.linear],
            'translation': pointToJson(m.translation)
        } for s, m in f.cells]
    }


def serialize_map(f: PLMap) -> str:
    return json.dumps(mapToJson(f), indent=2) + '\n'


def _rat(value: Any, path: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SchemaError(_('expected a rational as a string or an integer'), path)
    try:
        return frac(value)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(_('"{value}" is not a rational').format(value=value), path)


def _list(value: Any, path: str, length: int = -1) -> List[Any]:
    if not isinstance(value, list):
        raise SchemaError(_('expected a list'), path)
    if length >= 0 and len(value) != length:
        raise SchemaError(_('expected {n} entries').format(n=length), path)
    return value


def _point(value: Any, path: str, dim: int) -> RatPoint:
    return tuple(_rat(c, f'{path}[{i}]') for i, c in enumerate(_list(value, path, dim)))


def _field(obj: Dict[str, Any], key: str, path: str) -> Any:
    if key not in obj:
        raise SchemaError(_('missing field "{key}"').format(key=key), path)
    return obj[key]


def mapFromJson(obj: Any, path: str = '$') -> PLMap:
    '''Decodes a map without validating it.'''
    if not isinstance(obj, dict):
        raise SchemaError(_('expected an object'), path)
    dim = _field(obj, 'dim', path)
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise SchemaError(_('dim must be a positive integer'), f'{path}.dim')
    kind = obj.get('kind', 'generic')
    try:
        if isinstance(kind, dict):
            kp = f'{path}.kind.suspension_of'
            base = mapFromJson(_field(kind, 'suspension_of', f'{path}.kind'), kp)
            if base.dim != dim - 1:
                raise SchemaError(_('base must have dimension {dim}').format(dim=dim - 1), kp)
            return PLMap.suspensionOf(base)
        if kind != 'generic':
            raise SchemaError(_('unknown kind "{kind}"').format(kind=kind), f'{path}.kind')
        cells = []
        for i, cell in enumerate(_list(_field(obj, 'cells', path), f'{path}.cells')):
            p = f'{path}.cells[{i}]'
            if not isinstance(cell, dict):
                raise SchemaError(_('expected an object'), p)
            vertices = _list(_field(cell, 'simplex', p), f'{p}.simplex', dim + 1)
            linear = _list(_field(cell, 'linear', p), f'{p}.linear', dim)
            s = Simplex(tuple(_point(v, f'{p}.simplex[{k}]', dim) for k, v in enumerate(vertices)))
            m = RatAffineMap(
                tuple(_point(row, f'{p}.linear[{k}]', dim) for k, row in enumerate(linear)),
                _point(_field(cell, 'translation', p), f'{p}.translation', dim))
            cells.append((s, m))
        return PLMap(dim, cells)
    except SchemaError:
        raise
    except PlcubeError as e:
        raise SchemaError(e.msg, path)


def parse_map(text: str) -> PLMap:
    '''Decodes and validates a map.'''
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(e.msg, f'line {e.lineno} column {e.colno}')
    f = mapFromJson(obj)
    report = validate(f)
    if not report.passed:
        raise ValidationError(_('The map failed validation'), report)
    return f


# reports

def validationToJson(report: ValidationReport) -> Dict[str, Any]:
    return {
        'passed': report.passed,
        'violations': [{
            'check': v.check,
            'witness': [_witnessItem(x) for x in v.witness],
            'detail': v.detail
        } for v in report.violations]
    }


def _witnessItem(x: Any) -> Any:
    if isinstance(x, Fraction):
        return fracToString(x)
    if isinstance(x, tuple):
        return [_witnessItem(y) for y in x]
    return x


def volumeToJson(v: VolumeCheck) -> Dict[str, Any]:
    return {
        'preserves_area': v.preserves,
        'max_det': ratToJson(v.max_det),
        'min_det': ratToJson(v.min_det)
    }


def polyhedralSetToJson(s: PolyhedralSet) -> Dict[str, Any]:
    return {
        'dim': s.dim,
        'pieces': [{
            'dim': p.dim,
            'vertices': [pointToJson(v) for v in p.vertices]
        } for p in s.pieces]
    }


def groupFixedToJson(r: GroupFixedReport) -> Dict[str, Any]:
    return {
        'fixed': polyhedralSetToJson(r.fixed),
        'frontier': polyhedralSetToJson(r.frontier),
        'containment_holds': r.containment_holds,
        'uncovered': [[pointToJson(v) for v in p.vertices] for p in r.uncovered]
    }


def witnessToJson(w: WitnessReport) -> Dict[str, Any]:
    normal, offset = w.dividing_plane
    return {
        'point': pointToJson(w.point),
        'dividing_plane': {'normal': pointToJson(normal), 'offset': ratToJson(offset)},
        'side': pointToJson(w.side),
        'per_generator': [{'V': pointToJson(v), 'a': ratToJson(a)} for v, a in w.per_generator],
        'nontrivial': w.nontrivial
    }


def trajectoryToJson(t: Trajectory) -> Dict[str, Any]:
    return {
        'strand': t.strand,
        'pieces': [{
            's': [ratToJson(p.t0), ratToJson(p.t1)],
            'u': pointToJson(p.u),
            'v': pointToJson(p.v)
        } for p in t.pieces]
    }


def braidWordToJson(w: BraidWord) -> Dict[str, Any]:
    return {
        'strands': w.strands,
        'letters': [[i, e] for i, e in w.letters],
        'exponent_sum': w.exponentSum()
    }


def phiToJson(p: PhiEstimate) -> Dict[str, Any]:
    return {
        'estimate': ratToJson(p.estimate),
        'variance': ratToJson(p.variance),
        'stderr': p.stderr(),
        'samples': p.samples,
        'resamples': p.resamples
    }


def oracleToJson(o: GridOracle) -> Dict[str, Any]:
    return {'estimate': ratToJson(o.estimate), 'used': o.used, 'skipped': o.skipped}


def ballToJson(b: WordBall) -> Dict[str, Any]:
    return {
        'radius': b.radius,
        'size': len(b),
        'layer_sizes': b.layer_sizes,
        'words': [list(w) for w in b.words]
    }


def growthToJson(g: GrowthReport) -> Dict[str, Any]:
    return {
        'description': g.description,
        'series': [{
            'n': p.n,
            'word_length': p.word_length,
            'D': ratToJson(p.D),
            'cell_count': p.cell_count,
            'breakpoints': p.breakpoints
        } for p in g.series],
        'C': ratToJson(g.C),
        'profile': [[m, n] for m, n in g.profile]
    }


def boundsToJson(b: BoundsReport) -> Dict[str, Any]:
    return {
        'radius': b.radius,
        'elements': b.elements,
        'checked': b.checked,
        'passed': b.passed,
        'violations': [{
            'word': list(v.word),
            'bound': v.bound,
            'value': ratToJson(v.value),
            'limit': ratToJson(v.limit)
        } for v in b.violations]
    }


def writeGrowthCsv(g: GrowthReport, fd: TextIO) -> None:
    writer = csv.writer(fd)
    writer.writerow(['n', 'word_length', 'D', 'cell_count', 'breakpoints'])
    for p in g.series:
        writer.writerow([p.n, p.word_length, ratToJson(p.D), p.cell_count,
                         '' if p.breakpoints is None else p.breakpoints])
