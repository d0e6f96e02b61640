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

# Command dispatch for the command line front end.  run() takes the positional
# arguments and the parsed option dictionary and returns a CommandResult; it
# never writes to stdout itself.

import itertools

from dataclasses import dataclass, field
from fractions import Fraction
from gettext import gettext as _
from typing import Any, Callable, Dict, List, Optional, TextIO

from plcube import (
    acceptance,
    braid,
    constructors,
    distortion,
    invariants,
    orders,
    serialization,
    utils,
)
from plcube.errors import DegeneracyError, PlcubeError, SchemaError, UsageError, ValidationError
from plcube.mu.mu_interface import QuasimorphismSpec
from plcube.plmap import PLMap, apply, canonicalize, compose, inverse

Options = Dict[str, Any]

USAGE = _('''Usage:
    plcube [OPTION...] COMMAND ARGS...

Commands:
    construct identity DIM | pl1d X:Y ... | twist --inner R --fraction R [--power K]
              | alexander MAP T | suspend MAP | embed MAP X0 X1 [Y0 Y1] | figure2
              | linear A B C D R | free-pair [R]
    check MAP                 apply MAP X...            compose MAP MAP
    inverse MAP               invariants MAP            fixed-set MAP...
    witness MAP...
    order sign MAP | compare MAP MAP | cocycle-test [--samples N]
    braid trace MAP X Y | word MAP X1 Y1 X2 Y2 ...
          | phi MAP [--mu KIND] [--strands N] [--samples N]
          | oracle MAP [--mu KIND] [--strands N] [--grid G]
    distortion ball MAP... --radius R | powers MAP --n-max N [--csv FILE]
               | verify MAP... --radius R
    verify SUITE [--samples N] [--grid G] | all

Suites: group-axioms, twist, klein-relation, suspension, distortion, undistorted,
order-axioms, circular-order, braid-cocycle, phi, witness, serialization.

MAP is a file holding a map as JSON, or "-" for standard input.''')


@dataclass
class CommandResult:
    status: int
    payload: Any = field(default_factory=dict)
    summary: str = ''


class _Context:
    def __init__(self, options: Options, stdin: Optional[TextIO]) -> None:
        self.options = options
        self.stdin = stdin

    def option(self, name: str, default: Any = None) -> Any:
        return self.options.get(name, default)

    def seed(self) -> int:
        seed = self.options.get('seed')
        return utils.defaultSeed() if seed is None else seed

    def jobs(self) -> Optional[int]:
        return self.options.get('jobs')

    def loadMap(self, name: str) -> PLMap:
        if name == '-':
            if self.stdin is None:
                raise UsageError(_('No standard input available'))
            text = self.stdin.read()
        else:
            try:
                with open(name, 'r', encoding='utf-8') as fd:
                    text = fd.read()
            except IOError:
                utils.logError(_('Error reading {name}.').format(name=name))
                raise UsageError(_('Cannot read "{name}"').format(name=name))
        return serialization.parse_map(text)


def _need(args: List[str], count: int, at_least: bool = False) -> None:
    if len(args) < count or (not at_least and len(args) > count):
        raise UsageError(_('Wrong number of arguments'))


def _rat(s: str) -> Fraction:
    try:
        return utils.frac(s)
    except (ValueError, ZeroDivisionError):
        raise UsageError(_('"{value}" is not a rational').format(value=s))


def _int(s: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise UsageError(_('"{value}" is not an integer').format(value=s))


def _mapResult(f: PLMap, summary: str) -> CommandResult:
    return CommandResult(0, serialization.mapToJson(f), summary)


# construct

def _construct(ctx: _Context, args: List[str]) -> CommandResult:
    _need(args, 1, True)
    what, rest = args[0], args[1:]
    if what == 'identity':
        _need(rest, 1)
        return _mapResult(PLMap.identity(_int(rest[0])), _('identity map'))
    if what == 'pl1d':
        nodes = []
        for arg in rest:
            x, sep, y = arg.partition(':')
            if not sep:
                raise UsageError(_('Breakpoints are written X:Y'))
            nodes.append((_rat(x), _rat(y)))
        f = constructors.pl1d(constructors.BreakpointSpec(tuple(nodes)))
        return _mapResult(f, _('one dimensional map with {n} cells').format(n=len(f.cells)))
    if what == 'twist':
        _need(rest, 0)
        if ctx.option('inner') is None or ctx.option('fraction') is None:
            raise UsageError(_('twist needs --inner and --fraction'))
        spec = constructors.TwistSpec(_rat(ctx.option('inner')), _rat(ctx.option('fraction')))
        f = constructors.twist_power(spec, ctx.option('power', 1))
        return _mapResult(f, _('twist with {n} cells').format(n=len(f.cells)))
    if what == 'alexander':
        _need(rest, 2)
        return _mapResult(constructors.alexander(ctx.loadMap(rest[0]), _rat(rest[1])),
                          _('Alexander isotopy stage'))
    if what == 'suspend':
        _need(rest, 1)
        return _mapResult(constructors.suspend(ctx.loadMap(rest[0])), _('suspension'))
    if what == 'embed':
        _need(rest, 3, True)
        f = ctx.loadMap(rest[0])
        bounds = [_rat(s) for s in rest[1:]]
        if len(bounds) != 2 * f.dim:
            raise UsageError(_('embed needs two bounds per dimension'))
        box = [(bounds[2 * i], bounds[2 * i + 1]) for i in range(f.dim)]
        return _mapResult(constructors.embed_support(f, box), _('embedded map'))
    if what == 'figure2':
        _need(rest, 0)
        f, g = constructors.figure2_g()
        return CommandResult(0, {'f': serialization.mapToJson(f), 'g': serialization.mapToJson(g)},
                             _('the pair f, g with f^-1 g f = g^-1'))
    if what == 'linear':
        _need(rest, 5)
        a, b, c, d, r = [_rat(s) for s in rest]
        return _mapResult(constructors.linear_near_zero(((a, b), (c, d)), r),
                          _('map linear near the origin'))
    if what == 'free-pair':
        if len(rest) > 1:
            raise UsageError(_('Wrong number of arguments'))
        a, b = constructors.free_pair(_rat(rest[0])) if rest else constructors.free_pair()
        return CommandResult(0, {'a': serialization.mapToJson(a), 'b': serialization.mapToJson(b)},
                             _('two maps generating a free group'))
    raise UsageError(_('Unknown map "{what}"').format(what=what))


# single map commands

def _check(ctx: _Context, args: List[str]) -> CommandResult:
    _need(args, 1)
    f = ctx.loadMap(args[0])
    volume = invariants.volume_check(f)
    payload = {'valid': True, 'cells': len(f.cells)}
    payload.update(serialization.volumeToJson(volume))
    return CommandResult(0, payload,
                         _('valid map, area preserving: {p}').format(p=volume.preserves))


def _apply(ctx: _Context, args: List[str]) -> CommandResult:
    _need(args, 2, True)
    f = ctx.loadMap(args[0])
    x = tuple(_rat(s) for s in args[1:])
    y = apply(f, x)
    return CommandResult(0, {'point': serialization.pointToJson(x),
                             'image': serialization.pointToJson(y)},
                         ' '.join(utils.fracToString(c) for c in y))


def _compose(ctx: _Context, args: List[str]) -> CommandResult:
    _need(args, 2)
    return _mapResult(canonicalize(compose(ctx.loadMap(args[0]), ctx.loadMap(args[1]))),
                      _('composition'))


def _inverse(ctx: _Context, args: List[str]) -> CommandResult:
    _need(args, 1)
    return _mapResult(canonicalize(inverse(ctx.loadMap(args[0]))), _('inverse'))


def _invariants(ctx: _Context, args: List[str]) -> CommandResult:
    _need(args, 1)
    f = ctx.loadMap(args[0])
    payload: Dict[str, Any] = {
        'D': utils.fracToString(invariants.matrix_norm(f)),
        'cell_count': invariants.cell_count(f),
        'volume': serialization.volumeToJson(invariants.volume_check(f))
    }
    if f.dim == 1:
        payload['breakpoints'] = [utils.fracToString(x) for x in invariants.breakpoints(f)]
    return CommandResult(0, payload, _('D = {d}, {n} cells').format(
        d=payload['D'], n=payload['cell_count']))


def _fixedSet(ctx: _Context, args: List[str]) -> CommandResult:
    _need(args, 1, True)
    gens = [ctx.loadMap(a) for a in args]
    report = invariants.group_fixed_set(gens)
    status = 0 if report.containment_holds else 1
    return CommandResult(status, serialization.groupFixedToJson(report),
                         _('{n} fixed pieces, {m} frontier pieces').format(
                             n=len(report.fixed.pieces), m=len(report.frontier.pieces)))


def _witness(ctx: _Context, args: List[str]) -> CommandResult:
    _need(args, 1, True)
    w = invariants.indicability_witness([ctx.loadMap(a) for a in args])
    return CommandResult(0 if w.nontrivial else 1, serialization.witnessToJson(w),
                         _('nontrivial: {n}').format(n=w.nontrivial))


# orders

def _order(ctx: _Context, args: List[str]) -> CommandResult:
    _need(args, 1, True)
    what, rest = args[0], args[1:]
    if what == 'sign':
        _need(rest, 1)
        s = orders.onedim_sign(ctx.loadMap(rest[0]))
        return CommandResult(0, {'sign': int(s)}, s.name.lower())
    if what == 'compare':
        _need(rest, 2)
        c = orders.onedim_compare(ctx.loadMap(rest[0]), ctx.loadMap(rest[1]))
        return CommandResult(0, {'comparison': c.value}, c.value)
    if what == 'cocycle-test':
        _need(rest, 0)
        samples = ctx.option('samples', 1000)
        failures = acceptance.cocycleFailures(ctx.seed(), samples)
        return CommandResult(0 if failures == 0 else 1,
                             {'samples': samples, 'failures': failures},
                             _('{f} of {n} quadruples fail').format(f=failures, n=samples))
    raise UsageError(_('Unknown order command "{what}"').format(what=what))


# braids

def _muSpec(ctx: _Context) -> QuasimorphismSpec:
    kind = ctx.option('mu', 'exponent_sum')
    if kind == 'table':
        raise UsageError(_('Table quasimorphisms are available from the library only'))
    return QuasimorphismSpec(kind, ctx.option('strands', 2), Fraction(0))


def _braid(ctx: _Context, args: List[str]) -> CommandResult:
    _need(args, 2, True)
    what, g = args[0], ctx.loadMap(args[1])
    rest = args[2:]
    if what == 'trace':
        _need(rest, 2)
        t = braid.trajectory(g, (_rat(rest[0]), _rat(rest[1])))
        return CommandResult(0, serialization.trajectoryToJson(t),
                             _('{n} pieces').format(n=len(t.pieces)))
    if what == 'word':
        if len(rest) < 2 or len(rest) % 2:
            raise UsageError(_('braid word needs pairs of coordinates'))
        points = [(_rat(x), _rat(y)) for x, y in zip(rest[::2], rest[1::2])]
        try:
            w = braid.braid_word(g, braid.basepointsFor(len(points)), points)
        except DegeneracyError as e:
            return CommandResult(1, {'error': 'degenerate', 'message': e.msg, 'pair': list(e.pair)},
                                 e.msg)
        return CommandResult(0, serialization.braidWordToJson(w),
                             _('exponent sum {e}').format(e=w.exponentSum()))
    spec = _muSpec(ctx)
    if what == 'phi':
        _need(rest, 0)
        p = braid.phi_estimate(g, spec, spec.strands, ctx.option('samples', 4096), ctx.seed(),
                               ctx.jobs())
        return CommandResult(0, serialization.phiToJson(p), _('{e} +- {s}').format(
            e=float(p.estimate), s=p.stderr(4)))
    if what == 'oracle':
        _need(rest, 0)
        o = braid.phi_grid_oracle(g, spec, spec.strands, ctx.option('grid', 64), ctx.jobs())
        return CommandResult(0, serialization.oracleToJson(o), str(float(o.estimate)))
    raise UsageError(_('Unknown braid command "{what}"').format(what=what))


# distortion

def _radius(ctx: _Context) -> int:
    radius = ctx.option('radius')
    if radius is None:
        raise UsageError(_('--radius is required'))
    return radius


def _distortion(ctx: _Context, args: List[str]) -> CommandResult:
    _need(args, 2, True)
    what, gens = args[0], [ctx.loadMap(a) for a in args[1:]]
    if what == 'ball':
        b = distortion.word_ball(gens, _radius(ctx), ctx.jobs())
        return CommandResult(0, serialization.ballToJson(b), _('{n} elements').format(n=len(b)))
    if what == 'powers':
        if len(gens) != 1:
            raise UsageError(_('powers takes one map'))
        report = distortion.power_growth(gens[0], ctx.option('n-max', 30))
        csvName = ctx.option('csv')
        if csvName is not None:
            with open(csvName, 'w', encoding='utf-8', newline='') as fd:
                serialization.writeGrowthCsv(report, fd)
        return CommandResult(0, serialization.growthToJson(report),
                             _('C = {c}').format(c=utils.fracToString(report.C)))
    if what == 'verify':
        report = distortion.verify_bounds(gens, _radius(ctx), ctx.jobs())
        return CommandResult(0 if report.passed else 1, serialization.boundsToJson(report),
                             _('{n} elements, {v} violations').format(
                                 n=report.elements, v=len(report.violations)))
    raise UsageError(_('Unknown distortion command "{what}"').format(what=what))


def _verify(ctx: _Context, args: List[str]) -> CommandResult:
    _need(args, 1)
    suites = acceptance.suites(ctx.seed(), ctx.jobs(),
                               ctx.option('samples', acceptance.PHI_SAMPLES),
                               ctx.option('grid', acceptance.PHI_GRID))
    names = list(suites) if args[0] == 'all' else [args[0]]
    if any(name not in suites for name in names):
        raise UsageError(_('Unknown suite "{name}"').format(name=args[0]))
    results = {name: suites[name]() for name in names}
    passed = all(itertools.chain.from_iterable(r.values() for r in results.values()))
    return CommandResult(0 if passed else 1, results,
                         _('passed') if passed else _('FAILED'))


_COMMANDS: Dict[str, Callable[[_Context, List[str]], CommandResult]] = {
    'construct': _construct,
    'check': _check,
    'apply': _apply,
    'compose': _compose,
    'inverse': _inverse,
    'invariants': _invariants,
    'fixed-set': _fixedSet,
    'witness': _witness,
    'order': _order,
    'braid': _braid,
    'distortion': _distortion,
    'verify': _verify
}


def run(arguments: List[str], options: Optional[Options] = None,
        stdin: Optional[TextIO] = None) -> CommandResult:
    '''Dispatches a command line.  Exit statuses: 0 success, 1 a violated
    property or a failed computation, 2 a usage error.'''
    ctx = _Context(options or {}, stdin)
    if not arguments or arguments[0] not in _COMMANDS:
        return CommandResult(2, {'error': 'usage'}, USAGE)
    try:
        return _COMMANDS[arguments[0]](ctx, arguments[1:])
    except UsageError as e:
        return CommandResult(2, {'error': 'usage', 'message': e.msg}, f'{e.msg}\n\n{USAGE}')
    except SchemaError as e:
        return CommandResult(2, {'error': 'schema', 'path': e.path, 'message': e.msg}, e.msg)
    except ValidationError as e:
        return CommandResult(1, {'error': 'validation',
                                 'validation': serialization.validationToJson(e.report)}, e.msg)
    except PlcubeError as e:
        return CommandResult(1, {'error': type(e).__name__, 'message': e.msg}, e.msg)
