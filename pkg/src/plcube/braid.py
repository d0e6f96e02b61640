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

# Braids traced by n-point samples under the Alexander isotopy of a map of the
# square, and the average of a braid group function over those braids.
#
# A sample (x_1, ..., x_n) gives a closed braid in global time T in [0, 3]:
# straight lines from the fixed basepoints to the x_i, then the trajectories
# s -> s g(x_i / s) of the isotopy, then straight lines from g(x_i) back to
# the basepoints.  All paths are exact and piecewise affine, so crossings are
# roots of affine functions.

import bisect
import concurrent.futures
import itertools

from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from gettext import gettext as _
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from plcube import utils
from plcube.errors import (
    ArityError,
    DegeneracyError,
    DimensionError,
    NotAreaPreservingError,
    PreconditionError,
)
from plcube.geometry import ONE, ZERO, RatPoint, matVec, point_locate, sign, supNorm
from plcube.invariants import volume_check
from plcube.mu.mu_interface import QuasimorphismSpec
from plcube.mu.mu_registry import theMuRegistry
from plcube.plmap import PLMap, power
from plcube.resources import theResources
from plcube.utils import frac
from plcube.words import BraidWord, freeReduce

SAMPLE_BITS = 20


@dataclass(frozen=True)
class PathPiece:
    '''p(t) = u + t v for t in [t0, t1].'''
    t0: Fraction
    t1: Fraction
    u: RatPoint
    v: RatPoint

    def at(self, t: Fraction) -> RatPoint:
        return (self.u[0] + t * self.v[0], self.u[1] + t * self.v[1])


@dataclass
class Trajectory:
    strand: int
    pieces: List[PathPiece] = field(default_factory=list)

    def at(self, t: Fraction) -> RatPoint:
        return _pathAt(self.pieces, t)

    @property
    def start(self) -> RatPoint:
        return self.pieces[0].at(self.pieces[0].t0)

    @property
    def end(self) -> RatPoint:
        return self.pieces[-1].at(self.pieces[-1].t1)


def _pathAt(pieces: Sequence[PathPiece], t: Fraction) -> RatPoint:
    for p in pieces:
        if p.t0 <= t <= p.t1:
            return p.at(t)
    raise ValueError(f'time {t} outside the path')


def _mergePieces(pieces: Iterable[PathPiece]) -> List[PathPiece]:
    out: List[PathPiece] = []
    for p in pieces:
        if p.t0 == p.t1:
            continue
        if out and out[-1].u == p.u and out[-1].v == p.v:
            out[-1] = PathPiece(out[-1].t0, p.t1, p.u, p.v)
        else:
            out.append(p)
    return out


def _check2d(g: PLMap) -> None:
    if g.dim != 2 or g.base is not None:
        raise DimensionError(_('Braids are traced for maps of the square'))


def trajectory(g: PLMap, x: Sequence, strand: int = 0) -> Trajectory:
    '''The path s -> alexander(g, s)(x) on [0, 1].  It is constant up to
    s = |x|, and on a cell with map (A, b) it is A x + s b.'''
    _check2d(g)
    x = (frac(x[0]), frac(x[1]))
    m = supNorm(x)
    if m == 0 or m >= 1:
        return Trajectory(strand, [PathPiece(ZERO, ONE, x, (ZERO, ZERO))])
    # x / s crosses the line n.y = c at 1/s = c / n.x
    cuts = {m, ONE}
    for s, _a in g.cells:
        for nx, ny, c in s.halfPlanes():
            d = nx * x[0] + ny * x[1]
            if d != 0 and 1 < c / d < 1 / m:
                cuts.add(d / c)
    ss = sorted(cuts)
    cells = [s for s, _a in g.cells]
    pieces = [PathPiece(ZERO, m, x, (ZERO, ZERO))]
    for a, b in zip(ss, ss[1:]):
        mid = (a + b) / 2
        f = g.cells[point_locate(cells, (x[0] / mid, x[1] / mid))][1]
        pieces.append(PathPiece(a, b, matVec(f.linear, x), f.translation))
    return Trajectory(strand, _mergePieces(pieces))


def basepointsFor(n: int) -> List[RatPoint]:
    return [(Fraction(2 * i - n - 1, n + 1), ZERO) for i in range(1, n + 1)]


def _closedPath(base: RatPoint, traj: Trajectory) -> List[PathPiece]:
    x, y = traj.start, traj.end
    pieces = [PathPiece(ZERO, ONE, base, (x[0] - base[0], x[1] - base[1]))]
    for p in traj.pieces:
        u = (p.u[0] - p.v[0], p.u[1] - p.v[1])
        pieces.append(PathPiece(1 + p.t0, 1 + p.t1, u, p.v))
    back = (base[0] - y[0], base[1] - y[1])
    pieces.append(PathPiece(2 * ONE, 3 * ONE, (y[0] - 2 * back[0], y[1] - 2 * back[1]), back))
    return _mergePieces(pieces)


@dataclass(frozen=True)
class Strand:
    '''A closed strand as the continuous path through points[k] at times[k],
    affine in between.'''
    times: Tuple[Fraction, ...]
    points: Tuple[RatPoint, ...]

    @staticmethod
    def of(pieces: Sequence[PathPiece]) -> 'Strand':
        times = (pieces[0].t0,) + tuple(p.t1 for p in pieces)
        points = (pieces[0].at(pieces[0].t0),) + tuple(p.at(p.t1) for p in pieces)
        return Strand(times, points)

    def at(self, t: Fraction) -> RatPoint:
        k = bisect.bisect_left(self.times, t)
        if self.times[k] == t:
            return self.points[k]
        t0, t1 = self.times[k - 1], self.times[k]
        (x0, y0), (x1, y1) = self.points[k - 1], self.points[k]
        s = (t - t0) / (t1 - t0)
        return (x0 + s * (x1 - x0), y0 + s * (y1 - y0))


def _heightSign(i: int, j: int, a: Strand, b: Strand, t: Fraction) -> int:
    dy = sign(a.at(t)[1] - b.at(t)[1])
    if dy == 0:
        raise DegeneracyError(_('Strands {i} and {j} collide').format(i=i + 1, j=j + 1),
                              (i + 1, j + 1), (t, t))
    return dy


def _crossings(i: int, j: int, a: Strand, b: Strand) -> List[Tuple[Fraction, int]]:
    '''Times at which strand i passes strand j in the x order, each with the
    sign of y_i - y_j at that time.'''
    times = sorted(set(a.times).union(b.times))
    dx = [a.at(t)[0] - b.at(t)[0] for t in times]
    result = []
    for k in range(1, len(times)):
        d0, d1 = dx[k - 1], dx[k]
        if d0 == 0 and d1 == 0:
            raise DegeneracyError(_('Strands {i} and {j} share an x-coordinate').format(
                i=i + 1, j=j + 1), (i + 1, j + 1), (times[k - 1], times[k]))
        if d0 * d1 < 0:
            t = times[k - 1] + (times[k] - times[k - 1]) * d0 / (d0 - d1)
            result.append((t, _heightSign(i, j, a, b, t)))
        elif d1 == 0 and k + 1 < len(times):
            s = _heightSign(i, j, a, b, times[k])
            if dx[k + 1] != 0 and sign(dx[k + 1]) != sign(d0):
                result.append((times[k], s))
    return result


def _wordFromStrands(strands: Sequence[Strand]) -> BraidWord:
    n = len(strands)
    events = []
    for i, j in itertools.combinations(range(n), 2):
        events.extend((t, i, j, s) for t, s in _crossings(i, j, strands[i], strands[j]))
    events.sort()
    for t, group in itertools.groupby(events, key=lambda e: e[0]):
        ends = [s for _t, i, j, _s in group for s in (i, j)]
        if len(ends) != len(set(ends)):
            raise DegeneracyError(_('Triple crossing'), (ends[0] + 1, ends[1] + 1), (t, t))
    order = sorted(range(n), key=lambda i: strands[i].points[0][0])
    letters = []
    for t, i, j, s in events:
        a, b = order.index(i), order.index(j)
        if abs(a - b) != 1:
            raise DegeneracyError(_('Crossing of non-adjacent strands'), (i + 1, j + 1), (t, t))
        pos = min(a, b)
        # s is the sign of y_i - y_j; the generator is positive when the left strand passes below
        below = s < 0 if order[pos] == i else s > 0
        letters.append((pos + 1, 1 if below else -1))
        order[pos], order[pos + 1] = order[pos + 1], order[pos]
    return BraidWord(n, freeReduce(letters))


class TrajectoryCache:
    '''Trajectories of one map keyed by starting point, and the closed
    strands built from them keyed by basepoint and starting point.'''
    def __init__(self, g: PLMap) -> None:
        _check2d(g)
        self.g = g
        self._cache: Dict[RatPoint, Trajectory] = {}
        self._strands: Dict[Tuple[RatPoint, RatPoint], Strand] = {}

    def get(self, x: RatPoint) -> Trajectory:
        t = self._cache.get(x)
        if t is None:
            t = trajectory(self.g, x)
            self._cache[x] = t
        return t

    def strand(self, base: RatPoint, x: RatPoint) -> Strand:
        s = self._strands.get((base, x))
        if s is None:
            s = Strand.of(_closedPath(base, self.get(x)))
            self._strands[(base, x)] = s
        return s


def _checkPoints(basepoints: Sequence[RatPoint], samples: Sequence[RatPoint]) -> None:
    if len(basepoints) != len(samples) or not basepoints:
        raise PreconditionError(_('Expected as many samples as basepoints'))
    for points in (basepoints, samples):
        if len(set(points)) != len(points):
            raise PreconditionError(_('Points must be distinct'))
    if len({b[0] for b in basepoints}) != len(basepoints):
        raise PreconditionError(_('Basepoints must have distinct x-coordinates'))


def braid_word(g: PLMap, basepoints: Sequence[Sequence], samples: Sequence[Sequence],
               cache: Optional[TrajectoryCache] = None) -> BraidWord:
    '''The pure braid traced by the samples, freely reduced.  Raises
    DegeneracyError naming the pair of strands when the sample is not
    generic.'''
    _check2d(g)
    bases = [(frac(p[0]), frac(p[1])) for p in basepoints]
    points = [(frac(p[0]), frac(p[1])) for p in samples]
    _checkPoints(bases, points)
    if cache is None:
        cache = TrajectoryCache(g)
    return _wordFromStrands([cache.strand(b, x) for b, x in zip(bases, points)])


def mu_eval(spec: QuasimorphismSpec, w: BraidWord) -> Fraction:
    if w.strands != spec.strands:
        raise ArityError(_('Word on {a} strands for a function on {b} strands').format(
            a=w.strands, b=spec.strands))
    return theMuRegistry.create(spec).evaluate(w)


@dataclass
class PhiEstimate:
    '''Monte Carlo value of the averaged braid function.  variance is the
    exact sample variance of the scaled values; dispersion is the squared
    standard error.'''
    estimate: Fraction
    variance: Fraction
    samples: int
    resamples: int

    @property
    def dispersion(self) -> Fraction:
        return self.variance / self.samples

    def scaled(self, k: int) -> 'PhiEstimate':
        '''The estimate of k times the integrand.'''
        return PhiEstimate(k * self.estimate, k * k * self.variance, self.samples, self.resamples)

    def stderr(self, digits: int = 12) -> str:
        d = self.dispersion
        with localcontext() as ctx:
            ctx.prec = digits
            return str((Decimal(d.numerator) / Decimal(d.denominator)).sqrt())


@dataclass
class GridOracle:
    estimate: Fraction
    used: int
    skipped: int
    dispersion: Fraction = ZERO


def agrees(a, b, units: int = 3) -> bool:
    '''|a - b| within units standard errors of the two estimates combined.'''
    return (a.estimate - b.estimate) ** 2 <= units ** 2 * (a.dispersion + b.dispersion)


def samplePoints(seed: int, index: int, attempt: int, n: int) -> List[RatPoint]:
    '''Dyadic midpoints in the open square, from a generator seeded by
    (seed, index, attempt) alone.'''
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index, attempt)))
    ks = rng.integers(0, 2 ** SAMPLE_BITS, size=(n, 2))
    scale = Fraction(1, 2 ** SAMPLE_BITS)
    return [tuple((2 * int(k) + 1) * scale - 1 for k in row) for row in ks]


def _sampleChunk(args) -> List[Tuple[Fraction, int]]:
    g, spec, seed, indices, limit = args
    n = spec.strands
    bases = basepointsFor(n)
    mu = theMuRegistry.create(spec)
    cache = TrajectoryCache(g)
    out = []
    for index in indices:
        last: Optional[DegeneracyError] = None
        for attempt in range(limit + 1):
            points = samplePoints(seed, index, attempt, n)
            if len(set(points)) != n:
                last = DegeneracyError(_('Repeated sample point'), (1, 2))
                continue
            try:
                w = braid_word(g, bases, points, cache)
            except DegeneracyError as e:
                utils.logDebug(f'phi_estimate: resampling sample {index}: {e.msg}')
                last = e
                continue
            out.append((mu.evaluate(w), attempt))
            break
        else:
            assert last is not None
            raise last
    return out


def phi_estimate(g: PLMap, spec: QuasimorphismSpec, strands: int, samples: int,
                 seed: Optional[int] = None, jobs: Optional[int] = None) -> PhiEstimate:
    '''Averages spec over the braids of `samples` seeded random n-tuples,
    scaled by the volume 4^n of the space of tuples.  The result depends on
    the seed and sample count only, never on jobs.'''
    _check2d(g)
    if not volume_check(g).preserves:
        raise NotAreaPreservingError(_('The map does not preserve area'))
    if samples < 1:
        raise PreconditionError(_('At least one sample is required'))
    if spec.strands != strands:
        raise ArityError(_('Function on {a} strands used with {b} strands').format(
            a=spec.strands, b=strands))
    theMuRegistry.create(spec)
    if seed is None:
        seed = utils.defaultSeed()
    if jobs is None:
        jobs = theResources.getOptionAsInt('jobs')
    limit = theResources.getOptionAsInt('degenerate_resample_limit')
    indices = list(range(samples))
    if jobs <= 1:
        results = _sampleChunk((g, spec, seed, indices, limit))
    else:
        chunks = [(g, spec, seed, indices[k::jobs], limit) for k in range(jobs)]
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as executor:
            parts = list(executor.map(_sampleChunk, chunks))
        results = [None] * samples  # type: ignore[list-item]
        for k, part in enumerate(parts):
            for index, r in zip(indices[k::jobs], part):
                results[index] = r
    volume = Fraction(4) ** strands
    values = [v * volume for v, _attempts in results]
    mean = sum(values, ZERO) / samples
    variance = ZERO
    if samples > 1:
        variance = sum(((v - mean) ** 2 for v in values), ZERO) / (samples - 1)
    resamples = sum(attempts for _v, attempts in results)
    return PhiEstimate(mean, variance, samples, resamples)


def _gridLattices(strands: int, grid: int) -> List[List[RatPoint]]:
    lattices = []
    for j in range(strands):
        offset = Fraction(j + 1, strands + 1)
        axis = [-ONE + 2 * (a + offset) / grid for a in range(grid)]
        lattices.append(list(itertools.product(axis, axis)))
    return lattices


def _gridChunk(args) -> Tuple[Fraction, int, int]:
    g, spec, grid, firsts = args
    strands = spec.strands
    mu = theMuRegistry.create(spec)
    bases = basepointsFor(strands)
    lattices = _gridLattices(strands, grid)
    cache = TrajectoryCache(g)
    total, used, skipped = ZERO, 0, 0
    for k in firsts:
        head = cache.strand(bases[0], lattices[0][k])
        for rest in itertools.product(*lattices[1:]):
            tail = [cache.strand(b, x) for b, x in zip(bases[1:], rest)]
            try:
                w = _wordFromStrands([head] + tail)
            except DegeneracyError:
                skipped += 1
                continue
            total += mu.evaluate(w)
            used += 1
    return total, used, skipped


def phi_grid_oracle(g: PLMap, spec: QuasimorphismSpec, strands: int, grid: int,
                    jobs: Optional[int] = None) -> GridOracle:
    '''Midpoint quadrature over a grid x grid lattice per strand.  Each strand
    gets its own offset so no two lattices meet; non-generic tuples are
    skipped and counted.  The first strand's lattice is split between the
    workers; every worker keeps the closed strands of its grid points.'''
    _check2d(g)
    if spec.strands != strands:
        raise ArityError(_('Function on {a} strands used with {b} strands').format(
            a=spec.strands, b=strands))
    if grid < 1:
        raise PreconditionError(_('The grid needs at least one point per side'))
    theMuRegistry.create(spec)
    if jobs is None:
        jobs = theResources.getOptionAsInt('jobs')
    firsts = list(range(grid * grid))
    if jobs <= 1:
        parts = [_gridChunk((g, spec, grid, firsts))]
    else:
        chunks = [(g, spec, grid, firsts[k::jobs]) for k in range(jobs)]
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as executor:
            parts = list(executor.map(_gridChunk, chunks))
    total = sum((p[0] for p in parts), ZERO)
    used = sum(p[1] for p in parts)
    skipped = sum(p[2] for p in parts)
    utils.logDebug(f'phi_grid_oracle: {used} tuples used, {skipped} skipped')
    if used == 0:
        raise PreconditionError(_('Every grid tuple was degenerate'))
    return GridOracle(total / used * Fraction(4) ** strands, used, skipped)


def homogenize(values: Sequence[Tuple[int, Fraction]]) -> Fraction:
    '''Least-squares slope of Phi(g^n) against n.'''
    if len({n for n, _v in values}) < 2:
        raise PreconditionError(_('Homogenization needs at least two distinct powers'))
    k = len(values)
    nbar = Fraction(sum(n for n, _v in values), k)
    vbar = sum((frac(v) for _n, v in values), ZERO) / k
    num = sum(((n - nbar) * (frac(v) - vbar) for n, v in values), ZERO)
    den = sum(((n - nbar) ** 2 for n, _v in values), ZERO)
    return num / den


def stable_estimate(g: PLMap, spec: QuasimorphismSpec, strands: int, powers: Sequence[int],
                    samples: int, seed: Optional[int] = None,
                    jobs: Optional[int] = None) -> Fraction:
    '''Homogenized estimate: the slope of phi_estimate over the given powers of g.'''
    values = [(k, phi_estimate(power(g, k), spec, strands, samples, seed, jobs).estimate)
              for k in powers]
    return homogenize(values)
