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

# Word growth in finitely generated subgroups: balls in the Cayley graph,
# growth of D and of the cell count along powers, and exact checks of the
# exponential and linear bounds they obey.

import concurrent.futures

from dataclasses import dataclass, field
from fractions import Fraction
from gettext import gettext as _
from typing import Dict, List, Optional, Sequence, Tuple

from plcube import utils
from plcube.errors import CapExceededError, DimensionError, PreconditionError, TrivialGroupError
from plcube.invariants import breakpoints, cell_count, matrix_norm
from plcube.plmap import PLMap, canonicalize, compose, equals, inverse
from plcube.resources import theResources

# a word is a sequence of letters +k / -k for generator k (from 1) or its inverse
Word = Tuple[int, ...]


@dataclass
class WordBall:
    radius: int
    elements: List[PLMap] = field(default_factory=list)
    words: List[Word] = field(default_factory=list)
    layer_sizes: List[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.elements)

    def find(self, f: PLMap) -> Optional[Word]:
        '''A shortest word for f, if f lies in the ball.'''
        key = hash(canonicalize(f).canonicalKey())
        for g, w in zip(self.elements, self.words):
            if hash(g.canonicalKey()) == key and equals(g, f):
                return w
        return None


def _checkGenerators(gens: Sequence[PLMap]) -> int:
    if not gens:
        raise PreconditionError(_('At least one generator is required'))
    dim = gens[0].dim
    if any(g.dim != dim for g in gens) or dim > 2 or any(g.base is not None for g in gens):
        raise DimensionError(_('Generators must share dimension 1 or 2'))
    return dim


def radiusCap(dim: int) -> int:
    return theResources.getOptionAsInt(f'ball_radius_cap_{dim}d')


def _letters(gens: Sequence[PLMap]) -> List[Tuple[int, PLMap]]:
    letters = [(k + 1, canonicalize(g)) for k, g in enumerate(gens)]
    letters += [(-(k + 1), canonicalize(inverse(g))) for k, g in enumerate(gens)]
    return letters


def _expand(args) -> List[PLMap]:
    element, letters = args
    return [canonicalize(compose(element, s)) for _k, s in letters]


def word_ball(gens: Sequence[PLMap], radius: int, jobs: Optional[int] = None) -> WordBall:
    '''All distinct elements of word length at most radius, each with one
    shortest word.  Duplicates are found by hashing canonical forms and
    confirmed with equals.'''
    dim = _checkGenerators(gens)
    if radius < 0:
        raise PreconditionError(_('Radius must be non-negative'))
    if radius > radiusCap(dim):
        raise CapExceededError(_('Radius {r} exceeds the configured cap {cap}').format(
            r=radius, cap=radiusCap(dim)))
    if jobs is None:
        jobs = theResources.getOptionAsInt('jobs')
    letters = _letters(gens)
    ball = WordBall(radius)
    buckets: Dict[int, List[int]] = {}

    def add(f: PLMap, w: Word) -> bool:
        key = hash(f.canonicalKey())
        for i in buckets.get(key, []):
            if equals(ball.elements[i], f):
                return False
        buckets.setdefault(key, []).append(len(ball.elements))
        ball.elements.append(f)
        ball.words.append(w)
        return True

    add(canonicalize(PLMap.identity(dim)), ())
    ball.layer_sizes.append(1)
    layer = [0]
    for r in range(1, radius + 1):
        work = [(ball.elements[i], letters) for i in layer]
        if jobs > 1 and len(work) > 1:
            with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as executor:
                products = list(executor.map(_expand, work))
        else:
            products = [_expand(w) for w in work]
        nextLayer = []
        for i, row in zip(layer, products):
            for (k, _s), f in zip(letters, row):
                if add(f, ball.words[i] + (k,)):
                    nextLayer.append(len(ball.elements) - 1)
        ball.layer_sizes.append(len(nextLayer))
        utils.logDebug(f'word_ball: radius {r} adds {len(nextLayer)} elements')
        layer = nextLayer
        if not layer:
            break
    return ball


@dataclass
class GrowthPoint:
    n: int
    word_length: int
    D: Fraction
    cell_count: int
    breakpoints: Optional[int] = None


@dataclass
class GrowthReport:
    description: str
    series: List[GrowthPoint] = field(default_factory=list)
    C: Fraction = Fraction(0)
    profile: List[Tuple[int, int]] = field(default_factory=list)


def power_growth(g: PLMap, n_max: int, ball: Optional[WordBall] = None,
                 description: str = 'g') -> GrowthReport:
    '''D, cell count and (in dimension 1) breakpoint count of g^n for
    n = 1, ..., n_max.  Word lengths are n unless a word ball for some
    generating set is supplied, in which case they are read from it.'''
    if n_max < 1:
        raise PreconditionError(_('n_max must be positive'))
    if g.isIdentity():
        raise TrivialGroupError(_('The identity has no growth'))
    report = GrowthReport(description)
    step = canonicalize(g)
    current = step
    for n in range(1, n_max + 1):
        if n > 1:
            current = canonicalize(compose(step, current))
        length = n
        if ball is not None:
            w = ball.find(current)
            if w is not None:
                length = len(w)
        bp = len(breakpoints(current)) if current.dim == 1 else None
        report.series.append(GrowthPoint(n, length, matrix_norm(current), len(current.cells), bp))
        utils.logDebug(f'power_growth: n = {n}, cells = {len(current.cells)}')
    report.C = min(p.D / p.n for p in report.series)
    top = max(p.word_length for p in report.series)
    for m in range(1, top + 1):
        report.profile.append((m, max((p.n for p in report.series if p.word_length <= m),
                                      default=0)))
    return report


@dataclass(frozen=True)
class BoundViolation:
    word: Word
    bound: str
    value: Fraction
    limit: Fraction


@dataclass
class BoundsReport:
    radius: int
    elements: int = 0
    checked: Dict[str, int] = field(default_factory=dict)
    violations: List[BoundViolation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return len(self.violations) == 0


def verify_bounds(gens: Sequence[PLMap], radius: int, jobs: Optional[int] = None) -> BoundsReport:
    '''Checks, for every element w of the ball, that
    D(w) <= (n max D(s))^|w|, that the cell count is at most
    (C max cells(s))^|w| for |w| >= 1 (C = 4 in the square, 2 on the
    interval) and, on the interval, that w has at most
    max breakpoints(s) * |w| breakpoints.'''
    dim = _checkGenerators(gens)
    ball = word_ball(gens, radius, jobs)
    letters = [s for _k, s in _letters(gens)]
    maxD = max(matrix_norm(s) for s in letters)
    maxCells = max(len(s.cells) for s in letters)
    growth = 4 if dim == 2 else 2
    maxBp = max(len(breakpoints(s)) for s in letters) if dim == 1 else 0
    report = BoundsReport(radius, len(ball))
    report.checked = {'D': 0, 'cell_count': 0}
    if dim == 1:
        report.checked['breakpoints'] = 0

    def check(bound: str, word: Word, value: Fraction, limit: Fraction) -> None:
        report.checked[bound] += 1
        if value > limit:
            report.violations.append(BoundViolation(word, bound, value, limit))

    for f, w in zip(ball.elements, ball.words):
        length = len(w)
        check('D', w, matrix_norm(f), (dim * maxD) ** length)
        if length >= 1:
            check('cell_count', w, Fraction(cell_count(f)), Fraction(growth * maxCells) ** length)
        if dim == 1:
            check('breakpoints', w, Fraction(len(breakpoints(f))), Fraction(maxBp * length))
    return report
