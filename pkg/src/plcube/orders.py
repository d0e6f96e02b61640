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

# Orders: the bi-order on PL(I, boundary) by departure slope, the circular
# order of rays in the plane, and the action of a fixed-point germ on the
# circle of rays (the double cover of RP^1).

from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction
from gettext import gettext as _
from typing import Any, Callable, List, Sequence, Tuple

from plcube.errors import DimensionError, NotFixedError, PreconditionError
from plcube.geometry import (
    ONE,
    ZERO,
    RatMatrix,
    RatPoint,
    cross,
    matInverse,
    matMul,
    matVec,
    orient2d,
    primitiveVector,
)
from plcube.plmap import PLMap, apply, canonicalize, compose, inverse


class OrderSign(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


class Comparison(Enum):
    LESS = '<'
    EQUAL = '='
    GREATER = '>'


def onedim_sign(f: PLMap) -> OrderSign:
    '''Positive iff the graph of f leaves the diagonal, left to right, with
    slope greater than 1.'''
    if f.dim != 1:
        raise DimensionError(_('The departure order is defined on one dimensional maps'))
    for s, m in canonicalize(f).cells:
        if m.isIdentity():
            continue
        slope = m.linear[0][0]
        # the piece fixes its left end; slope 1 would make it the identity
        assert slope != 1, f'departure slope 1 at {s.vertices[0][0]}'
        return OrderSign.POSITIVE if slope > 1 else OrderSign.NEGATIVE
    return OrderSign.ZERO


def onedim_compare(f: PLMap, g: PLMap) -> Comparison:
    '''f < g iff f^-1 g is positive.'''
    s = onedim_sign(compose(inverse(f), g))
    if s == OrderSign.ZERO:
        return Comparison.EQUAL
    return Comparison.LESS if s == OrderSign.POSITIVE else Comparison.GREATER


@dataclass(frozen=True, order=True)
class Ray:
    direction: Tuple[int, int]

    @staticmethod
    def of(v: Sequence[Any]) -> 'Ray':
        return Ray(primitiveVector(v))  # type: ignore[arg-type]

    def vector(self) -> RatPoint:
        return (Fraction(self.direction[0]), Fraction(self.direction[1]))


def diamondAngle(v: RatPoint) -> Fraction:
    '''A rational, strictly increasing stand-in for the polar angle, in [0, 4).'''
    x, y = v
    if y >= 0:
        return y / (x + y) if x >= 0 else 1 - x / (-x + y)
    return 2 - y / (-x - y) if x < 0 else 3 + x / (x - y)


def _angleFrom(r: Ray, v: RatPoint) -> Fraction:
    '''Angle of v measured counterclockwise from r.'''
    a, b = r.vector()
    return diamondAngle((v[0] * a + v[1] * b, v[1] * a - v[0] * b))


def ray_circular_order(r1: Ray, r2: Ray, r3: Ray) -> int:
    if r1 == r2 or r2 == r3 or r1 == r3:
        return 0
    return 1 if _angleFrom(r1, r2.vector()) < _angleFrom(r1, r3.vector()) else -1


def cocycle_check(e: Callable[[Any, Any, Any], int], quadruple: Sequence[Any]) -> bool:
    '''True iff e(s1, s2, s3) - e(s0, s2, s3) + e(s0, s1, s3) - e(s0, s1, s2) = 0.'''
    if len(quadruple) != 4:
        raise PreconditionError(_('A quadruple has four elements'))
    if any(quadruple[i] == quadruple[j] for i in range(4) for j in range(i + 1, 4)):
        raise PreconditionError(_('Quadruple elements must be distinct'))
    s0, s1, s2, s3 = quadruple
    return e(s1, s2, s3) - e(s0, s2, s3) + e(s0, s1, s3) - e(s0, s1, s2) == 0


def _projective(m: RatMatrix) -> RatMatrix:
    '''Representative up to positive scaling: first nonzero entry is +-1.'''
    lead = next(abs(x) for row in m for x in row if x != 0)
    return tuple(tuple(x / lead for x in row) for row in m)


_ORIGIN_RAY = Ray((1, 0))


@dataclass(frozen=True)
class CircleMapPP:
    '''A piecewise projective map of the circle of rays.  Arc i runs
    counterclockwise from arcs[i][0] up to the next start, and acts by the
    matrix arcs[i][1].'''
    arcs: Tuple[Tuple[Ray, RatMatrix], ...]

    @staticmethod
    def build(arcs: Sequence[Tuple[Ray, RatMatrix]]) -> 'CircleMapPP':
        '''Sorts the arcs and merges neighbours acting by the same matrix.'''
        items = sorted(((r, _projective(m)) for r, m in arcs),
                       key=lambda a: diamondAngle(a[0].vector()))
        merged: List[Tuple[Ray, RatMatrix]] = []
        for r, m in items:
            if not merged or merged[-1][1] != m:
                merged.append((r, m))
        if len(merged) > 1 and merged[-1][1] == merged[0][1]:
            merged.pop(0)
        if len(merged) == 1:
            merged = [(_ORIGIN_RAY, merged[0][1])]
        return CircleMapPP(tuple(merged))

    @staticmethod
    def linear(m: RatMatrix) -> 'CircleMapPP':
        return CircleMapPP.build([(_ORIGIN_RAY, m)])

    def _arcIndex(self, r: Ray) -> int:
        angle = diamondAngle(r.vector())
        index = len(self.arcs) - 1
        for i, (start, _m) in enumerate(self.arcs):
            if diamondAngle(start.vector()) <= angle:
                index = i
        return index

    def matrixAt(self, r: Ray) -> RatMatrix:
        return self.arcs[self._arcIndex(r)][1]

    def __call__(self, r: Ray) -> Ray:
        return Ray.of(matVec(self.matrixAt(r), r.vector()))

    def _interior(self, i: int) -> Ray:
        a = self.arcs[i][0].vector()
        if len(self.arcs) == 1:
            return Ray.of((-a[1], a[0]))
        return _between(a, self.arcs[(i + 1) % len(self.arcs)][0].vector())

    def preimage(self, r: Ray) -> Ray:
        for i, (start, m) in enumerate(self.arcs):
            candidate = Ray.of(matVec(matInverse(m), r.vector()))
            if self._arcIndex(candidate) == i:
                return candidate
        raise AssertionError('circle map is not onto')

    def after(self, other: 'CircleMapPP') -> 'CircleMapPP':
        '''Returns self o other.'''
        starts = {r for r, _m in other.arcs} | {other.preimage(r) for r, _m in self.arcs}
        ordered = sorted(starts, key=lambda r: diamondAngle(r.vector()))
        arcs = []
        for i, r in enumerate(ordered):
            nxt = ordered[(i + 1) % len(ordered)]
            mid = _between(r.vector(), nxt.vector()) if len(ordered) > 1 else r
            arcs.append((r, matMul(self.matrixAt(other(mid)), other.matrixAt(mid))))
        return CircleMapPP.build(arcs)


def _between(a: RatPoint, b: RatPoint) -> Ray:
    '''A ray strictly inside the counterclockwise arc from a to b.'''
    if cross(a, b) > 0:
        return Ray.of((a[0] + b[0], a[1] + b[1]))
    return Ray.of((-a[1], a[0]))


def projectivized_germ(f: PLMap, p: RatPoint) -> CircleMapPP:
    '''The action of the germ of f at a fixed point p on the rays at p: each
    cell containing p contributes the sector of directions it covers, acted
    on by its linear part.'''
    if f.dim != 2 or f.base is not None:
        raise DimensionError(_('Germ actions are computed for maps of the square'))
    if apply(f, p) != p:
        raise NotFixedError(_('The point is not fixed by the map'))
    arcs: List[Tuple[Ray, RatMatrix]] = []
    for s, m in f.cells:
        s = s.positive()
        if not s.contains(p):
            continue
        vs = s.vertices
        if p in vs:
            k = vs.index(p)
            start = vs[(k + 1) % 3]
        else:
            edge = [k for k in range(3) if orient2d(vs[k], vs[(k + 1) % 3], p) == 0]
            if not edge:
                return CircleMapPP.linear(m.linear)
            start = vs[(edge[0] + 1) % 3]
        arcs.append((Ray.of((start[0] - p[0], start[1] - p[1])), m.linear))
    return CircleMapPP.build(arcs)


def identityCircleMap() -> CircleMapPP:
    return CircleMapPP.linear(((ONE, ZERO), (ZERO, ONE)))
