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

from dataclasses import dataclass, field
from fractions import Fraction
from gettext import gettext as _
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from plcube.errors import DimensionError, PreconditionError, TrivialGroupError
from plcube.geometry import (
    ONE,
    ZERO,
    ConvexPolytope,
    Line,
    RatAffineMap,
    RatPoint,
    Simplex,
    clipByHalfPlanes,
    convexHull,
    cross,
    dot,
    fan_triangulate,
    halfPlanesOf,
    identityMatrix,
    lineParameter,
    lineThrough,
    matInverse,
    matSub,
    matVec,
    maxAbsEntry,
    orient2d,
    pointOnLine,
    polygonArea,
    primitiveVector,
    rank,
    sub,
)
from plcube.plmap import PLMap, canonicalize, edgeComponents, regionBoundary, triangulateRegion

Interval = Tuple[Fraction, Fraction]


def matrix_norm(f: PLMap) -> Fraction:
    '''D(f): the largest absolute entry of any cell's linear part.'''
    return max(maxAbsEntry(m.linear) for _s, m in f.cells)


def cell_count(f: PLMap) -> int:
    return len(canonicalize(f).cells)


def breakpoints(f: PLMap) -> List[Fraction]:
    '''Interior points where the slope of a one dimensional map changes.'''
    if f.dim != 1:
        raise DimensionError(_('Breakpoints are defined for one dimensional maps only'))
    cells = canonicalize(f).cells
    return [s.vertices[1][0] for s, _m in cells[:-1]]


class VolumeCheck(NamedTuple):
    preserves: bool
    max_det: Fraction
    min_det: Fraction


def volume_check(f: PLMap) -> VolumeCheck:
    dets = [m.det() for _s, m in f.cells]
    return VolumeCheck(all(abs(d) == 1 for d in dets), max(dets), min(dets))


@dataclass
class PolyhedralSet:
    '''A closed subset of I^n as simplices of mixed dimension: triangles,
    segments (two vertices) and points (one vertex).  Pieces of one
    dimension have disjoint relative interiors.'''
    dim: int
    pieces: List[Simplex] = field(default_factory=list)

    def piecesOfDim(self, k: int) -> List[Simplex]:
        return [s for s in self.pieces if s.dim == k]

    def isEmpty(self) -> bool:
        return len(self.pieces) == 0

    def measure(self) -> Fraction:
        '''Volume of the full dimensional part.'''
        total = ZERO
        for s in self.piecesOfDim(self.dim):
            if self.dim == 1:
                total += s.vertices[1][0] - s.vertices[0][0]
            else:
                total += abs(polygonArea(s.vertices))
        return total

    def contains(self, x: RatPoint) -> bool:
        return any(_pieceContains(s, x) for s in self.pieces)


def _pieceContains(s: Simplex, x: RatPoint) -> bool:
    vs = s.vertices
    if len(vs) == 1:
        return vs[0] == x
    if len(vs) == 2 and s.ambient == 2:
        p, q = vs
        if orient2d(p, q, x) != 0:
            return False
        return min(p, q) <= x <= max(p, q)
    return s.contains(x)


# intervals on a line

def _mergeIntervals(intervals: Sequence[Interval]) -> List[Interval]:
    merged: List[Interval] = []
    for lo, hi in sorted(intervals):
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return merged


def _subtractIntervals(intervals: Sequence[Interval], cuts: Sequence[Interval]) -> List[Interval]:
    '''Closures of the parts of intervals outside the cuts; pieces of zero
    length are dropped.'''
    result = []
    cuts = _mergeIntervals(cuts)
    for lo, hi in intervals:
        for c0, c1 in cuts:
            if c1 <= lo or c0 >= hi:
                continue
            if c0 > lo:
                result.append((lo, c0))
            lo = max(lo, c1)
            if lo >= hi:
                break
        if lo < hi:
            result.append((lo, hi))
    return result


def _segmentKey(p: RatPoint, q: RatPoint) -> Tuple[Line, Interval]:
    line = lineThrough(p, q)
    t0, t1 = sorted((lineParameter(line, p), lineParameter(line, q)))
    return line, (t0, t1)


def _normalize(dim: int, triangles: List[Simplex], segments: List[Tuple[RatPoint, RatPoint]],
               points: List[RatPoint]) -> PolyhedralSet:
    '''Canonical pieces: triangles re-triangulated per connected region,
    collinear segments merged with the triangles' edges cut away, and points
    lying on higher dimensional pieces dropped.'''
    if dim == 1:
        intervals = _mergeIntervals([(min(p, q)[0], max(p, q)[0]) for p, q in segments])
        pieces = [Simplex(((lo,), (hi,))) for lo, hi in intervals]
        isolated = sorted({p for p in points
                           if not any(lo <= p[0] <= hi for lo, hi in intervals)})
        return PolyhedralSet(1, pieces + [Simplex((p,)) for p in isolated])

    regions: List[Simplex] = []
    for component in edgeComponents(triangles):
        regions.extend(triangulateRegion([triangles[i] for i in component]))
    regions.sort()

    covered: Dict[Line, List[Interval]] = {}
    for s in triangles:
        vs = s.vertices
        for k in range(3):
            line, interval = _segmentKey(vs[k], vs[(k + 1) % 3])
            covered.setdefault(line, []).append(interval)
    byLine: Dict[Line, List[Interval]] = {}
    for p, q in segments:
        line, interval = _segmentKey(p, q)
        byLine.setdefault(line, []).append(interval)
    segs: List[Simplex] = []
    for line, intervals in sorted(byLine.items()):
        for lo, hi in _subtractIntervals(_mergeIntervals(intervals), covered.get(line, [])):
            segs.append(Simplex(tuple(sorted((pointOnLine(line, lo), pointOnLine(line, hi))))))
    segs.sort()

    isolated = sorted({p for p in points
                       if not any(_pieceContains(s, p) for s in triangles)
                       and not any(_pieceContains(s, p) for s in segs)})
    return PolyhedralSet(2, regions + segs + [Simplex((p,)) for p in isolated])


def _cellFixedPoints(s: Simplex, m: RatAffineMap) -> List[RatPoint]:
    '''The solutions of (A - I) x = -b inside the closed cell s, as the
    vertices of their convex hull.'''
    n = m.dim
    a = matSub(m.linear, identityMatrix(n))
    b = tuple(-c for c in m.translation)
    r = rank(a)
    if r == 0:
        return list(s.vertices) if all(c == 0 for c in b) else []
    if r == n:
        x = matVec(matInverse(a), b)
        return [x] if s.contains(x) else []
    # rank one in the plane: a single equation, if the two rows are consistent
    row = 0 if any(c != 0 for c in a[0]) else 1
    other = 1 - row
    k = next(j for j in range(2) if a[row][j] != 0)
    factor = a[other][k] / a[row][k]
    if b[other] != factor * b[row]:
        return []
    nx, ny = a[row]
    pts = clipByHalfPlanes(list(s.positive().vertices),
                           [(nx, ny, b[row]), (-nx, -ny, -b[row])])
    return convexHull(pts)


def fixed_set(f: PLMap) -> PolyhedralSet:
    if f.base is not None:
        raise DimensionError(_('Fixed sets are computed in dimensions 1 and 2'))
    triangles: List[Simplex] = []
    segments: List[Tuple[RatPoint, RatPoint]] = []
    points: List[RatPoint] = []
    for s, m in f.cells:
        pts = _cellFixedPoints(s, m)
        if len(pts) == f.dim + 1 and m.isIdentity():
            if f.dim == 1:
                segments.append((pts[0], pts[1]))
            else:
                triangles.append(s.positive())
        elif len(pts) == 2:
            segments.append((pts[0], pts[1]))
        elif len(pts) == 1:
            points.append(pts[0])
    return _normalize(f.dim, triangles, segments, points)


def _onCubeFace(p: RatPoint, q: RatPoint) -> bool:
    return any(abs(p[i]) == 1 and p[i] == q[i] for i in range(len(p)))


def frontierOf(fixed: PolyhedralSet) -> PolyhedralSet:
    '''Frontier of a fixed set inside I^n: the boundary of its full
    dimensional part away from the cube's own boundary, together with all
    lower dimensional pieces.'''
    if fixed.dim == 1:
        points = set()
        for s in fixed.pieces:
            for v in s.vertices:
                if abs(v[0]) != 1 or s.dim == 0:
                    points.add(v)
        return PolyhedralSet(1, [Simplex((p,)) for p in sorted(points)])
    triangles = fixed.piecesOfDim(2)
    segments = [(p, q) for p, q, _line, _side in regionBoundary(triangles)
                if not _onCubeFace(p, q)] if triangles else []
    segments += [tuple(s.vertices) for s in fixed.piecesOfDim(1)]
    points = [s.vertices[0] for s in fixed.piecesOfDim(0)]
    return _normalize(2, [], segments, points)


def frontier(f: PLMap) -> PolyhedralSet:
    return frontierOf(fixed_set(f))


def _intersectPieces(a: Simplex, b: Simplex) -> List[RatPoint]:
    if a.ambient == 1:
        lo = max(min(a.vertices)[0], min(b.vertices)[0])
        hi = min(max(a.vertices)[0], max(b.vertices)[0])
        return [(lo,), (hi,)] if lo < hi else [(lo,)] if lo == hi else []
    planes = halfPlanesOf(list(b.positive().vertices))
    return convexHull(clipByHalfPlanes(list(a.positive().vertices), planes))


def intersectSets(x: PolyhedralSet, y: PolyhedralSet) -> PolyhedralSet:
    triangles: List[Simplex] = []
    segments: List[Tuple[RatPoint, RatPoint]] = []
    points: List[RatPoint] = []
    for a in x.pieces:
        for b in y.pieces:
            pts = _intersectPieces(a, b)
            if len(pts) >= 3 and polygonArea(pts) != 0:
                triangles.extend(fan_triangulate(ConvexPolytope(tuple(pts))))
            elif len(pts) >= 2:
                segments.append((pts[0], pts[-1]) if x.dim == 1 else (min(pts), max(pts)))
            elif len(pts) == 1:
                points.append(pts[0])
    return _normalize(x.dim, triangles, segments, points)


def _uncovered(fro: PolyhedralSet, cover: List[PolyhedralSet]) -> List[Simplex]:
    '''Pieces of fro not contained in the union of the cover sets.'''
    missing = []
    for s in fro.pieces:
        if s.dim == 0:
            if not any(c.contains(s.vertices[0]) for c in cover):
                missing.append(s)
            continue
        line, interval = _segmentKey(*s.vertices)
        cuts = []
        for c in cover:
            for t in c.piecesOfDim(1):
                other, span = _segmentKey(*t.vertices)
                if other == line:
                    cuts.append(span)
        if _subtractIntervals([interval], cuts):
            missing.append(s)
    return missing


@dataclass
class GroupFixedReport:
    fixed: PolyhedralSet
    frontier: PolyhedralSet
    containment_holds: bool
    uncovered: List[Simplex] = field(default_factory=list)


def _checkGenerators(gens: Sequence[PLMap]) -> int:
    if not gens:
        raise PreconditionError(_('At least one generator is required'))
    dim = gens[0].dim
    if any(g.dim != dim for g in gens):
        raise DimensionError(_('Generators must share one dimension'))
    if dim > 2 or any(g.base is not None for g in gens):
        raise DimensionError(_('Fixed sets are computed in dimensions 1 and 2'))
    return dim


def group_fixed_set(gens: Sequence[PLMap]) -> GroupFixedReport:
    '''fix(G) as the intersection of the generators' fixed sets, with the
    check that its frontier lies in the union of theirs.'''
    _checkGenerators(gens)
    sets = [fixed_set(g) for g in gens]
    fixed = sets[0]
    for other in sets[1:]:
        fixed = intersectSets(fixed, other)
    fro = frontierOf(fixed)
    missing = _uncovered(fro, [frontierOf(s) for s in sets])
    return GroupFixedReport(fixed, fro, not missing, missing)


@dataclass
class WitnessReport:
    '''The germ of each generator along a frontier point p of fix(G), in the
    frame (d, n) with d along the dividing line and n across it: the linear
    part sends n to V d + a n.'''
    point: RatPoint
    dividing_plane: Tuple[RatPoint, Fraction]
    side: RatPoint
    per_generator: List[Tuple[Tuple[Fraction, ...], Fraction]]
    nontrivial: bool


def _dyadics() -> Iterator[Fraction]:
    den = 2
    while True:
        for k in range(1, den, 2):
            yield Fraction(k, den)
        den *= 2


def _isGeneric(gens: Sequence[PLMap], x: RatPoint, direction: RatPoint) -> bool:
    '''x is not a vertex of any cell, and every cell edge through x runs
    along direction.'''
    for g in gens:
        for s, _m in g.cells:
            if not s.contains(x):
                continue
            vs = s.vertices
            if x in vs:
                return False
            for k in range(3):
                u, v = vs[k], vs[(k + 1) % 3]
                if orient2d(u, v, x) == 0 and cross(sub(v, u), direction) != 0:
                    return False
    return True


def _germ(g: PLMap, x: RatPoint, side: RatPoint) -> Optional[RatAffineMap]:
    for s, m in g.cells:
        if s.contains(x) and any(dot(sub(v, x), side) > 0 for v in s.vertices):
            return m
    return None


def _witness1d(gens: Sequence[PLMap], fro: PolyhedralSet) -> WitnessReport:
    points = sorted(s.vertices[0] for s in fro.pieces)
    for p in points:
        for side in ((ONE,), (-ONE,)):
            germs = [_germ(g, p, side) for g in gens]
            if any(m is None for m in germs):
                continue
            slopes = [m.linear[0][0] for m in germs]
            if any(a != 1 for a in slopes):
                return WitnessReport(p, ((ONE,), p[0]), side,
                                     [((), a) for a in slopes], True)
    raise AssertionError('every frontier point has trivial germs')


def _midpoint(s: Simplex) -> RatPoint:
    p, q = s.vertices
    return ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)


def indicability_witness(gens: Sequence[PLMap]) -> WitnessReport:
    '''Finds a codimension one piece of the frontier of fix(G) and reads off
    the homomorphism to the affine group carried by the germs on its non-fixed
    side.'''
    dim = _checkGenerators(gens)
    if all(g.isIdentity() for g in gens):
        raise TrivialGroupError(_('The generators are all the identity'))
    fro = group_fixed_set(gens).frontier
    if dim == 1:
        return _witness1d(gens, fro)
    # segments are tried from the lexicographically greatest midpoint down
    for s in sorted(fro.piecesOfDim(1), key=_midpoint, reverse=True):
        p, q = s.vertices
        d = primitiveVector(sub(q, p))
        n: RatPoint = (Fraction(-d[1]), Fraction(d[0]))
        for t in _dyadics():
            x = (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
            if _isGeneric(gens, x, sub(q, p)):
                break
        for normal in (n, (-n[0], -n[1])):
            germs = [_germ(g, x, normal) for g in gens]
            if any(m is None for m in germs):
                continue  # the outward side of the cube boundary
            if all(m.isIdentity() for m in germs):
                continue
            along = (-normal[1], normal[0])
            per = []
            for m in germs:
                an = matVec(m.linear, normal)
                det = cross(along, normal)
                a = cross(along, an) / det
                v = cross(an, normal) / det
                per.append(((v,), a))
            nontrivial = any(v != (0,) or a != 1 for v, a in per)
            plane = (normal, dot(normal, x))
            return WitnessReport(x, plane, normal, per, nontrivial)
    raise AssertionError('the frontier has no segment with a nontrivial side')
