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

# Exact rational geometry in low dimension.  Every quantity is a
# fractions.Fraction; nothing here ever rounds.

import itertools
import math

from dataclasses import dataclass, field
from fractions import Fraction
from gettext import gettext as _
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from plcube.errors import DegenerateError, DimensionError, NotFoundError

Rational = Fraction
RatPoint = Tuple[Fraction, ...]
RatMatrix = Tuple[Tuple[Fraction, ...], ...]
# (nx, ny, c) stands for the closed half-plane nx*x + ny*y >= c
HalfPlane = Tuple[Fraction, Fraction, Fraction]
# (a, b, c) stands for the line a*x + b*y = c, scaled so that the first
# nonzero of (a, b) is 1
Line = Tuple[Fraction, Fraction, Fraction]

ZERO: Fraction = Fraction(0)
ONE: Fraction = Fraction(1)


def point(*coords) -> RatPoint:
    return tuple(Fraction(c) for c in coords)


def add(p: RatPoint, q: RatPoint) -> RatPoint:
    return tuple(a + b for a, b in zip(p, q))


def sub(p: RatPoint, q: RatPoint) -> RatPoint:
    return tuple(a - b for a, b in zip(p, q))


def scale(s: Fraction, p: RatPoint) -> RatPoint:
    return tuple(s * a for a in p)


def dot(p: RatPoint, q: RatPoint) -> Fraction:
    return sum((a * b for a, b in zip(p, q)), ZERO)


def cross(u: RatPoint, v: RatPoint) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def orient2d(a: RatPoint, b: RatPoint, c: RatPoint) -> Fraction:
    '''Twice the signed area of the triangle abc; positive when counterclockwise.'''
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def supNorm(p: RatPoint) -> Fraction:
    return max((abs(a) for a in p), default=ZERO)


def inCube(p: RatPoint) -> bool:
    return all(-1 <= a <= 1 for a in p)


def onCubeBoundary(p: RatPoint) -> bool:
    return inCube(p) and any(abs(a) == 1 for a in p)


def sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


# matrices are tuples of rows

def identityMatrix(n: int) -> RatMatrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def matMul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def matVec(a: RatMatrix, v: RatPoint) -> RatPoint:
    return tuple(dot(row, v) for row in a)


def matSub(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def transpose(a: RatMatrix) -> RatMatrix:
    return tuple(tuple(col) for col in zip(*a))


def columnsMatrix(columns: Sequence[RatPoint]) -> RatMatrix:
    return transpose(tuple(tuple(c) for c in columns))


def determinant(m: RatMatrix) -> Fraction:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    a = [list(row) for row in m]
    det = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def rank(m: RatMatrix) -> int:
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(rows):
            if i != r and a[i][col] != 0:
                f = a[i][col] / a[r][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def matInverse(m: RatMatrix) -> RatMatrix:
    '''Gauss-Jordan inverse; raises DegenerateError for singular input.'''
    n = len(m)
    if n == 2:
        det = determinant(m)
        if det == 0:
            raise DegenerateError(_('Singular matrix'))
        return ((m[1][1] / det, -m[0][1] / det), (-m[1][0] / det, m[0][0] / det))
    a = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise DegenerateError(_('Singular matrix'))
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def maxAbsEntry(m: RatMatrix) -> Fraction:
    return max(abs(x) for row in m for x in row)


@dataclass(frozen=True, order=True)
class RatAffineMap:
    '''The affine map x -> linear @ x + translation.'''
    linear: RatMatrix
    translation: RatPoint

    @staticmethod
    def identity(n: int) -> 'RatAffineMap':
        return RatAffineMap(identityMatrix(n), (ZERO,) * n)

    @staticmethod
    def fromSimplices(src: Sequence[RatPoint], dst: Sequence[RatPoint]) -> 'RatAffineMap':
        '''The unique affine map sending the vertices src[i] to dst[i].'''
        s = columnsMatrix([sub(v, src[0]) for v in src[1:]])
        d = columnsMatrix([sub(v, dst[0]) for v in dst[1:]])
        a = matMul(d, matInverse(s))
        return RatAffineMap(a, sub(dst[0], matVec(a, src[0])))

    @property
    def dim(self) -> int:
        return len(self.translation)

    def __call__(self, x: RatPoint) -> RatPoint:
        return tuple(dot(row, x) + t for row, t in zip(self.linear, self.translation))

    def after(self, other: 'RatAffineMap') -> 'RatAffineMap':
        '''Returns self o other.'''
        return RatAffineMap(
            matMul(self.linear, other.linear),
            self(other.translation))

    def inverse(self) -> 'RatAffineMap':
        inv = matInverse(self.linear)
        return RatAffineMap(inv, tuple(-x for x in matVec(inv, self.translation)))

    def det(self) -> Fraction:
        return determinant(self.linear)

    def isIdentity(self) -> bool:
        return self.linear == identityMatrix(self.dim) and all(t == 0 for t in self.translation)


@dataclass(frozen=True, order=True)
class Simplex:
    vertices: Tuple[RatPoint, ...]
    orientation: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        n = len(self.vertices[0])
        if any(len(v) != n for v in self.vertices):
            raise DimensionError(_('Simplex vertices of mixed dimension'))
        if len(self.vertices) == n + 1:
            o = sign(determinant(self.edgeMatrix())) if n > 0 else 1
        else:
            o = 0
        object.__setattr__(self, 'orientation', o)

    @property
    def ambient(self) -> int:
        return len(self.vertices[0])

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def edgeMatrix(self) -> RatMatrix:
        v0 = self.vertices[0]
        return columnsMatrix([sub(v, v0) for v in self.vertices[1:]])

    def isFullDimensional(self) -> bool:
        return self.dim == self.ambient and self.orientation != 0

    def bbox(self) -> Tuple[RatPoint, RatPoint]:
        cols = list(zip(*self.vertices))
        return tuple(min(c) for c in cols), tuple(max(c) for c in cols)

    def positive(self) -> 'Simplex':
        '''The same simplex with its vertices ordered positively.'''
        if self.orientation >= 0 or len(self.vertices) < 2:
            return self
        vs = list(self.vertices)
        vs[-1], vs[-2] = vs[-2], vs[-1]
        return Simplex(tuple(vs))

    def image(self, f: RatAffineMap) -> 'Simplex':
        return Simplex(tuple(f(v) for v in self.vertices)).positive()

    def contains(self, x: RatPoint) -> bool:
        '''Closed containment for full dimensional simplices.'''
        vs = self.vertices
        if self.ambient == 1:
            return min(vs[0][0], vs[1][0]) <= x[0] <= max(vs[0][0], vs[1][0])
        if self.ambient == 2:
            o = self.orientation
            return (o * orient2d(vs[0], vs[1], x) >= 0 and o * orient2d(vs[1], vs[2], x) >= 0
                    and o * orient2d(vs[2], vs[0], x) >= 0)
        lam = matVec(matInverse(self.edgeMatrix()), sub(x, vs[0]))
        return all(c >= 0 for c in lam) and sum(lam, ZERO) <= 1

    def facets(self) -> List[Tuple[RatPoint, ...]]:
        return [self.vertices[:i] + self.vertices[i + 1:] for i in range(len(self.vertices))]

    def halfPlanes(self) -> List[HalfPlane]:
        return halfPlanesOf(list(self.positive().vertices))


def simplex_volume(s: Simplex) -> Fraction:
    '''Unsigned volume of a full dimensional simplex.'''
    if s.dim != s.ambient:
        raise DimensionError(_('Volume needs a full dimensional simplex'))
    det = determinant(s.edgeMatrix())
    if det == 0:
        raise DegenerateError(_('Degenerate simplex has zero volume'))
    return abs(det) / math.factorial(s.dim)


def polygonArea(vertices: Sequence[RatPoint]) -> Fraction:
    '''Signed shoelace area.'''
    n = len(vertices)
    total = ZERO
    for i in range(n):
        p, q = vertices[i], vertices[(i + 1) % n]
        total += p[0] * q[1] - q[0] * p[1]
    return total / 2


def convexHull(points: Iterable[RatPoint]) -> List[RatPoint]:
    '''Andrew's monotone chain: counterclockwise, lexicographically least
    vertex first, collinear points dropped.'''
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: List[RatPoint] = []
    for p in pts:
        while len(lower) >= 2 and orient2d(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[RatPoint] = []
    for p in reversed(pts):
        while len(upper) >= 2 and orient2d(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True, order=True)
class ConvexPolytope:
    '''An interval (dim 1) or a convex polygon (dim 2) in canonical vertex order.'''
    vertices: Tuple[RatPoint, ...]
    degenerate: bool = False

    @staticmethod
    def fromPoints(points: Iterable[RatPoint]) -> 'ConvexPolytope':
        pts = list(points)
        if not pts:
            raise DegenerateError(_('Empty polytope'))
        if len(pts[0]) == 1:
            lo, hi = min(pts), max(pts)
            return ConvexPolytope((lo, hi), lo == hi)
        hull = convexHull(pts)
        return ConvexPolytope(tuple(hull), len(hull) < 3)

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def measure(self) -> Fraction:
        if self.dim == 1:
            return self.vertices[-1][0] - self.vertices[0][0]
        if self.degenerate:
            return ZERO
        return polygonArea(self.vertices)

    def halfPlanes(self) -> List[HalfPlane]:
        return halfPlanesOf(list(self.vertices))


def halfPlanesOf(vertices: Sequence[RatPoint]) -> List[HalfPlane]:
    '''Closed half-planes cutting out the convex hull of a point, a segment or
    a counterclockwise polygon.'''
    n = len(vertices)
    if n == 1:
        (x, y), = vertices
        return [(ONE, ZERO, x), (-ONE, ZERO, -x), (ZERO, ONE, y), (ZERO, -ONE, -y)]
    if n == 2:
        p, q = vertices
        d = sub(q, p)
        nx, ny = -d[1], d[0]
        c = nx * p[0] + ny * p[1]
        return [(nx, ny, c), (-nx, -ny, -c), (d[0], d[1], dot(d, p)), (-d[0], -d[1], -dot(d, q))]
    planes = []
    for i in range(n):
        p, q = vertices[i], vertices[(i + 1) % n]
        nx, ny = -(q[1] - p[1]), q[0] - p[0]
        planes.append((nx, ny, nx * p[0] + ny * p[1]))
    return planes


def _crossing(p: RatPoint, q: RatPoint, vp: Fraction, vq: Fraction) -> RatPoint:
    t = vp / (vp - vq)
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def clipByHalfPlane(points: Sequence[RatPoint], plane: HalfPlane) -> List[RatPoint]:
    '''Sutherland-Hodgman step against one closed half-plane.  The subject may
    be degenerate (a point or a segment); so may the result.'''
    nx, ny, c = plane
    out: List[RatPoint] = []
    n = len(points)
    for i in range(n):
        cur, prev = points[i], points[i - 1]
        vc = nx * cur[0] + ny * cur[1] - c
        vp = nx * prev[0] + ny * prev[1] - c
        if vc >= 0:
            if vp < 0:
                out.append(_crossing(prev, cur, vp, vc))
            out.append(cur)
        elif vp > 0:
            out.append(_crossing(prev, cur, vp, vc))
    # drop consecutive duplicates
    result: List[RatPoint] = []
    for p in out:
        if not result or result[-1] != p:
            result.append(p)
    while len(result) > 1 and result[0] == result[-1]:
        result.pop()
    return result


def clipByHalfPlanes(points: Sequence[RatPoint], planes: Iterable[HalfPlane]) -> List[RatPoint]:
    pts = list(points)
    for plane in planes:
        if not pts:
            break
        pts = clipByHalfPlane(pts, plane)
    return pts


def convex_intersect(p: ConvexPolytope, q: ConvexPolytope) -> Optional[ConvexPolytope]:
    '''Exact intersection of two intervals or two convex polygons.  Returns
    None when the intersection has empty interior.'''
    if p.dim != q.dim:
        raise DimensionError(_('Cannot intersect polytopes of dimensions {a} and {b}').format(
            a=p.dim, b=q.dim))
    if p.dim == 1:
        lo = max(p.vertices[0], q.vertices[0])
        hi = min(p.vertices[-1], q.vertices[-1])
        return ConvexPolytope((lo, hi)) if lo < hi else None
    if p.dim != 2:
        raise DimensionError(_('Polytopes are supported in dimensions 1 and 2 only'))
    pts = clipByHalfPlanes(p.vertices, q.halfPlanes())
    hull = convexHull(pts)
    if len(hull) < 3:
        return None
    return ConvexPolytope(tuple(hull))


def convex_difference(p: ConvexPolytope, q: ConvexPolytope) -> List[ConvexPolytope]:
    '''Convex pieces of p outside q, obtained by clipping p against q's edges
    one at a time.'''
    if p.dim != 2 or q.dim != 2:
        raise DimensionError(_('Polygon difference needs two polygons'))
    pieces = []
    rest: List[RatPoint] = list(p.vertices)
    for nx, ny, c in q.halfPlanes():
        outside = convexHull(clipByHalfPlane(rest, (-nx, -ny, -c)))
        if len(outside) >= 3:
            pieces.append(ConvexPolytope(tuple(outside)))
        rest = clipByHalfPlane(rest, (nx, ny, c))
        if not rest:
            break
    return pieces


def fan_triangulate(p: ConvexPolytope) -> List[Simplex]:
    '''Triangles (v0, vi, vi+1) of the canonical vertex order, all positively
    oriented.  Intervals come back as themselves.'''
    if p.dim == 1:
        if p.degenerate:
            raise DegenerateError(_('Degenerate interval'))
        return [Simplex(p.vertices)]
    if p.degenerate or len(p.vertices) < 3 or polygonArea(p.vertices) == 0:
        raise DegenerateError(_('Cannot triangulate a polygon of zero area'))
    v = p.vertices
    return [Simplex((v[0], v[i], v[i + 1])) for i in range(1, len(v) - 1)]


def point_locate(cells: Sequence[Simplex], x: RatPoint) -> int:
    '''Index of the first closed cell containing x.'''
    for i, s in enumerate(cells):
        if s.contains(x):
            return i
    raise NotFoundError(_('Point {x} lies outside every cell').format(
        x=tuple(str(c) for c in x)))


def lineThrough(p: RatPoint, q: RatPoint) -> Line:
    a, b = -(q[1] - p[1]), q[0] - p[0]
    if a != 0:
        a, b = ONE, b / a
    else:
        b = ONE
    return (a, b, a * p[0] + b * p[1])


# position of a point along a line: x, or y for vertical lines
def lineParameter(line: Line, p: RatPoint) -> Fraction:
    return p[1] if line[1] == 0 else p[0]


def pointOnLine(line: Line, t: Fraction) -> RatPoint:
    a, b, c = line
    if b == 0:
        return ((c - b * t) / a, t)
    return (t, (c - a * t) / b)


def primitiveVector(v: Sequence[Fraction]) -> Tuple[int, ...]:
    '''Positive multiple of v with coprime integer entries.'''
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for i in ints:
        g = math.gcd(g, i)
    if g == 0:
        raise DegenerateError(_('Zero vector has no direction'))
    return tuple(i // g for i in ints)


def kuhnSimplices(lows: RatPoint, highs: RatPoint) -> List[Tuple[RatPoint, ...]]:
    '''Kuhn triangulation of the box prod [lows[i], highs[i]]; coordinates with
    lows[i] == highs[i] stay fixed.'''
    free = [i for i in range(len(lows)) if lows[i] != highs[i]]
    simplices = []
    for perm in itertools.permutations(free):
        v = list(lows)
        vertices = [tuple(v)]
        for i in perm:
            v[i] = highs[i]
            vertices.append(tuple(v))
        simplices.append(tuple(vertices))
    return simplices


class BoxIndex:
    '''Uniform bucket grid over [-1, 1]^2 answering "which boxes may touch
    this box" queries.'''
    def __init__(self, boxes: Sequence[Tuple[RatPoint, RatPoint]], resolution: int = 0) -> None:
        if resolution <= 0:
            resolution = max(1, min(64, int(math.sqrt(len(boxes))) + 1))
        self.resolution = resolution
        self.boxes = list(boxes)
        self.buckets: Dict[Tuple[int, int], List[int]] = {}
        for i, (lo, hi) in enumerate(self.boxes):
            for key in self._keys(lo, hi):
                self.buckets.setdefault(key, []).append(i)

    def _index(self, v: Fraction) -> int:
        return min(self.resolution - 1, max(0, math.floor((v + 1) * self.resolution / 2)))

    def _keys(self, lo: RatPoint, hi: RatPoint) -> Iterable[Tuple[int, int]]:
        return itertools.product(
            range(self._index(lo[0]), self._index(hi[0]) + 1),
            range(self._index(lo[1]), self._index(hi[1]) + 1))

    def candidates(self, lo: RatPoint, hi: RatPoint) -> List[int]:
        found = set()
        for key in self._keys(lo, hi):
            for i in self.buckets.get(key, []):
                blo, bhi = self.boxes[i]
                if blo[0] <= hi[0] and lo[0] <= bhi[0] and blo[1] <= hi[1] and lo[1] <= bhi[1]:
                    found.add(i)
        return sorted(found)
