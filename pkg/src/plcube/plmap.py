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

# PL self-homeomorphisms of the cube [-1, 1]^n fixing the boundary.
#
# A PLMap is a list of cells (Simplex, RatAffineMap).  Cells cover the cube
# with pairwise disjoint interiors but need not meet face to face: overlays
# produced by compose() carry T-junctions.  Continuity is therefore checked
# on overlapping collinear edge pieces rather than on shared faces.
#
# Dimensions 1 and 2 are handled directly.  Higher dimensions exist only as
# suspensions, which store their base map and act through it.

from dataclasses import dataclass, field
from fractions import Fraction
from gettext import gettext as _
from typing import Any, Dict, List, Optional, Sequence, Tuple

from plcube.errors import DimensionError, NotFoundError
from plcube.geometry import (
    ONE,
    ZERO,
    BoxIndex,
    ConvexPolytope,
    Line,
    RatAffineMap,
    RatPoint,
    Simplex,
    convexHull,
    convex_intersect,
    fan_triangulate,
    inCube,
    kuhnSimplices,
    lineParameter,
    lineThrough,
    pointOnLine,
    point_locate,
    polygonArea,
    sign,
    simplex_volume,
    supNorm,
)

Cell = Tuple[Simplex, RatAffineMap]


class PLMap:
    '''A PL homeomorphism of I^n given by one affine map per cell.'''
    def __init__(self, dim: int, cells: Sequence[Cell], base: Optional['PLMap'] = None) -> None:
        if dim < 1:
            raise DimensionError(_('Dimension must be positive'))
        if base is None and dim >= 3:
            raise DimensionError(
                _('Generic maps of dimension {dim} are not supported').format(dim=dim))
        if base is not None and base.dim != dim - 1:
            raise DimensionError(_('Suspension base must have dimension {dim}').format(dim=dim - 1))
        self.dim = dim
        self.cells: Tuple[Cell, ...] = tuple(cells)
        self.base = base
        self._canonical: Optional['PLMap'] = None

    @property
    def kind(self) -> str:
        return 'generic' if self.base is None else 'suspension'

    @staticmethod
    def identity(dim: int) -> 'PLMap':
        if dim == 1:
            return PLMap(1, [(Simplex(((-ONE,), (ONE,))), RatAffineMap.identity(1))])
        if dim == 2:
            square = ConvexPolytope(((-ONE, -ONE), (ONE, -ONE), (ONE, ONE), (-ONE, ONE)))
            return PLMap(2, [(s, RatAffineMap.identity(2)) for s in fan_triangulate(square)])
        return PLMap.suspensionOf(PLMap.identity(dim - 1))

    @staticmethod
    def suspensionOf(base: 'PLMap') -> 'PLMap':
        '''Cones each cell of base to the apexes (0, ..., 0, +-1) and fills the
        rest of the cube with the identity.  One dimensional bases give a
        generic map of the square.'''
        n = base.dim
        cells: List[Cell] = []
        for z in (ONE, -ONE):
            apex = (ZERO,) * n + (z,)
            for s, f in base.cells:
                b = f.translation
                linear = tuple(tuple(row) + (-z * b[r],) for r, row in enumerate(f.linear))
                linear += ((ZERO,) * n + (ONE,),)
                m = RatAffineMap(linear, tuple(b) + (ZERO,))
                cone = Simplex(tuple(v + (ZERO,) for v in s.vertices) + (apex,)).positive()
                cells.append((cone, m))
            # the region between the bipyramid and the cube is coned from the
            # apex over the side prisms (facet of I^n) x [0, z]
            for i in range(n):
                for side in (-ONE, ONE):
                    lows = [-ONE] * n + [min(ZERO, z)]
                    highs = [ONE] * n + [max(ZERO, z)]
                    lows[i] = highs[i] = side
                    for vertices in kuhnSimplices(tuple(lows), tuple(highs)):
                        cone = Simplex(tuple(vertices) + (apex,)).positive()
                        cells.append((cone, RatAffineMap.identity(n + 1)))
        if n == 1:
            return PLMap(2, cells)
        return PLMap(n + 1, cells, base)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, PLMap):
            return NotImplemented
        return self.dim == other.dim and self.cells == other.cells and self.base == other.base

    def __hash__(self) -> int:
        return hash((self.dim, self.cells))

    def __repr__(self) -> str:
        return f'PLMap(dim={self.dim}, kind={self.kind}, cells={len(self.cells)})'

    def isIdentity(self) -> bool:
        if self.base is not None:
            return self.base.isIdentity()
        return all(m.isIdentity() for _s, m in self.cells)

    def canonicalKey(self) -> Tuple:
        '''Hashable, function-intrinsic key: the canonical cell list.'''
        c = canonicalize(self)
        key: Tuple = (c.dim, c.cells)
        if c.base is not None:
            key = (c.dim, c.base.canonicalKey())
        return key


@dataclass(frozen=True)
class Violation:
    check: str
    witness: Tuple
    detail: str = ''


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return len(self.violations) == 0

    def add(self, check: str, witness: Tuple, detail: str = '') -> None:
        self.violations.append(Violation(check, witness, detail))

    def checks(self) -> List[str]:
        return sorted({v.check for v in self.violations})


EdgeSegment = Tuple[Fraction, Fraction, int, int]


def _edgeSegments(simplices: Sequence[Simplex]) -> Dict[Line, List[EdgeSegment]]:
    '''Edges grouped by supporting line as (t0, t1, cell, side) where side is
    the sign of the line equation at the opposite vertex.'''
    lines: Dict[Line, List[EdgeSegment]] = {}
    for i, s in enumerate(simplices):
        vs = s.vertices
        for k in range(3):
            p, q, r = vs[k], vs[(k + 1) % 3], vs[(k + 2) % 3]
            line = lineThrough(p, q)
            t0, t1 = sorted((lineParameter(line, p), lineParameter(line, q)))
            side = sign(line[0] * r[0] + line[1] * r[1] - line[2])
            lines.setdefault(line, []).append((t0, t1, i, side))
    return lines


def _overlaps(segments: List[EdgeSegment]):
    '''Pairs of segments on one line sharing a piece of positive length,
    with that piece.'''
    segments = sorted(segments)
    for a in range(len(segments)):
        t0, t1, i, _side = segments[a]
        for b in range(a + 1, len(segments)):
            u0, u1, j, _other = segments[b]
            if u0 >= t1:
                break
            lo, hi = max(t0, u0), min(t1, u1)
            if lo < hi:
                yield segments[a], segments[b], lo, hi


def _coverViolations(report: ValidationReport, simplices: Sequence[Simplex], check: str) -> None:
    dim = simplices[0].ambient
    total = ZERO
    for i, s in enumerate(simplices):
        if s.orientation == 0:
            report.add(check, (i,), _('degenerate cell'))
            continue
        if not all(inCube(v) for v in s.vertices):
            report.add(check, (i,), _('cell leaves the cube'))
        total += simplex_volume(s)
    if total != 2 ** dim:
        report.add(check, (), _('cells have total volume {v}').format(v=total))
    if dim == 1:
        intervals = sorted((s.vertices[0][0], s.vertices[1][0], i)
                           if s.vertices[0] < s.vertices[1]
                           else (s.vertices[1][0], s.vertices[0][0], i)
                           for i, s in enumerate(simplices))
        for (lo0, hi0, i), (lo1, hi1, j) in zip(intervals, intervals[1:]):
            if lo1 < hi0:
                report.add(check, (i, j), _('cells overlap'))
        return
    polys = [ConvexPolytope(s.positive().vertices) for s in simplices if s.orientation != 0]
    index = [i for i, s in enumerate(simplices) if s.orientation != 0]
    boxes = BoxIndex([simplices[i].bbox() for i in index])
    for a, i in enumerate(index):
        lo, hi = simplices[i].bbox()
        for b in boxes.candidates(lo, hi):
            if b <= a:
                continue
            if convex_intersect(polys[a], polys[b]) is not None:
                report.add(check, (i, index[b]), _('cells overlap'))


def validate(f: PLMap) -> ValidationReport:
    '''Runs the cover, continuity, orientation, bijectivity and boundary
    checks.  Failures are returned as data.'''
    report = ValidationReport()
    if f.base is not None:
        report.violations.extend(validate(f.base).violations)
        total = sum((simplex_volume(s) for s, _m in f.cells), ZERO)
        if total != 2 ** f.dim:
            report.add('cover', (), _('cells have total volume {v}').format(v=total))
        return report
    if not f.cells:
        report.add('cover', (), _('no cells'))
        return report

    simplices = [s for s, _m in f.cells]
    _coverViolations(report, simplices, 'cover')

    # continuity
    if f.dim == 1:
        ends: Dict[Fraction, List[int]] = {}
        for i, s in enumerate(simplices):
            for v in s.vertices:
                ends.setdefault(v[0], []).append(i)
        for x, idx in sorted(ends.items()):
            values = {f.cells[i][1]((x,)) for i in idx}
            if len(values) > 1:
                report.add('continuity', tuple(idx), _('maps disagree at {x}').format(x=x))
    else:
        for line, segments in _edgeSegments(simplices).items():
            for (_t0, _t1, i, _s), (_u0, _u1, j, _r), lo, hi in _overlaps(segments):
                if i == j:
                    continue
                fi, fj = f.cells[i][1], f.cells[j][1]
                for t in (lo, hi):
                    p = pointOnLine(line, t)
                    if fi(p) != fj(p):
                        report.add('continuity', (i, j), _('maps disagree on a shared edge'))
                        break

    # orientation and nondegeneracy of the linear parts
    signs = []
    for i, (_s, m) in enumerate(f.cells):
        d = m.det()
        if d == 0:
            report.add('bijectivity', (i,), _('cell map has determinant 0'))
        signs.append(sign(d))
    nonzero = [s for s in signs if s != 0]
    if nonzero and any(s != nonzero[0] for s in nonzero):
        i = next(i for i, s in enumerate(signs) if s != 0 and s != nonzero[0])
        report.add('orientation', (i,), _('cell determinants change sign'))

    # images must tile the cube again
    if all(s != 0 for s in signs):
        images = [Simplex(tuple(m(v) for v in s.vertices)) for s, m in f.cells]
        _coverViolations(report, images, 'bijectivity')

    # cell faces on the boundary of the cube are fixed
    for i, (s, m) in enumerate(f.cells):
        for face in s.facets():
            for axis in range(f.dim):
                value = face[0][axis]
                if abs(value) == 1 and all(v[axis] == value for v in face):
                    for v in face:
                        if m(v) != v:
                            report.add('boundary', (i, v), _('boundary point moves'))
    return report


def apply(f: PLMap, x: RatPoint) -> RatPoint:
    if len(x) != f.dim:
        raise DimensionError(_('Point of dimension {a} for a map of dimension {b}').format(
            a=len(x), b=f.dim))
    if not inCube(x):
        raise NotFoundError(_('Point lies outside the cube'))
    if f.base is not None:
        xs, z = x[:-1], x[-1]
        r = ONE - abs(z)
        if r == 0 or supNorm(xs) > r:
            return x
        y = apply(f.base, tuple(c / r for c in xs))
        return tuple(r * c for c in y) + (z,)
    return f.cells[point_locate([s for s, _m in f.cells], x)][1](x)


def _compose1d(f: PLMap, g: PLMap) -> PLMap:
    gcells = sorted(f_ for f_ in g.cells)
    fcells = sorted(f_ for f_ in f.cells)
    points = {v[0] for s, _m in gcells for v in s.vertices}
    for s, _m in fcells:
        for v in s.vertices:
            for t, m in gcells:
                lo, hi = sorted((m(t.vertices[0])[0], m(t.vertices[1])[0]))
                if lo <= v[0] <= hi:
                    points.add(m.inverse()(v)[0])
                    break
    xs = sorted(points)
    gs = [s for s, _m in gcells]
    fs = [s for s, _m in fcells]
    cells = []
    for a, b in zip(xs, xs[1:]):
        mid = ((a + b) / 2,)
        mg = gcells[point_locate(gs, mid)][1]
        mf = fcells[point_locate(fs, mg(mid))][1]
        cells.append((Simplex(((a,), (b,))), mf.after(mg)))
    return PLMap(1, cells)


def _compose2d(f: PLMap, g: PLMap) -> PLMap:
    fpolys = [ConvexPolytope(s.positive().vertices) for s, _m in f.cells]
    findex = BoxIndex([s.bbox() for s, _m in f.cells])
    cells: List[Cell] = []
    for sigma, mg in g.cells:
        img = sigma.image(mg)
        poly = ConvexPolytope(img.vertices)
        lo, hi = img.bbox()
        inv = mg.inverse()
        for j in findex.candidates(lo, hi):
            q = convex_intersect(poly, fpolys[j])
            if q is None:
                continue
            pre = ConvexPolytope.fromPoints(inv(v) for v in q.vertices)
            m = f.cells[j][1].after(mg)
            for tri in fan_triangulate(pre):
                cells.append((tri, m))
    return PLMap(2, cells)


def compose(f: PLMap, g: PLMap) -> PLMap:
    '''Returns f o g as the raw overlay of the two triangulations.'''
    if f.dim != g.dim:
        raise DimensionError(_('Cannot compose maps of dimensions {a} and {b}').format(
            a=f.dim, b=g.dim))
    if f.base is not None or g.base is not None:
        if f.base is None or g.base is None:
            raise DimensionError(_('Generic composition is unsupported in dimension {dim}').format(
                dim=f.dim))
        return PLMap.suspensionOf(compose(f.base, g.base))
    if f.dim == 1:
        return _compose1d(f, g)
    return _compose2d(f, g)


def inverse(f: PLMap) -> PLMap:
    if f.base is not None:
        return PLMap.suspensionOf(inverse(f.base))
    return PLMap(f.dim, [(s.image(m), m.inverse()) for s, m in f.cells])


def equals(f: PLMap, g: PLMap) -> bool:
    '''True iff f and g agree as functions: every cell of f o g^-1 is the identity.'''
    if f.dim != g.dim:
        raise DimensionError(_('Cannot compare maps of dimensions {a} and {b}').format(
            a=f.dim, b=g.dim))
    if f.base is not None and g.base is not None:
        return equals(f.base, g.base)
    return compose(f, inverse(g)).isIdentity()


def _find(parent: List[int], i: int) -> int:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def edgeComponents(simplices: Sequence[Simplex]) -> List[List[int]]:
    parent = list(range(len(simplices)))
    for segments in _edgeSegments(simplices).values():
        for (_t0, _t1, i, _s), (_u0, _u1, j, _r), _lo, _hi in _overlaps(segments):
            a, b = _find(parent, i), _find(parent, j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: Dict[int, List[int]] = {}
    for i in range(len(simplices)):
        groups.setdefault(_find(parent, i), []).append(i)
    return list(groups.values())


def regionBoundary(simplices: Sequence[Simplex]) -> List[Tuple[RatPoint, RatPoint, Line, int]]:
    '''Maximal boundary segments (p, q, line, side) of a union of triangles;
    side is the sign of the line equation on the region's side.'''
    result = []
    for line, segments in sorted(_edgeSegments(simplices).items()):
        ts = sorted({t for t0, t1, _i, _s in segments for t in (t0, t1)})
        pieces: List[Tuple[Fraction, Fraction, int]] = []
        for u, v in zip(ts, ts[1:]):
            sides = {s for t0, t1, _i, s in segments if t0 <= u and v <= t1}
            if len(sides) != 1:
                continue
            side = sides.pop()
            if pieces and pieces[-1][1] == u and pieces[-1][2] == side:
                pieces[-1] = (pieces[-1][0], v, side)
            else:
                pieces.append((u, v, side))
        for u, v, side in pieces:
            result.append((pointOnLine(line, u), pointOnLine(line, v), line, side))
    return result


def _slabTriangles(boundary: List[Tuple[RatPoint, RatPoint, Line, int]]) -> List[Simplex]:
    xs = sorted({p[0] for seg in boundary for p in seg[:2]})
    segments = []
    for p, q, line, side in boundary:
        if line[1] == 0:
            continue  # vertical edges bound slabs, not trapezoids
        if q[0] < p[0]:
            p, q = q, p
        segments.append((p, q, side * sign(line[1]) > 0))

    def yAt(p: RatPoint, q: RatPoint, x: Fraction) -> Fraction:
        return p[1] + (x - p[0]) * (q[1] - p[1]) / (q[0] - p[0])

    triangles = []
    for x0, x1 in zip(xs, xs[1:]):
        xm = (x0 + x1) / 2
        active = sorted((yAt(p, q, xm), p, q, above)
                        for p, q, above in segments if p[0] <= x0 and x1 <= q[0])
        i = 0
        while i + 1 < len(active):
            _ym, p, q, above = active[i]
            if not above:
                i += 1
                continue
            _yn, r, s, _above = active[i + 1]
            trapezoid = ConvexPolytope.fromPoints([
                (x0, yAt(p, q, x0)), (x1, yAt(p, q, x1)),
                (x1, yAt(r, s, x1)), (x0, yAt(r, s, x0))])
            if not trapezoid.degenerate:
                triangles.extend(fan_triangulate(trapezoid))
            i += 2
    return triangles


def triangulateRegion(simplices: Sequence[Simplex]) -> List[Simplex]:
    '''Canonical triangulation of a connected union of triangles: a fan from
    the least vertex when the region is convex, else trapezoids between the
    vertical lines through its corners.'''
    boundary = regionBoundary(simplices)
    corners = {p for seg in boundary for p in seg[:2]}
    area = sum((simplex_volume(s) for s in simplices), ZERO)
    hull = convexHull(corners)
    if len(hull) >= 3 and polygonArea(hull) == area:
        return fan_triangulate(ConvexPolytope(tuple(hull)))
    return _slabTriangles(boundary)


def canonicalize(f: PLMap) -> PLMap:
    '''Merges maximal edge-connected regions sharing one affine map and
    re-triangulates each region canonically.  Idempotent, and equal maps get
    identical cell lists.'''
    if f._canonical is not None:
        return f._canonical
    if f.base is not None:
        result = PLMap.suspensionOf(canonicalize(f.base))
    elif f.dim == 1:
        cells: List[Cell] = []
        for s, m in sorted((Simplex(tuple(sorted(s.vertices))), m) for s, m in f.cells):
            if cells and cells[-1][1] == m and cells[-1][0].vertices[1] == s.vertices[0]:
                cells[-1] = (Simplex((cells[-1][0].vertices[0], s.vertices[1])), m)
            else:
                cells.append((s, m))
        result = PLMap(1, cells)
    else:
        groups: Dict[RatAffineMap, List[Simplex]] = {}
        for s, m in f.cells:
            groups.setdefault(m, []).append(s)
        out: List[Cell] = []
        for m, simplices in groups.items():
            for component in edgeComponents(simplices):
                for tri in triangulateRegion([simplices[i] for i in component]):
                    out.append((tri, m))
        out.sort()
        result = PLMap(2, out)
    result._canonical = result
    f._canonical = result
    return result


def power(f: PLMap, k: int) -> PLMap:
    '''f^k, canonicalized after every step; negative k uses the inverse.'''
    if k == 0:
        return PLMap.identity(f.dim)
    step = canonicalize(f if k > 0 else inverse(f))
    result = step
    for _i in range(abs(k) - 1):
        result = canonicalize(compose(step, result))
    return result
