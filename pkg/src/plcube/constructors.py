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

# The explicit elements: one dimensional maps from breakpoints, the Alexander
# isotopy, suspensions, the twist map and its roots, maps that are linear
# near the origin, and identity extensions of maps supported in a box.

import math

from dataclasses import dataclass
from fractions import Fraction
from gettext import gettext as _
from typing import List, Optional, Sequence, Tuple

import numpy as np

from plcube import utils
from plcube.errors import DimensionError, OrientationError, SpecError
from plcube.geometry import (
    ONE,
    ZERO,
    ConvexPolytope,
    RatAffineMap,
    RatMatrix,
    RatPoint,
    Simplex,
    clipByHalfPlanes,
    convexHull,
    determinant,
    fan_triangulate,
    identityMatrix,
    matMul,
    matVec,
    polygonArea,
    supNorm,
)
from plcube.plmap import Cell, PLMap, canonicalize, compose, inverse, validate
from plcube.resources import theResources
from plcube.utils import RationalLike, frac

Box = Sequence[Tuple[Fraction, Fraction]]


@dataclass(frozen=True)
class BreakpointSpec:
    nodes: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        nodes = tuple((frac(x), frac(y)) for x, y in self.nodes)
        object.__setattr__(self, 'nodes', nodes)
        if len(nodes) < 2 or nodes[0] != (-1, -1) or nodes[-1] != (1, 1):
            raise SpecError(_('Breakpoints must run from (-1, -1) to (1, 1)'))
        for (x0, y0), (x1, y1) in zip(nodes, nodes[1:]):
            if not (x0 < x1 and y0 < y1):
                raise SpecError(_('Breakpoints must increase strictly in both coordinates'))


@dataclass(frozen=True)
class TwistSpec:
    '''inner is the half-width of the inner square, fraction the part of its
    perimeter it slides by.'''
    inner: Fraction
    fraction: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, 'inner', frac(self.inner))
        object.__setattr__(self, 'fraction', frac(self.fraction))
        if not (0 < self.inner < 1):
            raise SpecError(_('Inner half-width must lie in (0, 1)'))
        if self.fraction == 0:
            raise SpecError(_('Twist fraction must be nonzero'))


def pl1d(spec: BreakpointSpec) -> PLMap:
    cells = []
    for (x0, y0), (x1, y1) in zip(spec.nodes, spec.nodes[1:]):
        m = RatAffineMap.fromSimplices([(x0,), (x1,)], [(y0,), (y1,)])
        cells.append((Simplex(((x0,), (x1,))), m))
    return PLMap(1, cells)


def random_pl1d(rng: np.random.Generator, nodes: int = 2, bits: int = 6) -> PLMap:
    '''A map with at most `nodes` interior breakpoints, all on the dyadic
    lattice of step 2^(1 - bits).'''
    span = 2 ** bits
    while True:
        xs = sorted({int(k) for k in rng.integers(1, span, size=nodes)})
        ys = sorted({int(k) for k in rng.integers(1, span, size=len(xs))})
        if len(xs) == len(ys):
            break
    inner = tuple((Fraction(2 * x, span) - 1, Fraction(2 * y, span) - 1) for x, y in zip(xs, ys))
    return pl1d(BreakpointSpec(((-ONE, -ONE),) + inner + ((ONE, ONE),)))


def _identityCells(polygon: Sequence[RatPoint]) -> List[Cell]:
    p = ConvexPolytope.fromPoints(polygon)
    if p.degenerate or p.measure() == 0:
        return []
    return [(s, RatAffineMap.identity(p.dim)) for s in fan_triangulate(p)]


def _annulusCells(dim: int, t: Fraction) -> List[Cell]:
    '''Identity cells on I^n minus the open cube of half-width t.'''
    if dim == 1:
        return _identityCells([(-ONE,), (-t,)]) + _identityCells([(t,), (ONE,)])
    corners = [(-ONE, -ONE), (ONE, -ONE), (ONE, ONE), (-ONE, ONE)]
    cells = []
    for i in range(4):
        p, q = corners[i], corners[(i + 1) % 4]
        cells.extend(_identityCells([p, q, (t * q[0], t * q[1]), (t * p[0], t * p[1])]))
    return cells


def alexander(f: PLMap, t: RationalLike) -> PLMap:
    '''f_t(x) = t f(x / t) on the cube of half-width t, identity outside;
    f_1 = f and f_0 = Id.'''
    t = frac(t)
    if not (0 <= t <= 1):
        raise SpecError(_('Alexander parameter must lie in [0, 1]'))
    if f.base is not None:
        raise DimensionError(_('The Alexander isotopy is built in dimensions 1 and 2'))
    if t == 0:
        return PLMap.identity(f.dim)
    if t == 1:
        return f
    cells: List[Cell] = []
    for s, m in f.cells:
        scaled = Simplex(tuple(tuple(t * c for c in v) for v in s.vertices))
        cells.append((scaled, RatAffineMap(m.linear, tuple(t * c for c in m.translation))))
    cells.extend(_annulusCells(f.dim, t))
    return PLMap(f.dim, cells)


def suspend(f: PLMap) -> PLMap:
    return PLMap.suspensionOf(f)


_R90: RatMatrix = ((ZERO, -ONE), (ONE, ZERO))
_R270: RatMatrix = ((ZERO, ONE), (-ONE, ZERO))


def _slideMap(k: int, alpha: Fraction, beta: Fraction) -> RatAffineMap:
    '''Affine piece of the right sector landing on side k mod 4 of its layer.'''
    c = beta - 2 * k
    j = k % 4
    if j == 0:
        return RatAffineMap(((ONE, ZERO), (c, ONE)), (ZERO, alpha))
    if j == 1:
        return RatAffineMap(((-c, -ONE), (ONE, ZERO)), (-alpha, ZERO))
    if j == 2:
        return RatAffineMap(((-ONE, ZERO), (-c, -ONE)), (ZERO, -alpha))
    return RatAffineMap(((c, ONE), (-ONE, ZERO)), (alpha, ZERO))


def twist_root(spec: TwistSpec) -> PLMap:
    '''The layered slide.  A point on the concentric square of half-width l
    moves counterclockwise along it by arclength alpha + beta * l; the right
    sector x >= |y| is cut into strips by the side it lands on, and the
    other three sectors are its quarter-turn conjugates.'''
    l0, fraction = spec.inner, spec.fraction
    s0 = fraction * 8 * l0
    pieces = [
        # the annulus, where the slide decays affinely to 0 at the boundary
        ([(l0, -l0), (ONE, -ONE), (ONE, ONE), (l0, l0)], s0 / (1 - l0), -s0 / (1 - l0)),
        # the inner square, rotated by the same share of every perimeter
        ([(ZERO, ZERO), (l0, -l0), (l0, l0)], ZERO, 8 * fraction),
    ]
    cells: List[Cell] = []
    rotations = [(identityMatrix(2), identityMatrix(2))]
    for _i in range(3):
        a, b = rotations[-1]
        rotations.append((matMul(_R90, a), matMul(b, _R270)))
    for polygon, alpha, beta in pieces:
        # T = x + y + alpha + beta x is the landing arclength, measured from
        # the lower right corner of the layer; strip k holds 2kx <= T <= 2(k+1)x
        ratios = [((1 + beta) * x + y + alpha) / (2 * x) for x, y in polygon if x != 0]
        for k in range(math.floor(min(ratios)), math.floor(max(ratios)) + 1):
            strip = clipByHalfPlanes(polygon, [
                (1 + beta - 2 * k, ONE, -alpha),
                (2 * k + 1 - beta, -ONE, alpha),
            ])
            hull = convexHull(strip)
            if len(hull) < 3 or polygonArea(hull) == 0:
                continue
            m = _slideMap(k, alpha, beta)
            for rot, rotInv in rotations:
                r = RatAffineMap(rot, (ZERO, ZERO))
                conj = r.after(m).after(RatAffineMap(rotInv, (ZERO, ZERO)))
                rotated = ConvexPolytope.fromPoints(matVec(rot, v) for v in hull)
                cells.extend((s, conj) for s in fan_triangulate(rotated))
    return PLMap(2, sorted(cells))


def twist_power(spec: TwistSpec, k: int) -> PLMap:
    '''The k-th power of twist_root(spec); slides add up layer by layer.'''
    if k == 0:
        return PLMap.identity(2)
    return twist_root(TwistSpec(spec.inner, spec.fraction * k))


def embed_support(f: PLMap, box: Box) -> PLMap:
    '''Conjugates f into the axis-aligned box and extends by the identity.'''
    if f.base is not None:
        raise DimensionError(_('Boxes are supported in dimensions 1 and 2'))
    box = [(frac(lo), frac(hi)) for lo, hi in box]
    if len(box) != f.dim:
        raise DimensionError(_('Box of dimension {a} for a map of dimension {b}').format(
            a=len(box), b=f.dim))
    if any(not (-1 <= lo < hi <= 1) for lo, hi in box):
        raise SpecError(_('Box must be a nondegenerate box inside the cube'))
    centre = tuple((lo + hi) / 2 for lo, hi in box)
    half = [(hi - lo) / 2 for lo, hi in box]
    phi = RatAffineMap(
        tuple(tuple(half[i] if i == j else ZERO for j in range(f.dim)) for i in range(f.dim)),
        centre)
    phiInv = phi.inverse()
    cells: List[Cell] = [(s.image(phi), phi.after(m).after(phiInv)) for s, m in f.cells]
    if f.dim == 1:
        (lo, hi), = box
        cells += _identityCells([(-ONE,), (lo,)]) + _identityCells([(hi,), (ONE,)])
    else:
        (x0, x1), (y0, y1) = box
        for polygon in (
                [(-ONE, -ONE), (ONE, -ONE), (ONE, y0), (-ONE, y0)],
                [(-ONE, y1), (ONE, y1), (ONE, ONE), (-ONE, ONE)],
                [(-ONE, y0), (x0, y0), (x0, y1), (-ONE, y1)],
                [(x1, y0), (ONE, y0), (ONE, y1), (x1, y1)]):
            cells += _identityCells(polygon)
    return PLMap(f.dim, cells)


FIGURE2_SPEC: TwistSpec = TwistSpec(Fraction(1, 2), Fraction(1, 12))
FIGURE2_LEFT: Tuple[Tuple[Fraction, Fraction], ...] = (
    (Fraction(-3, 8), Fraction(-1, 8)), (Fraction(-1, 8), Fraction(1, 8)))
FIGURE2_RIGHT: Tuple[Tuple[Fraction, Fraction], ...] = (
    (Fraction(1, 8), Fraction(3, 8)), (Fraction(-1, 8), Fraction(1, 8)))


def figure2_g() -> Tuple[PLMap, PLMap]:
    '''f = h^6 rotates the inner square by a half turn and swaps the two little
    squares; g twists one little square forwards and the other backwards, so
    that f^-1 g f = g^-1.'''
    h = twist_root(FIGURE2_SPEC)
    f = twist_power(FIGURE2_SPEC, 6)
    g = compose(embed_support(h, FIGURE2_LEFT), embed_support(inverse(h), FIGURE2_RIGHT))
    return f, canonicalize(g)


# linear maps near the origin

_CORNERS: Tuple[RatPoint, ...] = ((-ONE, -ONE), (ONE, -ONE), (ONE, ONE), (-ONE, ONE))


def _join(m: RatMatrix, r: Fraction) -> Optional[PLMap]:
    '''x -> mx on r I^2, joined corner to corner to the identity on the
    boundary.  Returns None if the join folds or leaves the cube.'''
    inner = [tuple(r * c for c in v) for v in _CORNERS]
    images = [matVec(m, v) for v in inner]
    if any(supNorm(p) >= 1 for p in images):
        return None
    lin = RatAffineMap(m, (ZERO, ZERO))
    square = ConvexPolytope.fromPoints(inner)
    cells: List[Cell] = [(s, lin) for s in fan_triangulate(square)]
    for i in range(4):
        j = (i + 1) % 4
        for src, dst in (
                ((inner[i], _CORNERS[i], _CORNERS[j]), (images[i], _CORNERS[i], _CORNERS[j])),
                ((inner[i], _CORNERS[j], inner[j]), (images[i], _CORNERS[j], images[j]))):
            if Simplex(dst).orientation <= 0:
                return None
            cells.append((Simplex(src), RatAffineMap.fromSimplices(src, dst)))
    f = PLMap(2, cells)
    return f if validate(f).passed else None


def _shear(upper: bool, s: Fraction) -> RatMatrix:
    if upper:
        return ((ONE, s), (ZERO, ONE))
    return ((ONE, ZERO), (s, ONE))


def _shearPieces(upper: bool, s: Fraction) -> List[RatMatrix]:
    if s == 0:
        return []
    n = math.ceil(2 * abs(s))
    return [_shear(upper, s / n)] * n


def _elementaryFactors(m: RatMatrix) -> List[RatMatrix]:
    '''Shears of size at most 1/2 and a positive diagonal whose product, left
    to right, is m.'''
    tail: List[RatMatrix] = []
    if m[0][0] == 0:
        # m = (m L) L^-1 with L = [[1, 0], [1, 1]] moves b into the pivot
        m = ((m[0][0] + m[0][1], m[0][1]), (m[1][0] + m[1][1], m[1][1]))
        tail = _shearPieces(False, -ONE)
    (a, b), (c, d) = m
    det = a * d - b * c
    factors = _shearPieces(False, c / a)
    p, q = a, det / a
    if a < 0:
        # -I = (A B A)^2 with A, B the unit upper and lower shears
        aba = _shearPieces(True, ONE) + _shearPieces(False, -ONE) + _shearPieces(True, ONE)
        factors += aba + aba
        p, q = -p, -q
    if (p, q) != (1, 1):
        factors.append(((p, ZERO), (ZERO, q)))
    return factors + _shearPieces(True, b / a) + tail


def _factoredJoin(m: RatMatrix, r: Fraction) -> Optional[PLMap]:
    factors = _elementaryFactors(m)
    # the innermost factor acts on r I^2; each outer one on the image so far
    radii: List[Fraction] = [ZERO] * len(factors)
    points = [tuple(r * c for c in v) for v in _CORNERS]
    for i in reversed(range(len(factors))):
        radii[i] = max(supNorm(p) for p in points)
        if radii[i] >= 1:
            return None
        points = [matVec(factors[i], p) for p in points]
    joins = []
    for e, radius in zip(factors, radii):
        j = _join(e, radius)
        if j is None:
            return None
        joins.append(j)
    result = joins[0]
    for j in joins[1:]:
        result = canonicalize(compose(result, j))
    return result


def linear_near_zero(m: Sequence[Sequence[RationalLike]], r: RationalLike) -> PLMap:
    '''A map of the square fixing the boundary that equals x -> mx on r I^2.'''
    matrix: RatMatrix = tuple(tuple(frac(x) for x in row) for row in m)
    r = frac(r)
    if len(matrix) != 2 or any(len(row) != 2 for row in matrix):
        raise DimensionError(_('Expected a 2x2 matrix'))
    if determinant(matrix) <= 0:
        raise OrientationError(_('Matrix must have positive determinant'))
    if not (0 < r < 1):
        raise SpecError(_('Radius must lie in (0, 1)'))
    if matrix == identityMatrix(2):
        return PLMap.identity(2)
    radius = r
    for _i in range(theResources.getOptionAsInt('max_radius_halvings') + 1):
        f = _join(matrix, radius)
        if f is None:
            f = _factoredJoin(matrix, radius)
        if f is not None:
            return f
        radius /= 2
        utils.logDebug(f'linear_near_zero: shrinking radius to {radius}')
    raise AssertionError('no radius admits a fold-free join')


FREE_PAIR_MATRICES: Tuple[RatMatrix, RatMatrix] = (
    ((ONE, 2 * ONE), (ZERO, ONE)),
    ((ONE, ZERO), (2 * ONE, ONE)))


def free_pair(r: RationalLike = Fraction(1, 4)) -> Tuple[PLMap, PLMap]:
    '''Two maps of the square equal near the origin to the matrices
    [[1, 2], [0, 1]] and [[1, 0], [2, 1]].  Those matrices generate a free
    group and the germ at the origin is a homomorphism, so the maps generate
    a free group of rank two.'''
    a, b = (linear_near_zero(m, r) for m in FREE_PAIR_MATRICES)
    return a, b


def germAtOrigin(f: PLMap) -> RatMatrix:
    '''The linear part shared by the cells around the origin of a map that is
    linear near it.'''
    if f.dim != 2 or f.base is not None:
        raise DimensionError(_('Germs at the origin are read from maps of the square'))
    origin = (ZERO, ZERO)
    parts = {(m.linear, m.translation) for s, m in f.cells if s.contains(origin)}
    if len(parts) != 1 or next(iter(parts))[1] != origin:
        raise SpecError(_('The map is not linear near the origin'))
    return next(iter(parts))[0]


def random_pl2d(rng: np.random.Generator, factors: int = 1) -> PLMap:
    '''A product of twist roots and suspended one dimensional maps, each
    conjugated into a random box with corners on the lattice of step 1/4.'''
    f = PLMap.identity(2)
    for _i in range(factors):
        box = []
        for _axis in range(2):
            lo, hi = sorted(int(k) for k in rng.choice(9, size=2, replace=False))
            box.append((Fraction(lo - 4, 4), Fraction(hi - 4, 4)))
        if rng.integers(2):
            k = int(rng.choice([-3, -2, -1, 1, 2, 3]))
            g = twist_root(TwistSpec(Fraction(1, 2), Fraction(k, 12)))
        else:
            g = suspend(random_pl1d(rng))
        f = canonicalize(compose(f, embed_support(g, box)))
    return f
