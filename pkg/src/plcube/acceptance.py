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

# The property suites run by "plcube verify".  Every suite takes a seed and a
# worker count and returns a dictionary of named checks; a suite passes when
# all of its checks are true.

import itertools
import json

from fractions import Fraction
from typing import Callable, Dict, List, Optional

import numpy as np

from plcube import braid, constructors, distortion, invariants, orders, serialization, utils
from plcube.errors import DegeneracyError
from plcube.geometry import ONE, ZERO, RatPoint, determinant, onCubeBoundary, supNorm
from plcube.mu.mu_interface import QuasimorphismSpec
from plcube.plmap import PLMap, apply, compose, equals, inverse, power, validate
from plcube.words import braidEquals

Checks = Dict[str, bool]

GROUP_AXIOM_TRIPLES = 100
TWIST_RANDOM_POINTS = 50
SUSPENSION_PAIRS = 50
ORDER_MAPS = 500
ORDER_TRIPLES = 100
COCYCLE_QUADRUPLES = 1000
INVARIANCE_MATRICES = 200
BRAID_SAMPLES = 100
BRAID_STRANDS = 3
WITNESS_SUBGROUPS = 20
SERIALIZED_MAPS = 100
PHI_SAMPLES = 4096
PHI_GRID = 64


def _dyadic(rng: np.random.Generator, lo: Fraction, hi: Fraction, bits: int = 10) -> Fraction:
    return lo + (hi - lo) * Fraction(2 * int(rng.integers(0, 2 ** bits)) + 1, 2 ** (bits + 1))


# group axioms

def _axioms(a: PLMap, b: PLMap, c: PLMap, checks: Checks, suffix: str) -> None:
    e = PLMap.identity(a.dim)
    checks['identity' + suffix] &= equals(compose(a, e), a) and equals(compose(e, a), a)
    checks['inverse' + suffix] &= equals(compose(inverse(a), a), e)
    checks['associativity' + suffix] &= equals(compose(compose(a, b), c),
                                               compose(a, compose(b, c)))


def verifyGroupAxioms(seed: int, triples: int = GROUP_AXIOM_TRIPLES) -> Checks:
    rng = np.random.default_rng(seed)
    checks = {name + suffix: True
              for name in ('identity', 'inverse', 'associativity') for suffix in ('_1d', '_2d')}
    for _i in range(triples):
        a, b, c = (constructors.random_pl1d(rng, nodes=3) for _j in range(3))
        _axioms(a, b, c, checks, '_1d')
        a, b, c = (constructors.random_pl2d(rng) for _j in range(3))
        _axioms(a, b, c, checks, '_2d')
    return checks


# the twist

def verifyTwist(seed: int, samples: int = TWIST_RANDOM_POINTS) -> Checks:
    spec = constructors.TwistSpec(Fraction(1, 2), Fraction(1, 12))
    h = constructors.twist_root(spec)
    h6 = constructors.twist_power(spec, 6)
    h12 = constructors.twist_power(spec, 12)
    half = Fraction(1, 2)
    rng = np.random.default_rng(seed)
    vertices = {v for s, _m in h.cells for v in s.vertices}
    inner: List[RatPoint] = sorted(v for v in vertices if supNorm(v) <= half)
    inner += [(_dyadic(rng, -half, half), _dyadic(rng, -half, half)) for _i in range(samples)]
    boundary = sorted(v for v in vertices if onCubeBoundary(v))
    return {
        'valid': validate(h).passed,
        'unit_determinants': all(m.det() == 1 for _s, m in h.cells),
        'half_turn_inside': all(apply(h6, p) == (-p[0], -p[1]) for p in inner),
        'identity_inside': all(apply(h12, p) == p for p in inner),
        'identity_on_boundary': all(apply(h12, p) == p for p in boundary),
        'not_identity': not h12.isIdentity()
    }


def verifyKlein() -> Checks:
    f, g = constructors.figure2_g()
    return {
        'relation': equals(compose(compose(inverse(f), g), f), inverse(g)),
        'g_nontrivial': not g.isIdentity()
    }


def verifySuspension(seed: int, pairs: int = SUSPENSION_PAIRS) -> Checks:
    rng = np.random.default_rng(seed)
    checks = {'homomorphism': True, 'injective': True}
    for _i in range(pairs):
        a, b = constructors.random_pl1d(rng), constructors.random_pl1d(rng)
        sa, sb = constructors.suspend(a), constructors.suspend(b)
        checks['homomorphism'] &= equals(constructors.suspend(compose(a, b)), compose(sa, sb))
        checks['injective'] &= equals(sa, sb) == equals(a, b)
        checks['injective'] &= sa.isIdentity() == a.isIdentity()
    h = constructors.twist_root(constructors.FIGURE2_SPEC)
    sh = constructors.suspend(h)
    checks['homomorphism_3d'] = equals(constructors.suspend(compose(h, h)), compose(sh, sh))
    checks['injective_3d'] = not sh.isIdentity()
    return checks


# distortion

def embeddedShear() -> PLMap:
    return constructors.linear_near_zero(((1, 1), (0, 1)), Fraction(1, 4))


def verifyDistortion(seed: int, jobs: Optional[int] = None) -> Checks:
    rng = np.random.default_rng(seed)
    h = constructors.twist_root(constructors.FIGURE2_SPEC)
    square = distortion.verify_bounds([h, embeddedShear()], 4, jobs)
    interval = distortion.verify_bounds(
        [constructors.random_pl1d(rng), constructors.random_pl1d(rng)], 6, jobs)
    growth = distortion.power_growth(h, 30)
    return {
        'square_bounds': square.passed,
        'interval_bounds': interval.passed,
        'linear_D': growth.C >= Fraction(4, 3),
        'cells_at_least_n': all(p.cell_count >= p.n for p in growth.series)
    }


def verifyUndistorted(jobs: Optional[int] = None) -> Checks:
    f = constructors.pl1d(constructors.BreakpointSpec(((-1, -1), (0, Fraction(1, 2)), (1, 1))))
    growth = distortion.power_growth(f, 50)
    ball = distortion.word_ball([f], 6, jobs)
    lengths = [ball.find(power(f, n)) for n in range(1, 7)]
    return {
        'breakpoints_n': all(p.breakpoints == p.n for p in growth.series),
        'word_length_n': all(w is not None and len(w) == n for n, w in enumerate(lengths, 1))
    }


# orders

def verifyOrderAxioms(seed: int, maps: int = ORDER_MAPS, triples: int = ORDER_TRIPLES) -> Checks:
    rng = np.random.default_rng(seed)
    checks = {'trichotomy': True, 'cone_closure': True, 'conjugation': True,
              'transitivity': True}
    sample = [constructors.random_pl1d(rng, nodes=3) for _i in range(maps)]
    for f, g in zip(sample, sample[1:] + sample[:1]):
        s = orders.onedim_sign(f)
        checks['trichotomy'] &= (s == orders.OrderSign.ZERO) == f.isIdentity()
        checks['trichotomy'] &= orders.onedim_sign(inverse(f)) == -s
        if s == orders.OrderSign.POSITIVE and orders.onedim_sign(g) == orders.OrderSign.POSITIVE:
            checks['cone_closure'] &= orders.onedim_sign(compose(f, g)) == s
        checks['conjugation'] &= orders.onedim_sign(compose(compose(g, f), inverse(g))) == s
    less = orders.Comparison.LESS
    for _i in range(triples):
        triple = [constructors.random_pl1d(rng, nodes=3) for _j in range(3)]
        for a, b, c in itertools.permutations(triple):
            if orders.onedim_compare(a, b) == less and orders.onedim_compare(b, c) == less:
                checks['transitivity'] &= orders.onedim_compare(a, c) == less
    return checks


def _randomRay(rng: np.random.Generator) -> orders.Ray:
    while True:
        v = [int(k) for k in rng.integers(-8, 9, size=2)]
        if v != [0, 0]:
            return orders.Ray.of(v)


def cocycleFailures(seed: int, samples: int) -> int:
    '''Number of random distinct ray quadruples failing the cocycle condition.'''
    rng = np.random.default_rng(seed)
    failures = 0
    done = 0
    while done < samples:
        q = [_randomRay(rng) for _i in range(4)]
        if len(set(q)) < 4:
            continue
        done += 1
        if not orders.cocycle_check(orders.ray_circular_order, q):
            failures += 1
    return failures


def invarianceFailures(seed: int, samples: int) -> int:
    '''Number of random matrices of positive determinant changing the circular
    order of a random triple of rays.'''
    rng = np.random.default_rng(seed)
    failures = 0
    done = 0
    while done < samples:
        m = tuple(tuple(Fraction(int(k)) for k in row) for row in rng.integers(-6, 7, size=(2, 2)))
        if determinant(m) <= 0:
            continue
        done += 1
        r = [_randomRay(rng) for _i in range(3)]
        moved = [orders.Ray.of((m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]))
                 for v in (x.vector() for x in r)]
        if orders.ray_circular_order(*r) != orders.ray_circular_order(*moved):
            failures += 1
    return failures


def verifyCircularOrder(seed: int, quadruples: int = COCYCLE_QUADRUPLES,
                        matrices: int = INVARIANCE_MATRICES) -> Checks:
    return {
        'cocycle': cocycleFailures(seed, quadruples) == 0,
        'invariance': invarianceFailures(seed, matrices) == 0
    }


# braids

def cocycleSamples(seed: int, pairs: List[tuple], samples: int,
                   strands: int = BRAID_STRANDS) -> Dict[str, int]:
    '''Checks gamma(g k; x) = gamma(k; x) gamma(g; k(x)) on seeded samples,
    spread evenly over the pairs (g, k).  Returns the counts of agreeing,
    failing and degenerate samples.'''
    bases = braid.basepointsFor(strands)
    counts = {'agree': 0, 'fail': 0, 'degenerate': 0}
    for p, (g, k) in enumerate(pairs):
        gk = compose(g, k)
        for index in range(p, samples, len(pairs)):
            x = braid.samplePoints(seed, index, 0, strands)
            kx = [apply(k, y) for y in x]
            try:
                whole = braid.braid_word(gk, bases, x)
                first = braid.braid_word(k, bases, x)
                second = braid.braid_word(g, bases, kx)
            except DegeneracyError as e:
                utils.logDebug(f'cocycle sample {index} is degenerate: {e.msg}')
                counts['degenerate'] += 1
                continue
            counts['agree' if braidEquals(whole, first * second) else 'fail'] += 1
    return counts


def braidPairs() -> List[tuple]:
    spec = constructors.FIGURE2_SPEC
    h = constructors.twist_root(spec)
    embedded = constructors.embed_support(h, constructors.FIGURE2_LEFT)
    return [(h, constructors.twist_power(spec, 6)), (embedded, h),
            (constructors.twist_power(spec, 3), embedded)]


def verifyBraidCocycle(seed: int, samples: int = BRAID_SAMPLES) -> Checks:
    counts = cocycleSamples(seed, braidPairs(), samples)
    return {
        'cocycle': counts['fail'] == 0 and counts['agree'] > 0,
        'degeneracy_below_5_percent': 20 * counts['degenerate'] < samples
    }


def verifyPhi(seed: int, samples: int = PHI_SAMPLES, grid: int = PHI_GRID,
              jobs: Optional[int] = None) -> Checks:
    spec = QuasimorphismSpec('pair_linking', 2)
    twist = constructors.FIGURE2_SPEC
    g = constructors.twist_power(twist, 12)
    g2 = constructors.twist_power(twist, 24)
    zero = braid.phi_estimate(PLMap.identity(2), spec, 2, samples, seed, jobs)
    estimate = braid.phi_estimate(g, spec, 2, samples, seed, jobs)
    oracle = braid.phi_grid_oracle(g, spec, 2, grid, jobs)
    doubled = braid.phi_estimate(g2, spec, 2, samples, seed, jobs)
    return {
        'identity_zero': zero.estimate == 0,
        'oracle_agreement': braid.agrees(estimate, oracle),
        'power_linearity': braid.agrees(doubled, estimate.scaled(2))
    }


# witnesses and serialization

def verifyWitness(seed: int, subgroups: int = WITNESS_SUBGROUPS) -> Checks:
    rng = np.random.default_rng(seed)
    nontrivial = True
    made = 0
    while made < subgroups:
        if made % 2:
            f = constructors.random_pl2d(rng)
        else:
            f = constructors.random_pl1d(rng, nodes=3)
        if f.isIdentity():
            continue
        made += 1
        nontrivial &= invariants.indicability_witness([f]).nontrivial
    w = invariants.indicability_witness([constructors.twist_root(constructors.FIGURE2_SPEC)])
    return {
        'nontrivial': nontrivial,
        'twist_germ': w.per_generator == [((Fraction(-2, 3),), ONE)],
        'twist_right_edge': w.point[0] == ONE and w.dividing_plane == ((-ONE, ZERO), -ONE)
    }


def verifySerialization(seed: int, maps: int = SERIALIZED_MAPS) -> Checks:
    rng = np.random.default_rng(seed)
    exact = True
    for i in range(maps):
        f = constructors.random_pl2d(rng) if i % 2 else constructors.random_pl1d(rng, nodes=4)
        text = serialization.serialize_map(f)
        back = serialization.parse_map(text)
        exact &= serialization.serialize_map(back) == text and back == f
        exact &= json.loads(text) == serialization.mapToJson(f)
    return {'round_trip': exact}


def suites(seed: int, jobs: Optional[int] = None, samples: int = PHI_SAMPLES,
           grid: int = PHI_GRID) -> Dict[str, Callable[[], Checks]]:
    return {
        'group-axioms': lambda: verifyGroupAxioms(seed),
        'twist': lambda: verifyTwist(seed),
        'klein-relation': verifyKlein,
        'suspension': lambda: verifySuspension(seed),
        'distortion': lambda: verifyDistortion(seed, jobs),
        'undistorted': lambda: verifyUndistorted(jobs),
        'order-axioms': lambda: verifyOrderAxioms(seed),
        'circular-order': lambda: verifyCircularOrder(seed),
        'braid-cocycle': lambda: verifyBraidCocycle(seed),
        'phi': lambda: verifyPhi(seed, samples, grid, jobs),
        'witness': lambda: verifyWitness(seed),
        'serialization': lambda: verifySerialization(seed)
    }
