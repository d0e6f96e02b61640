from fractions import Fraction

import pytest

from plcube import acceptance
from plcube.braid import (
    GridOracle,
    PhiEstimate,
    TrajectoryCache,
    agrees,
    basepointsFor,
    braid_word,
    homogenize,
    mu_eval,
    phi_estimate,
    phi_grid_oracle,
    samplePoints,
    stable_estimate,
    trajectory,
)
from plcube.constructors import FIGURE2_SPEC, BreakpointSpec, pl1d, suspend, twist_power
from plcube.errors import (
    ArityError,
    DegeneracyError,
    DimensionError,
    NotAreaPreservingError,
    PreconditionError,
)
from plcube.geometry import point
from plcube.mu.mu_interface import QuasimorphismSpec
from plcube.plmap import PLMap, apply, power
from plcube.words import BraidWord

F = Fraction

EXPONENT_SUM = QuasimorphismSpec('exponent_sum', 2)
PAIR_LINKING = QuasimorphismSpec('pair_linking', 2)


@pytest.fixture(scope='module')
def half_turn(h):
    return power(h, 6)


def test_basepoints():
    assert basepointsFor(2) == [point(F(-1, 3), 0), point(F(1, 3), 0)]
    assert basepointsFor(3) == [point(F(-1, 2), 0), point(0, 0), point(F(1, 2), 0)]


def test_trajectory_ends(h, half_turn):
    x = point(F(3, 8), F(-1, 8))
    t = trajectory(h, x)
    assert t.start == x
    assert t.end == apply(h, x)
    assert t.at(F(3, 8)) == x
    t = trajectory(half_turn, point(F(-1, 4), F(-1, 16)))
    assert t.end == point(F(1, 4), F(1, 16))


def test_trajectory_outside_and_at_origin(h):
    for x in (point(0, 0), point(1, F(1, 2))):
        t = trajectory(h, x)
        assert len(t.pieces) == 1
        assert t.end == x


def test_trajectory_cache(h):
    cache = TrajectoryCache(h)
    x = point(F(1, 4), F(1, 8))
    assert cache.get(x) is cache.get(x)


def test_half_turn_braids(half_turn):
    bases = basepointsFor(2)
    w = braid_word(half_turn, bases, [(F(-1, 4), F(-1, 16)), (F(1, 4), F(1, 16))])
    assert abs(w.exponentSum()) == 2
    assert w.permutation() == (1, 2)
    w = braid_word(half_turn, bases, [(F(-1, 4), F(1, 16)), (F(1, 4), F(-1, 16))])
    assert w.exponentSum() == 0


def test_identity_braid_is_trivial():
    w = braid_word(PLMap.identity(2), basepointsFor(3),
                   [(F(1, 5), F(1, 7)), (F(-2, 3), F(1, 2)), (F(1, 9), F(-3, 4))])
    assert w == BraidWord(3)


def test_degenerate_sample():
    with pytest.raises(DegeneracyError) as e:
        braid_word(PLMap.identity(2), basepointsFor(2), [(0, F(1, 4)), (0, F(-1, 4))])
    assert e.value.pair == (1, 2)


def test_braid_word_preconditions(h, f1d):
    bases = basepointsFor(2)
    with pytest.raises(PreconditionError):
        braid_word(h, bases, [(F(1, 4), 0)])
    with pytest.raises(PreconditionError):
        braid_word(h, bases, [(F(1, 4), 0), (F(1, 4), 0)])
    with pytest.raises(PreconditionError):
        braid_word(h, [(0, 0), (0, F(1, 2))], [(F(1, 4), 0), (F(1, 5), 0)])
    with pytest.raises(DimensionError):
        braid_word(f1d, bases, [(F(1, 4),), (F(1, 5),)])


def test_mu_eval():
    assert mu_eval(EXPONENT_SUM, BraidWord(2, ((1, 1), (1, 1)))) == 2
    with pytest.raises(ArityError):
        mu_eval(QuasimorphismSpec('exponent_sum', 3), BraidWord(2, ((1, 1),)))


def test_sample_points_are_seeded():
    a = samplePoints(7, 3, 0, 2)
    assert a == samplePoints(7, 3, 0, 2)
    assert a != samplePoints(7, 3, 1, 2)
    for x in a:
        for c in x:
            assert -1 < c < 1
            assert c.denominator == 2 ** 20


def test_phi_of_identity():
    p = phi_estimate(PLMap.identity(2), EXPONENT_SUM, 2, 16, seed=1, jobs=1)
    assert p.estimate == 0
    assert p.variance == 0
    assert p.samples == 16


def test_phi_is_deterministic(h):
    a = phi_estimate(h, EXPONENT_SUM, 2, 24, seed=3, jobs=1)
    b = phi_estimate(h, EXPONENT_SUM, 2, 24, seed=3, jobs=1)
    assert a == b


@pytest.mark.slow
def test_phi_does_not_depend_on_jobs(h):
    a = phi_estimate(h, EXPONENT_SUM, 2, 24, seed=3, jobs=1)
    b = phi_estimate(h, EXPONENT_SUM, 2, 24, seed=3, jobs=2)
    assert a == b


def test_phi_errors(h):
    stretch = suspend(pl1d(BreakpointSpec(((-1, -1), (0, F(1, 2)), (1, 1)))))
    with pytest.raises(NotAreaPreservingError):
        phi_estimate(stretch, EXPONENT_SUM, 2, 4, seed=0, jobs=1)
    with pytest.raises(ArityError):
        phi_estimate(h, EXPONENT_SUM, 3, 4, seed=0, jobs=1)
    with pytest.raises(PreconditionError):
        phi_estimate(h, EXPONENT_SUM, 2, 0, seed=0, jobs=1)


def test_stderr():
    p = PhiEstimate(F(0), F(4), 4, 0)
    assert p.dispersion == 1
    assert p.stderr() == '1'


def test_grid_oracle_of_identity():
    o = phi_grid_oracle(PLMap.identity(2), EXPONENT_SUM, 2, 4)
    assert o.estimate == 0
    assert o.used + o.skipped == 256


def test_agrees():
    a = GridOracle(F(1), 10, 0, F(1, 9))
    b = GridOracle(F(2), 10, 0, F(0))
    assert agrees(a, b)
    assert not agrees(a, GridOracle(F(3), 10, 0, F(0)))


def test_homogenize():
    assert homogenize([(1, F(2)), (2, F(4)), (3, F(6))]) == 2
    assert homogenize([(1, F(1)), (3, F(2))]) == F(1, 2)
    with pytest.raises(PreconditionError):
        homogenize([(2, F(1)), (2, F(3))])


def test_stable_estimate_of_identity():
    g = PLMap.identity(2)
    assert stable_estimate(g, EXPONENT_SUM, 2, [1, 2, 3], 4, seed=0, jobs=1) == 0


def test_braids_follow_composition():
    # the loop of g o k at x is the loop of k at x followed by the loop of g at k(x)
    counts = acceptance.cocycleSamples(17, acceptance.braidPairs(), 100, strands=3)
    assert sum(counts.values()) == 100
    assert counts['fail'] == 0
    assert counts['agree'] > 0
    assert 20 * counts['degenerate'] < 100


def test_scaled():
    p = PhiEstimate(F(1, 3), F(2), 8, 1).scaled(2)
    assert p == PhiEstimate(F(2, 3), F(8), 8, 1)
    assert p.dispersion == 1


@pytest.fixture(scope='module')
def full_turn():
    return twist_power(FIGURE2_SPEC, 12)


@pytest.mark.slow
def test_grid_oracle_does_not_depend_on_jobs(full_turn):
    a = phi_grid_oracle(full_turn, PAIR_LINKING, 2, 4, jobs=1)
    b = phi_grid_oracle(full_turn, PAIR_LINKING, 2, 4, jobs=3)
    assert a == b
    assert a.used + a.skipped == 256


@pytest.mark.slow
def test_phi_matches_grid_oracle(full_turn):
    p = phi_estimate(full_turn, PAIR_LINKING, 2, 1024, seed=5, jobs=2)
    o = phi_grid_oracle(full_turn, PAIR_LINKING, 2, 16, jobs=2)
    assert p.estimate != 0
    assert agrees(p, o)


@pytest.mark.slow
def test_phi_is_linear_in_powers(full_turn):
    p = phi_estimate(full_turn, PAIR_LINKING, 2, 1024, seed=5, jobs=2)
    q = phi_estimate(twist_power(FIGURE2_SPEC, 24), PAIR_LINKING, 2, 1024, seed=5, jobs=2)
    assert agrees(q, p.scaled(2))
