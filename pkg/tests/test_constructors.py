from fractions import Fraction

import pytest

from plcube import constructors
from plcube.constructors import (
    FIGURE2_LEFT,
    FIGURE2_RIGHT,
    FIGURE2_SPEC,
    FREE_PAIR_MATRICES,
    BreakpointSpec,
    TwistSpec,
    alexander,
    embed_support,
    free_pair,
    germAtOrigin,
    linear_near_zero,
    pl1d,
    random_pl2d,
    suspend,
    twist_power,
)
from plcube.distortion import word_ball
from plcube.errors import DimensionError, OrientationError, SpecError
from plcube.geometry import identityMatrix, matInverse, matMul, point
from plcube.invariants import volume_check
from plcube.plmap import PLMap, apply, compose, equals, inverse, power, validate

F = Fraction


def test_pl1d_identity():
    assert pl1d(BreakpointSpec(((-1, -1), (1, 1)))).isIdentity()


def test_pl1d_slopes(f1d):
    assert [m.linear[0][0] for _s, m in f1d.cells] == [F(3, 2), F(1, 2)]
    assert validate(f1d).passed


@pytest.mark.parametrize('nodes', [
    ((-1, -1), (0, F(1, 2)), (F(1, 2), F(1, 4)), (1, 1)),
    ((-1, -1), (0, 0), (0, F(1, 2)), (1, 1)),
    ((-1, 0), (1, 1)),
    ((-1, -1),),
])
def test_bad_breakpoints(nodes):
    with pytest.raises(SpecError):
        BreakpointSpec(nodes)


def test_random_pl1d_is_valid(rng):
    for _i in range(10):
        assert validate(constructors.random_pl1d(rng, nodes=3)).passed


def test_alexander(f1d):
    assert alexander(f1d, 1) is f1d
    assert alexander(f1d, 0).isIdentity()
    half = alexander(f1d, F(1, 2))
    assert validate(half).passed
    assert apply(half, (F(0),)) == (F(1, 4),)
    assert apply(half, (F(3, 4),)) == (F(3, 4),)
    with pytest.raises(SpecError):
        alexander(f1d, F(3, 2))


def test_alexander_2d_support(h):
    a = alexander(h, F(1, 2))
    assert validate(a).passed
    for x in [point(F(3, 4), 0), point(F(-5, 8), F(1, 2)), point(F(1, 3), F(-9, 10))]:
        assert apply(a, x) == x
    assert apply(a, point(F(3, 8), 0)) == tuple(c / 2 for c in apply(h, point(F(3, 4), 0)))


def test_suspend(f1d):
    assert suspend(PLMap.identity(1)).isIdentity()
    assert apply(suspend(f1d), point(0, 0)) == point(F(1, 2), 0)


def test_suspension_is_a_homomorphism(rng):
    for _i in range(10):
        a, b = constructors.random_pl1d(rng), constructors.random_pl1d(rng)
        assert equals(suspend(compose(a, b)), compose(suspend(a), suspend(b)))


def test_suspension_is_injective(rng):
    for _i in range(10):
        a, b = constructors.random_pl1d(rng), constructors.random_pl1d(rng)
        assert equals(suspend(a), suspend(b)) == equals(a, b)


def test_twist_example(h):
    assert validate(h).passed
    assert apply(h, point(F(3, 4), 0)) == point(F(3, 4), F(1, 6))
    assert all(m.det() == 1 for _s, m in h.cells)
    assert volume_check(h).preserves


def test_twist_half_turn():
    h6 = twist_power(FIGURE2_SPEC, 6)
    assert apply(h6, point(F(1, 2), 0)) == point(F(-1, 2), 0)
    for x in [point(F(1, 3), F(1, 5)), point(F(-1, 4), F(1, 2)), point(0, F(-3, 7))]:
        assert apply(h6, x) == (-x[0], -x[1])


def test_twist_twelfth_power_is_a_dehn_twist():
    h12 = twist_power(FIGURE2_SPEC, 12)
    assert validate(h12).passed
    for x in [point(F(1, 2), F(1, 2)), point(F(-1, 3), F(1, 5)), point(1, F(1, 3)),
              point(F(-1, 2), -1)]:
        assert apply(h12, x) == x
    assert not h12.isIdentity()
    assert apply(h12, point(F(3, 4), 0)) != point(F(3, 4), 0)


@pytest.mark.parametrize('k', [2, 3, -1])
def test_twist_power_matches_composition(h, k):
    assert equals(twist_power(FIGURE2_SPEC, k), power(h, k))


def test_twist_power_zero():
    assert twist_power(FIGURE2_SPEC, 0).isIdentity()


def test_bad_twist_specs():
    with pytest.raises(SpecError):
        TwistSpec(F(1), F(1, 12))
    with pytest.raises(SpecError):
        TwistSpec(F(1, 2), F(0))


def test_embed_identity():
    e = embed_support(PLMap.identity(2), FIGURE2_RIGHT)
    assert validate(e).passed
    assert e.isIdentity()


def test_embed_twist(h):
    e = embed_support(h, FIGURE2_RIGHT)
    assert validate(e).passed
    assert all(m.det() == 1 for _s, m in e.cells)
    for x in [point(0, 0), point(F(1, 2), F(1, 2)), point(F(3, 8), 0), point(F(1, 4), F(1, 8))]:
        assert apply(e, x) == x
    # (3/4, 0) in the unit square sits at (11/32, 0) in the box
    assert apply(e, point(F(11, 32), 0)) == point(F(11, 32), F(1, 48))


def test_embed_errors(h, f1d):
    with pytest.raises(SpecError):
        embed_support(h, [(F(1, 2), F(3, 2)), (0, F(1, 2))])
    with pytest.raises(SpecError):
        embed_support(h, [(F(1, 2), F(1, 2)), (0, F(1, 2))])
    with pytest.raises(DimensionError):
        embed_support(f1d, FIGURE2_LEFT)


def test_embed_1d(f1d):
    e = embed_support(f1d, [(0, F(1, 2))])
    assert validate(e).passed
    assert apply(e, (F(1, 4),)) == (F(3, 8),)
    assert apply(e, (F(-1, 2),)) == (F(-1, 2),)


def test_figure2_relation(figure_pair):
    f, g = figure_pair
    assert validate(g).passed
    assert equals(compose(compose(inverse(f), g), f), inverse(g))
    assert not g.isIdentity()
    for x in [point(0, 0), point(F(1, 2), F(-1, 2)), point(0, F(1, 8)), point(F(-1, 8), 0)]:
        assert apply(g, x) == x


def test_linear_near_zero_identity():
    assert linear_near_zero([[1, 0], [0, 1]], F(1, 2)).isIdentity()


def test_linear_near_zero_shear():
    f = linear_near_zero([[1, 1], [0, 1]], F(1, 4))
    assert validate(f).passed
    assert apply(f, point(F(1, 8), F(1, 8))) == point(F(1, 4), F(1, 8))
    assert apply(f, point(1, F(1, 2))) == point(1, F(1, 2))


@pytest.mark.parametrize('m', [
    [[2, 0], [0, F(1, 2)]],
    [[0, -1], [1, 0]],
    [[-1, 0], [0, -1]],
    [[3, 5], [1, 2]],
])
def test_linear_near_zero_germ(m):
    f = linear_near_zero(m, F(1, 2))
    assert validate(f).passed
    cell = next(a for s, a in f.cells if s.contains(point(0, 0)))
    assert cell.linear == tuple(tuple(F(c) for c in row) for row in m)
    assert apply(f, point(F(1, 256), F(1, 512))) == (
        F(m[0][0]) / 256 + F(m[0][1]) / 512, F(m[1][0]) / 256 + F(m[1][1]) / 512)


def test_linear_near_zero_errors():
    with pytest.raises(OrientationError):
        linear_near_zero([[0, 1], [1, 0]], F(1, 4))
    with pytest.raises(SpecError):
        linear_near_zero([[2, 0], [0, 1]], F(1))
    with pytest.raises(DimensionError):
        linear_near_zero([[1, 0, 0], [0, 1, 0], [0, 0, 1]], F(1, 4))


def test_disjoint_twists_commute(h):
    a = embed_support(h, FIGURE2_LEFT)
    b = embed_support(inverse(h), FIGURE2_RIGHT)
    assert equals(compose(a, b), compose(b, a))
    assert not equals(compose(a, a), compose(b, b))


def _germOfWord(word):
    m = identityMatrix(2)
    for k in word:
        letter = FREE_PAIR_MATRICES[abs(k) - 1]
        m = matMul(m, letter if k > 0 else matInverse(letter))
    return m


def test_free_pair_generates_a_free_group():
    a, b = free_pair()
    assert validate(a).passed and validate(b).passed
    assert germAtOrigin(a) == FREE_PAIR_MATRICES[0]
    ball = word_ball([a, b], 2)
    assert len(ball) == 17
    assert ball.layer_sizes == [1, 4, 12]
    germs = [germAtOrigin(f) for f in ball.elements]
    assert germs == [_germOfWord(w) for w in ball.words]
    assert len(set(germs)) == 17


def test_germ_at_origin_errors(h, f1d):
    with pytest.raises(DimensionError):
        germAtOrigin(f1d)
    with pytest.raises(SpecError):
        germAtOrigin(h)


def test_random_pl2d_is_valid(rng):
    edge = point(1, F(1, 3))
    for _i in range(5):
        f = random_pl2d(rng, factors=2)
        assert validate(f).passed
        assert apply(f, edge) == edge
