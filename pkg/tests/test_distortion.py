from fractions import Fraction

import pytest

from plcube.acceptance import embeddedShear
from plcube.constructors import FIGURE2_LEFT, FIGURE2_RIGHT, embed_support
from plcube.distortion import power_growth, radiusCap, verify_bounds, word_ball
from plcube.errors import CapExceededError, DimensionError, PreconditionError, TrivialGroupError
from plcube.plmap import PLMap, equals, power

F = Fraction


def test_ball_of_one_map(f1d):
    ball = word_ball([f1d], 3)
    assert len(ball) == 7
    assert ball.layer_sizes == [1, 2, 2, 2]
    assert ball.find(power(f1d, 2)) == (1, 1)
    assert ball.find(power(f1d, -3)) == (-1, -1, -1)
    assert ball.find(power(f1d, 4)) is None


def test_ball_words_evaluate_to_elements(f1d):
    ball = word_ball([f1d], 2)
    for f, w in zip(ball.elements, ball.words):
        assert equals(f, power(f1d, sum(1 if k > 0 else -1 for k in w)))


def test_ball_of_identity():
    ball = word_ball([PLMap.identity(1)], 5)
    assert len(ball) == 1
    assert ball.layer_sizes == [1, 0]


def test_ball_of_commuting_twists(h):
    gens = [embed_support(h, FIGURE2_LEFT), embed_support(h, FIGURE2_RIGHT)]
    ball = word_ball(gens, 2)
    assert len(ball) == 13
    assert ball.layer_sizes == [1, 4, 8]


def test_ball_errors(f1d, h):
    assert radiusCap(1) == 6
    with pytest.raises(CapExceededError):
        word_ball([f1d], 7)
    with pytest.raises(PreconditionError):
        word_ball([f1d], -1)
    with pytest.raises(PreconditionError):
        word_ball([], 1)
    with pytest.raises(DimensionError):
        word_ball([f1d, h], 1)


def test_power_growth_1d(f1d):
    report = power_growth(f1d, 5)
    assert [p.breakpoints for p in report.series] == [1, 2, 3, 4, 5]
    assert [p.D for p in report.series] == [F(3, 2) ** n for n in range(1, 6)]
    assert [p.word_length for p in report.series] == [1, 2, 3, 4, 5]
    assert report.C == F(9, 8)
    assert report.profile == [(m, m) for m in range(1, 6)]


def test_power_growth_uses_ball_lengths(f1d):
    ball = word_ball([f1d], 3)
    report = power_growth(f1d, 4, ball)
    assert [p.word_length for p in report.series] == [1, 2, 3, 4]


def test_power_growth_of_twist(h):
    report = power_growth(h, 6)
    assert [p.D for p in report.series] == [F(8, 3), F(10, 3), F(4), F(20, 3), F(22, 3), F(8)]
    assert all(p.breakpoints is None for p in report.series)
    assert report.C == F(4, 3)


def test_power_growth_errors(f1d):
    with pytest.raises(TrivialGroupError):
        power_growth(PLMap.identity(2), 3)
    with pytest.raises(PreconditionError):
        power_growth(f1d, 0)


def test_bounds_1d(f1d):
    report = verify_bounds([f1d], 3)
    assert report.passed
    assert report.elements == 7
    assert report.checked == {'D': 7, 'cell_count': 6, 'breakpoints': 7}


def test_bounds_2d(h):
    report = verify_bounds([h], 2)
    assert report.passed
    assert report.elements == 5
    assert 'breakpoints' not in report.checked


def test_bounds_of_twist_and_shear(h):
    shear = embeddedShear()
    report = verify_bounds([h, shear], 2)
    assert report.passed
    assert report.elements == len(word_ball([h, shear], 2))
    assert report.elements > 5
    assert report.checked['D'] == report.elements
    assert report.checked['cell_count'] == report.elements - 1


@pytest.mark.slow
def test_twist_powers_grow_linearly(h):
    report = power_growth(h, 30)
    assert [p.n for p in report.series] == list(range(1, 31))
    for p in report.series:
        assert p.cell_count >= p.n
        assert p.D >= F(4, 3) * p.n
    assert report.C == F(4, 3)
