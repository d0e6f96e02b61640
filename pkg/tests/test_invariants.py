from fractions import Fraction

import pytest

from plcube.constructors import (
    FIGURE2_RIGHT,
    FIGURE2_SPEC,
    embed_support,
    random_pl1d,
    twist_power,
)
from plcube.errors import DimensionError, PreconditionError, TrivialGroupError
from plcube.geometry import point
from plcube.invariants import (
    breakpoints,
    cell_count,
    fixed_set,
    frontier,
    group_fixed_set,
    indicability_witness,
    matrix_norm,
    volume_check,
)
from plcube.plmap import PLMap, apply, compose, inverse, power

F = Fraction


def test_matrix_norm_identity():
    assert matrix_norm(PLMap.identity(2)) == 1


def test_matrix_norm_of_twist_powers():
    norms = [matrix_norm(twist_power(FIGURE2_SPEC, n)) for n in range(1, 7)]
    assert norms == [F(8, 3), F(10, 3), F(4), F(20, 3), F(22, 3), F(8)]
    for n in range(1, 4):
        assert norms[n + 2] - norms[n - 1] == 4


def test_breakpoints(f1d):
    assert breakpoints(f1d) == [0]
    assert breakpoints(compose(f1d, f1d)) == [F(-1, 3), 0]
    assert breakpoints(PLMap.identity(1)) == []


def test_breakpoints_need_dimension_one(h):
    with pytest.raises(DimensionError):
        breakpoints(h)


def test_cell_count(f1d):
    assert cell_count(PLMap.identity(1)) == 1
    assert cell_count(f1d) == 2


def test_cell_count_counts_simplices():
    assert cell_count(PLMap.identity(2)) == 2
    assert cell_count(PLMap.identity(1)) == 1


def test_inverse_keeps_cell_count_and_fixed_set(h, rng):
    maps = [h] + [random_pl1d(rng, nodes=3) for _i in range(10)]
    for f in maps:
        g = inverse(f)
        assert cell_count(g) == cell_count(f)
        assert fixed_set(g).pieces == fixed_set(f).pieces


def test_matrix_norm_is_submultiplicative(h, rng):
    maps = [h, power(h, 5), embed_support(h, FIGURE2_RIGHT)]
    maps += [random_pl1d(rng, nodes=3) for _i in range(8)]
    for f in maps:
        for g in maps:
            if f.dim == g.dim:
                assert matrix_norm(compose(f, g)) <= f.dim * matrix_norm(f) * matrix_norm(g)


def test_breakpoints_of_a_composition(rng):
    for _i in range(20):
        f, g = random_pl1d(rng, nodes=3), random_pl1d(rng, nodes=3)
        ginv = inverse(g)
        allowed = set(breakpoints(g)) | {apply(ginv, (b,))[0] for b in breakpoints(f)}
        assert set(breakpoints(compose(f, g))) <= allowed


def test_volume_check(h, f1d):
    assert volume_check(h).preserves
    v = volume_check(f1d)
    assert not v.preserves
    assert v.max_det == F(3, 2)
    assert v.min_det == F(1, 2)


def test_fixed_set_identity():
    fixed = fixed_set(PLMap.identity(2))
    assert fixed.measure() == 4
    assert fixed.contains(point(F(1, 3), F(-2, 7)))
    assert frontier(PLMap.identity(2)).isEmpty()


def test_fixed_set_of_twist(h):
    fixed = fixed_set(h)
    assert fixed.measure() == 0
    assert fixed.contains(point(0, 0))
    assert fixed.contains(point(1, F(1, 3)))
    assert fixed.contains(point(F(-1, 2), -1))
    assert not fixed.contains(point(F(3, 4), 0))
    assert not fixed.contains(point(F(1, 4), F(1, 4)))
    assert [s.vertices for s in fixed.piecesOfDim(0)] == [(point(0, 0),)]


def test_fixed_set_of_dehn_twist(h):
    h12 = power(h, 12)
    fixed = fixed_set(h12)
    assert fixed.measure() == 1
    fro = frontier(h12)
    assert fro.contains(point(F(1, 2), 0))
    assert fro.contains(point(1, 0))
    assert not fro.contains(point(0, 0))
    assert not fro.contains(point(F(3, 4), 0))


def test_fixed_set_1d(f1d):
    fixed = fixed_set(f1d)
    assert [s.vertices for s in fixed.pieces] == [(point(-1),), (point(1),)]
    fixed = fixed_set(PLMap.identity(1))
    assert fixed.measure() == 2


def test_group_fixed_set(h):
    report = group_fixed_set([h, embed_support(h, FIGURE2_RIGHT)])
    assert report.containment_holds
    assert report.uncovered == []
    assert report.fixed.contains(point(0, 0))
    assert report.fixed.contains(point(-1, F(1, 2)))
    assert not report.fixed.contains(point(F(1, 4), 0))
    assert report.fixed.measure() == 0


def test_group_fixed_set_errors(h, f1d):
    with pytest.raises(PreconditionError):
        group_fixed_set([])
    with pytest.raises(DimensionError):
        group_fixed_set([h, f1d])


def test_witness_for_twist(h):
    w = indicability_witness([h])
    assert w.point == point(1, 0)
    assert w.dividing_plane == (point(-1, 0), F(-1))
    assert w.side == point(-1, 0)
    assert w.per_generator == [((F(-2, 3),), F(1))]
    assert w.nontrivial


def test_witness_1d(f1d):
    w = indicability_witness([f1d])
    assert w.point == point(-1)
    assert w.side == point(1)
    assert w.per_generator == [((), F(3, 2))]
    assert w.nontrivial


def test_witness_errors():
    with pytest.raises(TrivialGroupError):
        indicability_witness([PLMap.identity(2)])
    with pytest.raises(PreconditionError):
        indicability_witness([])


def test_witness_of_random_maps(rng):
    for _i in range(10):
        f = random_pl1d(rng, nodes=3)
        if f.isIdentity():
            continue
        assert indicability_witness([f]).nontrivial
