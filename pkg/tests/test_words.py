from fractions import Fraction

import pytest

from plcube.errors import ArityError, PluginMissError, SpecError
from plcube.mu.exponent_sum import ExponentSum
from plcube.mu.mu_interface import QuasimorphismSpec
from plcube.mu.mu_registry import MuRegistry, theMuRegistry
from plcube.words import (BraidWord, artinImage, braidEquals, freeElement, freeGroup,
                          freeLetters, freeReduce)

F = Fraction


def sigma(strands, *letters):
    return BraidWord(strands, tuple((abs(i), 1 if i > 0 else -1) for i in letters))


@pytest.mark.parametrize('strands, letters', [
    (0, ()),
    (2, ((2, 1),)),
    (3, ((1, 2),)),
    (3, ((0, 1),)),
])
def test_bad_words(strands, letters):
    with pytest.raises(SpecError):
        BraidWord(strands, letters)


def test_multiply():
    w = sigma(3, 1) * sigma(3, -2)
    assert w.letters == ((1, 1), (2, -1))
    assert len(w) == 2
    with pytest.raises(ArityError):
        sigma(2, 1) * sigma(3, 1)


def test_free_reduce():
    assert freeReduce(((1, 1), (2, 1), (2, -1), (1, -1))) == ()
    assert freeReduce(((1, 1), (1, 1), (1, -1))) == ((1, 1),)
    w = sigma(3, 1, 2, -1)
    assert (w * w.inverse()).reduced().letters == ()
    assert w.inverse().exponentSum() == -w.exponentSum()


def test_permutation():
    assert sigma(3, 1).permutation() == (2, 1, 3)
    assert sigma(3, 1, 2).permutation() == (2, 3, 1)
    assert sigma(3, 1, -1).permutation() == (1, 2, 3)


def test_artin_image_of_empty_word():
    assert artinImage(BraidWord(3)) == (((1, 1),), ((2, 1),), ((3, 1),))


def test_artin_image_of_generators():
    assert artinImage(sigma(2, 1)) == (((1, 1), (2, 1), (1, -1)), ((1, 1),))
    assert artinImage(sigma(2, -1)) == (((2, 1),), ((2, -1), (1, 1), (2, 1)))
    assert artinImage(sigma(3, 1, -1)) == artinImage(BraidWord(3))


def test_free_words_through_the_free_group():
    letters = ((1, 1), (3, -1), (3, -1), (2, 1))
    assert freeLetters(freeElement(letters)) == letters
    _group, x1, _x2, x3 = freeGroup(3)
    assert freeElement(((2, 1), (2, -1))) == freeGroup(2)[0].identity
    assert freeLetters(x1 * x3 ** -2) == ((1, 1), (3, -1), (3, -1))
    assert freeReduce(((2, -1),)) == ((2, -1),)


def test_braid_relations():
    assert braidEquals(sigma(3, 1, 2, 1), sigma(3, 2, 1, 2))
    assert braidEquals(sigma(4, 1, 3), sigma(4, 3, 1))
    assert braidEquals(sigma(3, 1, -2, 2), sigma(3, 1))
    assert not braidEquals(sigma(3, 1, 2), sigma(3, 2, 1))
    assert not braidEquals(sigma(2, 1), sigma(2, -1))
    assert not braidEquals(sigma(2, 1), sigma(3, 1))


def test_exponent_sum():
    mu = theMuRegistry.create(QuasimorphismSpec('exponent_sum', 2))
    assert mu.evaluate(sigma(2, 1, 1)) == 2
    assert mu.evaluate(sigma(2, 1, -1, -1)) == -1
    assert mu.defect == 0
    assert isinstance(mu, ExponentSum)


def test_pair_linking():
    mu = theMuRegistry.create(QuasimorphismSpec('pair_linking', 2))
    assert mu.evaluate(sigma(2, 1, 1)) == 1
    mu = theMuRegistry.create(QuasimorphismSpec('pair_linking', 3, pair=(1, 3)))
    assert mu.evaluate(sigma(3, 1, 2, 2, 1)) == 1
    assert mu.evaluate(sigma(3, 1, 1)) == 0


@pytest.mark.parametrize('pair', [(1, 1), (1, 4), (0, 2)])
def test_pair_linking_bad_pair(pair):
    with pytest.raises(SpecError):
        theMuRegistry.create(QuasimorphismSpec('pair_linking', 3, pair=pair))


def test_table():
    spec = QuasimorphismSpec('table', 3, defect=F(1), table={((1, 1),): F(1, 2)})
    mu = theMuRegistry.create(spec)
    assert mu.evaluate(sigma(3, 1, 2, -2)) == F(1, 2)
    assert mu.defect == 1
    with pytest.raises(PluginMissError):
        mu.evaluate(sigma(3, 2))


def test_spec_errors():
    with pytest.raises(SpecError):
        QuasimorphismSpec('table', 2)
    with pytest.raises(SpecError):
        QuasimorphismSpec('exponent_sum', 2, defect=F(-1))
    with pytest.raises(SpecError):
        QuasimorphismSpec('exponent_sum', 0)
    with pytest.raises(SpecError):
        theMuRegistry.create(QuasimorphismSpec('signature', 2))


def test_register():
    registry = MuRegistry()
    assert registry.kinds() == ['exponent_sum', 'pair_linking', 'table']
    registry.register('double', lambda spec: _Double(spec))
    assert registry.create(QuasimorphismSpec('double', 2)).evaluate(sigma(2, 1)) == 2
    assert 'double' not in theMuRegistry.kinds()


class _Double(ExponentSum):
    def evaluate(self, w):
        return 2 * super().evaluate(w)
