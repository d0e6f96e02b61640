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

# Braid words on n strands and their comparison through Artin's action of B_n
# on the free group F_n, which is faithful.  Free group arithmetic is done by
# sympy; its generators are named x1, ..., xn.

import functools

from dataclasses import dataclass
from gettext import gettext as _
from typing import Dict, List, Sequence, Tuple

from sympy.combinatorics.free_groups import FreeGroupElement, free_group

from plcube.errors import ArityError, SpecError

Letter = Tuple[int, int]
FreeWord = Tuple[Tuple[int, int], ...]


@functools.lru_cache(maxsize=None)
def freeGroup(n: int) -> tuple:
    '''The free group of rank n followed by its generators x1, ..., xn.'''
    return free_group(','.join(f'x{k}' for k in range(1, n + 1)))


def freeElement(letters: Sequence[Letter]) -> FreeGroupElement:
    group, *x = freeGroup(max(i for i, _e in letters))
    w = group.identity
    for i, e in letters:
        w = w * x[i - 1] ** e
    return w


def freeLetters(w: FreeGroupElement) -> FreeWord:
    '''Spells a free group element as letters (i, +-1).'''
    out: List[Letter] = []
    for symbol, p in w.array_form:
        out += [(int(str(symbol)[1:]), 1 if p > 0 else -1)] * abs(p)
    return tuple(out)


def freeReduce(letters: Sequence[Tuple[int, int]]) -> Tuple[Tuple[int, int], ...]:
    '''Cancels adjacent (i, e)(i, -e) pairs until none remain.'''
    if len(letters) < 2:
        return tuple(tuple(x) for x in letters)
    return freeLetters(freeElement(letters))


@dataclass(frozen=True)
class BraidWord:
    '''letters are (i, sign) for sigma_i^sign, 1 <= i < strands.'''
    strands: int
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, 'letters', tuple(tuple(x) for x in self.letters))
        if self.strands < 1:
            raise SpecError(_('A braid needs at least one strand'))
        for i, e in self.letters:
            if not (1 <= i < self.strands) or e not in (1, -1):
                raise SpecError(_('Invalid braid letter ({i}, {e}) on {n} strands').format(
                    i=i, e=e, n=self.strands))

    def __mul__(self, other: 'BraidWord') -> 'BraidWord':
        if self.strands != other.strands:
            raise ArityError(_('Cannot multiply braids on {a} and {b} strands').format(
                a=self.strands, b=other.strands))
        return BraidWord(self.strands, self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def reduced(self) -> 'BraidWord':
        return BraidWord(self.strands, freeReduce(self.letters))

    def inverse(self) -> 'BraidWord':
        return BraidWord(self.strands, tuple((i, -e) for i, e in reversed(self.letters)))

    def exponentSum(self) -> int:
        return sum(e for _i, e in self.letters)

    def permutation(self) -> Tuple[int, ...]:
        '''Strand found at each position after the braid, strands numbered from 1.'''
        order = list(range(1, self.strands + 1))
        for i, _e in self.letters:
            order[i - 1], order[i] = order[i], order[i - 1]
        return tuple(order)


def _substitute(word: FreeGroupElement, letter: Letter,
                x: Sequence[FreeGroupElement]) -> FreeGroupElement:
    '''Applies the automorphism of sigma_i^e to a free group element.'''
    i, e = letter
    a, b = x[i - 1], x[i]
    images: Dict[int, FreeGroupElement]
    if e == 1:
        images = {i: a * b * a ** -1, i + 1: a}
    else:
        images = {i: b, i + 1: b ** -1 * a * b}
    out = word.group.identity
    for symbol, p in word.array_form:
        k = int(str(symbol)[1:])
        out = out * images.get(k, x[k - 1]) ** p
    return out


def _artinElements(w: BraidWord) -> Tuple[FreeGroupElement, ...]:
    _group, *x = freeGroup(w.strands)
    images = []
    for word in x:
        for letter in reversed(w.letters):
            word = _substitute(word, letter, x)
        images.append(word)
    return tuple(images)


def artinImage(w: BraidWord) -> Tuple[FreeWord, ...]:
    '''Images of the free generators x_1, ..., x_n under the automorphism of w.'''
    return tuple(freeLetters(image) for image in _artinElements(w))


def braidEquals(a: BraidWord, b: BraidWord) -> bool:
    if a.strands != b.strands:
        return False
    if a.reduced().letters == b.reduced().letters:
        return True
    return _artinElements(a) == _artinElements(b)
