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

from fractions import Fraction
from gettext import gettext as _

from plcube.errors import SpecError
from plcube.mu.mu_interface import MuInterface, QuasimorphismSpec
from plcube.words import BraidWord


class PairLinking(MuInterface):
    '''Half the signed number of crossings between two strands, or summed over
    all pairs of strands when no pair is given.  On pure braids this is the
    linking number of the closed strands.'''

    def __init__(self, spec: QuasimorphismSpec):
        super().__init__(spec)
        if spec.pair is not None:
            i, j = spec.pair
            if i == j or not (1 <= i <= spec.strands and 1 <= j <= spec.strands):
                raise SpecError(_('Invalid strand pair ({i}, {j})').format(i=i, j=j))

    def evaluate(self, w: BraidWord) -> Fraction:
        pair = None if self.spec.pair is None else set(self.spec.pair)
        order = list(range(1, w.strands + 1))
        total = 0
        for i, e in w.letters:
            a, b = order[i - 1], order[i]
            if pair is None or {a, b} == pair:
                total += e
            order[i - 1], order[i] = b, a
        return Fraction(total, 2)
