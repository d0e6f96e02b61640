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

from plcube.errors import PluginMissError
from plcube.mu.mu_interface import MuInterface
from plcube.words import BraidWord


class Table(MuInterface):
    '''Values looked up by freely reduced word, for quasimorphisms known only
    on finitely many braids.'''

    def evaluate(self, w: BraidWord) -> Fraction:
        key = w.reduced().letters
        try:
            return Fraction(self.spec.table[key])
        except KeyError:
            raise PluginMissError(_('No table entry for the word {word}').format(word=list(key)))
