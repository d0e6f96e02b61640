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

from gettext import gettext as _
from typing import Callable, Dict, List

from plcube.errors import SpecError
from plcube.mu.exponent_sum import ExponentSum
from plcube.mu.mu_interface import MuInterface, QuasimorphismSpec
from plcube.mu.pair_linking import PairLinking
from plcube.mu.table import Table


class MuRegistry:
    def __init__(self) -> None:
        self._create: Dict[str, Callable[[QuasimorphismSpec], MuInterface]] = {
            'exponent_sum': ExponentSum,
            'pair_linking': PairLinking,
            'table': Table
        }

    def kinds(self) -> List[str]:
        return sorted(self._create)

    def register(self, kind: str, factory: Callable[[QuasimorphismSpec], MuInterface]) -> None:
        self._create[kind] = factory

    def create(self, spec: QuasimorphismSpec) -> MuInterface:
        try:
            factory = self._create[spec.kind]
        except KeyError:
            raise SpecError(_('Unknown quasimorphism kind "{kind}"').format(kind=spec.kind))
        return factory(spec)


theMuRegistry = MuRegistry()
