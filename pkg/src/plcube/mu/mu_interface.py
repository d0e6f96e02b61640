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

from abc import ABCMeta, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from gettext import gettext as _
from typing import Dict, Optional, Tuple

from plcube.errors import SpecError
from plcube.words import BraidWord, Letter


@dataclass(frozen=True)
class QuasimorphismSpec:
    '''Names a function on B_n and its defect bound.  Tables have no built-in
    defect and must declare one.'''
    kind: str
    strands: int
    defect: Optional[Fraction] = None
    pair: Optional[Tuple[int, int]] = None
    table: Dict[Tuple[Letter, ...], Fraction] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise SpecError(_('A quasimorphism needs at least one strand'))
        if self.kind == 'table' and self.defect is None:
            raise SpecError(_('Table quasimorphisms must declare a defect bound'))
        if self.defect is not None and self.defect < 0:
            raise SpecError(_('Defect bounds are non-negative'))


class MuInterface(metaclass=ABCMeta):
    """Interface for the functions on braid groups averaged by the estimator."""

    def __init__(self, spec: QuasimorphismSpec):
        self.spec = spec

    @property
    def defect(self) -> Fraction:
        """Bound on |mu(ab) - mu(a) - mu(b)|."""
        return Fraction(0) if self.spec.defect is None else self.spec.defect

    @abstractmethod
    def evaluate(self, w: BraidWord) -> Fraction:
        """Returns mu(w) for a word on spec.strands strands."""
