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

from typing import Any, Optional, Tuple


class PlcubeError(Exception):
    '''Base class of every error raised by the library.'''
    def __init__(self, msg: str) -> None:
        super().__init__(msg)
        self.msg = msg


class DimensionError(PlcubeError):
    pass


class DegenerateError(PlcubeError):
    pass


class NotFoundError(PlcubeError):
    pass


class SpecError(PlcubeError):
    pass


class OrientationError(PlcubeError):
    pass


class NotFixedError(PlcubeError):
    pass


class NotAreaPreservingError(PlcubeError):
    pass


class PreconditionError(PlcubeError):
    pass


class ArityError(PlcubeError):
    pass


class PluginMissError(PlcubeError):
    pass


class CapExceededError(PlcubeError):
    pass


class TrivialGroupError(PlcubeError):
    pass


class UsageError(PlcubeError):
    pass


# raised when two strands of a traced braid are not in general position
class DegeneracyError(PlcubeError):
    def __init__(
            self,
            msg: str,
            pair: Tuple[int, int],
            interval: Optional[Tuple[Any, Any]] = None) -> None:
        super().__init__(msg)
        self.pair = pair
        self.interval = interval

    def __reduce__(self):
        return (DegeneracyError, (self.msg, self.pair, self.interval))


class SchemaError(PlcubeError):
    def __init__(self, msg: str, path: str) -> None:
        super().__init__(f'{path}: {msg}')
        self.path = path


class ValidationError(PlcubeError):
    def __init__(self, msg: str, report: Any) -> None:
        super().__init__(msg)
        self.report = report
