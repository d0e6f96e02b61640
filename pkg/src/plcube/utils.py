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

import inspect
import os
import sys
import traceback

from fractions import Fraction
from gettext import gettext as _
from typing import List, Optional, TextIO, Union

from plcube import resources

RationalLike = Union[Fraction, int, str]


def _logPrintOutput(msg: str, file: Optional[TextIO] = None) -> None:
    if resources.theResources.getOptionAsBool('log_print_output'):
        print(msg, file=file)
        if resources.theResources.getOptionAsBool('log_print_stack'):
            # Show the stack trace, but remove the past 2 calls as it is just log functions noise
            frames = inspect.stack()
            frameIdx = min(2, len(frames) - 1)
            print('Traceback (most recent call last):', file=file)
            traceback.print_stack(frames[frameIdx].frame, file=file)


def logDebug(msg: str) -> None:
    '''Report debug message.'''
    _logPrintOutput(f'DEBUG: {msg}')


def logError(msg: str) -> None:
    '''Report error message.'''
    _logPrintOutput(f'ERROR: {msg}', sys.stderr)


def make_subdirs(p: str, ss: List[str]) -> str:
    '''Create nested subdirectories and return the complete path.'''
    for s in ss:
        p = os.path.join(p, s)
        if not os.path.exists(p):
            try:
                os.mkdir(p)
            except IOError:
                pass
    return p


def readconfiglines(fd: TextIO) -> List[str]:
    return fd.read().replace('\r', '').split('\n')


def globEscape(s: str) -> str:
    '''Escape special glob characters.'''
    m = {c: f'[{c}]' for c in '[]?*'}
    return ''.join([m.get(c, c) for c in s])


def frac(value: RationalLike) -> Fraction:
    '''Converts "p/q", integer or decimal input into an exact rational.'''
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(_('Booleans are not rationals'))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(_('Value "{value}" is not a rational').format(value=value))


def fracToString(q: Fraction) -> str:
    '''Rationals are always written as reduced "p/q" with q > 0.'''
    return f'{q.numerator}/{q.denominator}'


# the PLCUBE_SEED environment variable overrides the configured default seed
def defaultSeed() -> int:
    s = os.environ.get('PLCUBE_SEED', None)
    if s is not None:
        try:
            return int(s)
        except ValueError:
            logError(_('Ignoring malformed PLCUBE_SEED "{seed}"').format(seed=s))
    return resources.theResources.getOptionAsInt('seed')
