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

import json
import os
import sys

from gettext import gettext as _
from typing import Any, Dict

from plcube import commands, constants, utils
from plcube.resources import theResources

import gi  # type: ignore
gi.require_version('Gio', '2.0')
from gi.repository import Gio, GLib  # type: ignore # noqa: E402


class PlcubeApplication(Gio.Application):
    """The command line application."""

    def __init__(self, sysconfigdir: str):
        super().__init__(
            application_id=constants.APP_ID,
            flags=Gio.ApplicationFlags.HANDLES_COMMAND_LINE | Gio.ApplicationFlags.NON_UNIQUE)

        self.sysconfigdir = sysconfigdir

        self.add_main_option(
            'version',
            ord('v'),
            GLib.OptionFlags.NONE,
            GLib.OptionArg.NONE,
            _('Display version and copyright information'),
            None,
        )
        self.add_main_option(
            'no-rcfile',
            0,
            GLib.OptionFlags.NONE,
            GLib.OptionArg.NONE,
            _('Do not read any resource files'),
            None,
        )
        self.add_main_option(
            'rcfile',
            0,
            GLib.OptionFlags.NONE,
            GLib.OptionArg.STRING,
            _('Specify explicit resource file'),
            _('file'),
        )
        self.add_main_option(
            'out',
            ord('o'),
            GLib.OptionFlags.NONE,
            GLib.OptionArg.STRING,
            _('Write the JSON result to a file instead of standard output'),
            _('file'),
        )
        self.add_main_option(
            'seed',
            0,
            GLib.OptionFlags.NONE,
            GLib.OptionArg.INT,
            _('Seed of the random sampling'),
            _('seed'),
        )
        self.add_main_option(
            'jobs',
            ord('j'),
            GLib.OptionFlags.NONE,
            GLib.OptionArg.INT,
            _('Number of worker processes'),
            _('count'),
        )
        self.add_main_option(
            'inner',
            0,
            GLib.OptionFlags.NONE,
            GLib.OptionArg.STRING,
            _('Half width of the rigidly rotated square of a twist'),
            _('rational'),
        )
        self.add_main_option(
            'fraction',
            0,
            GLib.OptionFlags.NONE,
            GLib.OptionArg.STRING,
            _('Fraction of a full turn of the inner square'),
            _('rational'),
        )
        self.add_main_option(
            'power',
            0,
            GLib.OptionFlags.NONE,
            GLib.OptionArg.INT,
            _('Power of the constructed twist'),
            _('k'),
        )
        self.add_main_option(
            'mu',
            0,
            GLib.OptionFlags.NONE,
            GLib.OptionArg.STRING,
            _('Braid group function to average'),
            _('kind'),
        )
        self.add_main_option(
            'strands',
            ord('n'),
            GLib.OptionFlags.NONE,
            GLib.OptionArg.INT,
            _('Number of strands'),
            _('count'),
        )
        self.add_main_option(
            'samples',
            0,
            GLib.OptionFlags.NONE,
            GLib.OptionArg.INT,
            _('Number of random samples'),
            _('count'),
        )
        self.add_main_option(
            'grid',
            0,
            GLib.OptionFlags.NONE,
            GLib.OptionArg.INT,
            _('Resolution of the deterministic sampling grid'),
            _('count'),
        )
        self.add_main_option(
            'radius',
            ord('r'),
            GLib.OptionFlags.NONE,
            GLib.OptionArg.INT,
            _('Word length radius'),
            _('count'),
        )
        self.add_main_option(
            'n-max',
            0,
            GLib.OptionFlags.NONE,
            GLib.OptionArg.INT,
            _('Largest power'),
            _('count'),
        )
        self.add_main_option(
            'csv',
            0,
            GLib.OptionFlags.NONE,
            GLib.OptionArg.STRING,
            _('Also write the growth series as CSV'),
            _('file'),
        )

    def loadResources(self, options: Dict[str, Any]) -> None:
        # find the config directory and create it if it didn't exist
        rc_dir = os.environ.get('XDG_CONFIG_HOME', None)
        subdirs = ['plcube']
        if rc_dir is None:
            rc_dir = os.path.expanduser('~')
            subdirs.insert(0, '.config')
        rc_dir = utils.make_subdirs(rc_dir, subdirs)

        rc_files = []
        if 'no-rcfile' not in options:
            # parse system wide then personal initialization files
            for rc_file in (os.path.join(self.sysconfigdir, 'plcuberc'),
                            os.path.join(rc_dir, 'plcuberc')):
                if os.path.isfile(rc_file):
                    rc_files.append(rc_file)
        if 'rcfile' in options:
            rc_files.append(options['rcfile'])
        for rc_file in rc_files:
            rc_file = os.path.abspath(rc_file)
            try:
                theResources.parse(rc_file)
            except IOError:
                utils.logError(_('Error reading %s.') % (rc_file,))

    def do_command_line(self, command_line):
        """Called to treat the command line options."""
        options = command_line.get_options_dict()
        # convert GVariantDict -> GVariant -> dict
        options = options.end().unpack()

        if 'version' in options:
            print('%s %s\n%s' % (constants.APP_NAME, constants.VERSION, constants.COPYRIGHT))
            return 0

        self.loadResources(options)

        args = [a for a in command_line.get_arguments()[1:] if a != '--']
        utils.logDebug(f'running {" ".join(args)}')
        result = commands.run(args, options, sys.stdin)

        text = json.dumps(result.payload, indent=2) + '\n'
        if 'out' in options:
            try:
                with open(options['out'], 'w', encoding='utf-8') as fd:
                    fd.write(text)
            except IOError:
                utils.logError(_('Error writing %s.') % (options['out'],))
                return 2
        else:
            sys.stdout.write(text)
        if result.summary:
            print(result.summary, file=sys.stderr)
        return result.status


def main(version: str, sysconfigdir: str) -> int:
    """The application's entry point."""
    constants.VERSION = version

    app = PlcubeApplication(sysconfigdir)
    return app.run(sys.argv)
