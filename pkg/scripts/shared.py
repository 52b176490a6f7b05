# -*- coding: utf-8 -*-
# ==============================================================================
# MIT License
#
# Copyright (c) 2024 cyclegap contributors
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
# ==============================================================================

import sys
from typing import Optional, List

from dimples.utils import Log

from libs.utils import Settings, GlobalVariable, DENSE_LIMIT_ENV
from libs.markov import InvalidParameter


def create_settings(ini_file: Optional[str], verbose: bool = False) -> Settings:
    """ log level first, then settings from the ini file """
    Log.LEVEL = Log.DEVELOP if verbose else Log.RELEASE
    shared = GlobalVariable()
    shared.prepare(ini_file=ini_file)
    return shared.settings


def parse_int(value: str, option: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise InvalidParameter('%s expects an integer: %s' % (option, value))


def parse_float(value: str, option: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise InvalidParameter('%s expects a number: %s' % (option, value))


#
#   Help
#


_GENERATION = [
    ('--model <arcmod|cyclemod>', 'chain model (default: cyclemod)'),
    ('--n <int>', 'cycle length, cyclemod only'),
    ('--L <real>', 'mean arc length, arcmod only'),
    ('--k <int>', 'number of arcs (required)'),
    ('--kind <complete|regular:d|bc>', 'interconnect kind (default: complete)'),
    ('--seed <int>', 'random seed (default: drawn and logged)'),
]

_COMMON = [
    ('--settings <file>', 'ini settings (default: "%s")'),
    ('--verbose', 'show debug and info logs'),
    ('--help, -h', 'show this help message and exit'),
]

_COMMANDS = {
    'gen': ('sample a chain and print it as JSON', _GENERATION + [
        ('--out <file>', 'write the chain JSON to a file instead of stdout'),
    ]),
    'gap': ('absolute spectral gap of a chain', [
        ('--in <file>', 'chain JSON written by "gen" (or use the generation options)'),
    ] + _GENERATION + [
        ('--symmetrized', 'gap of (M + M^T)/2 instead'),
        ('--iterative', 'leading eigenvalues by Arnoldi instead of the dense solver'),
        ('--spectrum-out <file>', 'write all eigenvalues as CSV (re, im, modulus)'),
        ('--matrix-out <file>', 'write the expanded matrix in Matrix Market format'),
    ]),
    'verify': ('property suites, one JSON line per check', [
        ('--suite <invariants|equivalence|lemmas|all>', 'suite to run (default: all)'),
        ('--seed <int>', 'random seed (default: 0)'),
        ('--trials <int>', 'trials per suite (default: 1000 / 200 / 10000)'),
    ]),
    'sweep': ('gap sweep over n, writes records.csv, series.csv and two SVG plots', [
        ('--config <file>', 'sweep JSON (default: desk-scale preset)'),
        ('--full', 'use the full-scale preset when no --config is given'),
        ('--workers <int>', 'worker threads (default from settings)'),
        ('--out-dir <dir>', 'output directory (default from settings)'),
        ('--seed <int>', 'override the base seed of the config'),
        ('--symmetrized', 'also record the gap of the symmetrized chain'),
        ('--resume', 'keep trials already present in <out-dir>/records.csv'),
    ]),
    'plot': ('render a series CSV as SVG', [
        ('--in <file>', 'series CSV written by "sweep" (required)'),
        ('--mode <loglog|compensated>', 'ln gap or L * gap against ln n (default: loglog)'),
        ('--out <file>', 'SVG path (required)'),
    ]),
}


def command_names() -> List[str]:
    return list(_COMMANDS.keys())


def show_help(app_name: str, default_settings: str, command: Optional[str] = None):
    cmd = sys.argv[0]
    print('')
    print('    %s' % app_name)
    print('')
    if command is None or command not in _COMMANDS:
        print('usages:')
        print('    %s <command> [options]' % cmd)
        print('    %s <command> --help' % cmd)
        print('    %s [-h|--help]' % cmd)
        print('')
        print('commands:')
        for name, (summary, _) in _COMMANDS.items():
            print('    %-12s %s' % (name, summary))
        print('')
        print('environment:')
        print('    %-12s overrides the dense eigensolver size limit' % DENSE_LIMIT_ENV)
        print('')
        print('exit codes: 0 ok, 1 invalid input, 2 numerical failure, 3 I/O error')
        print('')
        return
    summary, options = _COMMANDS[command]
    print('usages:')
    print('    %s %s [options]' % (cmd, command))
    print('')
    print('    %s' % summary)
    print('')
    print('options:')
    for flag, text in options + _COMMON:
        if '%s' in text:
            text = text % default_settings
        print('    %-46s %s' % (flag, text))
    print('')
