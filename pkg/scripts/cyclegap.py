#! /usr/bin/env python3
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

"""
    Cycle Gap
    ~~~~~~~~~

    Command line surface:

        gen     sample an arcmod/cyclemod chain, print it as JSON
        gap     absolute spectral gap of a chain
        verify  property suites, one JSON line per check
        sweep   gap sweep over n, CSV + SVG artifacts
        plot    render a series CSV

    Exit codes: 0 ok, 1 invalid input, 2 numerical failure or failed check,
    3 I/O error.
"""

import getopt
import os
import sys
import time
from typing import Optional, List, Dict

from dimples.utils import Path

path = Path.abs(path=__file__)
path = Path.dir(path=path)
path = Path.dir(path=path)
Path.add(path=path)

from libs.utils import Log
from libs.utils import json_encode, json_decode
from libs.utils import create_rng, round12
from libs.utils import Settings, DENSE_LIMIT_ENV

from libs.markov import ValidationError, NumericalError
from libs.markov import InvalidParameter, SizeLimitExceeded
from libs.markov import InterconnectKind, parse_kind, build_interconnect
from libs.markov import CondensedChain, sample_arcmod, sample_cyclemod, expand, symmetrize
from libs.markov import eigenvalues_dense, absolute_spectral_gap, gap_iterative

from libs.experiments import ExperimentConfig
from libs.experiments import run_sweep, quartiles, fit_slope
from libs.experiments import PlotMode
from libs.experiments import emit_records_csv, emit_series_csv, load_records_csv, load_series_csv, emit_plot
from libs.experiments import run_suite

from scripts.shared import create_settings, show_help, command_names
from scripts.shared import parse_int, parse_float


APP_NAME = 'Cycle Gap'

DEFAULT_SETTINGS = os.path.join(path, 'etc', 'config.ini')

ZERO_GAP = 1e-12

_COMMON_OPTS = ['help', 'settings=', 'verbose']
_GENERATION_OPTS = ['model=', 'n=', 'L=', 'k=', 'kind=', 'seed=']

LONG_OPTS = {
    'gen': _GENERATION_OPTS + ['out='],
    'gap': _GENERATION_OPTS + ['in=', 'symmetrized', 'iterative', 'spectrum-out=', 'matrix-out='],
    'verify': ['suite=', 'seed=', 'trials='],
    'sweep': ['config=', 'full', 'workers=', 'out-dir=', 'seed=', 'symmetrized', 'resume'],
    'plot': ['in=', 'mode=', 'out='],
}


def emit(info: Dict):
    """ one JSON object per line on stdout """
    print(json_encode(obj=info))


def _seed(options: Dict[str, str]) -> int:
    value = options.get('--seed')
    if value is not None:
        return parse_int(value=value, option='--seed')
    seed = int(create_rng().integers(0, 2 ** 63 - 1))
    Log.info(msg='no --seed given, drawn: %d' % seed)
    return seed


def generate_chain(options: Dict[str, str]) -> CondensedChain:
    model = options.get('--model', 'cyclemod')
    if model not in ('arcmod', 'cyclemod'):
        raise InvalidParameter('--model must be arcmod or cyclemod: %s' % model)
    if '--k' not in options:
        raise InvalidParameter('--k is required')
    k = parse_int(value=options['--k'], option='--k')
    kind, degree = parse_kind(text=options.get('--kind', 'complete'))
    if kind == InterconnectKind.CUSTOM:
        raise InvalidParameter('custom interconnects can only be read with --in')
    if model == 'arcmod':
        if '--n' in options:
            raise InvalidParameter('--n is for cyclemod, arcmod takes --L')
        if '--L' not in options:
            raise InvalidParameter('arcmod needs --L')
        L = parse_float(value=options['--L'], option='--L')
    else:
        if '--L' in options:
            raise InvalidParameter('--L is for arcmod, cyclemod takes --n')
        if '--n' not in options:
            raise InvalidParameter('cyclemod needs --n')
        n = parse_int(value=options['--n'], option='--n')
    seed = _seed(options=options)
    rng = create_rng(seed=seed)
    interconnect = build_interconnect(kind=kind, k=k, rng=rng, degree=degree)
    if model == 'arcmod':
        return sample_arcmod(L=L, k=k, interconnect=interconnect, rng=rng)
    return sample_cyclemod(n=n, k=k, interconnect=interconnect, rng=rng)


def read_chain(file: str) -> CondensedChain:
    with open(file, 'r', encoding='utf-8') as handle:
        text = handle.read()
    info = json_decode(string=text)
    if not isinstance(info, Dict):
        raise InvalidParameter('chain JSON must be an object: %s' % file)
    return CondensedChain.from_dict(info=info)


#
#   Commands
#


def cmd_gen(options: Dict[str, str], settings: Settings) -> int:
    chain = generate_chain(options=options)
    text = json_encode(obj=chain.to_dict())
    out = options.get('--out')
    if out is None:
        print(text)
    else:
        with open(out, 'w', encoding='utf-8') as handle:
            handle.write(text)
            handle.write('\n')
        Log.info(msg='chain written: %s' % out)
    return 0


def cmd_gap(options: Dict[str, str], settings: Settings) -> int:
    if '--in' in options:
        if any(flag in options for flag in ['--model', '--n', '--L', '--k', '--kind']):
            raise InvalidParameter('--in cannot be combined with generation options')
        chain = read_chain(file=options['--in'])
    else:
        chain = generate_chain(options=options)
    symmetrized = '--symmetrized' in options
    iterative = '--iterative' in options
    if iterative and '--spectrum-out' in options:
        raise InvalidParameter('--spectrum-out needs the dense solver')
    stochastic = expand(chain=chain)
    if symmetrized:
        stochastic = symmetrize(stochastic=stochastic)
    if '--matrix-out' in options:
        stochastic.write_matrix_market(path=options['--matrix-out'])
    start = time.perf_counter()
    if iterative:
        rng = create_rng(seed=parse_int(value=options.get('--seed', '0'), option='--seed'))
        gap = gap_iterative(stochastic=stochastic, rng=rng, tolerance=settings.arnoldi_tolerance)
        second = 1.0 - gap
    else:
        spectrum = eigenvalues_dense(stochastic=stochastic, dense_limit=settings.dense_limit)
        gap = absolute_spectral_gap(spectrum=spectrum)
        second = spectrum.second_modulus
        if '--spectrum-out' in options:
            spectrum.to_csv(path=options['--spectrum-out'])
    wall_time = time.perf_counter() - start
    report = {
        'gap': round12(gap),
        'second_modulus': round12(second),
        'N': stochastic.size,
        'k': chain.k,
        'symmetrized': symmetrized,
        'wall_time': round12(wall_time),
    }
    if gap <= ZERO_GAP:
        Log.warning(msg='zero gap: the chain is periodic or reducible (N=%d)' % stochastic.size)
        report['warning'] = 'zero gap: periodic or reducible chain'
    emit(info=report)
    return 0


def cmd_verify(options: Dict[str, str], settings: Settings) -> int:
    suite = options.get('--suite', 'all')
    seed = parse_int(value=options.get('--seed', '0'), option='--seed')
    trials = options.get('--trials')
    if trials is not None:
        trials = parse_int(value=trials, option='--trials')
        if trials < 1:
            raise InvalidParameter('--trials must be positive: %d' % trials)
    reports = run_suite(name=suite, seed=seed, trials=trials, constants=settings.theory_constants)
    failed = 0
    for item in reports:
        print(item.to_json())
        if item.failed:
            failed += 1
    if failed > 0:
        Log.error(msg='%d check(s) failed in suite "%s"' % (failed, suite))
        return 2
    Log.info(msg='suite "%s": %d check(s) passed or not applicable' % (suite, len(reports)))
    return 0


def cmd_sweep(options: Dict[str, str], settings: Settings) -> int:
    if '--config' in options:
        config = ExperimentConfig.from_json(path=options['--config'])
    elif '--full' in options:
        config = ExperimentConfig.full_scale()
    else:
        config = ExperimentConfig.desk_scale()
    if '--seed' in options:
        config.base_seed = parse_int(value=options['--seed'], option='--seed')
    if '--symmetrized' in options or settings.symmetrized:
        config.symmetrized = True
    if os.environ.get(DENSE_LIMIT_ENV):
        config.dense_limit = settings.dense_limit
    largest = max(config.n_values)
    if largest > config.dense_limit:
        raise SizeLimitExceeded('n=%d exceeds the dense limit %d' % (largest, config.dense_limit))
    workers = settings.workers
    if '--workers' in options:
        workers = parse_int(value=options['--workers'], option='--workers')
        if workers < 1:
            raise InvalidParameter('--workers must be positive: %d' % workers)
    out_dir = options.get('--out-dir', settings.out_dir)
    os.makedirs(out_dir, exist_ok=True)
    records_csv = os.path.join(out_dir, 'records.csv')
    previous = None
    if '--resume' in options and os.path.exists(records_csv):
        previous = load_records_csv(path=records_csv)
    result = run_sweep(config=config, workers=workers, previous=previous)
    emit_records_csv(records=result.records, path=records_csv)
    with open(os.path.join(out_dir, 'config.json'), 'w', encoding='utf-8') as handle:
        handle.write(json_encode(obj=config.to_dict()))
        handle.write('\n')
    series = quartiles(records=result.records)
    emit_series_csv(series=series, path=os.path.join(out_dir, 'series.csv'))
    emit_plot(series=series, mode=PlotMode.LOG_LOG, path=os.path.join(out_dir, 'loglog.svg'))
    emit_plot(series=series, mode=PlotMode.COMPENSATED, path=os.path.join(out_dir, 'compensated.svg'))
    slopes = {}
    for kind in series.kinds:
        rows = series.rows_for(kind=kind)
        if len(rows) < 4:
            continue
        if any(row.median <= 0 for row in rows):
            Log.warning(msg='zero median gap in kind %s, no slope' % kind.value)
            continue
        slope, _ = fit_slope(series=series, kind=kind)
        slopes[kind.value] = round12(slope)
    summary = result.summary()
    summary['base_seed'] = config.base_seed
    summary['slopes'] = slopes
    summary['out_dir'] = out_dir
    emit(info=summary)
    return 0


def cmd_plot(options: Dict[str, str], settings: Settings) -> int:
    if '--in' not in options or '--out' not in options:
        raise InvalidParameter('plot needs --in <series csv> and --out <svg>')
    mode = PlotMode.parse(text=options.get('--mode', PlotMode.LOG_LOG.value))
    series = load_series_csv(path=options['--in'])
    emit_plot(series=series, mode=mode, path=options['--out'])
    Log.info(msg='plot written: %s' % options['--out'])
    return 0


HANDLERS = {
    'gen': cmd_gen,
    'gap': cmd_gap,
    'verify': cmd_verify,
    'sweep': cmd_sweep,
    'plot': cmd_plot,
}


def main(argv: Optional[List[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    if len(argv) == 0 or argv[0] in ('-h', '--help'):
        show_help(app_name=APP_NAME, default_settings=DEFAULT_SETTINGS)
        return 0
    command = argv[0]
    if command not in command_names():
        show_help(app_name=APP_NAME, default_settings=DEFAULT_SETTINGS)
        print('!!! unknown command: %s' % command, file=sys.stderr)
        return 1
    try:
        opts, args = getopt.getopt(args=argv[1:], shortopts='h', longopts=LONG_OPTS[command] + _COMMON_OPTS)
    except getopt.GetoptError as error:
        print('!!! %s' % error, file=sys.stderr)
        return 1
    options = dict(opts)
    if '-h' in options or '--help' in options:
        show_help(app_name=APP_NAME, default_settings=DEFAULT_SETTINGS, command=command)
        return 0
    if len(args) > 0:
        print('!!! unexpected arguments: %s' % ' '.join(args), file=sys.stderr)
        return 1
    settings = create_settings(ini_file=options.get('--settings', DEFAULT_SETTINGS),
                               verbose='--verbose' in options)
    try:
        return HANDLERS[command](options, settings)
    except ValidationError as error:
        print('!!! invalid input: %s' % error, file=sys.stderr)
        return 1
    except NumericalError as error:
        print('!!! numerical failure: %s' % error, file=sys.stderr)
        return 2
    except OSError as error:
        print('!!! I/O error: %s' % error, file=sys.stderr)
        return 3
    except (ValueError, KeyError, TypeError) as error:
        print('!!! invalid input: %s' % error, file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
