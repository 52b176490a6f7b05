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
    Experiments
    ~~~~~~~~~~~

    Gap sweeps over n for the interconnect kinds (a)-(d), quartile stripes,
    slopes, CSV/SVG output and the verification suites.
"""

from .config import SweepKind, KRule, ExperimentConfig
from .sweep import TrialRecord, SweepResult, SweepRunner, run_trial, run_sweep
from .aggregate import QuartileRow, QuartileSeries
from .aggregate import quartiles, fit_slope, compensated_series, variation_coefficient
from .output import PlotMode, RECORD_COLUMNS
from .output import emit_records_csv, emit_series_csv, load_records_csv, load_series_csv, emit_plot
from .verify import SUITES, Verifier, run_suite, random_symmetric_stochastic


__all__ = [

    'SweepKind', 'KRule', 'ExperimentConfig',

    'TrialRecord', 'SweepResult', 'SweepRunner', 'run_trial', 'run_sweep',

    'QuartileRow', 'QuartileSeries',
    'quartiles', 'fit_slope', 'compensated_series', 'variation_coefficient',

    'PlotMode', 'RECORD_COLUMNS',
    'emit_records_csv', 'emit_series_csv', 'load_records_csv', 'load_series_csv', 'emit_plot',

    'SUITES', 'Verifier', 'run_suite', 'random_symmetric_stochastic',

]
