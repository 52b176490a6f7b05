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
    Output
    ~~~~~~

    records.csv  n,k,kind,seed,gap,gap_sym,lambda_A,wall_time
    series.csv   n,k,kind,q1,median,q3,q1_comp,median_comp,q3_comp

    Floats are written with 12 significant digits, missing values as empty
    fields. Plots are standalone SVG files.
"""

from enum import Enum
from typing import List

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from ..utils import Log
from ..markov import EmptySeries, InvalidParameter

from .config import SweepKind
from .sweep import TrialRecord
from .aggregate import QuartileSeries


RECORD_COLUMNS = ['n', 'k', 'kind', 'seed', 'gap', 'gap_sym', 'lambda_A', 'wall_time']

FLOAT_FORMAT = '%.12g'


class PlotMode(Enum):
    LOG_LOG = 'loglog'
    COMPENSATED = 'compensated'

    @classmethod
    def parse(cls, text: str):
        for mode in cls:
            if mode.value == text:
                return mode
        raise InvalidParameter('unknown plot mode: %s' % text)


def emit_records_csv(records: List[TrialRecord], path: str):
    records = sorted(records, key=lambda item: item.sort_key)
    data = [[item.n, item.k, item.kind.value, str(item.seed), item.gap, item.gap_sym,
             item.lambda_A, item.wall_time] for item in records]
    frame = pd.DataFrame(data, columns=RECORD_COLUMNS)
    for column in ['gap', 'gap_sym', 'lambda_A', 'wall_time']:
        frame[column] = frame[column].astype(float)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep='')


def emit_series_csv(series: QuartileSeries, path: str):
    series.to_frame().to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep='')


def _optional(value):
    return None if pd.isna(value) else float(value)


def load_records_csv(path: str) -> List[TrialRecord]:
    # seeds are unsigned 64-bit, keep them out of int64 parsing
    frame = pd.read_csv(path, dtype={'seed': str, 'kind': str})
    if list(frame.columns) != RECORD_COLUMNS:
        raise InvalidParameter('not a records file: %s' % path)
    records = []
    for item in frame.itertuples(index=False):
        records.append(TrialRecord(n=int(item.n), k=int(item.k), kind=SweepKind.parse(text=item.kind),
                                   seed=int(item.seed), gap=_optional(item.gap), gap_sym=_optional(item.gap_sym),
                                   lambda_A=_optional(item.lambda_A), wall_time=float(item.wall_time)))
    return records


def load_series_csv(path: str) -> QuartileSeries:
    frame = pd.read_csv(path, dtype={'kind': str})
    if list(frame.columns) != QuartileSeries.COLUMNS:
        raise InvalidParameter('not a series file: %s' % path)
    return QuartileSeries.from_frame(frame=frame)


def emit_plot(series: QuartileSeries, mode: PlotMode, path: str):
    """
    One quartile stripe and median line per kind against ln n; a kind with a
    single grid point is drawn as a marker.
    """
    if series.is_empty():
        raise EmptySeries('cannot plot an empty series')
    # stable ids inside the SVG
    with matplotlib.rc_context({'svg.hashsalt': 'cyclegap'}):
        figure, axes = plt.subplots(figsize=(7, 5))
        try:
            for kind in series.kinds:
                rows = series.rows_for(kind=kind)
                x = np.log(np.array([row.n for row in rows], dtype=float))
                if mode == PlotMode.COMPENSATED:
                    low = np.array([row.q1_comp for row in rows])
                    mid = np.array([row.median_comp for row in rows])
                    high = np.array([row.q3_comp for row in rows])
                else:
                    low, mid, high = _log_quartiles(rows=rows, kind=kind)
                if len(rows) == 1:
                    line, = axes.plot(x, mid, marker='o', linestyle='none', label=kind.label)
                else:
                    line, = axes.plot(x, mid, marker='.', label=kind.label)
                    axes.fill_between(x, low, high, color=line.get_color(), alpha=0.25, linewidth=0)
            axes.set_xlabel('ln n')
            if mode == PlotMode.COMPENSATED:
                axes.set_ylabel('L * gap')
                axes.set_title('Compensated spectral gap')
            else:
                axes.set_ylabel('ln gap')
                axes.set_title('Spectral gap, log-log')
            axes.legend(loc='best')
            axes.grid(True, alpha=0.3)
            figure.tight_layout()
            figure.savefig(path, format='svg', metadata={'Date': None})
        finally:
            plt.close(figure)


def _log_quartiles(rows, kind: SweepKind):
    values = np.array([[row.q1, row.median, row.q3] for row in rows], dtype=float)
    if np.any(values <= 0):
        Log.warning(msg='zero gaps in kind %s are left out of the log-log plot' % kind.value)
    with np.errstate(divide='ignore'):
        logs = np.where(values > 0, np.log(np.maximum(values, np.finfo(float).tiny)), np.nan)
    return logs[:, 0], logs[:, 1], logs[:, 2]
