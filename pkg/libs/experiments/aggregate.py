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
    Aggregate
    ~~~~~~~~~

    Quartile stripes per (n, kind), log-log slopes and the compensated L * gap.
"""

from typing import Optional, List, Tuple

import numpy as np
import pandas as pd

from ..markov import TooFewRecords, EmptySeries, InvalidParameter

from .config import SweepKind
from .sweep import TrialRecord


class QuartileRow:

    def __init__(self, n: int, k: int, kind: SweepKind, q1: float, median: float, q3: float,
                 q1_comp: Optional[float] = None, median_comp: Optional[float] = None,
                 q3_comp: Optional[float] = None, count: int = 0):
        super().__init__()
        self.n = n
        self.k = k
        self.kind = kind
        self.q1 = q1
        self.median = median
        self.q3 = q3
        L = n / k
        self.q1_comp = L * q1 if q1_comp is None else q1_comp
        self.median_comp = L * median if median_comp is None else median_comp
        self.q3_comp = L * q3 if q3_comp is None else q3_comp
        self.count = count

    @property
    def L(self) -> float:
        return self.n / self.k

    def __repr__(self) -> str:
        return '<QuartileRow n=%d kind="%s" median=%g />' % (self.n, self.kind.value, self.median)


class QuartileSeries:

    COLUMNS = ['n', 'k', 'kind', 'q1', 'median', 'q3', 'q1_comp', 'median_comp', 'q3_comp']

    def __init__(self, rows: List[QuartileRow]):
        super().__init__()
        self.__rows = sorted(rows, key=lambda row: (row.n, row.kind.ordinal))

    @property
    def rows(self) -> List[QuartileRow]:
        return self.__rows

    @property
    def kinds(self) -> List[SweepKind]:
        kinds = set(row.kind for row in self.__rows)
        return sorted(kinds, key=lambda kind: kind.ordinal)

    def rows_for(self, kind: SweepKind) -> List[QuartileRow]:
        return [row for row in self.__rows if row.kind == kind]

    def is_empty(self) -> bool:
        return len(self.__rows) == 0

    def to_frame(self) -> pd.DataFrame:
        data = [[row.n, row.k, row.kind.value, row.q1, row.median, row.q3,
                 row.q1_comp, row.median_comp, row.q3_comp] for row in self.__rows]
        return pd.DataFrame(data, columns=self.COLUMNS)

    @classmethod
    def from_frame(cls, frame: pd.DataFrame):
        rows = []
        for item in frame.itertuples(index=False):
            rows.append(QuartileRow(n=int(item.n), k=int(item.k), kind=SweepKind.parse(text=str(item.kind)),
                                    q1=float(item.q1), median=float(item.median), q3=float(item.q3),
                                    q1_comp=float(item.q1_comp), median_comp=float(item.median_comp),
                                    q3_comp=float(item.q3_comp)))
        return cls(rows=rows)

    def __len__(self) -> int:
        return len(self.__rows)


def quartiles(records: List[TrialRecord], minimum: int = 3) -> QuartileSeries:
    """
    Type-7 (linear interpolation) quartiles of the gap per (n, kind)

    Failed trials are left out; a group with fewer than `minimum` gaps is an error.
    """
    valid = [item for item in records if not item.failed]
    if len(valid) == 0:
        raise TooFewRecords('no usable trial records')
    frame = pd.DataFrame({
        'n': [item.n for item in valid],
        'k': [item.k for item in valid],
        'kind': [item.kind.value for item in valid],
        'gap': [item.gap for item in valid],
    })
    rows = []
    for (n, k, kind), group in frame.groupby(['n', 'k', 'kind'], sort=True):
        count = len(group)
        if count < minimum:
            raise TooFewRecords('only %d record(s) for n=%d, kind=%s (need %d)' % (count, n, kind, minimum))
        q1, median, q3 = group['gap'].quantile([0.25, 0.5, 0.75]).tolist()
        rows.append(QuartileRow(n=int(n), k=int(k), kind=SweepKind.parse(text=kind),
                                q1=q1, median=median, q3=q3, count=count))
    return QuartileSeries(rows=rows)


def fit_slope(series: QuartileSeries, kind: SweepKind) -> Tuple[float, float]:
    """ least squares line through (ln n, ln median) """
    rows = series.rows_for(kind=kind)
    if len(rows) < 4:
        raise TooFewRecords('slope needs >= 4 grid points, kind %s has %d' % (kind.value, len(rows)))
    medians = np.array([row.median for row in rows], dtype=float)
    if np.any(medians <= 0):
        raise InvalidParameter('nonpositive median gap for kind %s' % kind.value)
    x = np.log(np.array([row.n for row in rows], dtype=float))
    slope, intercept = np.polyfit(x, np.log(medians), 1)
    return float(slope), float(intercept)


def compensated_series(series: QuartileSeries) -> QuartileSeries:
    """ the same series with every quantile multiplied by L = n / k """
    if series.is_empty():
        raise EmptySeries('nothing to compensate')
    rows = []
    for row in series.rows:
        rows.append(QuartileRow(n=row.n, k=row.k, kind=row.kind,
                                q1=row.q1_comp, median=row.median_comp, q3=row.q3_comp,
                                q1_comp=row.q1_comp, median_comp=row.median_comp, q3_comp=row.q3_comp,
                                count=row.count))
    return QuartileSeries(rows=rows)


def variation_coefficient(series: QuartileSeries, kind: SweepKind) -> float:
    """ std / mean of the compensated medians across the grid """
    values = np.array([row.median_comp for row in series.rows_for(kind=kind)], dtype=float)
    if len(values) == 0:
        raise EmptySeries('no rows for kind %s' % kind.value)
    return float(np.std(values) / np.mean(values))
