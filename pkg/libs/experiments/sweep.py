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
    Sweep
    ~~~~~

    One trial = (n, kind, trial index) -> derived seed -> cyclemod sample ->
    dense spectrum -> absolute gap.

    Trials are independent; results are folded in (n, kind, seed) order so
    the worker count never changes the output.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, List, Tuple, Set, Dict

import numpy as np

from ..utils import Log, Logging
from ..utils import derive_seed, create_rng
from ..markov import NumericalError
from ..markov import ChainModel, BoundParams
from ..markov import sample_cyclemod, expand, symmetrize
from ..markov import eigenvalues_dense, absolute_spectral_gap
from ..markov import spectral_gap_symmetric, theorem_bound

from .config import ExperimentConfig, SweepKind


ZERO_GAP = 1e-12


class TrialRecord:

    def __init__(self, n: int, k: int, kind: SweepKind, seed: int, gap: Optional[float],
                 gap_sym: Optional[float] = None, lambda_A: Optional[float] = None,
                 wall_time: float = 0.0, trial: Optional[int] = None, error: Optional[str] = None):
        super().__init__()
        self.n = n
        self.k = k
        self.kind = kind
        self.seed = seed
        self.gap = gap
        self.gap_sym = gap_sym
        self.lambda_A = lambda_A
        self.wall_time = wall_time
        self.trial = trial
        self.error = error

    @property
    def failed(self) -> bool:
        return self.gap is None

    @property
    def L(self) -> float:
        return self.n / self.k

    @property
    def sort_key(self) -> Tuple[int, int, int]:
        return self.n, self.kind.ordinal, self.seed

    def __repr__(self) -> str:
        return '<TrialRecord n=%d k=%d kind="%s" seed=%d gap=%s />' % (self.n, self.k, self.kind.value,
                                                                       self.seed, self.gap)


class SweepResult:

    def __init__(self, records: List[TrialRecord], base_seed: int, gamma: float = 8.0):
        super().__init__()
        self.__records = sorted(records, key=lambda item: item.sort_key)
        self.__base_seed = base_seed
        self.__gamma = gamma

    @property
    def records(self) -> List[TrialRecord]:
        return self.__records

    @property
    def base_seed(self) -> int:
        return self.__base_seed

    @property
    def valid_records(self) -> List[TrialRecord]:
        return [item for item in self.__records if not item.failed]

    @property
    def failures(self) -> int:
        return sum(1 for item in self.__records if item.failed)

    @property
    def zero_gaps(self) -> int:
        return sum(1 for item in self.valid_records if item.gap <= ZERO_GAP)

    def bound_violations(self) -> List[TrialRecord]:
        """ trials with gap < k / (n log^gamma k) """
        violations = []
        for item in self.valid_records:
            params = BoundParams(k=item.k, L=item.L, gamma=self.__gamma)
            bound = theorem_bound(p=params, model=ChainModel.CYCLEMOD, n_or_L=item.n)
            if item.gap < bound:
                violations.append(item)
        return violations

    def summary(self) -> Dict[str, int]:
        return {
            'records': len(self.__records),
            'failures': self.failures,
            'zero_gaps': self.zero_gaps,
            'violations': len(self.bound_violations()),
        }


def run_trial(config: ExperimentConfig, n: int, kind: SweepKind, trial: int) -> TrialRecord:
    """ one cyclemod sample, reproducible from (base_seed, n, kind, trial) """
    seed = derive_seed(base_seed=config.base_seed, n=n, kind=kind.ordinal, trial=trial)
    rng = create_rng(seed=seed)
    k = config.k_for(n=n, kind=kind)
    start = time.perf_counter()
    try:
        interconnect = kind.interconnect(k=k, rng=rng)
        chain = sample_cyclemod(n=n, k=k, interconnect=interconnect, rng=rng)
        stochastic = expand(chain=chain)
        spectrum = eigenvalues_dense(stochastic=stochastic, dense_limit=config.dense_limit)
        gap = absolute_spectral_gap(spectrum=spectrum)
        gap_sym = None
        if config.symmetrized:
            spectrum = eigenvalues_dense(stochastic=symmetrize(stochastic=stochastic), dense_limit=config.dense_limit)
            gap_sym = absolute_spectral_gap(spectrum=spectrum)
        lambda_A = spectral_gap_symmetric(matrix=interconnect)
    except NumericalError as error:
        Log.error(msg='trial failed: n=%d, kind=%s, trial=%d, seed=%d: %s' % (n, kind.value, trial, seed, error))
        return TrialRecord(n=n, k=k, kind=kind, seed=seed, gap=None, trial=trial,
                           wall_time=time.perf_counter() - start, error=str(error))
    if gap <= ZERO_GAP:
        Log.warning(msg='zero gap (reducible or periodic chain): n=%d, kind=%s, seed=%d' % (n, kind.value, seed))
    return TrialRecord(n=n, k=k, kind=kind, seed=seed, gap=gap, gap_sym=gap_sym, lambda_A=lambda_A,
                       wall_time=time.perf_counter() - start, trial=trial)


class SweepRunner(Logging):
    """ runs the (n, kind, trial) jobs of a config, optionally on a thread pool """

    def __init__(self, config: ExperimentConfig, workers: int = 1):
        super().__init__()
        self.__config = config
        self.__workers = max(1, workers)

    @property
    def config(self) -> ExperimentConfig:
        return self.__config

    def jobs(self, done: Optional[Set[Tuple[int, str, int]]] = None) -> List[Tuple[int, SweepKind, int]]:
        config = self.__config
        array = []
        for n in config.n_values:
            for kind in config.kinds:
                for trial in range(config.trials_per_point):
                    if done is not None and (n, kind.value, trial) in done:
                        continue
                    array.append((n, kind, trial))
        return array

    def run(self, previous: Optional[List[TrialRecord]] = None) -> SweepResult:
        config = self.__config
        # resume: seeds already present identify finished (n, kind, trial) triples
        done = set()
        kept = []
        if previous:
            wanted = self._expected_seeds()
            for item in previous:
                triple = wanted.get((item.n, item.kind.value, item.seed))
                if triple is not None and not item.failed:
                    item.trial = triple[2]
                    done.add(triple)
                    kept.append(item)
            self.info(msg='resuming sweep: %d finished trials kept' % len(kept))
        jobs = self.jobs(done=done)
        self.info(msg='running %d trials on %d worker(s): %s' % (len(jobs), self.__workers, config))
        if self.__workers == 1:
            records = [run_trial(config, n, kind, trial) for n, kind, trial in jobs]
        else:
            with ThreadPoolExecutor(max_workers=self.__workers) as executor:
                records = list(executor.map(lambda job: run_trial(config, *job), jobs))
        result = SweepResult(records=kept + records, base_seed=config.base_seed, gamma=config.gamma)
        summary = result.summary()
        self.info(msg='sweep finished: %s' % summary)
        if summary['failures'] > 0:
            self.warning(msg='%d trial(s) failed and are excluded from quartiles' % summary['failures'])
        if summary['violations'] > 0:
            self.warning(msg='%d trial(s) below the k/(n log^gamma k) bound' % summary['violations'])
        return result

    def _expected_seeds(self) -> Dict[Tuple[int, str, int], Tuple[int, str, int]]:
        config = self.__config
        table = {}
        for n, kind, trial in self.jobs():
            seed = derive_seed(base_seed=config.base_seed, n=n, kind=kind.ordinal, trial=trial)
            table[(n, kind.value, seed)] = (n, kind.value, trial)
        return table


def run_sweep(config: ExperimentConfig, rng: Optional[np.random.Generator] = None, workers: int = 1,
              previous: Optional[List[TrialRecord]] = None) -> SweepResult:
    """
    All trials of the config

    :param config:   grid, kinds, trials and seed
    :param rng:      only used to draw a base seed when the config has none
    :param workers:  thread pool size
    :param previous: records of an interrupted run to keep
    :return: records sorted by (n, kind, seed)
    """
    if config.base_seed is None:
        if rng is None:
            rng = create_rng()
        config.base_seed = int(rng.integers(0, 2 ** 63 - 1))
        Log.info(msg='drawn base seed: %d' % config.base_seed)
    runner = SweepRunner(config=config, workers=workers)
    return runner.run(previous=previous)
