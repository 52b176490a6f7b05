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
    Verify
    ~~~~~~

    Property suites behind `cyclegap.py verify`. Every suite returns a list of
    CheckReport; a report with pass == False on a hard check fails the run,
    "n/a" and report-only checks never do.

        invariants   generator contracts, double stochasticity, bijection
        equivalence  condensed <-> full eigenproblem on small instances
        lemmas       Monte Carlo of the concentration bounds and the
                     eigenvalue-level checks
"""

import math
from typing import Optional, List, Dict

import numpy as np

from ..utils import Logging
from ..utils import seed_hash, create_rng
from ..markov import InvalidParameter, NumericalError, BoundNotApplicable
from ..markov import InterconnectMatrix, InterconnectKind, complete, custom, random_regular, bollobas_chung
from ..markov import ChainModel, ArcLengths, Provenance, CondensedChain
from ..markov import sample_arcmod, sample_arc_lengths, sample_cyclemod, sample_cyclemod_lengths
from ..markov import bijection_T, inverse_T, expand
from ..markov import eigenvalues_dense, eigenpairs_dense, absolute_spectral_gap, is_conjugate_closed
from ..markov import condensed_residual, condensed_determinant, condensed_polynomial_roots, ResidualFunction
from ..markov import restrict_eigvec, expand_eigvec
from ..markov import BoundParams, CheckReport
from ..markov import epsilon_k, delta_k, s_failure_bound, mean_deviation_bounds
from ..markov import event_S, small_angle_criterion, moment_concentration_check
from ..markov import large_angle_scan, cos_plus_scan, sample_small_angle
from ..markov import linearization_check, modulus_check
from ..markov import P_near_1_check, perp_bound_check
from ..markov import spectral_gap_symmetric
from ..markov.chain import geometric_draws
from ..markov.theory import in_phi, S_failure_frequency


SUITES = ['invariants', 'equivalence', 'lemmas']

DEFAULT_TRIALS = {
    'invariants': 1000,
    'equivalence': 200,
    'lemmas': 10000,
}

STOCHASTIC_TOLERANCE = 1e-12
EQUIVALENCE_TOLERANCE = 1e-6
DETERMINANT_TOLERANCE = 1e-8
SMALL_MODULUS = 0.1
TV_TOLERANCE = 0.02


def _standard_error(p: float, trials: int) -> float:
    return math.sqrt(max(p * (1 - p), 0.0) / trials)


def random_symmetric_stochastic(k: int, rng: np.random.Generator, terms: int = 3) -> InterconnectMatrix:
    """ convex combination of (P + P^T) / 2 over random permutations P """
    weights = rng.dirichlet(np.ones(terms))
    entries = np.zeros((k, k))
    eye = np.eye(k)
    for w in weights:
        perm = eye[rng.permutation(k)]
        entries += w * (perm + perm.T) / 2
    return custom(entries=entries)


class Verifier(Logging):

    def __init__(self, seed: int, residual_fn: Optional[ResidualFunction] = None,
                 constants: Optional[Dict[str, float]] = None):
        """
        :param seed:        base seed, every suite derives its own stream
        :param residual_fn: condensed residual under test
        :param constants:   BoundParams keywords (M, gamma, eta, theta, beta)
        """
        super().__init__()
        self.__seed = seed
        self.__residual_fn = condensed_residual if residual_fn is None else residual_fn
        self.__constants = {} if constants is None else dict(constants)

    @property
    def seed(self) -> int:
        return self.__seed

    @property
    def constants(self) -> Dict[str, float]:
        return dict(self.__constants)

    def _bounds(self, k: float, L: float) -> BoundParams:
        return BoundParams(k=k, L=L, **self.__constants)

    def _rng(self, suite: str) -> np.random.Generator:
        return create_rng(seed=seed_hash(self.__seed, suite))

    def _report(self, check: str, value=None, bound=None, passed: Optional[bool] = None,
                params: Optional[Dict] = None, hard: bool = True) -> CheckReport:
        report = CheckReport(check=check, value=value, bound=bound, passed=passed,
                             params=params, seed=self.__seed, hard=hard)
        if report.failed:
            self.error(msg='check failed: %s' % report.to_json())
        elif hard and passed is None:
            self.warning(msg='bound not applicable: %s' % report.to_json())
        else:
            self.debug(msg='check: %s' % report.to_json())
        return report

    #
    #   Invariants
    #

    def _random_interconnect(self, k: int, rng: np.random.Generator) -> InterconnectMatrix:
        options = [InterconnectKind.COMPLETE]
        if k >= 4:
            options.append(InterconnectKind.BOLLOBAS_CHUNG)
        if k >= 6:
            options.append(InterconnectKind.RANDOM_REGULAR)
        kind = options[int(rng.integers(len(options)))]
        if kind == InterconnectKind.BOLLOBAS_CHUNG:
            return bollobas_chung(k=k, rng=rng)
        elif kind == InterconnectKind.RANDOM_REGULAR:
            degree = [k // 2, 4][int(rng.integers(2))]
            return random_regular(k=k, d=degree, rng=rng)
        return complete(k=k)

    def invariants(self, trials: int) -> List[CheckReport]:
        rng = self._rng(suite='invariants')
        ks = [1, 2, 4, 8, 16, 32]
        Ls = [1, 2, 8, 32]
        worst_sum = 0.0
        worst_symmetry = 0.0
        total_errors = 0
        bijection_errors = 0
        conjugate_errors = 0
        gap_errors = 0
        for _ in range(trials):
            k = ks[int(rng.integers(len(ks)))]
            L = Ls[int(rng.integers(len(Ls)))]
            interconnect = self._random_interconnect(k=k, rng=rng)
            entries = interconnect.entries
            worst_symmetry = max(worst_symmetry, float(np.max(np.abs(entries - entries.T))))
            if rng.random() < 0.5:
                chain = sample_arcmod(L=L, k=k, interconnect=interconnect, rng=rng)
            else:
                n = k * L
                chain = sample_cyclemod(n=n, k=k, interconnect=interconnect, rng=rng)
                if chain.lengths.total != n:
                    total_errors += 1
                edges = bijection_T(lengths=chain.lengths, j=chain.provenance.j, n=n)
                if inverse_T(edges=edges, n=n) != (chain.lengths, chain.provenance.j):
                    bijection_errors += 1
            stochastic = expand(chain=chain)
            rows, cols = stochastic.sum_errors()
            worst_sum = max(worst_sum, rows, cols)
            if stochastic.size <= 256:
                spectrum = eigenvalues_dense(stochastic=stochastic)
                if not is_conjugate_closed(spectrum=spectrum):
                    conjugate_errors += 1
                gap = absolute_spectral_gap(spectrum=spectrum)
                if not 0 <= gap <= 1:
                    gap_errors += 1
        params = {'trials': trials}
        return [
            self._report(check='doubly_stochastic', value=worst_sum, bound=STOCHASTIC_TOLERANCE,
                         passed=worst_sum <= STOCHASTIC_TOLERANCE, params=params),
            self._report(check='interconnect_symmetric', value=worst_symmetry, bound=STOCHASTIC_TOLERANCE,
                         passed=worst_symmetry <= STOCHASTIC_TOLERANCE, params=params),
            self._report(check='cyclemod_total', value=total_errors, bound=0,
                         passed=total_errors == 0, params=params),
            self._report(check='bijection_roundtrip', value=bijection_errors, bound=0,
                         passed=bijection_errors == 0, params=params),
            self._report(check='conjugate_closed', value=conjugate_errors, bound=0,
                         passed=conjugate_errors == 0, params=params),
            self._report(check='gap_range', value=gap_errors, bound=0,
                         passed=gap_errors == 0, params=params),
        ]

    #
    #   Equivalence
    #

    def equivalence(self, trials: int) -> List[CheckReport]:
        """ k <= 5, L_i <= 6: every full eigenpair with |mu| > 0.1 restricts and expands back """
        rng = self._rng(suite='equivalence')
        worst_residual = 0.0
        worst_roundtrip = 0.0
        worst_determinant = 0.0
        worst_root = 0.0
        pairs_checked = 0
        for _ in range(trials):
            k = int(rng.integers(1, 6))
            lengths = ArcLengths(lengths=rng.integers(1, 7, size=k))
            interconnect = random_symmetric_stochastic(k=k, rng=rng)
            chain = CondensedChain(interconnect=interconnect, lengths=lengths,
                                   provenance=Provenance(model=ChainModel.ARCMOD, L=max(1.0, lengths.mean)))
            stochastic = expand(chain=chain)
            roots = condensed_polynomial_roots(chain=chain)
            for pair in eigenpairs_dense(stochastic=stochastic):
                if abs(pair.mu) <= SMALL_MODULUS:
                    continue
                pairs_checked += 1
                x = restrict_eigvec(chain=chain, pair=pair, stochastic=stochastic, check=False)
                residual = self.__residual_fn(chain, pair.mu, x)
                worst_residual = max(worst_residual, residual)
                determinant = abs(condensed_determinant(chain=chain, mu=pair.mu))
                worst_determinant = max(worst_determinant, determinant)
                worst_root = max(worst_root, float(np.min(np.abs(roots - pair.mu))))
                if residual > EQUIVALENCE_TOLERANCE:
                    continue
                try:
                    y = expand_eigvec(chain=chain, mu=pair.mu, x=x, stochastic=stochastic)
                except NumericalError as error:
                    self.warning(msg='expansion failed at mu=%s: %s' % (pair.mu, error))
                    worst_roundtrip = math.inf
                    continue
                difference = np.linalg.norm(y - pair.vector) / np.linalg.norm(pair.vector)
                worst_roundtrip = max(worst_roundtrip, float(difference))
        params = {'trials': trials, 'pairs': pairs_checked}
        return [
            self._report(check='condensed_residual', value=worst_residual, bound=EQUIVALENCE_TOLERANCE,
                         passed=worst_residual < EQUIVALENCE_TOLERANCE, params=params),
            self._report(check='expand_roundtrip', value=worst_roundtrip, bound=EQUIVALENCE_TOLERANCE,
                         passed=worst_roundtrip < EQUIVALENCE_TOLERANCE, params=params),
            self._report(check='condensed_determinant', value=worst_determinant, bound=DETERMINANT_TOLERANCE,
                         passed=worst_determinant < DETERMINANT_TOLERANCE, params=params),
            # multiple roots make the companion-matrix roots loose, so this one only reports
            self._report(check='polynomial_roots', value=worst_root, bound=EQUIVALENCE_TOLERANCE,
                         passed=worst_root < EQUIVALENCE_TOLERANCE, params=params, hard=False),
        ]

    #
    #   Lemmas
    #

    def _concentration(self, k: int, L: float, trials: int, rng: np.random.Generator) -> List[CheckReport]:
        params = self._bounds(k=k, L=L)
        freq_s = S_failure_frequency(k=k, L=L, trials=trials, p=params, rng=rng)
        bound_s = s_failure_bound(k=k, M=params.M)
        low, high = moment_concentration_check(k=k, L=L, trials=trials, rng=rng)
        bound_low, bound_high = mean_deviation_bounds(k=k)
        info = {'k': k, 'L': L, 'M': params.M, 'trials': trials}
        limit_s = bound_s + 3 * _standard_error(p=bound_s, trials=trials)
        limit_low = bound_low + 3 * _standard_error(p=bound_low, trials=trials)
        limit_high = bound_high + 3 * _standard_error(p=bound_high, trials=trials)
        return [
            self._report(check='S_failure_frequency', value=freq_s, bound=limit_s,
                         passed=freq_s <= limit_s, params=info),
            self._report(check='low_mean_frequency', value=low, bound=limit_low,
                         passed=low <= limit_low, params=info),
            self._report(check='high_square_frequency', value=high, bound=limit_high,
                         passed=high <= limit_high, params=info),
        ]

    def _approximations(self, samples: int, rng: np.random.Generator) -> List[CheckReport]:
        """ modulus and linearization bounds for small-angle mu under S(M) """
        params = self._bounds(k=64, L=16)
        eps = epsilon_k(p=params)
        worst_modulus = 1.0
        worst_linear = 0.0
        for _ in range(samples):
            lengths = sample_arc_lengths(L=params.L, k=64, rng=rng)
            while not event_S(lengths=lengths, p=params):
                lengths = sample_arc_lengths(L=params.L, k=64, rng=rng)
            mu = sample_small_angle(p=params, rng=rng)
            worst_modulus = min(worst_modulus, modulus_check(lengths=lengths, mu=mu))
            worst_linear = max(worst_linear, linearization_check(lengths=lengths, mu=mu))
        info = params.to_dict()
        info['samples'] = samples
        return [
            self._report(check='modulus_bound', value=worst_modulus, bound=1 - eps,
                         passed=worst_modulus >= 1 - eps, params=info),
            self._report(check='linearization', value=worst_linear, bound=1.0,
                         passed=worst_linear <= 1.0, params=info),
        ]

    def _small_angle(self, samples: int, rng: np.random.Generator) -> CheckReport:
        params = self._bounds(k=256, L=16)
        delta = delta_k(p=params)
        hits = 0
        for _ in range(samples):
            lengths = sample_arc_lengths(L=params.L, k=256, rng=rng)
            if small_angle_criterion(lengths=lengths, delta=delta):
                hits += 1
        frequency = hits / samples
        info = params.to_dict()
        info['samples'] = samples
        return self._report(check='small_angle_criterion', value=frequency, bound=0.01,
                            passed=frequency < 0.01, params=info)

    def _large_angle(self, samples: int, rng: np.random.Generator) -> List[CheckReport]:
        """ report only: at desk scale the grid maximum reaches the bound near the boundary """
        params = self._bounds(k=64, L=16)
        exceed = 0
        cos_exceed = 0
        for _ in range(samples):
            lengths = sample_arc_lengths(L=params.L, k=64, rng=rng)
            if large_angle_scan(lengths=lengths, p=params, grid_size=400) > params.large_angle_bound:
                exceed += 1
            value, target = cos_plus_scan(lengths=lengths, p=params, grid_size=400)
            if value >= target:
                cos_exceed += 1
        info = params.to_dict()
        info['samples'] = samples
        return [
            self._report(check='large_angle_scan', value=exceed / samples, bound=params.large_angle_bound,
                         passed=None, params=info, hard=False),
            self._report(check='cos_plus_scan', value=cos_exceed / samples, bound=1 - 1 / 3,
                         passed=None, params=info, hard=False),
        ]

    def distribution_match(self, samples: int, rng: np.random.Generator) -> CheckReport:
        """ cyclemod (n=6, k=2) lengths against arcmod (L=3) conditioned on total 6 """
        n, k, L = 6, 2, 3.0
        categories = [(a, n - a) for a in range(1, n)]
        cyclic = np.zeros(len(categories))
        for _ in range(samples):
            lengths, _ = sample_cyclemod_lengths(n=n, k=k, rng=rng)
            cyclic[int(lengths.values[0]) - 1] += 1
        conditioned = np.zeros(len(categories))
        accepted = 0
        while accepted < samples:
            draws = geometric_draws(L=L, size=(4 * samples, k), rng=rng)
            hits = draws[draws.sum(axis=1) == n][:samples - accepted]
            np.add.at(conditioned, hits[:, 0] - 1, 1)
            accepted += len(hits)
        distance = 0.5 * float(np.sum(np.abs(cyclic / samples - conditioned / samples)))
        # sampling noise of two empirical histograms
        tolerance = max(TV_TOLERANCE, 2 * math.sqrt(len(categories) / samples))
        info = {'n': n, 'k': k, 'L': L, 'samples': samples}
        return self._report(check='distribution_match', value=distance, bound=tolerance,
                            passed=distance < tolerance, params=info)

    def eigen_checks(self, chains: List[CondensedChain], info: Optional[Dict] = None) -> List[CheckReport]:
        """ P(mu) near 1 and the perpendicular bound for every eigenvalue in Phi """
        near_values = []
        near_passed = []
        perp_values = []
        perp_passed = []
        skipped = 0
        for chain in chains:
            params = BoundParams.for_chain(chain=chain, **self.__constants)
            if not event_S(lengths=chain.lengths, p=params):
                skipped += 1
                continue
            stochastic = expand(chain=chain)
            spectrum = eigenvalues_dense(stochastic=stochastic)
            for mu, distance, bound, passed in P_near_1_check(chain=chain, spectrum=spectrum, p=params):
                near_values.append(distance)
                near_passed.append(passed)
            pairs = [pair for pair in eigenpairs_dense(stochastic=stochastic)
                     if in_phi(mu=pair.mu, p=params) and abs(pair.mu - 1) > 1e-8]
            for pair in pairs:
                try:
                    ratio, bound, passed = perp_bound_check(chain=chain, pair=pair, p=params,
                                                            stochastic=stochastic)
                except BoundNotApplicable:
                    continue
                perp_values.append(ratio)
                perp_passed.append(passed)
        info = dict({} if info is None else info, chains=len(chains), skipped_S=skipped)
        return [
            self._report(check='P_near_1', value=max(near_values, default=0.0), bound=None,
                         passed=_combine(near_passed), params=dict(info, eigenvalues=len(near_values))),
            self._report(check='perp_bound', value=max(perp_values, default=0.0), bound=None,
                         passed=_combine(perp_passed), params=dict(info, eigenvalues=len(perp_values))),
        ]

    def _eigen_sample(self, instances: int, rng: np.random.Generator) -> List[CheckReport]:
        k, L = 16, 8.0
        chains = []
        for _ in range(instances):
            chains.append(sample_arcmod(L=L, k=k, interconnect=complete(k=k), rng=rng))
        for _ in range(instances):
            chains.append(sample_arcmod(L=L, k=k, interconnect=bollobas_chung(k=k, rng=rng), rng=rng))
        info = {'k': k, 'L': L, 'instances': instances, 'kinds': ['complete', 'bc']}
        return self.eigen_checks(chains=chains, info=info)

    def _interconnect_gaps(self, rng: np.random.Generator) -> CheckReport:
        """ lambda(A) of the sparse kinds stays away from 0 """
        gaps = [spectral_gap_symmetric(matrix=bollobas_chung(k=64, rng=rng)),
                spectral_gap_symmetric(matrix=random_regular(k=64, d=4, rng=rng))]
        return self._report(check='interconnect_gap', value=min(gaps), bound=0.0,
                            passed=min(gaps) > 0, params={'k': 64}, hard=False)

    def lemmas(self, trials: int) -> List[CheckReport]:
        rng = self._rng(suite='lemmas')
        reports = []
        reports.extend(self._concentration(k=64, L=16, trials=trials, rng=rng))
        reports.extend(self._concentration(k=100, L=8, trials=trials, rng=rng))
        reports.extend(self._approximations(samples=min(trials, 1000), rng=rng))
        reports.append(self._small_angle(samples=min(trials, 1000), rng=rng))
        reports.extend(self._large_angle(samples=min(trials // 50, 200) or 1, rng=rng))
        reports.append(self.distribution_match(samples=min(100000, max(1000, 10 * trials)), rng=rng))
        reports.extend(self._eigen_sample(instances=min(50, max(5, trials // 200)), rng=rng))
        reports.append(self._interconnect_gaps(rng=rng))
        return reports

    def run(self, suite: str, trials: Optional[int] = None) -> List[CheckReport]:
        if suite == 'all':
            reports = []
            for name in SUITES:
                reports.extend(self.run(suite=name, trials=trials))
            return reports
        if suite not in SUITES:
            raise InvalidParameter('unknown suite: %s' % suite)
        if trials is None:
            trials = DEFAULT_TRIALS[suite]
        self.info(msg='running suite "%s" with %d trials, seed %d' % (suite, trials, self.__seed))
        if suite == 'invariants':
            return self.invariants(trials=trials)
        elif suite == 'equivalence':
            return self.equivalence(trials=trials)
        return self.lemmas(trials=trials)


def _combine(results: List[Optional[bool]]) -> Optional[bool]:
    """ False if any failed, n/a if nothing was applicable (or nothing checked), else True """
    if any(item is False for item in results):
        return False
    if all(item is None for item in results):
        return None
    return True


def run_suite(name: str, seed: int, trials: Optional[int] = None,
              residual_fn: Optional[ResidualFunction] = None,
              constants: Optional[Dict[str, float]] = None) -> List[CheckReport]:
    verifier = Verifier(seed=seed, residual_fn=residual_fn, constants=constants)
    return verifier.run(suite=name, trials=trials)
