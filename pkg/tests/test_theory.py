# -*- coding: utf-8 -*-

import math
import unittest

import numpy as np

from libs.utils import create_rng, json_decode
from libs.markov import InvalidParameter, DomainError, BoundNotApplicable
from libs.markov import complete, bollobas_chung, spectral_gap_symmetric
from libs.markov import ChainModel, ArcLengths, Provenance, CondensedChain
from libs.markov import expand, eigenvalues_dense, expand_eigvec
from libs.markov import Spectrum, EigenPair
from libs.markov import BoundParams, AngleRegion, CheckReport
from libs.markov import epsilon_k, delta_k, delta_from, theorem_bound, s_failure_bound, mean_deviation_bounds
from libs.markov import classify_angle, event_S, small_angle_criterion, moment_concentration_check
from libs.markov import P_poly, large_angle_scan, cos_plus, cos_plus_scan
from libs.markov import P_near_1_check, perp_bound_check
from libs.markov import linearization_check, modulus_check, sample_small_angle
from libs.markov.theory import S_failure_frequency

from tests import SLOW_TESTS


def _cycle(m: int) -> CondensedChain:
    return CondensedChain(interconnect=complete(k=1), lengths=ArcLengths(lengths=[m]),
                          provenance=Provenance(model=ChainModel.ARCMOD, L=m))


class TestBoundParams(unittest.TestCase):

    def test_defaults(self):
        p = BoundParams(k=64, L=16)
        self.assertEqual(p.M, 3.0)
        self.assertTrue(np.isclose(p.M_phi, 9 * math.pi))
        self.assertEqual(p.class_params.c, 1.0)
        self.assertEqual(p.class_params.alpha, 0.0)
        p.validate_for_theorems()

    def test_invalid(self):
        self.assertRaises(InvalidParameter, BoundParams, 64, 16, 0.0)
        self.assertRaises(InvalidParameter, BoundParams, 0.5, 16)
        self.assertRaises(InvalidParameter, BoundParams, 64, 0.5)
        self.assertRaises(InvalidParameter, BoundParams(k=64, L=16, gamma=7).validate_for_theorems)
        self.assertRaises(InvalidParameter, BoundParams(k=64, L=16, eta=3).validate_for_theorems)
        self.assertRaises(InvalidParameter, BoundParams(k=64, L=16, M=1).validate_for_theorems)
        self.assertRaises(InvalidParameter, BoundParams(k=64, L=16, M_phi=1.0).validate_for_theorems)

    def test_derived(self):
        p = BoundParams(k=math.e ** 4, L=10)
        self.assertTrue(np.isclose(p.log_k, 4.0))
        self.assertTrue(np.isclose(p.inner_radius, 1 - 1 / (10 * 4.0 ** 8)))
        self.assertTrue(np.isclose(p.angle_threshold, math.pi / (9 * math.pi * 10 * 4.0)))
        self.assertTrue(np.isclose(p.longest_allowed, 120.0))
        self.assertEqual(p.block_size, math.ceil(p.log_k ** 1.5))
        self.assertTrue(np.isclose(p.block_margin, 4.0 ** -1.2))
        self.assertTrue(np.isclose(p.large_angle_bound, 1 - 4.0 ** -3.5))

    def test_replace(self):
        p = BoundParams(k=64, L=16).replace(M=4)
        self.assertTrue(np.isclose(p.M_phi, 12 * math.pi))
        p = BoundParams(k=64, L=16).replace(L=2, M_phi=100.0)
        self.assertEqual(p.L, 2.0)
        self.assertEqual(p.M_phi, 100.0)

    def test_for_chain(self):
        rng = create_rng(seed=1)
        a = bollobas_chung(k=16, rng=rng)
        chain = CondensedChain(interconnect=a, lengths=ArcLengths(lengths=np.full(16, 3)),
                               provenance=Provenance(model=ChainModel.CYCLEMOD, n=48, j=1))
        p = BoundParams.for_chain(chain=chain)
        self.assertEqual(p.k, 16.0)
        self.assertEqual(p.L, 3.0)
        self.assertEqual(p.class_params.c, spectral_gap_symmetric(matrix=a))

    def test_dict(self):
        info = BoundParams(k=64, L=16).to_dict()
        self.assertEqual(info['k'], 64.0)
        self.assertEqual(info['gamma'], 8.0)
        self.assertEqual(info['c'], 1.0)


class TestBounds(unittest.TestCase):

    def test_epsilon(self):
        p = BoundParams(k=math.e ** 10, L=1)
        self.assertTrue(np.isclose(epsilon_k(p=p), 1.2e-6, rtol=1e-9))
        p = BoundParams(k=50, L=1, M=1, gamma=1)
        self.assertTrue(np.isclose(epsilon_k(p=p), 4.0))
        self.assertRaises(DomainError, epsilon_k, BoundParams(k=2, L=1))

    def test_delta(self):
        self.assertEqual(delta_from(eps=0.0, Delta=1.0), 0.0)
        self.assertEqual(delta_from(eps=0.5, Delta=1.0), 1.0)
        self.assertEqual(delta_from(eps=0.5, Delta=0.5), 2.0)
        self.assertRaises(BoundNotApplicable, delta_from, 0.8, 0.5)
        p = BoundParams(k=math.e ** 10, L=1)
        eps = epsilon_k(p=p)
        self.assertTrue(np.isclose(delta_k(p=p), eps / (1 - eps)))
        self.assertTrue(np.isclose(delta_k(p=p), 1.2e-6, rtol=1e-5))

    def test_delta_not_applicable(self):
        # eps_k = 4 M at gamma = 1 swamps any Delta_k <= 1
        self.assertRaises(BoundNotApplicable, delta_k, BoundParams(k=64, L=1, gamma=1))

    def test_theorem_bound(self):
        p = BoundParams(k=32, L=32)
        value = theorem_bound(p=p, model=ChainModel.ARCMOD, n_or_L=32)
        self.assertTrue(np.isclose(value, 1 / (32 * math.log(32) ** 8)))
        self.assertTrue(1.4e-6 < value < 1.6e-6)
        cyclic = theorem_bound(p=p, model=ChainModel.CYCLEMOD, n_or_L=32 * 32)
        self.assertTrue(np.isclose(value, cyclic))
        p = BoundParams(k=32, L=32, gamma=0)
        self.assertTrue(np.isclose(theorem_bound(p=p, model=ChainModel.ARCMOD, n_or_L=5), 0.2))
        self.assertTrue(np.isclose(theorem_bound(p=p, model=ChainModel.CYCLEMOD, n_or_L=64), 0.5))
        self.assertRaises(DomainError, theorem_bound, BoundParams(k=2, L=1), ChainModel.ARCMOD, 1)
        self.assertRaises(InvalidParameter, theorem_bound, p, ChainModel.ARCMOD, 0)

    def test_lemma_bounds(self):
        self.assertTrue(np.isclose(s_failure_bound(k=64, M=3), 2 / 4096))
        self.assertEqual(s_failure_bound(k=1, M=3), 1.0)
        self.assertEqual(mean_deviation_bounds(k=100), (0.04, 0.05))
        self.assertEqual(mean_deviation_bounds(k=2), (1.0, 1.0))


class TestRegions(unittest.TestCase):

    def test_classify(self):
        p = BoundParams(k=64, L=16)
        self.assertEqual(classify_angle(mu=1, p=p), AngleRegion.OUTSIDE)
        self.assertEqual(classify_angle(mu=-1, p=p), AngleRegion.LARGE_ANGLES)
        self.assertEqual(classify_angle(mu=0.5, p=p), AngleRegion.OUTSIDE)
        self.assertEqual(classify_angle(mu=1.1, p=p), AngleRegion.OUTSIDE)
        modulus = 1 - 1 / (2 * p.L * p.log_k ** p.gamma)
        mu = modulus * np.exp(1j * math.pi / (2 * p.M_phi * p.L * p.log_k))
        self.assertEqual(classify_angle(mu=mu, p=p), AngleRegion.SMALL_ANGLES)

    def test_event_s(self):
        p = BoundParams(k=1, L=100 / 3.0)
        self.assertTrue(np.isclose(p.longest_allowed, 100.0))
        self.assertTrue(event_S(lengths=ArcLengths(lengths=[1, 1, 1]), p=p))
        self.assertFalse(event_S(lengths=ArcLengths(lengths=[1, 10 ** 6]), p=p))

    def test_small_angle_criterion(self):
        equal = ArcLengths(lengths=[5, 5, 5])
        self.assertTrue(small_angle_criterion(lengths=equal, delta=0.1))
        self.assertFalse(small_angle_criterion(lengths=equal, delta=0.08))
        self.assertFalse(small_angle_criterion(lengths=ArcLengths(lengths=[1, 1, 1, 100]), delta=1e-6))
        self.assertRaises(InvalidParameter, small_angle_criterion, equal, 0.0)

    def test_sample_small_angle(self):
        p = BoundParams(k=64, L=16)
        rng = create_rng(seed=2)
        for _ in range(100):
            mu = sample_small_angle(p=p, rng=rng)
            self.assertEqual(classify_angle(mu=mu, p=p), AngleRegion.SMALL_ANGLES)


class TestConcentration(unittest.TestCase):

    def test_unit_length(self):
        self.assertEqual(moment_concentration_check(k=10, L=1, trials=100, rng=create_rng(seed=0)), (0.0, 0.0))

    def test_too_few_trials(self):
        self.assertRaises(InvalidParameter, moment_concentration_check, 10, 2, 99, create_rng(seed=0))

    def test_moments(self):
        trials = 10000
        low, high = moment_concentration_check(k=100, L=8, trials=trials, rng=create_rng(seed=3))
        bound_low, bound_high = mean_deviation_bounds(k=100)
        self.assertLessEqual(low, bound_low + 3 * math.sqrt(bound_low * (1 - bound_low) / trials))
        self.assertLessEqual(high, bound_high + 3 * math.sqrt(bound_high * (1 - bound_high) / trials))

    def test_longest_arc(self):
        trials = 10000
        p = BoundParams(k=64, L=16, M=3)
        frequency = S_failure_frequency(k=64, L=16, trials=trials, p=p, rng=create_rng(seed=4))
        bound = s_failure_bound(k=64, M=3)
        self.assertLessEqual(frequency, bound + 3 * math.sqrt(bound * (1 - bound) / trials))

    @unittest.skipUnless(SLOW_TESTS, 'set CYCLEGAP_SLOW_TESTS=1')
    def test_longest_arc_large(self):
        trials = 20000
        p = BoundParams(k=256, L=32, M=2)
        frequency = S_failure_frequency(k=256, L=32, trials=trials, p=p, rng=create_rng(seed=5))
        bound = s_failure_bound(k=256, M=2)
        self.assertLessEqual(frequency, bound + 3 * math.sqrt(bound * (1 - bound) / trials))


class TestLengthPolynomial(unittest.TestCase):

    def test_values(self):
        rng = create_rng(seed=6)
        lengths = ArcLengths(lengths=rng.integers(1, 50, size=20))
        self.assertTrue(np.isclose(P_poly(lengths=lengths, mu=1), 1.0))
        self.assertTrue(np.isclose(P_poly(lengths=ArcLengths(lengths=[1, 2]), mu=-1), 0.0))
        self.assertTrue(np.isclose(P_poly(lengths=ArcLengths(lengths=[2, 4]), mu=1j), 0.0))

    def test_cos_plus(self):
        self.assertTrue(np.allclose(cos_plus(np.array([0.0, math.pi, math.pi / 3])), [1.0, 0.0, 0.5]))

    def test_single_arc_scan(self):
        p = BoundParams(k=64, L=16)
        value = large_angle_scan(lengths=ArcLengths(lengths=[1]), p=p, grid_size=200)
        self.assertLess(value, 1.0)
        self.assertTrue(np.isclose(value, math.cos(p.angle_threshold)))

    def test_equal_lengths_scan(self):
        p = BoundParams(k=64, L=16)
        value = large_angle_scan(lengths=ArcLengths(lengths=[2, 2, 2]), p=p, grid_size=200)
        self.assertTrue(np.isclose(value, math.cos(2 * p.angle_threshold)))

    def test_scan_grid(self):
        p = BoundParams(k=64, L=16)
        self.assertRaises(InvalidParameter, large_angle_scan, ArcLengths(lengths=[1]), p, 99)

    def test_cos_plus_scan(self):
        p = BoundParams(k=64, L=16)
        lengths = ArcLengths(lengths=np.full(64, 16))
        value, target = cos_plus_scan(lengths=lengths, p=p, grid_size=200)
        self.assertTrue(np.isclose(target, p.block_size - p.block_margin ** 2))
        self.assertLessEqual(value, p.block_size)

    def test_linearization(self):
        lengths = ArcLengths(lengths=[1, 2, 3])
        self.assertLess(linearization_check(lengths=lengths, mu=0.999), 0.01)
        self.assertRaises(InvalidParameter, linearization_check, lengths, 1.0)

    def test_modulus(self):
        self.assertTrue(np.isclose(modulus_check(lengths=ArcLengths(lengths=[1, 3]), mu=0.5), 1 / 64))


class TestEigenvalueChecks(unittest.TestCase):

    def test_no_eigenvalue_in_phi(self):
        chain = CondensedChain(interconnect=complete(k=2), lengths=ArcLengths(lengths=[1, 2]),
                               provenance=Provenance(model=ChainModel.ARCMOD, L=1.5))
        spectrum = eigenvalues_dense(stochastic=expand(chain=chain))
        self.assertEqual(P_near_1_check(chain=chain, spectrum=spectrum, p=BoundParams(k=64, L=16)), [])

    def test_cycle(self):
        chain = _cycle(m=8)
        spectrum = eigenvalues_dense(stochastic=expand(chain=chain))
        entries = P_near_1_check(chain=chain, spectrum=spectrum, p=BoundParams(k=1, L=8))
        self.assertEqual(len(entries), 7)
        for mu, distance, bound, passed in entries:
            self.assertLess(distance, 1e-12)
            self.assertIsNone(bound)
            self.assertTrue(passed)

    def test_without_S(self):
        chain = CondensedChain(interconnect=complete(k=2), lengths=ArcLengths(lengths=[1, 5]),
                               provenance=Provenance(model=ChainModel.ARCMOD, L=1))
        spectrum = Spectrum(eigenvalues=np.ones(6), source_dim=6)
        self.assertRaises(BoundNotApplicable, P_near_1_check, chain, spectrum, BoundParams(k=2, L=1))

    def test_perp_single_arc(self):
        chain = _cycle(m=8)
        mu = np.exp(2j * math.pi / 8)
        y = expand_eigvec(chain=chain, mu=mu, x=[1.0])
        ratio, bound, passed = perp_bound_check(chain=chain, pair=EigenPair(mu=mu, vector=y),
                                                p=BoundParams(k=1, L=8))
        self.assertEqual(ratio, 0.0)
        self.assertIsNone(bound)
        self.assertTrue(passed)

    def test_perp_outside(self):
        chain = _cycle(m=8)
        pair = EigenPair(mu=0.5, vector=np.ones(8))
        self.assertRaises(InvalidParameter, perp_bound_check, chain, pair, BoundParams(k=1, L=8))


class TestCheckReport(unittest.TestCase):

    def test_json(self):
        report = CheckReport(check='P_near_1', value=0.1234567890123456, bound=None, passed=None,
                             params={'k': 16}, seed=7)
        info = json_decode(string=report.to_json())
        self.assertEqual(info['check'], 'P_near_1')
        self.assertEqual(info['pass'], 'n/a')
        self.assertEqual(info['value'], 0.123456789012)
        self.assertIsNone(info['bound'])
        self.assertEqual(info['seed'], 7)
        self.assertFalse(report.failed)

    def test_failed(self):
        self.assertTrue(CheckReport(check='x', passed=False).failed)
        self.assertFalse(CheckReport(check='x', passed=False, hard=False).failed)
        self.assertFalse(CheckReport(check='x', passed=True).failed)
        self.assertEqual(CheckReport(check='x', value=0.5 + 0.25j).to_dict()['value'], [0.5, 0.25])


if __name__ == '__main__':
    unittest.main()
