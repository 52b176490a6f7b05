# -*- coding: utf-8 -*-

import unittest
from unittest import mock

import numpy as np

from libs.utils import create_rng
from libs.markov import InvalidParameter
from libs.markov import complete, bollobas_chung
from libs.markov import ChainModel, ArcLengths, Provenance, CondensedChain
from libs.markov import condensed_operator
from libs.experiments import SUITES, Verifier, run_suite, random_symmetric_stochastic
from libs.experiments.verify import _combine

from tests import SLOW_TESTS


def _shifted_residual(chain, mu, x) -> float:
    """ residual of C A - D_mu with the cyclic shift one row too far """
    x = np.asarray(x, dtype=complex)
    operator = condensed_operator(chain=chain, mu=mu, shift=2)
    return float(np.linalg.norm(operator @ x) / np.linalg.norm(x))


def _chain(interconnect, lengths) -> CondensedChain:
    lengths = ArcLengths(lengths=lengths)
    return CondensedChain(interconnect=interconnect, lengths=lengths,
                          provenance=Provenance(model=ChainModel.ARCMOD, L=lengths.mean))


def _even_chains():
    """ all arcs even: -1 is an eigenvalue with a constant condensed vector """
    return [
        _chain(interconnect=complete(k=6), lengths=[2, 4, 2, 6, 4, 2]),
        _chain(interconnect=bollobas_chung(k=4, rng=create_rng(seed=1)), lengths=[2, 4, 2, 6]),
    ]


class TestHelpers(unittest.TestCase):

    def test_random_interconnect(self):
        rng = create_rng(seed=1)
        for k in [1, 2, 5]:
            a = random_symmetric_stochastic(k=k, rng=rng)
            a.check()
            self.assertEqual(a.k, k)
            self.assertTrue(np.allclose(a.entries, a.entries.T))

    def test_combine(self):
        self.assertIsNone(_combine([]))
        self.assertIsNone(_combine([None, None]))
        self.assertTrue(_combine([None, True]))
        self.assertFalse(_combine([True, None, False]))

    def test_shifted_operator(self):
        # worked example: mu = -0.5, x = (1, -2) solves the true system only
        chain = _chain(interconnect=complete(k=2), lengths=[1, 2])
        x = np.array([1.0, -2.0], dtype=complex)
        exact = condensed_operator(chain=chain, mu=-0.5) @ x
        self.assertLess(np.linalg.norm(exact), 1e-12)
        chain = _chain(interconnect=random_symmetric_stochastic(k=3, rng=create_rng(seed=2)), lengths=[1, 2, 3])
        shifted = condensed_operator(chain=chain, mu=0.5, shift=2)
        self.assertTrue(np.allclose(shifted + np.diag(np.power(0.5, [1, 2, 3])),
                                    np.roll(chain.interconnect.entries, -1, axis=0)))


class TestEigenChecks(unittest.TestCase):

    def test_even_arcs(self):
        near, perp = Verifier(seed=5).eigen_checks(chains=_even_chains())
        self.assertEqual(near.check, 'P_near_1')
        self.assertEqual(perp.check, 'perp_bound')
        for report in [near, perp]:
            self.assertEqual(report.params['chains'], 2)
            self.assertEqual(report.params['skipped_S'], 0)
            self.assertGreaterEqual(report.params['eigenvalues'], 2)
            self.assertTrue(report.passed, report.to_json())

    def test_nothing_checked(self):
        # a tiny M fails S(M) on every chain
        near, perp = Verifier(seed=5, constants={'M': 0.01}).eigen_checks(chains=_even_chains())
        self.assertEqual(near.params['skipped_S'], 2)
        for report in [near, perp]:
            self.assertEqual(report.params['eigenvalues'], 0)
            self.assertIsNone(report.passed)
            self.assertFalse(report.failed)
            self.assertEqual(report.to_dict()['pass'], 'n/a')

    def test_distribution_match(self):
        verifier = Verifier(seed=5)
        report = verifier.distribution_match(samples=5000, rng=create_rng(seed=5))
        self.assertEqual(report.check, 'distribution_match')
        self.assertGreater(report.bound, 0.02)
        self.assertTrue(report.passed, report.to_json())


class TestSuites(unittest.TestCase):

    def test_names(self):
        self.assertEqual(SUITES, ['invariants', 'equivalence', 'lemmas'])
        self.assertRaises(InvalidParameter, run_suite, 'nope', 1)

    def test_invariants(self):
        reports = run_suite(name='invariants', seed=7, trials=40)
        self.assertEqual([item.check for item in reports], ['doubly_stochastic', 'interconnect_symmetric',
                                                            'cyclemod_total', 'bijection_roundtrip',
                                                            'conjugate_closed', 'gap_range'])
        for item in reports:
            self.assertTrue(item.passed, item.to_json())
            self.assertEqual(item.seed, 7)
            self.assertEqual(item.params['trials'], 40)

    def test_equivalence(self):
        reports = run_suite(name='equivalence', seed=3, trials=20)
        checks = {item.check: item for item in reports}
        self.assertEqual(set(checks), {'condensed_residual', 'expand_roundtrip',
                                       'condensed_determinant', 'polynomial_roots'})
        self.assertFalse(checks['polynomial_roots'].hard)
        for item in reports:
            self.assertFalse(item.failed, item.to_json())
        self.assertGreater(checks['condensed_residual'].params['pairs'], 0)

    def test_reproducible(self):
        first = [item.to_json() for item in run_suite(name='invariants', seed=11, trials=10)]
        second = [item.to_json() for item in run_suite(name='invariants', seed=11, trials=10)]
        self.assertEqual(first, second)

    def test_shifted_operator_fails(self):
        reports = run_suite(name='equivalence', seed=3, trials=20, residual_fn=_shifted_residual)
        checks = {item.check: item for item in reports}
        self.assertTrue(checks['condensed_residual'].failed)
        self.assertEqual(checks['condensed_residual'].to_dict()['pass'], False)

    def test_shifted_operator_patched(self):
        with mock.patch('libs.experiments.verify.condensed_residual', _shifted_residual):
            verifier = Verifier(seed=3)
            reports = verifier.run(suite='equivalence', trials=20)
        self.assertTrue(any(item.failed for item in reports))

    def test_constants(self):
        verifier = Verifier(seed=1, constants={'M': 4.0, 'gamma': 9.0})
        self.assertEqual(verifier.constants, {'M': 4.0, 'gamma': 9.0})
        reports = verifier.eigen_checks(chains=_even_chains()[:1])
        self.assertEqual(len(reports), 2)
        reports = run_suite(name='lemmas', seed=2, trials=100, constants={'M': 4.0, 'gamma': 9.0})
        checks = {item.check: item for item in reports}
        self.assertEqual(checks['S_failure_frequency'].params['M'], 4.0)
        self.assertEqual(checks['modulus_bound'].params['gamma'], 9.0)
        self.assertEqual(checks['modulus_bound'].params['M'], 4.0)
        self.assertIn('P_near_1', checks)

    @unittest.skipUnless(SLOW_TESTS, 'set CYCLEGAP_SLOW_TESTS=1')
    def test_lemmas(self):
        reports = run_suite(name='lemmas', seed=0)
        checks = [item.check for item in reports]
        for name in ['S_failure_frequency', 'low_mean_frequency', 'high_square_frequency',
                     'modulus_bound', 'linearization', 'small_angle_criterion',
                     'large_angle_scan', 'cos_plus_scan', 'distribution_match',
                     'P_near_1', 'perp_bound', 'interconnect_gap']:
            self.assertIn(name, checks)
        for item in reports:
            self.assertFalse(item.failed, item.to_json())

    @unittest.skipUnless(SLOW_TESTS, 'set CYCLEGAP_SLOW_TESTS=1')
    def test_full_equivalence(self):
        for item in run_suite(name='equivalence', seed=1):
            self.assertFalse(item.failed, item.to_json())


if __name__ == '__main__':
    unittest.main()
