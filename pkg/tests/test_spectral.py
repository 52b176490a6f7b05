# -*- coding: utf-8 -*-

import os
import tempfile
import unittest
from unittest import mock

import numpy as np
import pandas as pd
import scipy.sparse

from libs.utils import create_rng, GlobalVariable, DENSE_LIMIT_ENV
from libs.markov import ZeroVector, SizeLimitExceeded, NotStochastic, InvalidParameter
from libs.markov import ConsistencyError, SingularExpansion
from libs.markov import complete, bollobas_chung
from libs.markov import ChainModel, ArcLengths, Provenance, CondensedChain, StochasticMatrix
from libs.markov import sample_arcmod, sample_cyclemod, expand, symmetrize
from libs.markov import Spectrum, EigenPair
from libs.markov import eigenvalues_dense, eigenpairs_dense, absolute_spectral_gap, gap_iterative
from libs.markov import condensed_residual, condensed_determinant, condensed_polynomial_roots
from libs.markov import restrict_eigvec, expand_eigvec, decompose_parallel
from libs.markov import full_residual, is_conjugate_closed


def _chain(lengths, interconnect=None) -> CondensedChain:
    lengths = ArcLengths(lengths=lengths)
    if interconnect is None:
        interconnect = complete(k=lengths.k)
    return CondensedChain(interconnect=interconnect, lengths=lengths,
                          provenance=Provenance(model=ChainModel.ARCMOD, L=1.0))


def _worked_example() -> CondensedChain:
    """ k=2, lengths (1, 2), complete A: spectrum {1, -0.5, 0} """
    return _chain(lengths=[1, 2])


def _worked_vector() -> np.ndarray:
    # C A x = D_mu x at mu = -0.5: x_1 = mu x_2
    return np.array([1.0, -2.0], dtype=complex)


class TestEigenvalues(unittest.TestCase):

    def test_cycle(self):
        spectrum = eigenvalues_dense(stochastic=expand(chain=_chain(lengths=[8])))
        roots = np.exp(2j * np.pi * np.arange(8) / 8)
        for root in roots:
            self.assertLess(np.min(np.abs(spectrum.eigenvalues - root)), 1e-10)
        self.assertEqual(absolute_spectral_gap(spectrum=spectrum), 0.0)

    def test_two_state(self):
        p = 0.3
        matrix = scipy.sparse.csr_matrix(np.array([[1 - p, p], [p, 1 - p]]))
        stochastic = StochasticMatrix(matrix=matrix, lengths=ArcLengths(lengths=[2]), symmetric=True)
        spectrum = eigenvalues_dense(stochastic=stochastic)
        np.testing.assert_allclose(np.sort(spectrum.eigenvalues.real), [0.4, 1.0], atol=1e-12)
        self.assertTrue(np.isclose(absolute_spectral_gap(spectrum=spectrum), 0.6))

    def test_worked_example(self):
        spectrum = eigenvalues_dense(stochastic=expand(chain=_worked_example()))
        self.assertEqual(len(spectrum), 3)
        np.testing.assert_allclose(np.sort(spectrum.eigenvalues.real), [-0.5, 0.0, 1.0], atol=1e-8)
        np.testing.assert_allclose(spectrum.eigenvalues.imag, 0.0, atol=1e-8)
        self.assertTrue(abs(absolute_spectral_gap(spectrum=spectrum) - 0.5) < 1e-8)
        self.assertTrue(abs(spectrum.second_modulus - 0.5) < 1e-8)

    def test_size_limit(self):
        stochastic = expand(chain=_chain(lengths=[10, 10]))
        self.assertRaises(SizeLimitExceeded, eigenvalues_dense, stochastic, 19)
        self.assertEqual(len(eigenvalues_dense(stochastic=stochastic, dense_limit=20)), 20)

    def test_shared_size_limit(self):
        stochastic = expand(chain=_chain(lengths=[10, 10]))
        with tempfile.TemporaryDirectory() as tmp:
            ini = os.path.join(tmp, 'config.ini')
            with open(ini, 'w', encoding='utf-8') as handle:
                handle.write('[spectral]\ndense_limit = 19\n')
            self.addCleanup(GlobalVariable().prepare, None)
            GlobalVariable().prepare(ini_file=ini)
            with mock.patch.dict(os.environ, {DENSE_LIMIT_ENV: ''}):
                self.assertRaises(SizeLimitExceeded, eigenvalues_dense, stochastic)
                self.assertRaises(SizeLimitExceeded, eigenpairs_dense, stochastic)
        with mock.patch.dict(os.environ, {DENSE_LIMIT_ENV: ''}):
            GlobalVariable().prepare(ini_file=None)
            self.assertEqual(len(eigenvalues_dense(stochastic=stochastic)), 20)

    def test_conjugate_closed(self):
        rng = create_rng(seed=3)
        chain = sample_arcmod(L=4, k=8, interconnect=bollobas_chung(k=8, rng=rng), rng=rng)
        spectrum = eigenvalues_dense(stochastic=expand(chain=chain))
        self.assertTrue(is_conjugate_closed(spectrum=spectrum))
        self.assertFalse(is_conjugate_closed(spectrum=Spectrum(eigenvalues=[1.0, 0.5j], source_dim=2)))

    def test_transpose(self):
        rng = create_rng(seed=4)
        chain = sample_cyclemod(n=60, k=6, interconnect=bollobas_chung(k=6, rng=rng), rng=rng)
        stochastic = expand(chain=chain)
        gap = absolute_spectral_gap(spectrum=eigenvalues_dense(stochastic=stochastic))
        gap_t = absolute_spectral_gap(spectrum=eigenvalues_dense(stochastic=stochastic.transpose()))
        self.assertLess(abs(gap - gap_t), 1e-9)

    def test_symmetrized_gap(self):
        # the reversible comparison chain stays within a constant of k^2/n^2
        rng = create_rng(seed=5)
        chain = sample_cyclemod(n=256, k=16, interconnect=complete(k=16), rng=rng)
        stochastic = symmetrize(stochastic=expand(chain=chain))
        gap = absolute_spectral_gap(spectrum=eigenvalues_dense(stochastic=stochastic))
        self.assertGreaterEqual(gap, 0.0)
        self.assertLessEqual(gap, 10.0 * 16 ** 2 / 256 ** 2)


class TestGap(unittest.TestCase):

    def test_roots_of_unity(self):
        spectrum = Spectrum(eigenvalues=np.exp(2j * np.pi * np.arange(5) / 5), source_dim=5)
        self.assertEqual(absolute_spectral_gap(spectrum=spectrum), 0.0)

    def test_values(self):
        self.assertTrue(np.isclose(absolute_spectral_gap(spectrum=Spectrum([1.0, 0.4], 2)), 0.6))
        self.assertTrue(np.isclose(absolute_spectral_gap(spectrum=Spectrum([1.0, -0.5, 0.0], 3)), 0.5))
        self.assertEqual(absolute_spectral_gap(spectrum=Spectrum([1.0], 1)), 1.0)

    def test_repeated_one(self):
        # reducible: a second copy of 1 survives deflation
        self.assertEqual(absolute_spectral_gap(spectrum=Spectrum([1.0, 1.0, 0.2], 3)), 0.0)

    def test_not_stochastic(self):
        self.assertRaises(NotStochastic, absolute_spectral_gap, Spectrum([0.9, 0.5], 2))

    def test_cardinality(self):
        self.assertRaises(InvalidParameter, Spectrum, [1.0, 0.5], 3)

    def test_csv(self):
        spectrum = Spectrum(eigenvalues=[1.0, -0.5, 0.25j], source_dim=3)
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, 'spectrum.csv')
            spectrum.to_csv(path=path)
            frame = pd.read_csv(path)
        self.assertEqual(list(frame.columns), ['re', 'im', 'modulus'])
        self.assertTrue(np.allclose(frame['modulus'], [1.0, 0.5, 0.25]))

    def test_iterative(self):
        rng = create_rng(seed=6)
        for seed in range(3):
            chain = sample_cyclemod(n=400, k=20, interconnect=complete(k=20), rng=rng)
            stochastic = expand(chain=chain)
            dense = absolute_spectral_gap(spectrum=eigenvalues_dense(stochastic=stochastic))
            arnoldi = gap_iterative(stochastic=stochastic, rng=create_rng(seed=seed), tolerance=1e-12)
            self.assertLess(abs(dense - arnoldi), 1e-6)

    def test_iterative_small(self):
        stochastic = expand(chain=_worked_example())
        self.assertTrue(abs(gap_iterative(stochastic=stochastic, rng=create_rng(seed=0)) - 0.5) < 1e-8)


class TestCondensed(unittest.TestCase):

    def test_cycle(self):
        chain = _chain(lengths=[7])
        for t in range(7):
            mu = np.exp(2j * np.pi * t / 7)
            self.assertLess(condensed_residual(chain=chain, mu=mu, x=[1.0]), 1e-12)

    def test_worked_example(self):
        chain = _worked_example()
        self.assertLess(condensed_residual(chain=chain, mu=-0.5, x=_worked_vector()), 1e-10)
        self.assertGreater(condensed_residual(chain=chain, mu=0.9, x=[1.0, 1.0]), 0.05)
        # det(C A - D_mu) = mu (mu^2 - 0.5 mu - 0.5) up to sign
        for mu in [1.0, -0.5, 0.0]:
            self.assertLess(abs(condensed_determinant(chain=chain, mu=mu)), 1e-12)
        self.assertGreater(abs(condensed_determinant(chain=chain, mu=0.5)), 0.1)

    def test_zero_vector(self):
        self.assertRaises(ZeroVector, condensed_residual, _worked_example(), 0.5, [0.0, 0.0])
        self.assertRaises(InvalidParameter, condensed_residual, _worked_example(), 0.5, [1.0])

    def test_polynomial_roots(self):
        roots = condensed_polynomial_roots(chain=_worked_example())
        self.assertEqual(len(roots), 3)
        for mu in [1.0, -0.5, 0.0]:
            self.assertLess(np.min(np.abs(roots - mu)), 1e-6)

    def test_polynomial_roots_match(self):
        # short arcs keep the nilpotent part from spilling above |mu| = 0.1
        chain = _chain(lengths=[2, 3, 1, 4], interconnect=bollobas_chung(k=4, rng=create_rng(seed=8)))
        spectrum = eigenvalues_dense(stochastic=expand(chain=chain))
        roots = condensed_polynomial_roots(chain=chain)
        for mu in spectrum.eigenvalues:
            if abs(mu) > 0.1:
                self.assertLess(abs(condensed_determinant(chain=chain, mu=mu)), 1e-8)
        self.assertEqual(len(roots), chain.size)


class TestEigenvectors(unittest.TestCase):

    def test_cycle(self):
        chain = _chain(lengths=[4])
        y = expand_eigvec(chain=chain, mu=1j, x=[1.0])
        self.assertTrue(np.allclose(y, [1j ** 3, 1j ** 2, 1j, 1.0]))

    def test_unit_lengths(self):
        chain = _chain(lengths=[1, 1, 1])
        x = np.array([1.0, 1.0, 1.0], dtype=complex)
        self.assertTrue(np.allclose(expand_eigvec(chain=chain, mu=1.0, x=x), x))

    def test_worked_example(self):
        chain = _worked_example()
        stochastic = expand(chain=chain)
        y = expand_eigvec(chain=chain, mu=-0.5, x=_worked_vector())
        self.assertLess(full_residual(stochastic=stochastic, mu=-0.5, y=y), 1e-10)
        x = restrict_eigvec(chain=chain, pair=EigenPair(mu=-0.5, vector=y))
        self.assertTrue(np.allclose(x, _worked_vector()))

    def test_restrict_dense(self):
        chain = _worked_example()
        stochastic = expand(chain=chain)
        for pair in eigenpairs_dense(stochastic=stochastic):
            if abs(pair.mu + 0.5) < 1e-8:
                x = restrict_eigvec(chain=chain, pair=pair, stochastic=stochastic)
                # proportional to (1, -2)
                self.assertLess(abs(2 * x[0] + x[1]), 1e-8 * np.linalg.norm(x))

    def test_roundtrip(self):
        chain = _chain(lengths=[3, 1, 4, 2, 5])
        stochastic = expand(chain=chain)
        for pair in eigenpairs_dense(stochastic=stochastic):
            if abs(pair.mu) <= 0.1:
                continue
            x = restrict_eigvec(chain=chain, pair=pair, stochastic=stochastic)
            y = expand_eigvec(chain=chain, mu=pair.mu, x=x, stochastic=stochastic)
            self.assertLess(np.linalg.norm(y - pair.vector) / np.linalg.norm(pair.vector), 1e-6)
            self.assertTrue(np.allclose(restrict_eigvec(chain=chain, pair=EigenPair(mu=pair.mu, vector=y),
                                                        stochastic=stochastic), x))

    def test_errors(self):
        chain = _worked_example()
        self.assertRaises(SingularExpansion, expand_eigvec, chain, 0.0, [1.0, 1.0])
        self.assertRaises(ConsistencyError, expand_eigvec, chain, 0.9, [1.0, 1.0])
        # a vector that is not an eigenvector at all
        pair = EigenPair(mu=-0.5, vector=[1.0, 2.0, 3.0])
        self.assertRaises(ConsistencyError, restrict_eigvec, chain, pair)
        self.assertRaises(InvalidParameter, restrict_eigvec, chain, EigenPair(mu=-0.5, vector=[1.0, 1.0]))

    def test_eigenpair_dict(self):
        info = EigenPair(mu=0.5 + 0.25j, vector=[1.0, 1j], condensed=True).to_dict()
        self.assertEqual(info['mu'], [0.5, 0.25])
        self.assertEqual(info['vector'], [[1.0, 0.0], [0.0, 1.0]])
        self.assertTrue(info['condensed'])


class TestParallel(unittest.TestCase):

    def test_constant(self):
        x_par, x_perp = decompose_parallel(x=[1.0, 1.0, 1.0])
        self.assertEqual(x_par, 1.0)
        self.assertTrue(np.allclose(x_perp, 0.0))

    def test_alternating(self):
        x_par, x_perp = decompose_parallel(x=[1.0, -1.0])
        self.assertEqual(x_par, 0.0)
        self.assertTrue(np.allclose(x_perp, [1.0, -1.0]))

    def test_pythagoras(self):
        rng = create_rng(seed=10)
        for k in [2, 5, 17]:
            x = rng.normal(size=k) + 1j * rng.normal(size=k)
            x_par, x_perp = decompose_parallel(x=x)
            self.assertLess(abs(np.sum(x_perp)), 1e-12)
            total = np.vdot(x, x).real
            self.assertTrue(np.isclose(total, k * abs(x_par) ** 2 + np.vdot(x_perp, x_perp).real))


if __name__ == '__main__':
    unittest.main()
