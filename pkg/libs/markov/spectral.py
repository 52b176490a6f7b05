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
    Spectral
    ~~~~~~~~

    Eigenvalues and the absolute spectral gap of expanded chains, and the
    condensed k-dimensional eigen-problem

        C A x = D_mu x,     (D_mu)_ii = mu^L_i,     C_{i, i-1} = 1 (cyclic)

    which is equivalent to the N-dimensional one through
    y[i, l] = x_i * mu^(L_i - l).
"""

from typing import Optional, List, Tuple, Dict, Callable

import numpy as np
import pandas as pd
import scipy.linalg
import scipy.sparse.linalg

from ..utils import Log, GlobalVariable

from .errors import InvalidParameter, ZeroVector
from .errors import SizeLimitExceeded, NumericalFailure, NotStochastic
from .errors import ConsistencyError, SingularExpansion
from .chain import CondensedChain, StochasticMatrix, expand


UNIT_TOLERANCE = 1e-8           # eigenvalue 1 must be this close
FULL_TOLERANCE = 1e-8           # full eigenpair residual
CONDENSED_TOLERANCE = 1e-6      # condensed/full equivalence
SMALL_MODULUS = 0.1             # below this mu^(L_i - l) is ill-conditioned

ResidualFunction = Callable[[CondensedChain, complex, np.ndarray], float]


class Spectrum:

    def __init__(self, eigenvalues, source_dim: int):
        super().__init__()
        values = np.asarray(eigenvalues, dtype=complex).ravel()
        if len(values) != source_dim:
            raise InvalidParameter('spectrum has %d values for dimension %d' % (len(values), source_dim))
        self.__eigenvalues = values
        self.__source_dim = source_dim

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.__eigenvalues

    @property
    def source_dim(self) -> int:
        return self.__source_dim

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.__eigenvalues)

    def unit_index(self) -> int:
        """ index of the eigenvalue closest to 1 """
        if len(self.__eigenvalues) == 0:
            raise NotStochastic('empty spectrum')
        index = int(np.argmin(np.abs(self.__eigenvalues - 1.0)))
        distance = abs(self.__eigenvalues[index] - 1.0)
        if distance > UNIT_TOLERANCE:
            raise NotStochastic('no eigenvalue within %g of 1 (closest at distance %g)' % (UNIT_TOLERANCE, distance))
        return index

    def deflated(self) -> np.ndarray:
        """ eigenvalues with exactly one copy of 1 removed """
        return np.delete(self.__eigenvalues, self.unit_index())

    @property
    def second_modulus(self) -> float:
        rest = self.deflated()
        return float(np.max(np.abs(rest))) if len(rest) > 0 else 0.0

    def to_csv(self, path: str):
        values = self.__eigenvalues
        frame = pd.DataFrame({'re': values.real, 'im': values.imag, 'modulus': np.abs(values)})
        frame.to_csv(path, index=False, float_format='%.12g')

    def __len__(self) -> int:
        return len(self.__eigenvalues)

    def __repr__(self) -> str:
        return '<Spectrum N=%d />' % self.__source_dim


class EigenPair:

    def __init__(self, mu: complex, vector, condensed: bool = False):
        super().__init__()
        self.__mu = complex(mu)
        self.__vector = np.asarray(vector, dtype=complex).ravel()
        self.__condensed = condensed

    @property
    def mu(self) -> complex:
        return self.__mu

    @property
    def vector(self) -> np.ndarray:
        return self.__vector

    @property
    def condensed(self) -> bool:
        return self.__condensed

    def to_dict(self) -> Dict:
        return {
            'mu': [self.__mu.real, self.__mu.imag],
            'condensed': self.__condensed,
            'vector': [[float(z.real), float(z.imag)] for z in self.__vector],
        }


#
#   Dense eigensolver
#


def _dense(stochastic: StochasticMatrix, dense_limit: Optional[int]) -> np.ndarray:
    if dense_limit is None:
        dense_limit = GlobalVariable().settings.dense_limit
    if stochastic.size > dense_limit:
        raise SizeLimitExceeded('N=%d exceeds the dense eigensolver limit %d' % (stochastic.size, dense_limit))
    return stochastic.to_dense()


def eigenvalues_dense(stochastic: StochasticMatrix, dense_limit: Optional[int] = None) -> Spectrum:
    """
    All N eigenvalues, LAPACK geev (balancing, Hessenberg, shifted QR);
    symmetric inputs go through the symmetric solver.

    :param stochastic:  expanded chain
    :param dense_limit: largest N accepted (default from settings)
    """
    dense = _dense(stochastic=stochastic, dense_limit=dense_limit)
    try:
        if stochastic.symmetric:
            values = scipy.linalg.eigvalsh(dense)
        else:
            values = scipy.linalg.eigvals(dense)
    except (np.linalg.LinAlgError, ValueError) as error:
        Log.error(msg='eigensolver failed on N=%d: %s' % (stochastic.size, error))
        raise NumericalFailure('QR iteration did not converge for N=%d: %s' % (stochastic.size, error))
    if not np.all(np.isfinite(values)):
        raise NumericalFailure('eigensolver returned non-finite values for N=%d' % stochastic.size)
    return Spectrum(eigenvalues=values, source_dim=stochastic.size)


def eigenpairs_dense(stochastic: StochasticMatrix, dense_limit: Optional[int] = None) -> List[EigenPair]:
    dense = _dense(stochastic=stochastic, dense_limit=dense_limit)
    try:
        values, vectors = scipy.linalg.eig(dense)
    except (np.linalg.LinAlgError, ValueError) as error:
        raise NumericalFailure('QR iteration did not converge for N=%d: %s' % (stochastic.size, error))
    return [EigenPair(mu=values[i], vector=vectors[:, i]) for i in range(len(values))]


def absolute_spectral_gap(spectrum: Spectrum) -> float:
    """ min(1 - |mu|) after removing the single eigenvalue nearest to 1 """
    rest = spectrum.deflated()
    if len(rest) == 0:
        return 1.0
    return max(0.0, float(np.min(1.0 - np.abs(rest))))


def gap_iterative(stochastic: StochasticMatrix, rng: np.random.Generator,
                  count: int = 6, tolerance: Optional[float] = None) -> float:
    """ gap from the leading eigenvalues by implicitly restarted Arnoldi (ARPACK) """
    size = stochastic.size
    if count + 1 >= size:
        return absolute_spectral_gap(spectrum=eigenvalues_dense(stochastic=stochastic))
    if tolerance is None:
        tolerance = GlobalVariable().settings.arnoldi_tolerance
    # the all-ones start vector is the stationary one, use a random one
    start = rng.random(size) + 0.5
    try:
        values = scipy.sparse.linalg.eigs(stochastic.matrix, k=count, which='LM', v0=start,
                                          tol=tolerance, return_eigenvectors=False)
    except scipy.sparse.linalg.ArpackError as error:
        raise NumericalFailure('Arnoldi iteration failed for N=%d: %s' % (size, error))
    leading = Spectrum(eigenvalues=values, source_dim=len(values))
    rest = leading.deflated()
    return max(0.0, float(1.0 - np.max(np.abs(rest))))


def full_residual(stochastic: StochasticMatrix, mu: complex, y) -> float:
    """ ||M y - mu y|| / ||y|| """
    y = np.asarray(y, dtype=complex)
    norm = np.linalg.norm(y)
    if norm == 0:
        raise ZeroVector('zero eigenvector')
    return float(np.linalg.norm(stochastic.matrix @ y - mu * y) / norm)


def is_conjugate_closed(spectrum: Spectrum, tolerance: float = 1e-8) -> bool:
    """ every eigenvalue pairs with a distinct conjugate """
    remaining = list(spectrum.eigenvalues)
    while len(remaining) > 0:
        mu = remaining.pop()
        if abs(mu.imag) <= tolerance:
            continue
        distances = [abs(nu - mu.conjugate()) for nu in remaining]
        if len(distances) == 0:
            return False
        index = int(np.argmin(distances))
        if distances[index] > tolerance:
            return False
        remaining.pop(index)
    return True


#
#   Condensed problem
#


def _ends(chain: CondensedChain) -> np.ndarray:
    """ flat indices of the last node (i, L_i) of every arc """
    lengths = chain.lengths
    return lengths.offsets + lengths.values - 1


def condensed_operator(chain: CondensedChain, mu: complex, shift: int = 1) -> np.ndarray:
    """ C A - D_mu, C the cyclic shift by 'shift' rows """
    shifted = np.roll(chain.interconnect.entries, shift, axis=0)
    powers = np.power(complex(mu), chain.lengths.values)
    return shifted.astype(complex) - np.diag(powers)


def condensed_determinant(chain: CondensedChain, mu: complex) -> complex:
    return complex(np.linalg.det(condensed_operator(chain=chain, mu=mu)))


def condensed_residual(chain: CondensedChain, mu: complex, x) -> float:
    """ ||C A x - D_mu x|| / ||x|| """
    x = np.asarray(x, dtype=complex).ravel()
    if len(x) != chain.k:
        raise InvalidParameter('condensed vector has %d entries, expected k=%d' % (len(x), chain.k))
    norm = np.linalg.norm(x)
    if norm == 0:
        raise ZeroVector('zero condensed vector')
    ax = chain.interconnect.entries @ x
    left = np.roll(ax, 1)
    right = np.power(complex(mu), chain.lengths.values) * x
    return float(np.linalg.norm(left - right) / norm)


def condensed_polynomial_roots(chain: CondensedChain, cutoff: float = 1e-10) -> np.ndarray:
    """
    Roots of det(C A - D_mu), a polynomial of degree N in mu

    Coefficients are recovered by sampling the determinant at N+1 points of
    the unit circle and inverting the DFT; coefficients below
    cutoff * max|c| are treated as exact zeros.
    """
    degree = chain.size
    samples = degree + 1
    points = np.exp(2j * np.pi * np.arange(samples) / samples)
    values = np.array([condensed_determinant(chain=chain, mu=z) for z in points])
    coefficients = np.fft.fft(values) / samples
    coefficients[np.abs(coefficients) < cutoff * np.max(np.abs(coefficients))] = 0.0
    return np.roots(coefficients[::-1])


def restrict_eigvec(chain: CondensedChain, pair: EigenPair, stochastic: Optional[StochasticMatrix] = None,
                    check: bool = True) -> np.ndarray:
    """
    x_i = y[i, L_i]

    For |mu| > 0.1 the condensed residual of the result is below 1e-6,
    otherwise ConsistencyError (the expansion or its indexing is broken).
    """
    if pair.condensed:
        raise InvalidParameter('restriction needs a full eigenvector')
    y = pair.vector
    if len(y) != chain.size:
        raise InvalidParameter('eigenvector has %d entries, expected N=%d' % (len(y), chain.size))
    x = y[_ends(chain=chain)]
    if not check:
        return x
    if stochastic is None:
        stochastic = expand(chain=chain)
    residual = full_residual(stochastic=stochastic, mu=pair.mu, y=y)
    if residual > FULL_TOLERANCE:
        raise ConsistencyError('full eigenpair residual %g above %g' % (residual, FULL_TOLERANCE))
    if abs(pair.mu) > SMALL_MODULUS:
        residual = condensed_residual(chain=chain, mu=pair.mu, x=x)
        if residual > CONDENSED_TOLERANCE:
            raise ConsistencyError('condensed residual %g at mu=%s after restriction' % (residual, pair.mu))
    return x


def expand_eigvec(chain: CondensedChain, mu: complex, x, tolerance: float = CONDENSED_TOLERANCE,
                  stochastic: Optional[StochasticMatrix] = None) -> np.ndarray:
    """ y[i, l] = x_i * mu^(L_i - l), l = 1..L_i """
    mu = complex(mu)
    if mu == 0:
        raise SingularExpansion('cannot expand an eigenvector at mu = 0')
    x = np.asarray(x, dtype=complex).ravel()
    residual = condensed_residual(chain=chain, mu=mu, x=x)
    if residual > tolerance:
        raise ConsistencyError('(mu, x) is not a condensed solution: residual %g' % residual)
    parts = []
    for x_i, size in zip(x, chain.lengths.values):
        exponents = np.arange(int(size) - 1, -1, -1)
        parts.append(x_i * np.power(mu, exponents))
    y = np.concatenate(parts)
    if stochastic is None:
        stochastic = expand(chain=chain)
    residual = full_residual(stochastic=stochastic, mu=mu, y=y)
    if residual > tolerance:
        raise ConsistencyError('expanded eigenvector residual %g above %g' % (residual, tolerance))
    return y


def decompose_parallel(x) -> Tuple[complex, np.ndarray]:
    """ x = x_par * 1 + x_perp with 1^T x_perp = 0 """
    x = np.asarray(x, dtype=complex).ravel()
    x_par = complex(np.mean(x))
    return x_par, x - x_par
