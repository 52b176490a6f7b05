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
    Theory
    ~~~~~~

    Lemma-level quantities of the lower bound on the spectral gap and the
    deterministic criteria they feed, so the probabilistic statements can be
    exercised by Monte Carlo:

        Phi          1 - 1/(L log^gamma k) <= |mu| <= 1, mu != 1
        small angles |arg mu| <= pi / (M_phi L log k)
        S(M)         max L_i <= M L log k
        eps_k        4 M log^-(gamma - 1) k
        delta_k      eps_k / (2 Delta_k - Delta_k^2 - eps_k)
        P(mu)        (1/k) sum mu^L_i
"""

import math
from enum import Enum
from typing import Optional, List, Tuple, Dict, Any

import numpy as np

from ..utils import Log
from ..utils import json_encode

from .errors import InvalidParameter, DomainError, BoundNotApplicable
from .errors import Contradiction, InvariantViolation
from .interconnect import ClassParams, clamped_log, class_params_for
from .chain import ChainModel, ArcLengths, CondensedChain, StochasticMatrix
from .chain import geometric_draws
from .spectral import Spectrum, EigenPair
from .spectral import restrict_eigvec, decompose_parallel


MODULUS_TOLERANCE = 1e-9        # |mu| up to 1 + this still counts as on the unit circle
EXACT_TOLERANCE = 1e-12         # |1 - P(mu)| this small passes without a bound
PARALLEL_TOLERANCE = 1e-14
MODULUS_RINGS = 3


class BoundParams:
    """
    Constants of the bound together with the instance size (k, L)

    Construction only checks M > 0, k >= 1 and L >= 1; the constraints the
    theorems need are checked by validate_for_theorems().
    """

    def __init__(self, k: float, L: float, M: float = 3.0, M_phi: Optional[float] = None,
                 gamma: float = 8.0, eta: float = 3.5, theta: float = 1.5, beta: float = 1.2,
                 class_params: Optional[ClassParams] = None,
                 rho_l: Optional[float] = None, rho_u: Optional[float] = None):
        super().__init__()
        if not M > 0:
            raise InvalidParameter('M must be positive: %s' % M)
        if not k >= 1:
            raise InvalidParameter('k must be >= 1: %s' % k)
        if not L >= 1:
            raise InvalidParameter('L must be >= 1: %s' % L)
        if M_phi is None:
            M_phi = 3 * math.pi * M
        if not M_phi > 0:
            raise InvalidParameter('M_phi must be positive: %s' % M_phi)
        if class_params is None:
            class_params = ClassParams(c=1.0, alpha=0.0)
        self.__k = float(k)
        self.__L = float(L)
        self.__M = float(M)
        self.__M_phi = float(M_phi)
        self.__gamma = float(gamma)
        self.__eta = float(eta)
        self.__theta = float(theta)
        self.__beta = float(beta)
        self.__class_params = class_params
        self.__rho_l = rho_l
        self.__rho_u = rho_u

    @property
    def k(self) -> float:
        return self.__k

    @property
    def L(self) -> float:
        return self.__L

    @property
    def M(self) -> float:
        return self.__M

    @property
    def M_phi(self) -> float:
        return self.__M_phi

    @property
    def gamma(self) -> float:
        return self.__gamma

    @property
    def eta(self) -> float:
        return self.__eta

    @property
    def theta(self) -> float:
        return self.__theta

    @property
    def beta(self) -> float:
        return self.__beta

    @property
    def class_params(self) -> ClassParams:
        return self.__class_params

    @property
    def rho_l(self) -> Optional[float]:
        return self.__rho_l

    @property
    def rho_u(self) -> Optional[float]:
        return self.__rho_u

    #
    #   Derived thresholds
    #

    @property
    def log_k(self) -> float:
        return clamped_log(k=self.__k)

    @property
    def inner_radius(self) -> float:
        """ 1 - 1/(L log^gamma k) """
        return 1.0 - 1.0 / (self.__L * self.log_k ** self.__gamma)

    @property
    def angle_threshold(self) -> float:
        """ pi / (M_phi L log k) """
        return math.pi / (self.__M_phi * self.__L * self.log_k)

    @property
    def longest_allowed(self) -> float:
        """ M L log k """
        return self.__M * self.__L * self.log_k

    @property
    def block_size(self) -> int:
        """ m_k = ceil(log^theta k) """
        return int(math.ceil(self.log_k ** self.__theta))

    @property
    def block_margin(self) -> float:
        """ sigma_k = log^-beta k """
        return self.log_k ** (-self.__beta)

    @property
    def large_angle_bound(self) -> float:
        """ 1 - log^-eta k """
        return 1.0 - self.log_k ** (-self.__eta)

    def validate_for_theorems(self):
        """ M > 1, gamma > 7 + alpha, eta > 3, M_phi >= 3 pi M, theta, beta > 1 """
        alpha = self.__class_params.alpha
        if not self.__M > 1:
            raise InvalidParameter('M must exceed 1: %s' % self.__M)
        if not self.__gamma > 7 + alpha:
            raise InvalidParameter('gamma must exceed 7 + alpha = %g: %s' % (7 + alpha, self.__gamma))
        if not self.__eta > 3:
            raise InvalidParameter('eta must exceed 3: %s' % self.__eta)
        if self.__M_phi < 3 * math.pi * self.__M:
            raise InvalidParameter('M_phi must be >= 3 pi M = %g: %s' % (3 * math.pi * self.__M, self.__M_phi))
        if not (self.__theta > 1 and self.__beta > 1):
            raise InvalidParameter('theta and beta must exceed 1: %s, %s' % (self.__theta, self.__beta))

    def replace(self, **kwargs):
        info = {
            'k': self.__k, 'L': self.__L, 'M': self.__M, 'M_phi': self.__M_phi,
            'gamma': self.__gamma, 'eta': self.__eta, 'theta': self.__theta, 'beta': self.__beta,
            'class_params': self.__class_params, 'rho_l': self.__rho_l, 'rho_u': self.__rho_u,
        }
        if 'M' in kwargs and 'M_phi' not in kwargs:
            info['M_phi'] = None
        info.update(kwargs)
        return BoundParams(**info)

    def to_dict(self) -> Dict[str, float]:
        return {
            'k': self.__k, 'L': self.__L,
            'M': self.__M, 'M_phi': self.__M_phi,
            'gamma': self.__gamma, 'eta': self.__eta,
            'c': self.__class_params.c, 'alpha': self.__class_params.alpha,
        }

    @classmethod
    def for_chain(cls, chain: CondensedChain, class_params: Optional[ClassParams] = None, **kwargs):
        """ k and L from the chain, class constants measured from its interconnect """
        if class_params is None:
            try:
                class_params = class_params_for(matrix=chain.interconnect)
            except InvariantViolation as error:
                Log.warning(msg='interconnect gap unusable, class c=1 assumed: %s' % error)
                class_params = None
        return cls(k=chain.k, L=chain.mean_length, class_params=class_params, **kwargs)

    def __repr__(self) -> str:
        return '<BoundParams k=%g L=%g M=%g gamma=%g eta=%g />' % (self.__k, self.__L, self.__M,
                                                                   self.__gamma, self.__eta)


class AngleRegion(Enum):
    SMALL_ANGLES = 'small'
    LARGE_ANGLES = 'large'
    OUTSIDE = 'outside'


class CheckReport:
    """ one JSON line: {check, params, value, bound, pass, seed} """

    NOT_APPLICABLE = 'n/a'

    def __init__(self, check: str, value: Any = None, bound: Any = None, passed: Optional[bool] = None,
                 params: Optional[Dict[str, Any]] = None, seed: Optional[int] = None, hard: bool = True):
        super().__init__()
        self.check = check
        self.params = {} if params is None else params
        self.value = value
        self.bound = bound
        self.passed = passed
        self.seed = seed
        # report-only checks never fail a run
        self.hard = hard

    @property
    def failed(self) -> bool:
        return self.hard and self.passed is False

    def to_dict(self) -> Dict[str, Any]:
        return {
            'check': self.check,
            'params': self.params,
            'value': _plain(self.value),
            'bound': _plain(self.bound),
            'pass': self.NOT_APPLICABLE if self.passed is None else bool(self.passed),
            'seed': self.seed,
        }

    def to_json(self) -> str:
        return json_encode(obj=self.to_dict())

    def __repr__(self) -> str:
        return '<CheckReport check="%s" pass=%s />' % (self.check, self.passed)


def _plain(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, complex) or isinstance(value, np.complexfloating):
        return [float('%.12g' % value.real), float('%.12g' % value.imag)]
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isinf(value) or math.isnan(value) else float('%.12g' % value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    return value


#
#   Bounds
#


def epsilon_k(p: BoundParams) -> float:
    """ 4 M log^-(gamma - 1) k, needs k >= 3 so that log k > 1 """
    if p.k < 3:
        raise DomainError('epsilon_k needs k >= 3: %g' % p.k)
    return 4 * p.M * math.log(p.k) ** (-(p.gamma - 1))


def delta_from(eps: float, Delta: float) -> float:
    """ eps / (2 Delta - Delta^2 - eps) """
    denominator = 2 * Delta - Delta * Delta - eps
    if denominator <= 0:
        raise BoundNotApplicable('vacuous bound: 2 Delta - Delta^2 - eps = %g' % denominator)
    return eps / denominator


def delta_k(p: BoundParams) -> float:
    eps = epsilon_k(p=p)
    Delta = p.class_params.delta(k=p.k)
    return delta_from(eps=eps, Delta=Delta)


def optional_delta_k(p: BoundParams) -> Optional[float]:
    """ delta_k, or None when the bound does not apply at this k """
    try:
        return delta_k(p=p)
    except (BoundNotApplicable, DomainError) as error:
        Log.debug(msg='delta_k not applicable: %s' % error)
        return None


def theorem_bound(p: BoundParams, model: ChainModel, n_or_L: float) -> float:
    """
    1/(L log^gamma k) for arcmod, k/(n log^gamma k) for cyclemod

    :param p:      bound constants (k, gamma used)
    :param model:  chain model
    :param n_or_L: L for arcmod, n for cyclemod
    """
    if p.k < 3:
        raise DomainError('theorem bound needs k >= 3: %g' % p.k)
    if not n_or_L > 0:
        raise InvalidParameter('size must be positive: %s' % n_or_L)
    factor = math.log(p.k) ** p.gamma
    if model == ChainModel.ARCMOD:
        return 1.0 / (n_or_L * factor)
    return p.k / (n_or_L * factor)


def s_failure_bound(k: float, M: float) -> float:
    """ P(not S(M)) <= 2 k^(1 - M) """
    return min(1.0, 2.0 * k ** (1.0 - M))


def mean_deviation_bounds(k: float) -> Tuple[float, float]:
    """ P(mean L_i <= L/2) <= 4/k, P(mean L_i^2 >= 4 L^2) <= 5/k """
    return min(1.0, 4.0 / k), min(1.0, 5.0 / k)


#
#   Regions and events
#


def classify_angle(mu: complex, p: BoundParams) -> AngleRegion:
    mu = complex(mu)
    modulus = abs(mu)
    if mu == 1 or modulus > 1 + MODULUS_TOLERANCE or modulus < p.inner_radius:
        return AngleRegion.OUTSIDE
    if abs(np.angle(mu)) <= p.angle_threshold:
        return AngleRegion.SMALL_ANGLES
    return AngleRegion.LARGE_ANGLES


def in_phi(mu: complex, p: BoundParams) -> bool:
    return classify_angle(mu=mu, p=p) != AngleRegion.OUTSIDE


def event_S(lengths: ArcLengths, p: BoundParams) -> bool:
    """ max L_i <= M L log k """
    return lengths.longest <= p.longest_allowed


def small_angle_criterion(lengths: ArcLengths, delta: float) -> bool:
    """ (mean L_i)^2 <= 12 delta mean(L_i^2), necessary for a small-angle eigenvalue """
    if not delta > 0:
        raise InvalidParameter('delta must be positive: %s' % delta)
    return lengths.mean ** 2 <= 12 * delta * lengths.mean_square


def moment_concentration_check(k: int, L: float, trials: int, rng: np.random.Generator) -> Tuple[float, float]:
    """
    Frequencies of {mean L_i <= L/2} and {mean L_i^2 >= 4 L^2} over arcmod draws

    :return: (freq_low_mean, freq_high_sq)
    """
    if trials < 100:
        raise InvalidParameter('moment check needs >= 100 trials: %d' % trials)
    if k < 1:
        raise InvalidParameter('k must be >= 1: %d' % k)
    draws = geometric_draws(L=L, size=(trials, k), rng=rng).astype(float)
    means = draws.mean(axis=1)
    squares = (draws * draws).mean(axis=1)
    low = float(np.mean(means <= L / 2))
    high = float(np.mean(squares >= 4 * L * L))
    return low, high


def S_failure_frequency(k: int, L: float, trials: int, p: BoundParams, rng: np.random.Generator) -> float:
    """ frequency of arcmod draws violating S(M) """
    draws = geometric_draws(L=L, size=(trials, k), rng=rng)
    return float(np.mean(draws.max(axis=1) > p.longest_allowed))


#
#   Length polynomial
#


def _powers(mu: complex, values: np.ndarray) -> np.ndarray:
    """ mu^L_i as |mu|^L_i e^(i L_i arg mu) """
    mu = complex(mu)
    return np.power(abs(mu), values) * np.exp(1j * values * np.angle(mu))


def P_poly(lengths: ArcLengths, mu: complex) -> complex:
    """ (1/k) sum mu^L_i """
    return complex(np.mean(_powers(mu=mu, values=lengths.values.astype(float))))


def cos_plus(y):
    return np.maximum(np.cos(y), 0.0)


def _large_angle_grid(p: BoundParams, grid_size: int) -> Tuple[np.ndarray, np.ndarray]:
    if grid_size < 100:
        raise InvalidParameter('angle grid needs >= 100 points: %d' % grid_size)
    # log-spaced, denser next to the small-angle boundary
    arguments = np.geomspace(p.angle_threshold, math.pi, grid_size)
    moduli = np.linspace(max(p.inner_radius, 0.0), 1.0, MODULUS_RINGS)
    return moduli, arguments


def large_angle_scan(lengths: ArcLengths, p: BoundParams, grid_size: int = 1000) -> float:
    """
    max Re P(mu) over a grid of large-angle mu

    One-sided: a grid maximum below the bound does not prove the supremum is.
    Conjugates give conjugate values of P, so only arg > 0 is scanned.
    """
    moduli, arguments = _large_angle_grid(p=p, grid_size=grid_size)
    values = lengths.values.astype(float)
    # (rings, grid, k)
    scale = np.power(moduli[:, None, None], values[None, None, :])
    phase = np.cos(arguments[None, :, None] * values[None, None, :])
    real_part = np.mean(scale * phase, axis=2)
    return float(np.max(real_part))


def cos_plus_scan(lengths: ArcLengths, p: BoundParams, grid_size: int = 1000) -> Tuple[float, float]:
    """
    sup over large angles of sum_{i <= m_k} cos+(L_i arg mu), with the
    target m_k - sigma_k^2 it should stay below

    :return: (value, target)
    """
    _, arguments = _large_angle_grid(p=p, grid_size=grid_size)
    block = lengths.values[:p.block_size].astype(float)
    total = np.sum(cos_plus(arguments[:, None] * block[None, :]), axis=1)
    target = len(block) - p.block_margin ** 2
    return float(np.max(total)), float(target)


#
#   Sanity checks of the approximations
#


def sample_small_angle(p: BoundParams, rng: np.random.Generator) -> complex:
    """ uniform modulus and argument inside the small-angle region """
    while True:
        modulus = rng.uniform(max(p.inner_radius, 0.0), 1.0)
        argument = rng.uniform(-p.angle_threshold, p.angle_threshold)
        mu = modulus * complex(math.cos(argument), math.sin(argument))
        if mu != 1:
            return mu


def linearization_check(lengths: ArcLengths, mu: complex) -> float:
    """
    max_i |(1 - mu^L_i) - L_i (1 - mu)| / (L_i |1 - mu| / 2)

    The linear approximation holds for every arc iff the result is <= 1.
    """
    mu = complex(mu)
    gap = abs(1 - mu)
    if gap == 0:
        raise InvalidParameter('linearization is undefined at mu = 1')
    values = lengths.values.astype(float)
    error = np.abs((1 - _powers(mu=mu, values=values)) - values * (1 - mu))
    return float(np.max(error / (0.5 * values * gap)))


def modulus_check(lengths: ArcLengths, mu: complex) -> float:
    """ min_i |mu^L_i|^2, to be compared with 1 - eps_k """
    values = lengths.values.astype(float)
    return float(np.min(np.power(abs(complex(mu)), 2 * values)))


#
#   Eigenvalue checks
#


def P_near_1_check(chain: CondensedChain, spectrum: Spectrum,
                   p: BoundParams) -> List[Tuple[complex, float, Optional[float], Optional[bool]]]:
    """
    |1 - P(mu)| against sqrt(delta_k) for every eigenvalue in Phi

    :return: (mu, |1 - P(mu)|, bound or None, pass or None when not applicable)
    """
    if not event_S(lengths=chain.lengths, p=p):
        raise BoundNotApplicable('S(M) does not hold: longest arc %d > %g' % (chain.lengths.longest,
                                                                               p.longest_allowed))
    delta = optional_delta_k(p=p)
    bound = None if delta is None else math.sqrt(delta)
    entries = []
    for mu in spectrum.deflated():
        if not in_phi(mu=mu, p=p):
            continue
        distance = abs(1 - P_poly(lengths=chain.lengths, mu=mu))
        if distance <= EXACT_TOLERANCE:
            passed = True
        elif bound is None:
            passed = None
        else:
            passed = distance <= bound
        entries.append((complex(mu), distance, bound, passed))
    return entries


def perp_bound_check(chain: CondensedChain, pair: EigenPair, p: BoundParams,
                     stochastic: Optional[StochasticMatrix] = None) -> Tuple[float, Optional[float], Optional[bool]]:
    """
    ||x_perp||^2 / ||x_par||^2 of the restricted eigenvector against delta_k

    :return: (ratio, bound or None, pass or None when not applicable)
    """
    if not in_phi(mu=pair.mu, p=p):
        raise InvalidParameter('eigenvalue %s is outside Phi' % pair.mu)
    if not event_S(lengths=chain.lengths, p=p):
        raise BoundNotApplicable('S(M) does not hold: longest arc %d' % chain.lengths.longest)
    x = restrict_eigvec(chain=chain, pair=pair, stochastic=stochastic)
    x_par, x_perp = decompose_parallel(x=x)
    par_square = chain.k * abs(x_par) ** 2
    perp_square = float(np.vdot(x_perp, x_perp).real)
    bound = optional_delta_k(p=p)
    if par_square <= PARALLEL_TOLERANCE * float(np.vdot(x, x).real):
        if bound is not None:
            raise Contradiction('eigenvector at mu=%s has no parallel part under S(M)' % pair.mu)
        return math.inf, None, None
    ratio = perp_square / par_square
    if ratio <= EXACT_TOLERANCE ** 2:
        return ratio, bound, True
    if bound is None:
        return ratio, None, None
    return ratio, bound, ratio <= bound
