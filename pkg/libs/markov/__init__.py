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
    Markov
    ~~~~~~

    Non-reversible chains built from directed arcs joined by a doubly
    stochastic interconnect, their spectra and the bounds on their gaps.
"""

from .errors import *

from .interconnect import InterconnectKind, InterconnectMatrix, ClassParams
from .interconnect import complete, custom, random_regular, bollobas_chung, build_interconnect
from .interconnect import spectral_gap_symmetric, in_class, class_params_for, is_connected
from .interconnect import parse_kind, clamped_log

from .chain import ChainModel, ArcLengths, Provenance, CondensedChain, StochasticMatrix
from .chain import sample_geometric, sample_arc_lengths, sample_arcmod, sample_arcmod_conditioned
from .chain import sample_cyclemod, sample_cyclemod_lengths
from .chain import bijection_T, inverse_T, expand, symmetrize

from .spectral import Spectrum, EigenPair
from .spectral import eigenvalues_dense, eigenpairs_dense, absolute_spectral_gap, gap_iterative
from .spectral import condensed_operator, condensed_residual, condensed_determinant, condensed_polynomial_roots
from .spectral import restrict_eigvec, expand_eigvec, decompose_parallel
from .spectral import full_residual, is_conjugate_closed, ResidualFunction

from .theory import BoundParams, AngleRegion, CheckReport
from .theory import epsilon_k, delta_k, delta_from, theorem_bound, s_failure_bound, mean_deviation_bounds
from .theory import classify_angle, event_S, small_angle_criterion, moment_concentration_check
from .theory import P_poly, large_angle_scan, cos_plus, cos_plus_scan
from .theory import P_near_1_check, perp_bound_check
from .theory import linearization_check, modulus_check, sample_small_angle


__all__ = [

    #
    #   Errors
    #
    'CycleGapError', 'ValidationError', 'NumericalError', 'BoundNotApplicable',

    'InvalidDimension', 'InfeasibleDegree', 'ParityError', 'DimensionMismatch',
    'InvalidParameter', 'InvariantViolation', 'ZeroVector', 'DomainError',
    'TooFewRecords', 'EmptySeries',

    'SamplingFailure', 'SizeLimitExceeded', 'NumericalFailure', 'NotStochastic',
    'ConsistencyError', 'SingularExpansion', 'Contradiction',

    #
    #   Interconnect
    #
    'InterconnectKind', 'InterconnectMatrix', 'ClassParams',
    'complete', 'custom', 'random_regular', 'bollobas_chung', 'build_interconnect',
    'spectral_gap_symmetric', 'in_class', 'class_params_for', 'is_connected',
    'parse_kind', 'clamped_log',

    #
    #   Chain
    #
    'ChainModel', 'ArcLengths', 'Provenance', 'CondensedChain', 'StochasticMatrix',
    'sample_geometric', 'sample_arc_lengths', 'sample_arcmod', 'sample_arcmod_conditioned',
    'sample_cyclemod', 'sample_cyclemod_lengths',
    'bijection_T', 'inverse_T', 'expand', 'symmetrize',

    #
    #   Spectral
    #
    'Spectrum', 'EigenPair',
    'eigenvalues_dense', 'eigenpairs_dense', 'absolute_spectral_gap', 'gap_iterative',
    'condensed_operator', 'condensed_residual', 'condensed_determinant', 'condensed_polynomial_roots',
    'restrict_eigvec', 'expand_eigvec', 'decompose_parallel',
    'full_residual', 'is_conjugate_closed', 'ResidualFunction',

    #
    #   Theory
    #
    'BoundParams', 'AngleRegion', 'CheckReport',
    'epsilon_k', 'delta_k', 'delta_from', 'theorem_bound', 's_failure_bound', 'mean_deviation_bounds',
    'classify_angle', 'event_S', 'small_angle_criterion', 'moment_concentration_check',
    'P_poly', 'large_angle_scan', 'cos_plus', 'cos_plus_scan',
    'P_near_1_check', 'perp_bound_check',
    'linearization_check', 'modulus_check', 'sample_small_angle',

]
