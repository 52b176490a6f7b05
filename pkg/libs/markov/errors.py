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
    Errors
    ~~~~~~

    ValidationError -> bad input (CLI exit 1)
    NumericalError  -> computation failed or contradicted a guarantee (CLI exit 2)
"""


class CycleGapError(Exception):
    pass


class ValidationError(CycleGapError, ValueError):
    pass


class NumericalError(CycleGapError, ArithmeticError):
    pass


#
#   Validation
#

class InvalidDimension(ValidationError):
    pass


class InfeasibleDegree(ValidationError):
    pass


class ParityError(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class InvalidParameter(ValidationError):
    pass


class InvariantViolation(ValidationError):
    pass


class ZeroVector(ValidationError):
    pass


class DomainError(ValidationError):
    pass


class TooFewRecords(ValidationError):
    pass


class EmptySeries(ValidationError):
    pass


#
#   Numerical
#

class SamplingFailure(NumericalError):
    pass


class SizeLimitExceeded(NumericalError):
    pass


class NumericalFailure(NumericalError):
    pass


class NotStochastic(NumericalError):
    pass


class ConsistencyError(NumericalError):
    pass


class SingularExpansion(NumericalError):
    pass


class Contradiction(NumericalError):
    pass


#
#   Signals
#

class BoundNotApplicable(CycleGapError):
    """ the bound is vacuous at this size, not a failure """
    pass
