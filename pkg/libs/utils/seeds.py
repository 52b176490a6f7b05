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
    Seeds
    ~~~~~

    Every random draw in the project comes from a numpy Generator owned by
    the caller; trial seeds are derived from a published 64-bit hash:

        seed = first 8 bytes (big endian) of
               md5("cyclegap:{base}:{n}:{kind}:{trial}")

    so a trial can be replayed without knowing how the sweep was scheduled.
"""

from typing import Optional, Union

import numpy as np

from dimples.utils import md5, utf8_encode


SEED_PREFIX = 'cyclegap'


def seed_hash(*parts: Union[int, str]) -> int:
    """ 64-bit unsigned hash of the colon-joined parts """
    text = ':'.join([SEED_PREFIX] + [str(item) for item in parts])
    digest = md5(data=utf8_encode(string=text))
    return int.from_bytes(digest[:8], byteorder='big', signed=False)


def derive_seed(base_seed: int, n: int, kind: int, trial: int) -> int:
    """
    Seed for one trial of a sweep

    :param base_seed: sweep seed
    :param n:         cycle length
    :param kind:      interconnect ordinal, (a)=0 .. (d)=3
    :param trial:     trial index at this grid point
    :return: 64-bit seed
    """
    return seed_hash(base_seed, n, kind, trial)


def create_rng(seed: Optional[int] = None) -> np.random.Generator:
    return np.random.default_rng(seed)
