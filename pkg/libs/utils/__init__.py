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
    Utils
    ~~~~~

    Logging and hashing helpers are borrowed from the <dimples> packages,
    the numeric helpers for seeding and settings live here.
"""

from dimples.utils import md5, utf8_encode
from dimples.utils import json_encode, json_decode
from dimples.utils import Singleton
from dimples.utils import Path
from dimples.utils import Log, Logging

from dimples.common.compat import CommonLoader

from .seeds import derive_seed, create_rng, seed_hash
from .settings import Settings, GlobalVariable
from .settings import DENSE_LIMIT_ENV


# register the data coders (JSON, UTF-8, ...) behind the <dimples> helpers
CommonLoader().run()


def round12(value: float) -> float:
    """ locale independent, 12 significant digits """
    return float('%.12g' % value)


__all__ = [

    'md5', 'utf8_encode',
    'json_encode', 'json_decode',

    'Singleton',
    'Path',

    'Log', 'Logging',

    #
    #   Seeds
    #
    'derive_seed', 'create_rng', 'seed_hash',

    #
    #   Settings
    #
    'Settings', 'GlobalVariable', 'DENSE_LIMIT_ENV',

    #
    #   Others
    #
    'round12',

]
