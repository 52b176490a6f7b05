# -*- coding: utf-8 -*-

"""
    Tests
    ~~~~~

    python3 -m unittest discover -s tests -t .

    Monte Carlo runs at full size are skipped unless CYCLEGAP_SLOW_TESTS=1.
"""

import os


SLOW_TESTS = os.environ.get('CYCLEGAP_SLOW_TESTS', '') == '1'
