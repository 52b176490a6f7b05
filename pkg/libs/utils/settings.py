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
    Settings
    ~~~~~~~~

    Typed view over 'etc/config.ini':

        [spectral]
        dense_limit       = 4096
        arnoldi_tolerance = 1e-12

        [sweep]
        workers     = 1
        out_dir     = results
        symmetrized = false

        [theory]
        m     = 3
        gamma = 8
        eta   = 3.5
        theta = 1.5
        beta  = 1.2
"""

import os
from typing import Optional, Dict

from dimples.utils import Singleton
from dimples.utils import Config
from dimples.utils import Log


DENSE_LIMIT_ENV = 'CYCLEGAP_DENSE_LIMIT'


class Settings:

    DENSE_LIMIT = 4096
    ARNOLDI_TOLERANCE = 1e-12
    WORKERS = 1
    OUT_DIR = 'results'

    def __init__(self, config: Optional[Config] = None):
        super().__init__()
        self.__config = config

    @property
    def config(self) -> Optional[Config]:
        return self.__config

    def _string(self, section: str, option: str) -> Optional[str]:
        config = self.__config
        if config is None:
            return None
        value = config.get_string(section=section, option=option)
        if value is None or len(value.strip()) == 0:
            return None
        return value.strip()

    def _float(self, section: str, option: str, default: float) -> float:
        value = self._string(section=section, option=option)
        if value is None:
            return default
        try:
            return float(value)
        except ValueError:
            Log.error(msg='config error: [%s] %s = %s' % (section, option, value))
            return default

    def _integer(self, section: str, option: str, default: int) -> int:
        value = self._string(section=section, option=option)
        if value is None:
            return default
        try:
            return int(value)
        except ValueError:
            Log.error(msg='config error: [%s] %s = %s' % (section, option, value))
            return default

    #
    #   Spectral
    #

    @property
    def dense_limit(self) -> int:
        env = os.environ.get(DENSE_LIMIT_ENV)
        if env is not None and len(env.strip()) > 0:
            try:
                return int(env)
            except ValueError:
                Log.error(msg='%s error: %s' % (DENSE_LIMIT_ENV, env))
        return self._integer(section='spectral', option='dense_limit', default=self.DENSE_LIMIT)

    @property
    def arnoldi_tolerance(self) -> float:
        return self._float(section='spectral', option='arnoldi_tolerance', default=self.ARNOLDI_TOLERANCE)

    #
    #   Sweep
    #

    @property
    def workers(self) -> int:
        workers = self._integer(section='sweep', option='workers', default=self.WORKERS)
        return max(1, workers)

    @property
    def out_dir(self) -> str:
        value = self._string(section='sweep', option='out_dir')
        return self.OUT_DIR if value is None else value

    @property
    def symmetrized(self) -> bool:
        value = self._string(section='sweep', option='symmetrized')
        return value is not None and value.lower() in ('1', 'true', 'yes', 'on')

    #
    #   Theory
    #

    @property
    def theory_m(self) -> float:
        return self._float(section='theory', option='m', default=3.0)

    @property
    def theory_gamma(self) -> float:
        return self._float(section='theory', option='gamma', default=8.0)

    @property
    def theory_eta(self) -> float:
        return self._float(section='theory', option='eta', default=3.5)

    @property
    def theory_theta(self) -> float:
        return self._float(section='theory', option='theta', default=1.5)

    @property
    def theory_beta(self) -> float:
        return self._float(section='theory', option='beta', default=1.2)

    @property
    def theory_constants(self) -> Dict[str, float]:
        """ keyword arguments for BoundParams """
        return {
            'M': self.theory_m,
            'gamma': self.theory_gamma,
            'eta': self.theory_eta,
            'theta': self.theory_theta,
            'beta': self.theory_beta,
        }

    @classmethod
    def load(cls, file: Optional[str] = None):
        """ load settings from ini file, defaults when the file is missing """
        if file is None or not os.path.exists(file):
            if file is not None:
                Log.warning(msg='config file not exists: %s, using defaults' % file)
            return cls(config=None)
        config = Config.load(file=file)
        Log.info(msg='config loaded: %s => %s' % (file, config))
        return cls(config=config)


@Singleton
class GlobalVariable:
    """ settings shared by the command line and the library defaults """

    def __init__(self):
        super().__init__()
        self.__settings: Optional[Settings] = None

    @property
    def settings(self) -> Settings:
        if self.__settings is None:
            self.__settings = Settings()
        return self.__settings

    def prepare(self, ini_file: Optional[str]):
        self.__settings = Settings.load(file=ini_file)
