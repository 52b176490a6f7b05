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
    Experiment Config
    ~~~~~~~~~~~~~~~~~

    Sweep configuration, loaded from JSON:

        {
            "log_n_grid"       : [4.62, 4.79, ...],   // natural log of n
            "k_rule"           : "sqrt_even",         // or {"fixed": 32}, {"power_law": 2.0}
            "kinds"            : ["a", "b", "c", "d"],
            "trials_per_point" : 30,
            "base_seed"        : 20240601,            // optional, drawn when missing
            "dense_limit"      : 2048,
            "symmetrized"      : false,
            "gamma"            : 8
        }

    Interconnect kinds:
        (a) complete, (b) random regular of degree k/2,
        (c) random regular of degree 4, (d) Bollobas-Chung.
"""

import math
from enum import Enum
from typing import Optional, List, Dict, Any

import numpy as np

from ..utils import json_decode
from ..markov import InvalidParameter
from ..markov import InterconnectMatrix
from ..markov import complete, random_regular, bollobas_chung


class SweepKind(Enum):
    COMPLETE = 'a'
    HALF_REGULAR = 'b'
    REGULAR_4 = 'c'
    BOLLOBAS_CHUNG = 'd'

    @property
    def ordinal(self) -> int:
        return _KIND_ORDER.index(self)

    @property
    def label(self) -> str:
        return _KIND_LABELS[self]

    def degree_for(self, k: int) -> Optional[int]:
        if self == SweepKind.HALF_REGULAR:
            return k // 2
        elif self == SweepKind.REGULAR_4:
            return 4
        return None

    def interconnect(self, k: int, rng: np.random.Generator) -> InterconnectMatrix:
        if self == SweepKind.COMPLETE:
            return complete(k=k)
        elif self == SweepKind.BOLLOBAS_CHUNG:
            return bollobas_chung(k=k, rng=rng)
        return random_regular(k=k, d=self.degree_for(k=k), rng=rng)

    @classmethod
    def parse(cls, text: str):
        text = text.strip().lower().strip('()')
        for kind in cls:
            if kind.value == text:
                return kind
        raise InvalidParameter('unknown sweep kind: %s' % text)


_KIND_ORDER = [SweepKind.COMPLETE, SweepKind.HALF_REGULAR, SweepKind.REGULAR_4, SweepKind.BOLLOBAS_CHUNG]

_KIND_LABELS = {
    SweepKind.COMPLETE: '(a) complete',
    SweepKind.HALF_REGULAR: '(b) random regular, d = k/2',
    SweepKind.REGULAR_4: '(c) random regular, d = 4',
    SweepKind.BOLLOBAS_CHUNG: '(d) Bollobas-Chung',
}


class KRule:
    """ k as a function of n: sqrt_even | fixed | power_law """

    SQRT_EVEN = 'sqrt_even'
    FIXED = 'fixed'
    POWER_LAW = 'power_law'

    def __init__(self, name: str = SQRT_EVEN, value: Optional[float] = None):
        super().__init__()
        if name == self.FIXED:
            if value is None or int(value) != value or value < 1:
                raise InvalidParameter('fixed k must be a positive integer: %s' % value)
        elif name == self.POWER_LAW:
            if value is None or not value > 1:
                raise InvalidParameter('power law exponent must exceed 1: %s' % value)
        elif name != self.SQRT_EVEN:
            raise InvalidParameter('unknown k rule: %s' % name)
        self.__name = name
        self.__value = value

    @property
    def name(self) -> str:
        return self.__name

    @property
    def value(self) -> Optional[float]:
        return self.__value

    def base_k(self, n: int) -> int:
        if self.__name == self.FIXED:
            return int(self.__value)
        elif self.__name == self.POWER_LAW:
            root = n ** (1.0 / self.__value)
        else:
            root = math.sqrt(n)
        # even k
        return 2 * int(round(root / 2))

    def to_json(self) -> Any:
        if self.__name == self.SQRT_EVEN:
            return self.SQRT_EVEN
        return {self.__name: self.__value}

    @classmethod
    def parse(cls, info: Any):
        if info is None:
            return cls()
        if isinstance(info, str):
            return cls(name=info)
        if isinstance(info, Dict) and len(info) == 1:
            name, value = next(iter(info.items()))
            return cls(name=name, value=value)
        raise InvalidParameter('k rule error: %s' % info)


class ExperimentConfig:

    DESK_GRID = [round(4.62 + 0.17 * i, 2) for i in range(15)]          # 4.62 .. 7.0
    FULL_GRID = [round(4.62 + 0.169 * i, 3) for i in range(21)]         # 4.62 .. 8.0

    def __init__(self, log_n_grid: List[float], k_rule: Optional[KRule] = None,
                 kinds: Optional[List[SweepKind]] = None, trials_per_point: int = 30,
                 base_seed: Optional[int] = None, dense_limit: int = 2048,
                 symmetrized: bool = False, gamma: float = 8.0):
        super().__init__()
        if k_rule is None:
            k_rule = KRule()
        if kinds is None:
            kinds = list(_KIND_ORDER)
        self.__log_n_grid = [float(x) for x in log_n_grid]
        self.__k_rule = k_rule
        self.__kinds = sorted(set(kinds), key=lambda kind: kind.ordinal)
        self.__trials = trials_per_point
        self.__base_seed = base_seed
        self.__dense_limit = dense_limit
        self.__symmetrized = symmetrized
        self.__gamma = float(gamma)
        self.check()

    @property
    def log_n_grid(self) -> List[float]:
        return self.__log_n_grid

    @property
    def k_rule(self) -> KRule:
        return self.__k_rule

    @property
    def kinds(self) -> List[SweepKind]:
        return self.__kinds

    @property
    def trials_per_point(self) -> int:
        return self.__trials

    @property
    def base_seed(self) -> Optional[int]:
        return self.__base_seed

    @base_seed.setter
    def base_seed(self, seed: int):
        self.__base_seed = seed

    @property
    def dense_limit(self) -> int:
        return self.__dense_limit

    @dense_limit.setter
    def dense_limit(self, limit: int):
        if limit < 1:
            raise InvalidParameter('dense limit must be positive: %d' % limit)
        self.__dense_limit = limit

    @property
    def symmetrized(self) -> bool:
        return self.__symmetrized

    @symmetrized.setter
    def symmetrized(self, flag: bool):
        self.__symmetrized = flag

    @property
    def gamma(self) -> float:
        return self.__gamma

    @property
    def n_values(self) -> List[int]:
        """ n = round(exp(log n)), in grid order """
        return [int(round(math.exp(x))) for x in self.__log_n_grid]

    def k_for(self, n: int, kind: SweepKind) -> int:
        """ base k, bumped by 2 while the regular degree has the wrong parity """
        k = self.__k_rule.base_k(n=n)
        degree = kind.degree_for(k=k)
        while degree is not None and (degree * k) % 2 != 0:
            k += 2
            degree = kind.degree_for(k=k)
        return k

    def check(self):
        if len(self.__log_n_grid) == 0:
            raise InvalidParameter('empty log n grid')
        if len(self.__kinds) == 0:
            raise InvalidParameter('no interconnect kinds selected')
        if self.__trials < 1:
            raise InvalidParameter('trials per point must be >= 1: %d' % self.__trials)
        if self.__dense_limit < 1:
            raise InvalidParameter('dense limit must be positive: %d' % self.__dense_limit)
        for n in self.n_values:
            for kind in self.__kinds:
                k = self.k_for(n=n, kind=kind)
                if k < 4 or k > n:
                    raise InvalidParameter('grid point n=%d needs n >= k >= 4, got k=%d' % (n, k))
                degree = kind.degree_for(k=k)
                if degree is not None and not 3 <= degree < k:
                    raise InvalidParameter('kind %s infeasible at k=%d (degree %d)' % (kind.value, k, degree))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'log_n_grid': self.__log_n_grid,
            'k_rule': self.__k_rule.to_json(),
            'kinds': [kind.value for kind in self.__kinds],
            'trials_per_point': self.__trials,
            'base_seed': self.__base_seed,
            'dense_limit': self.__dense_limit,
            'symmetrized': self.__symmetrized,
            'gamma': self.__gamma,
        }

    @classmethod
    def from_dict(cls, info: Dict[str, Any]):
        grid = info.get('log_n_grid')
        if not isinstance(grid, List):
            raise InvalidParameter('log_n_grid must be a list: %s' % grid)
        kinds = info.get('kinds')
        if kinds is not None:
            kinds = [SweepKind.parse(text=item) for item in kinds]
        return cls(log_n_grid=grid,
                   k_rule=KRule.parse(info=info.get('k_rule')),
                   kinds=kinds,
                   trials_per_point=int(info.get('trials_per_point', 30)),
                   base_seed=info.get('base_seed'),
                   dense_limit=int(info.get('dense_limit', 2048)),
                   symmetrized=bool(info.get('symmetrized', False)),
                   gamma=float(info.get('gamma', 8.0)))

    @classmethod
    def from_json(cls, path: str):
        with open(path, 'r', encoding='utf-8') as file:
            text = file.read()
        try:
            info = json_decode(string=text)
        except ValueError as error:
            raise InvalidParameter('config JSON error in %s: %s' % (path, error))
        if not isinstance(info, Dict):
            raise InvalidParameter('config JSON must be an object: %s' % path)
        return cls.from_dict(info=info)

    @classmethod
    def desk_scale(cls, base_seed: Optional[int] = 20240601):
        return cls(log_n_grid=cls.DESK_GRID, trials_per_point=30, base_seed=base_seed, dense_limit=2048)

    @classmethod
    def full_scale(cls, base_seed: Optional[int] = 20240601):
        return cls(log_n_grid=cls.FULL_GRID, trials_per_point=500, base_seed=base_seed, dense_limit=4096)

    def __repr__(self) -> str:
        return '<ExperimentConfig points=%d kinds="%s" trials=%d seed=%s />' % (
            len(self.__log_n_grid), ''.join(kind.value for kind in self.__kinds), self.__trials, self.__base_seed)
