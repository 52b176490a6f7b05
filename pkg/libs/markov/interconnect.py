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
    Interconnect
    ~~~~~~~~~~~~

    Symmetric doubly stochastic k x k matrices A wiring the arc ends to the
    arc starts, and their spectral gaps.

    Kinds used by the numerical study:
        (a) complete          A = 11^T / k
        (b) random regular    degree k/2
        (c) random regular    degree 4
        (d) Bollobas-Chung    k-cycle plus a random perfect matching
"""

import math
from enum import Enum
from typing import Optional, Set, Tuple, Dict

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.csgraph

from ..utils import Log

from .errors import InvalidDimension, InfeasibleDegree, ParityError
from .errors import InvalidParameter, InvariantViolation
from .errors import SamplingFailure


STOCHASTIC_TOLERANCE = 1e-12
RETRY_BUDGET = 10000


class InterconnectKind(Enum):
    COMPLETE = 'complete'
    RANDOM_REGULAR = 'regular'
    BOLLOBAS_CHUNG = 'bc'
    CUSTOM = 'custom'


class ClassParams:
    """ membership parameters: lambda(A) >= c * log(k)^(-alpha) """

    def __init__(self, c: float, alpha: float = 0.0):
        super().__init__()
        if not c > 0:
            raise InvalidParameter('class parameter c must be positive: %s' % c)
        if not alpha >= 0:
            raise InvalidParameter('class parameter alpha must be nonnegative: %s' % alpha)
        self.__c = float(c)
        self.__alpha = float(alpha)

    @property
    def c(self) -> float:
        return self.__c

    @property
    def alpha(self) -> float:
        return self.__alpha

    def delta(self, k: float) -> float:
        """ Delta_k = c * log(k)^(-alpha) """
        return self.__c * clamped_log(k=k) ** (-self.__alpha)

    def __repr__(self) -> str:
        return '<ClassParams c=%g alpha=%g />' % (self.__c, self.__alpha)


class InterconnectMatrix:

    def __init__(self, entries: np.ndarray, kind: InterconnectKind = InterconnectKind.CUSTOM,
                 degree: Optional[int] = None):
        super().__init__()
        entries = np.array(entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] == 0:
            raise InvalidDimension('interconnect matrix must be square and non-empty: %s' % (entries.shape,))
        entries.flags.writeable = False
        self.__entries = entries
        self.__kind = kind
        self.__degree = degree

    @property
    def k(self) -> int:
        return self.__entries.shape[0]

    @property
    def entries(self) -> np.ndarray:
        return self.__entries

    @property
    def kind(self) -> InterconnectKind:
        return self.__kind

    @property
    def degree(self) -> Optional[int]:
        return self.__degree

    @property
    def kind_name(self) -> str:
        if self.__kind == InterconnectKind.RANDOM_REGULAR:
            return 'regular:%d' % self.__degree
        return self.__kind.value

    def check(self):
        """ raise InvariantViolation unless symmetric, doubly stochastic, entries in [0, 1] """
        a = self.__entries
        if not np.all(np.isfinite(a)):
            raise InvariantViolation('interconnect matrix has non-finite entries')
        asym = np.max(np.abs(a - a.T))
        if asym > STOCHASTIC_TOLERANCE:
            raise InvariantViolation('interconnect matrix not symmetric: max |A - A^T| = %g' % asym)
        if np.min(a) < 0 or np.max(a) > 1:
            raise InvariantViolation('interconnect entries out of [0, 1]')
        rows = np.max(np.abs(a.sum(axis=1) - 1.0))
        cols = np.max(np.abs(a.sum(axis=0) - 1.0))
        if max(rows, cols) > STOCHASTIC_TOLERANCE:
            raise InvariantViolation('interconnect matrix not doubly stochastic: row %g, col %g' % (rows, cols))

    def to_dict(self) -> Dict:
        return {
            'k': self.k,
            'kind': self.kind_name,
            'entries': [[float(x) for x in row] for row in self.__entries],
        }

    @classmethod
    def from_dict(cls, info: Dict):
        entries = np.array(info.get('entries'), dtype=float)
        k = info.get('k')
        if k is not None and entries.shape != (k, k):
            raise InvalidDimension('interconnect entries shape %s != k=%s' % (entries.shape, k))
        kind, degree = parse_kind(text=info.get('kind', 'custom'))
        matrix = cls(entries=entries, kind=kind, degree=degree)
        matrix.check()
        return matrix

    def __repr__(self) -> str:
        return '<InterconnectMatrix k=%d kind="%s" />' % (self.k, self.kind_name)


def parse_kind(text: str) -> Tuple[InterconnectKind, Optional[int]]:
    """ 'complete' | 'regular:d' | 'bc' | 'custom' """
    text = text.strip().lower()
    if text.startswith('regular:'):
        try:
            degree = int(text[len('regular:'):])
        except ValueError:
            raise InvalidParameter('regular degree error: %s' % text)
        return InterconnectKind.RANDOM_REGULAR, degree
    for kind in InterconnectKind:
        if kind.value == text and kind != InterconnectKind.RANDOM_REGULAR:
            return kind, None
    raise InvalidParameter('unknown interconnect kind: %s' % text)


def clamped_log(k: float) -> float:
    """ max(ln k, 1), keeps log-factors meaningful for tiny k """
    return max(math.log(k), 1.0) if k > 0 else 1.0


#
#   Generators
#


def complete(k: int) -> InterconnectMatrix:
    if k < 1:
        raise InvalidDimension('complete interconnect needs k >= 1: %d' % k)
    entries = np.full((k, k), 1.0 / k)
    return InterconnectMatrix(entries=entries, kind=InterconnectKind.COMPLETE)


def custom(entries) -> InterconnectMatrix:
    matrix = InterconnectMatrix(entries=entries, kind=InterconnectKind.CUSTOM)
    matrix.check()
    return matrix


def _suitable(edges: Set[Tuple[int, int]], potential: Dict[int, int]) -> bool:
    """ whether the leftover stubs can still form a new simple edge """
    if len(potential) == 0:
        return True
    nodes = list(potential.keys())
    for i, s1 in enumerate(nodes):
        for s2 in nodes[:i]:
            pair = (s1, s2) if s1 < s2 else (s2, s1)
            if pair not in edges:
                return True
    return False


def _try_pairing(k: int, d: int, rng: np.random.Generator) -> Optional[Set[Tuple[int, int]]]:
    """ one pairing attempt: keep simple edges, re-pair the stubs of rejected ones """
    edges = set()
    stubs = np.repeat(np.arange(k), d)
    while len(stubs) > 0:
        potential: Dict[int, int] = {}
        stubs = rng.permutation(stubs)
        for s1, s2 in zip(stubs[0::2], stubs[1::2]):
            s1 = int(s1)
            s2 = int(s2)
            if s1 > s2:
                s1, s2 = s2, s1
            if s1 != s2 and (s1, s2) not in edges:
                edges.add((s1, s2))
            else:
                potential[s1] = potential.get(s1, 0) + 1
                potential[s2] = potential.get(s2, 0) + 1
        if not _suitable(edges=edges, potential=potential):
            return None
        stubs = np.repeat(np.array(list(potential.keys()), dtype=int),
                          np.array(list(potential.values()), dtype=int))
    return edges


def _from_edges(k: int, edges, scale: int) -> np.ndarray:
    adjacency = np.zeros((k, k))
    for u, v in edges:
        adjacency[u, v] = 1.0
        adjacency[v, u] = 1.0
    return adjacency / scale


def random_regular(k: int, d: int, rng: np.random.Generator) -> InterconnectMatrix:
    """
    Adjacency of a random simple d-regular graph on k vertices, divided by d

    :param k:   vertices
    :param d:   degree, 3 <= d < k and d * k even
    :param rng: random source
    """
    if k < 4:
        raise InvalidDimension('graph interconnects need k >= 4: %d' % k)
    if d < 3 or d >= k or (d * k) % 2 != 0:
        raise InfeasibleDegree('no simple %d-regular graph on %d vertices (3 <= d < k, d*k even)' % (d, k))
    for attempt in range(RETRY_BUDGET):
        edges = _try_pairing(k=k, d=d, rng=rng)
        if edges is not None:
            if attempt > 0:
                Log.debug(msg='regular graph (k=%d, d=%d) found after %d attempts' % (k, d, attempt + 1))
            entries = _from_edges(k=k, edges=edges, scale=d)
            return InterconnectMatrix(entries=entries, kind=InterconnectKind.RANDOM_REGULAR, degree=d)
    Log.warning(msg='regular graph sampler exhausted: k=%d, d=%d' % (k, d))
    raise SamplingFailure('failed to sample a %d-regular graph on %d vertices in %d attempts' % (d, k, RETRY_BUDGET))


def bollobas_chung(k: int, rng: np.random.Generator) -> InterconnectMatrix:
    """ k-cycle plus a random perfect matching avoiding cycle edges, divided by 3 """
    if k % 2 != 0:
        raise ParityError('Bollobas-Chung needs an even k: %d' % k)
    if k < 4:
        raise InvalidDimension('graph interconnects need k >= 4: %d' % k)
    cycle = [(i, (i + 1) % k) for i in range(k)]
    for attempt in range(RETRY_BUDGET):
        pairs = rng.permutation(k).reshape(-1, 2)
        gaps = np.abs(pairs[:, 0] - pairs[:, 1])
        if np.any((gaps == 1) | (gaps == k - 1)):
            continue
        matching = [(int(u), int(v)) for u, v in pairs]
        entries = _from_edges(k=k, edges=cycle + matching, scale=3)
        return InterconnectMatrix(entries=entries, kind=InterconnectKind.BOLLOBAS_CHUNG)
    Log.warning(msg='matching sampler exhausted: k=%d' % k)
    raise SamplingFailure('failed to sample a matching avoiding the %d-cycle in %d attempts' % (k, RETRY_BUDGET))


#
#   Spectral gap
#


def spectral_gap_symmetric(matrix: InterconnectMatrix) -> float:
    """ min(1 - |mu|) over the eigenvalues except one copy of 1 """
    matrix.check()
    eigenvalues = scipy.linalg.eigvalsh(matrix.entries)
    index = int(np.argmin(np.abs(eigenvalues - 1.0)))
    rest = np.delete(eigenvalues, index)
    if len(rest) == 0:
        # 1x1: nothing but the stationary eigenvalue
        return 1.0
    return max(0.0, float(np.min(1.0 - np.abs(rest))))


def in_class(matrix: InterconnectMatrix, params: ClassParams) -> bool:
    return spectral_gap_symmetric(matrix=matrix) >= params.delta(k=matrix.k)


def class_params_for(matrix: InterconnectMatrix) -> ClassParams:
    """ alpha = 0 and c = measured lambda(A) """
    gap = spectral_gap_symmetric(matrix=matrix)
    if gap <= 0:
        raise InvariantViolation('disconnected interconnect has no class parameters: %s' % matrix)
    return ClassParams(c=gap, alpha=0.0)


def is_connected(matrix: InterconnectMatrix) -> bool:
    graph = scipy.sparse.csr_matrix(matrix.entries > 0)
    count, _ = scipy.sparse.csgraph.connected_components(graph, directed=False)
    return count == 1


def build_interconnect(kind: InterconnectKind, k: int, rng: np.random.Generator,
                       degree: Optional[int] = None) -> InterconnectMatrix:
    if kind == InterconnectKind.COMPLETE:
        return complete(k=k)
    elif kind == InterconnectKind.RANDOM_REGULAR:
        assert degree is not None, 'degree missing for random regular interconnect'
        return random_regular(k=k, d=degree, rng=rng)
    elif kind == InterconnectKind.BOLLOBAS_CHUNG:
        return bollobas_chung(k=k, rng=rng)
    raise InvalidParameter('cannot generate interconnect of kind: %s' % kind)
