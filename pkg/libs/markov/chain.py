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
    Chain
    ~~~~~

    Random directed-cycle chains in condensed form (arc lengths + interconnect)
    and their expansion to a sparse doubly stochastic matrix.

    arcmod:   k independent arcs with Geo(1/L) node counts
    cyclemod: directed n-cycle with k uniformly chosen edges removed, the
              arcs between them rewired through A

    Expanded matrices are stored with entry (destination, source), so the
    eigen-equation M y = mu y reads  mu * y[i, l] = y[i, l-1]  on arc interiors.
    Nodes are flattened arc by arc, l ascending.
"""

from enum import Enum
from typing import Optional, List, Tuple, Dict

import numpy as np
import scipy.io
import scipy.sparse

from ..utils import Log

from .errors import InvalidParameter, InvalidDimension, DimensionMismatch
from .errors import InvariantViolation, SamplingFailure
from .interconnect import InterconnectMatrix, STOCHASTIC_TOLERANCE


class ChainModel(Enum):
    ARCMOD = 'arcmod'
    CYCLEMOD = 'cyclemod'


class ArcLengths:

    def __init__(self, lengths):
        super().__init__()
        values = np.array(lengths, dtype=np.int64).ravel()
        if len(values) == 0:
            raise InvalidDimension('arc lengths must not be empty')
        if np.min(values) < 1:
            raise InvalidParameter('arc lengths must be >= 1: %s' % values)
        values.flags.writeable = False
        self.__values = values

    @property
    def values(self) -> np.ndarray:
        return self.__values

    @property
    def k(self) -> int:
        return len(self.__values)

    @property
    def total(self) -> int:
        return int(np.sum(self.__values))

    @property
    def longest(self) -> int:
        return int(np.max(self.__values))

    @property
    def mean(self) -> float:
        return float(np.mean(self.__values))

    @property
    def mean_square(self) -> float:
        return float(np.mean(self.__values.astype(float) ** 2))

    @property
    def offsets(self) -> np.ndarray:
        """ flat index of node (i, 1) for every arc """
        return np.concatenate(([0], np.cumsum(self.__values)[:-1]))

    def __len__(self) -> int:
        return len(self.__values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ArcLengths):
            return False
        return np.array_equal(self.__values, other.values)

    def __hash__(self) -> int:
        return hash(tuple(self.__values.tolist()))

    def __repr__(self) -> str:
        return '<ArcLengths k=%d total=%d />' % (self.k, self.total)


class Provenance:

    def __init__(self, model: ChainModel, L: Optional[float] = None,
                 n: Optional[int] = None, j: Optional[int] = None):
        super().__init__()
        if model == ChainModel.ARCMOD:
            if L is None or L < 1:
                raise InvalidParameter('arcmod provenance needs L >= 1: %s' % L)
        else:
            if n is None or n < 1 or j is None or not 1 <= j <= n:
                raise InvalidParameter('cyclemod provenance needs n >= 1 and 1 <= j <= n: n=%s, j=%s' % (n, j))
        self.__model = model
        self.__L = None if L is None else float(L)
        self.__n = n
        self.__j = j

    @property
    def model(self) -> ChainModel:
        return self.__model

    @property
    def L(self) -> Optional[float]:
        return self.__L

    @property
    def n(self) -> Optional[int]:
        return self.__n

    @property
    def j(self) -> Optional[int]:
        return self.__j

    def to_dict(self) -> Dict:
        if self.__model == ChainModel.ARCMOD:
            return {'type': 'arcmod', 'L': self.__L}
        return {'type': 'cyclemod', 'n': self.__n, 'j': self.__j}

    @classmethod
    def from_dict(cls, info: Dict):
        name = info.get('type')
        if name == 'arcmod':
            return cls(model=ChainModel.ARCMOD, L=info.get('L'))
        elif name == 'cyclemod':
            return cls(model=ChainModel.CYCLEMOD, n=info.get('n'), j=info.get('j'))
        raise InvalidParameter('unknown provenance type: %s' % name)


class CondensedChain:
    """ (A, L_1..L_k) plus where it came from """

    def __init__(self, interconnect: InterconnectMatrix, lengths: ArcLengths, provenance: Provenance):
        super().__init__()
        if lengths.k != interconnect.k:
            raise DimensionMismatch('arc count %d != interconnect size %d' % (lengths.k, interconnect.k))
        if provenance.model == ChainModel.CYCLEMOD and lengths.total != provenance.n:
            raise InvariantViolation('cyclemod lengths sum to %d, expected n=%d' % (lengths.total, provenance.n))
        self.__interconnect = interconnect
        self.__lengths = lengths
        self.__provenance = provenance

    @property
    def interconnect(self) -> InterconnectMatrix:
        return self.__interconnect

    @property
    def lengths(self) -> ArcLengths:
        return self.__lengths

    @property
    def provenance(self) -> Provenance:
        return self.__provenance

    @property
    def k(self) -> int:
        return self.__lengths.k

    @property
    def size(self) -> int:
        """ N, nodes of the expanded chain """
        return self.__lengths.total

    @property
    def mean_length(self) -> float:
        """ L of the model: the Geo parameter for arcmod, n/k for cyclemod """
        if self.__provenance.model == ChainModel.ARCMOD:
            return self.__provenance.L
        return self.__provenance.n / self.k

    def to_dict(self) -> Dict:
        return {
            'k': self.k,
            'lengths': [int(x) for x in self.__lengths.values],
            'provenance': self.__provenance.to_dict(),
            'A': self.__interconnect.to_dict(),
        }

    @classmethod
    def from_dict(cls, info: Dict):
        lengths = ArcLengths(lengths=info.get('lengths'))
        k = info.get('k')
        if k is not None and k != lengths.k:
            raise DimensionMismatch('chain k=%s but %d lengths' % (k, lengths.k))
        interconnect = InterconnectMatrix.from_dict(info=info.get('A'))
        provenance = Provenance.from_dict(info=info.get('provenance'))
        return cls(interconnect=interconnect, lengths=lengths, provenance=provenance)

    def __repr__(self) -> str:
        return '<CondensedChain k=%d N=%d model=%s A="%s" />' % (self.k, self.size, self.__provenance.model.value,
                                                                self.__interconnect.kind_name)


class StochasticMatrix:
    """ expanded chain, sparse, entry (destination, source) """

    def __init__(self, matrix: scipy.sparse.spmatrix, lengths: ArcLengths, symmetric: bool = False):
        super().__init__()
        matrix = scipy.sparse.csr_matrix(matrix, copy=True)
        if matrix.shape != (lengths.total, lengths.total):
            raise DimensionMismatch('matrix shape %s != N=%d' % (matrix.shape, lengths.total))
        matrix.eliminate_zeros()
        matrix.sort_indices()
        self.__matrix = matrix
        self.__lengths = lengths
        self.__symmetric = symmetric

    @property
    def matrix(self) -> scipy.sparse.csr_matrix:
        return self.__matrix

    @property
    def lengths(self) -> ArcLengths:
        return self.__lengths

    @property
    def size(self) -> int:
        return self.__matrix.shape[0]

    @property
    def symmetric(self) -> bool:
        return self.__symmetric

    def node_index(self, index: int) -> Tuple[int, int]:
        """ flat index -> (i, l), both 1-based """
        if not 0 <= index < self.size:
            raise InvalidParameter('node index out of range: %d' % index)
        offsets = self.__lengths.offsets
        arc = int(np.searchsorted(offsets, index, side='right')) - 1
        return arc + 1, index - int(offsets[arc]) + 1

    def flat_index(self, i: int, l: int) -> int:
        """ (i, l), both 1-based -> flat index """
        values = self.__lengths.values
        if not 1 <= i <= len(values) or not 1 <= l <= values[i - 1]:
            raise InvalidParameter('node out of range: (%d, %d)' % (i, l))
        return int(self.__lengths.offsets[i - 1]) + l - 1

    def to_dense(self) -> np.ndarray:
        return self.__matrix.toarray()

    def transpose(self):
        return StochasticMatrix(matrix=self.__matrix.T, lengths=self.__lengths, symmetric=self.__symmetric)

    def sum_errors(self) -> Tuple[float, float]:
        """ max |row sum - 1|, max |column sum - 1| """
        rows = np.asarray(self.__matrix.sum(axis=1)).ravel()
        cols = np.asarray(self.__matrix.sum(axis=0)).ravel()
        return float(np.max(np.abs(rows - 1.0))), float(np.max(np.abs(cols - 1.0)))

    def check(self):
        rows, cols = self.sum_errors()
        if max(rows, cols) > STOCHASTIC_TOLERANCE:
            raise InvariantViolation('matrix not doubly stochastic: row %g, col %g' % (rows, cols))

    def write_matrix_market(self, path: str):
        scipy.io.mmwrite(path, self.__matrix, comment='cyclegap expanded chain, entry (destination, source)',
                         field='real', symmetry='general')

    def __repr__(self) -> str:
        return '<StochasticMatrix N=%d nnz=%d symmetric=%s />' % (self.size, self.__matrix.nnz, self.__symmetric)


#
#   Sampling
#


def geometric_draws(L: float, size: int, rng: np.random.Generator) -> np.ndarray:
    """ inverse CDF: 1 + floor(ln U / ln(1 - 1/L)), U uniform in (0, 1] """
    if not L >= 1:
        raise InvalidParameter('geometric parameter L must be >= 1: %s' % L)
    if L == 1:
        return np.ones(size, dtype=np.int64)
    u = 1.0 - rng.random(size)
    return 1 + np.floor(np.log(u) / np.log1p(-1.0 / L)).astype(np.int64)


def sample_geometric(L: float, rng: np.random.Generator) -> int:
    """ one Geo(1/L) draw on {1, 2, ...} """
    return int(geometric_draws(L=L, size=1, rng=rng)[0])


def sample_arc_lengths(L: float, k: int, rng: np.random.Generator) -> ArcLengths:
    if k < 1:
        raise InvalidDimension('arc count must be >= 1: %d' % k)
    return ArcLengths(lengths=geometric_draws(L=L, size=k, rng=rng))


def sample_arcmod(L: float, k: int, interconnect: InterconnectMatrix, rng: np.random.Generator) -> CondensedChain:
    if interconnect.k != k:
        raise DimensionMismatch('k=%d but interconnect is %dx%d' % (k, interconnect.k, interconnect.k))
    lengths = sample_arc_lengths(L=L, k=k, rng=rng)
    provenance = Provenance(model=ChainModel.ARCMOD, L=L)
    return CondensedChain(interconnect=interconnect, lengths=lengths, provenance=provenance)


def sample_cyclemod_lengths(n: int, k: int, rng: np.random.Generator) -> Tuple[ArcLengths, int]:
    """
    Uniform k-subset of the n cycle edges plus a uniform label, in condensed form

    Edge t (1-based) joins node t to node t+1 (mod n). The labelled removed
    edge is the one entering the first arc, whose first node is j.
    """
    if k < 1 or k > n:
        raise InvalidDimension('cyclemod needs 1 <= k <= n: n=%d, k=%d' % (n, k))
    tails = np.sort(rng.choice(n, size=k, replace=False)) + 1
    label = int(rng.integers(k))
    j = int(tails[label]) % n + 1
    ordered = np.roll(tails, -label)
    lengths = (np.roll(ordered, -1) - ordered) % n
    lengths[lengths == 0] = n
    return ArcLengths(lengths=lengths), j


def sample_cyclemod(n: int, k: int, interconnect: InterconnectMatrix, rng: np.random.Generator) -> CondensedChain:
    if interconnect.k != k:
        raise DimensionMismatch('k=%d but interconnect is %dx%d' % (k, interconnect.k, interconnect.k))
    lengths, j = sample_cyclemod_lengths(n=n, k=k, rng=rng)
    provenance = Provenance(model=ChainModel.CYCLEMOD, n=n, j=j)
    return CondensedChain(interconnect=interconnect, lengths=lengths, provenance=provenance)


def sample_arcmod_conditioned(L: float, n: int, k: int, interconnect: InterconnectMatrix,
                              rng: np.random.Generator, budget: int = 1000000) -> CondensedChain:
    """ arcmod draw rejected until the lengths sum to n, relabelled as cyclemod with a uniform j """
    if interconnect.k != k:
        raise DimensionMismatch('k=%d but interconnect is %dx%d' % (k, interconnect.k, interconnect.k))
    if k > n:
        raise InvalidDimension('cannot condition %d arcs on total length %d' % (k, n))
    for _ in range(budget):
        lengths = sample_arc_lengths(L=L, k=k, rng=rng)
        if lengths.total == n:
            j = int(rng.integers(n)) + 1
            provenance = Provenance(model=ChainModel.CYCLEMOD, n=n, j=j)
            return CondensedChain(interconnect=interconnect, lengths=lengths, provenance=provenance)
    Log.warning(msg='conditioned arcmod exhausted: L=%s, n=%d, k=%d' % (L, n, k))
    raise SamplingFailure('no arcmod draw with total length %d in %d attempts' % (n, budget))


#
#   Bijection between (lengths, j) and labelled removed-edge sets
#


def _wrap(x: int, n: int) -> int:
    """ residue in 1..n """
    return (x - 1) % n + 1


def bijection_T(lengths: ArcLengths, j: int, n: int) -> List[Tuple[int, int]]:
    """
    Removed edges (e_i, b_{i+1}) for arcs [b_1, e_1] = [j, j + L_1 - 1],
    [b_i, e_i] = [e_{i-1} + 1, e_{i-1} + L_i], indices mod n.

    The last edge (e_k, b_1) is the labelled one.
    """
    if lengths.total != n:
        raise InvariantViolation('lengths sum to %d, expected n=%d' % (lengths.total, n))
    if not 1 <= j <= n:
        raise InvalidParameter('rotation j must be in 1..%d: %d' % (n, j))
    begins = []
    ends = []
    b = j
    for size in lengths.values:
        e = _wrap(x=b + int(size) - 1, n=n)
        begins.append(b)
        ends.append(e)
        b = _wrap(x=e + 1, n=n)
    k = len(begins)
    return [(ends[i], begins[(i + 1) % k]) for i in range(k)]


def inverse_T(edges: List[Tuple[int, int]], n: int) -> Tuple[ArcLengths, int]:
    """ (lengths, j) from removed edges listed in arc order, labelled edge last """
    if len(edges) == 0:
        raise InvalidDimension('no removed edges')
    j = edges[-1][1]
    lengths = []
    head = j
    for tail, next_head in edges:
        lengths.append((tail - head) % n + 1)
        head = next_head
    return ArcLengths(lengths=lengths), j


#
#   Expansion
#


def expand(chain: CondensedChain) -> StochasticMatrix:
    """
    N x N matrix with
        ((i, l), (i, l-1))   = 1       for 1 < l <= L_i
        ((i+1, 1), (j, L_j)) = A[i, j] whenever A[i, j] != 0, i+1 mod k
    """
    lengths = chain.lengths
    values = lengths.values
    offsets = lengths.offsets
    k = chain.k
    # arc interiors
    rows = []
    cols = []
    data = []
    for i in range(k):
        size = int(values[i])
        if size > 1:
            start = int(offsets[i])
            rows.append(np.arange(start + 1, start + size))
            cols.append(np.arange(start, start + size - 1))
            data.append(np.ones(size - 1))
    # interconnections
    entries = chain.interconnect.entries
    # A[i, j] != 0: edge from the end of arc j to the start of arc i+1
    dst_arc, src_arc = np.nonzero(entries)
    weights = entries[dst_arc, src_arc]
    rows.append(offsets[(dst_arc + 1) % k])
    cols.append(offsets[src_arc] + values[src_arc] - 1)
    data.append(weights)
    n = lengths.total
    matrix = scipy.sparse.coo_matrix((np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
                                     shape=(n, n))
    return StochasticMatrix(matrix=matrix.tocsr(), lengths=lengths)


def symmetrize(stochastic: StochasticMatrix) -> StochasticMatrix:
    """ (M + M^T) / 2, the reversible comparison chain """
    matrix = stochastic.matrix
    average = (matrix + matrix.T) * 0.5
    return StochasticMatrix(matrix=average, lengths=stochastic.lengths, symmetric=True)
