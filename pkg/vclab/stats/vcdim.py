"""
Shattering, VC dimension, shatter coefficients and the maximum and
maximal properties of finite concept spaces.

Example
-------
report = vc_dimension(space)
report.vc, report.witness
"""

from dataclasses import dataclass, field
from itertools import combinations
import logging

from pandas import Series

from ..exceptions import CapExceededError
from .bounds import binom_leq
from .utils import indices_mask, popcount, full_mask, submasks

logger = logging.getLogger(__name__)


def _space_of(space):
    # relation spaces are measured through their concept class view
    if hasattr(space, 'to_space'):
        return space.to_space()
    return space


@dataclass
class VcReport:
    """
    VC dimension of a finite concept space

    Attributes
    ----------
    vc : int
        VC dimension
    witness : tuple of str
        lexicographically first shattered set of size vc
    shatter_coeffs : list of int
        s(C, n) for n = 0..|domain|
    """
    vc: int
    witness: tuple
    shatter_coeffs: list = field(default_factory=list)

    def to_dict(self):
        return {'vc': self.vc, 'witness': list(self.witness),
            'shatter_coeffs': list(self.shatter_coeffs)}


class VcDimension:
    """
    Exact VC dimension by size layered subset enumeration

    Parameters
    ----------
    space : ConceptSpace or RelationSpace
    max_points : int, optional
        cap on the domain size, default MAX_POINTS

    Examples
    --------
    vcd = VcDimension(space)
    vcd.vc()
    vcd.coefficients()

    Notes
    -----
    A k-subset is only tested when all of its (k-1)-subsets are
    shattered. Subsets are index tuples in lexicographic order, so the
    first shattered set in the top layer is the witness.
    """

    MAX_POINTS = 24

    def __repr__(self):
        return f'{self.__class__.__name__}({self.space})'

    def __init__(self, space, max_points=None):
        self.space = _space_of(space)
        self.max_points = self.MAX_POINTS if max_points is None else max_points
        if self.space.n_points > self.max_points:
            raise CapExceededError((f'domain has {self.space.n_points} points, '
                f'cap for VC dimension is {self.max_points}'))
        self._concepts = tuple(self.space.distinct())
        self._layers = None

    def _shattered(self, mask):
        return len({c & mask for c in self._concepts}) == 1 << popcount(mask)

    def layers(self):
        """Return list of layers, layer k holds shattered k-subsets as index tuples"""
        if self._layers is not None:
            return self._layers

        layers = [[()]]
        n = self.space.n_points
        while True:
            previous = layers[-1]
            known = set(previous)
            layer = []
            for subset in previous:
                start = subset[-1] + 1 if subset else 0
                for j in range(start, n):
                    cand = subset + (j,)
                    if len(cand) > 1 and not all(
                            cand[:i] + cand[i + 1:] in known
                            for i in range(len(cand) - 1)):
                        continue
                    if self._shattered(indices_mask(cand)):
                        layer.append(cand)
            if not layer:
                break
            layers.append(layer)

        self._layers = layers
        return layers

    def vc(self):
        """Return VC dimension"""
        return len(self.layers()) - 1

    def witness(self):
        """Return witness as tuple of point names"""
        first = self.layers()[-1][0]
        return tuple(self.space.domain[i] for i in first)

    def coefficients(self):
        """Return shatter coefficients s(C, n) for n = 0..|domain|

        Returns
        -------
        pd.Series
        """
        n_points = self.space.n_points
        vc = self.vc()
        n_distinct = len(self._concepts)
        coeffs = []
        for n in range(n_points + 1):
            if n <= vc:
                coeffs.append(1 << n)
                continue
            if coeffs[-1] == n_distinct:
                coeffs.append(n_distinct)
                continue
            best = 0
            limit = min(n_distinct, binom_leq(n, vc))
            for combi in combinations(range(n_points), n):
                mask = indices_mask(combi)
                best = max(best, len({c & mask for c in self._concepts}))
                if best == limit:
                    break
            coeffs.append(best)
        return Series(coeffs, index=range(n_points + 1), name='shatter_coeff')

    def report(self, coefficients=True):
        """Return VcReport"""
        coeffs = list(self.coefficients()) if coefficients else []
        return VcReport(vc=self.vc(), witness=self.witness(),
            shatter_coeffs=[int(c) for c in coeffs])


def vc_dimension(space, coefficients=True, max_points=None):
    """Return VcReport with VC dimension, witness and shatter coefficients

    Parameters
    ----------
    space : ConceptSpace or RelationSpace
    coefficients : bool, default True
        also compute the shatter coefficients
    max_points : int, optional
        domain size cap, default VcDimension.MAX_POINTS

    Returns
    -------
    VcReport
    """
    return VcDimension(space, max_points=max_points).report(
        coefficients=coefficients)


def shatter_coefficients(space):
    """Return pd.Series with s(C, n) for n = 0..|domain|"""
    return VcDimension(space).coefficients()


def is_shattered(space, subset):
    """Return True if every subset of `subset` is a trace of a concept"""
    space = _space_of(space)
    mask = space.mask(subset)
    return len(space.traces(mask)) == 1 << popcount(mask)


def count_removable(space, point):
    """Return number of concepts C with point in C and C minus point in C"""
    bit = 1 << space.index(point)
    concepts = space.distinct()
    return sum(1 for c in concepts if c & bit and (c & ~bit) in concepts)


class MaximumCheck:
    """
    Maximum and maximal properties of a concept space

    Parameters
    ----------
    space : ConceptSpace
    d : int
        dimension to test

    Notes
    -----
    The definition check and the maximal check enumerate all subsets
    of the domain and are capped at MAX_POINTS points.
    """

    MAX_POINTS = 16
    MODES = ['definition', 'cardinality']

    def __repr__(self):
        return f'{self.__class__.__name__}({self.space}, d={self.d})'

    def __init__(self, space, d):
        self.space = _space_of(space)
        if int(d) != d or d < 0:
            raise ValueError(f'd must be an integer >= 0, got {d}')
        self.d = int(d)
        self._concepts = self.space.distinct()

    def _check_cap(self):
        if self.space.n_points > self.MAX_POINTS:
            raise CapExceededError((f'domain has {self.space.n_points} points, '
                f'cap for maximum and maximal checks is {self.MAX_POINTS}'))

    def _require_vc(self):
        vc = VcDimension(self.space).vc()
        if vc != self.d:
            raise ValueError((f'space has VC dimension {vc}, '
                f'check requires {self.d}'))

    def is_maximum(self, mode='definition'):
        """Return True if the class is d-maximum"""
        if mode not in self.MODES:
            raise ValueError(f'mode must be one of {self.MODES}, not "{mode}"')

        if mode == 'cardinality':
            self._require_vc()
            return len(self._concepts) == binom_leq(self.space.n_points, self.d)

        self._check_cap()
        for mask in range(1 << self.space.n_points):
            ntraces = len({c & mask for c in self._concepts})
            if ntraces != binom_leq(popcount(mask), self.d):
                return False
        return True

    def missing_traces(self):
        """Return dict of (d+1)-subset mask to its single missing trace"""
        single = {}
        for mask in submasks(self.space.full, maxsize=self.d + 1,
                minsize=self.d + 1):
            present = {c & mask for c in self._concepts}
            if len(present) == (1 << (self.d + 1)) - 1:
                missing = next(t for t in submasks(mask) if t not in present)
                single[mask] = missing
        return single

    def is_maximal(self):
        """Return True if adding any concept raises the VC dimension"""
        self._check_cap()
        self._require_vc()

        single = self.missing_traces()
        for candidate in range(full_mask(self.space.n_points) + 1):
            if candidate in self._concepts:
                continue
            if not any(candidate & mask == trace
                    for mask, trace in single.items()):
                logger.debug(f'concept {self.space.bitstring(candidate)} '
                    f'can be added without raising the VC dimension')
                return False
        return True


def is_maximum(space, d, mode='definition'):
    """Return True if space is d-maximum

    Parameters
    ----------
    space : ConceptSpace
    d : int
    mode : {'definition','cardinality'}, default 'definition'
        'definition' compares |C n A| with C(|A|,<=d) on every subset A,
        'cardinality' compares |C| with C(|X|,<=d) and requires vc = d

    Returns
    -------
    bool
    """
    return MaximumCheck(space, d).is_maximum(mode=mode)


def is_maximal(space, d):
    """Return True if space has VC dimension d and no concept can be added
    without raising it"""
    return MaximumCheck(space, d).is_maximal()
