"""
This module contains the class RelationSpace for concept spaces given as
a boolean relation between left points and right points, the class
EmbeddingMap, and functions for duals and (generalized) embeddings.

Concept j of a relation space is the set of left points related to
right point j. The dual space swaps left and right.
"""

import logging

import numpy as np
from pandas import DataFrame

from .conceptspace import ConceptSpace
from .exceptions import CapExceededError
from .stats.utils import array_mask, full_mask

logger = logging.getLogger(__name__)


class RelationSpace:
    """
    Concept space as a relation between two sets of named points

    Parameters
    ----------
    left : list of str
        domain points
    right : list of str
        concept names
    rel : array_like of bool
        membership matrix with shape (len(left), len(right))

    Examples
    --------
    >>> rs = RelationSpace(['x','y'], ['a','b'], [[1,0],[1,1]])
    >>> rs.dual().left
    ('a', 'b')
    """

    def __repr__(self):
        return (f'{self.__class__.__name__}(left={len(self._left)}, '
            f'right={len(self._right)})')

    def __init__(self, left, right, rel):

        self._left = tuple(str(name) for name in left)
        self._right = tuple(str(name) for name in right)
        for side, names in [('left', self._left), ('right', self._right)]:
            if not names:
                raise ValueError(f'{side} side of relation is empty')
            if len(set(names)) != len(names):
                raise ValueError(f'duplicate point names on {side} side')

        rel = np.array(rel, dtype=bool)
        if rel.shape != (len(self._left), len(self._right)):
            raise ValueError((f'relation matrix has shape {rel.shape}, '
                f'expected {(len(self._left), len(self._right))}'))
        rel.setflags(write=False)
        self._rel = rel

    def __eq__(self, other):
        if not isinstance(other, RelationSpace):
            return NotImplemented
        return (self._left == other._left and self._right == other._right
            and np.array_equal(self._rel, other._rel))

    def __hash__(self):
        return hash((self._left, self._right, self._rel.tobytes()))

    @property
    def left(self):
        return self._left

    @property
    def right(self):
        return self._right

    @property
    def rel(self):
        """Read-only boolean membership matrix"""
        return self._rel

    @property
    def shape(self):
        return self._rel.shape

    def dual(self):
        """Return transposed relation space"""
        return RelationSpace(self._right, self._left, self._rel.T)

    def to_space(self, dedup=True):
        """Return ConceptSpace with left points as domain and columns as concepts"""
        concepts = [array_mask(self._rel[:, j]) for j in range(len(self._right))]
        return ConceptSpace(self._left, concepts, dedup=dedup)

    def to_frame(self):
        """Return relation as 0/1 DataFrame, left points as index"""
        return DataFrame(self._rel.astype(int), index=list(self._left),
            columns=list(self._right))


def to_relation(space, reduce=False):
    """Return relation form of a concept space

    Parameters
    ----------
    space : ConceptSpace
    reduce : bool, default False
        collapse identical rows and identical columns, keeping the
        first representative of each class

    Returns
    -------
    RelationSpace
        left is the domain, right are concept indices as strings and
        rel[i][j] is bit i of concept j
    """
    n = space.n_points
    rel = np.array([[(c >> i) & 1 for c in space.concepts] for i in range(n)],
        dtype=bool).reshape(n, space.n_concepts)
    left = list(space.domain)
    right = [str(j) for j in range(space.n_concepts)]

    if reduce:
        rows = _first_unique(rel)
        cols = _first_unique(rel.T)
        rel = rel[np.ix_(rows, cols)]
        left = [left[i] for i in rows]
        right = [right[j] for j in cols]

    return RelationSpace(left, right, rel)


def _first_unique(matrix):
    seen = set()
    keep = []
    for i, row in enumerate(matrix):
        key = row.tobytes()
        if key not in seen:
            seen.add(key)
            keep.append(i)
    return keep


def dual(rs):
    """Return dual (transposed) relation space"""
    return rs.dual()


class EmbeddingMap:
    """
    Map of the source grid into the target grid of two relation spaces

    Parameters
    ----------
    pair_map : dict
        (x, y) source index pair to (x', y') target index pair
    flip : sequence of int, optional
        flip bit per source left point; None for a plain embedding

    Notes
    -----
    Maps built with from_product keep the row and column maps, which
    carry shattered sets of the source to shattered sets of the target.
    """

    def __repr__(self):
        kind = 'generalized' if self.generalized else 'plain'
        return f'{self.__class__.__name__}({kind}, pairs={len(self.pair_map)})'

    def __init__(self, pair_map, flip=None, row_map=None, col_map=None):
        self.pair_map = dict(pair_map)
        if flip is not None:
            flip = tuple(int(t) for t in flip)
            if any(t not in (0, 1) for t in flip):
                raise ValueError('flip values must be 0 or 1')
        self.flip = flip
        self.row_map = None if row_map is None else tuple(row_map)
        self.col_map = None if col_map is None else tuple(col_map)

    @classmethod
    def from_product(cls, row_map, col_map, flip=None):
        """Return map (x, y) -> (row_map[x], col_map[y])"""
        pair_map = {(x, y): (xp, yp)
            for x, xp in enumerate(row_map) for y, yp in enumerate(col_map)}
        return cls(pair_map, flip=flip, row_map=row_map, col_map=col_map)

    @property
    def generalized(self):
        return self.flip is not None

    def __eq__(self, other):
        if not isinstance(other, EmbeddingMap):
            return NotImplemented
        return self.pair_map == other.pair_map and self.flip == other.flip


def check_embedding(src, dst, emap):
    """Return True if emap is a (generalized) embedding of src into dst

    Parameters
    ----------
    src, dst : RelationSpace
    emap : EmbeddingMap

    Returns
    -------
    bool
    """
    nx_, ny_ = src.shape
    tx_, ty_ = dst.shape
    if emap.flip is not None and len(emap.flip) != nx_:
        raise ValueError((f'flip has {len(emap.flip)} values, source has '
            f'{nx_} left points'))

    ok = True
    for x in range(nx_):
        tau = emap.flip[x] if emap.flip is not None else 0
        for y in range(ny_):
            if (x, y) not in emap.pair_map:
                raise ValueError(f'map is not defined on source pair {(x, y)}')
            xp, yp = emap.pair_map[(x, y)]
            if not (0 <= xp < tx_ and 0 <= yp < ty_):
                raise ValueError((f'image {(xp, yp)} of {(x, y)} is outside '
                    f'the target grid {dst.shape}'))
            if bool(src.rel[x, y]) ^ bool(tau) != bool(dst.rel[xp, yp]):
                ok = False
    return ok


def find_embedding(src, dst, generalized=False, max_source=16, max_target=36):
    """Return lexicographically first product embedding of src into dst

    Parameters
    ----------
    src, dst : RelationSpace
    generalized : bool, default False
        allow a flip bit per source left point
    max_source : int, default 16
        cap on the number of cells of the source grid
    max_target : int, default 36
        cap on the number of cells of the target grid

    Returns
    -------
    EmbeddingMap or None

    Notes
    -----
    Candidate maps have the form (x, y) -> (row(x), col(y)). Rows are
    assigned in source order, trying target rows in increasing order
    and flip 0 before flip 1; each source column keeps the set of
    target columns still compatible with the rows assigned so far and
    finally takes the smallest one.
    """
    if src.rel.size > max_source:
        raise CapExceededError((f'source grid has {src.rel.size} cells, '
            f'cap is {max_source}'))
    if dst.rel.size > max_target:
        raise CapExceededError((f'target grid has {dst.rel.size} cells, '
            f'cap is {max_target}'))

    nx_, ny_ = src.shape
    tx_ = dst.shape[0]
    # target columns where row x' has value 0 resp. 1
    colsets = [(array_mask(~dst.rel[xp]), array_mask(dst.rel[xp]))
        for xp in range(tx_)]
    flips = (0, 1) if generalized else (0,)
    row_map = [0] * nx_
    flip = [0] * nx_

    def search(x, candidates):
        if x == nx_:
            return candidates
        for xp in range(tx_):
            for tau in flips:
                narrowed = []
                for y in range(ny_):
                    bit = int(src.rel[x, y]) ^ tau
                    cols = candidates[y] & colsets[xp][bit]
                    if not cols:
                        break
                    narrowed.append(cols)
                else:
                    row_map[x] = xp
                    flip[x] = tau
                    found = search(x + 1, narrowed)
                    if found is not None:
                        return found
        return None

    result = search(0, [full_mask(dst.shape[1])] * ny_)
    if result is None:
        logger.debug(f'no embedding of {src} into {dst}')
        return None

    col_map = [(cols & -cols).bit_length() - 1 for cols in result]
    emap = EmbeddingMap.from_product(row_map, col_map,
        flip=flip if generalized else None)
    if not check_embedding(src, dst, emap):
        raise RuntimeError('embedding search returned an invalid map')
    return emap
