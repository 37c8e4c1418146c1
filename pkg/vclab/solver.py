"""
Exhaustive search for sample compression schemes on small domains.

Every sample (A, f) of the space, with A a nonempty subset and f a
trace on A, is a constraint that must be assigned to a key inside A.
All samples assigned to one key must agree where their subsets
overlap; the key's hypothesis is then the union of its samples.
"""

from dataclasses import dataclass, field
import logging
import time

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching
from scipy.special import comb

from .compression import CompressionScheme, SchemeKey, verify_scheme
from .stats.utils import (popcount, submasks, mask_indices, bitstring, project,
    subset_key)

logger = logging.getLogger(__name__)


@dataclass
class SolveResult:
    """
    Outcome of a scheme search

    Attributes
    ----------
    status : {'FOUND','UNSAT','CAP_EXCEEDED'}
    scheme : CompressionScheme or None
        verified scheme when status is FOUND
    stats : dict
        nodes, constraints, keys, pruned and wall_time
    """
    status: str
    scheme: CompressionScheme = None
    stats: dict = field(default_factory=dict)

    @property
    def found(self):
        return self.status == 'FOUND'


class SchemeSolver:
    """
    Backtracking search for a compression scheme of given size and copies

    Parameters
    ----------
    space : ConceptSpace
    size : int
        largest key size
    copies : sequence of int, optional
        n_0..n_size, default all 1
    kind : {'unlabelled','labelled'}, default 'unlabelled'
    max_points : int, optional
        domain size cap, default MAX_POINTS
    max_nodes : int, optional
        stop with CAP_EXCEEDED after this many assignments
    counting : bool, default True
        run the counting pre-check before the search

    Notes
    -----
    Samples are visited by decreasing |A|, then by the point indices of
    A, then by the bit string of f. Keys are tried by number of points,
    point indices and copy index. A sample that some key already
    reproduces is skipped. A key with copy c > 1 is only opened after
    copy c-1 of the same points is in use.

    Distinct traces on A need distinct keys inside A. After each
    assignment to key k, every subset A containing the points of k must
    still have a matching of its traces to distinct keys that agree
    with them, otherwise the assignment is undone. The check only
    removes branches without a solution, so the first solution in the
    visiting order is unchanged.
    """

    MAX_POINTS = 12

    def __repr__(self):
        return (f'{self.__class__.__name__}(size={self.size}, '
            f'copies={list(self.copies)}, kind={self.kind})')

    def __init__(self, space, size, copies=None, kind='unlabelled',
            max_points=None, max_nodes=None, counting=True):

        self.space = space
        self.size = int(size)
        if self.size < 0:
            raise ValueError(f'scheme size must be >= 0, got {size}')
        self.copies = tuple([1] * (self.size + 1) if copies is None
            else (int(n) for n in copies))
        if len(self.copies) != self.size + 1:
            raise ValueError((f'copies {list(self.copies)} must have '
                f'size+1 = {self.size + 1} values'))
        if kind not in CompressionScheme.KINDS:
            raise ValueError(f'kind must be one of {CompressionScheme.KINDS}')
        self.kind = kind
        self.max_points = self.MAX_POINTS if max_points is None else max_points
        self.max_nodes = max_nodes
        self.counting = bool(counting)
        self._concepts = space.distinct()

    def _empty_scheme(self, entries=None):
        return CompressionScheme(self.space.domain, self.size, self.copies,
            self.kind, entries)

    def counting_bound_holds(self):
        """Return False if some subset has more traces than keys inside it"""
        labelled = self.kind == 'labelled'
        available = {}
        for subset in range(1, 1 << self.space.n_points):
            n = popcount(subset)
            if n not in available:
                available[n] = sum(self.copies[i] * int(comb(n, i, exact=True))
                    * (2 ** i if labelled else 1)
                    for i in range(min(n, self.size) + 1))
            if len({c & subset for c in self._concepts}) > available[n]:
                logger.debug((f'subset {self.space.points(subset)} has more '
                    f'traces than the {available[n]} keys inside it'))
                return False
        return True

    def _build(self):
        labelled = self.kind == 'labelled'
        pairs = []
        for subset in submasks(self.space.full, minsize=1):
            indices = mask_indices(subset)
            for trace in {c & subset for c in self._concepts}:
                order = bitstring(project(trace, indices), len(indices))
                pairs.append(((-len(indices), indices, order), subset, trace))
        pairs.sort(key=lambda p: p[0])
        pairs = [(subset, trace) for _, subset, trace in pairs]

        keys = []
        key_index = {}
        previous = []

        def index_of(key):
            if key not in key_index:
                key_index[key] = len(keys)
                keys.append(key)
                previous.append(-1)
                if key.copy > 1:
                    prev = index_of(SchemeKey(key.points, key.copy - 1,
                        key.labels))
                    previous[key_index[key]] = prev
            return key_index[key]

        candidates = []
        for subset, trace in pairs:
            cands = []
            for sigma in submasks(subset, maxsize=self.size):
                labels = trace & sigma if labelled else None
                for copy in range(1, self.copies[popcount(sigma)] + 1):
                    cands.append(index_of(SchemeKey(sigma, copy, labels)))
            candidates.append(cands)

        subset_pairs = {}
        for p, (subset, _) in enumerate(pairs):
            subset_pairs.setdefault(subset, []).append(p)

        key_subsets = [set() for _ in keys]
        for p, cands in enumerate(candidates):
            for k in cands:
                key_subsets[k].add(pairs[p][0])
        key_subsets = [sorted(s, key=subset_key) for s in key_subsets]

        return pairs, candidates, keys, previous, subset_pairs, key_subsets

    def solve(self):
        """Return SolveResult"""
        start_time = time.perf_counter()
        stats = {'nodes': 0, 'constraints': 0, 'keys': 0, 'pruned': None}

        def result(status, scheme=None):
            stats['wall_time'] = time.perf_counter() - start_time
            logger.info(f'{self}: {status} {stats}')
            return SolveResult(status, scheme, stats)

        if self.space.n_points > self.max_points:
            logger.warning((f'domain has {self.space.n_points} points, '
                f'solver cap is {self.max_points}'))
            return result('CAP_EXCEEDED')

        if self.counting and not self.counting_bound_holds():
            stats['pruned'] = 'counting'
            return result('UNSAT')

        (pairs, candidates, keys, previous, subset_pairs,
            key_subsets) = self._build()
        stats['constraints'] = len(pairs)
        stats['keys'] = len(keys)
        nkeys = len(keys)

        known = [0] * nkeys
        value = [0] * nkeys

        def consistent(k, subset, trace):
            return ((value[k] ^ trace) & known[k] & subset) == 0

        def covered(p):
            subset, trace = pairs[p]
            for k in candidates[p]:
                if (subset & ~known[k]) == 0 and (value[k] & subset) == trace:
                    return True
            return False

        def matching_ok(subset):
            rows = subset_pairs[subset]
            indices = []
            indptr = [0]
            for q in rows:
                trace = pairs[q][1]
                cols = [k2 for k2 in candidates[q] if consistent(k2, subset, trace)]
                if not cols:
                    return False
                indices.extend(sorted(cols))
                indptr.append(len(indices))
            if len(rows) == 1:
                return True
            graph = csr_matrix((np.ones(len(indices), dtype=np.int8),
                np.array(indices, dtype=np.int32), np.array(indptr, dtype=np.int32)),
                shape=(len(rows), nkeys))
            matched = maximum_bipartite_matching(graph, perm_type='column')
            return bool(np.all(matched >= 0))

        def forward_ok(k):
            return all(matching_ok(subset) for subset in key_subsets[k])

        npairs = len(pairs)
        choice = [0] * npairs
        trail = [None] * npairs
        p = 0
        first = 0
        while True:
            if p == npairs:
                break

            if first == 0 and covered(p):
                choice[p] = -1
                p += 1
                continue

            subset, trace = pairs[p]
            cands = candidates[p]
            assigned = False
            for ci in range(first, len(cands)):
                k = cands[ci]
                if previous[k] >= 0 and known[previous[k]] == 0:
                    continue
                if not consistent(k, subset, trace):
                    continue
                old = (known[k], value[k])
                known[k] |= subset
                value[k] |= trace
                stats['nodes'] += 1
                if forward_ok(k):
                    choice[p] = ci
                    trail[p] = (k, old)
                    assigned = True
                    break
                known[k], value[k] = old

            if self.max_nodes is not None and stats['nodes'] > self.max_nodes:
                return result('CAP_EXCEEDED')

            if assigned:
                p += 1
                first = 0
                continue

            # backtrack to the last assigned sample
            while True:
                p -= 1
                if p < 0:
                    return result('UNSAT')
                if choice[p] == -1:
                    continue
                k, old = trail[p]
                known[k], value[k] = old
                first = choice[p] + 1
                break

        entries = {keys[k]: value[k] for k in range(len(keys)) if known[k]}
        scheme = self._empty_scheme(entries)
        ok, counterexample = verify_scheme(self.space, scheme)
        if not ok:
            raise RuntimeError(f'solver produced a scheme failing on {counterexample}')
        return result('FOUND', scheme)


def solve_scheme(space, size, copies=None, kind='unlabelled', max_points=None,
        max_nodes=None, counting=True):
    """Return SolveResult of an exhaustive scheme search

    Parameters
    ----------
    space : ConceptSpace
    size : int
    copies : sequence of int, optional
        n_0..n_size, default all 1
    kind : {'unlabelled','labelled'}, default 'unlabelled'
    max_points : int, optional
        domain size cap, default SchemeSolver.MAX_POINTS
    max_nodes : int, optional
        assignment budget
    counting : bool, default True
        run the counting pre-check; without it an UNSAT answer comes
        from the exhaustive search

    Returns
    -------
    SolveResult
        FOUND with a verified scheme, UNSAT if no scheme of this shape
        exists, CAP_EXCEEDED if the domain or the budget is too large
    """
    return SchemeSolver(space, size, copies=copies, kind=kind,
        max_points=max_points, max_nodes=max_nodes, counting=counting).solve()
