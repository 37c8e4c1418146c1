"""
Constructions that turn verified compression schemes into other
verified schemes: labelled schemes from unlabelled ones, schemes on
subspaces, copy schemes of smaller size, copy schemes from a cover of
the class, and copy schemes from array and bit-extended schemes.
"""

from itertools import product
import logging
import warnings

import networkx as nx
from scipy.special import comb

from .compression import CompressionScheme, SchemeKey, verify_scheme
from .exceptions import VerificationError, InfeasibleCopiesError
from .stats.bounds import copies_feasible
from .stats.utils import submasks, mask_indices, project, indices_mask

logger = logging.getLogger(__name__)


def _require_valid(space, scheme, what='scheme'):
    ok, counterexample = verify_scheme(space, scheme)
    if not ok:
        raise VerificationError((f'{what} does not verify, no key for '
            f'sample {counterexample.to_dict()}'))


def _require_plain(scheme):
    if scheme.labelled or not scheme.is_plain:
        raise ValueError((f'expected a plain unlabelled scheme, got '
            f'{scheme.kind} scheme with copies {list(scheme.copies)}'))


def to_labelled(space, scheme):
    """Return labelled scheme with the same size and copies

    Parameters
    ----------
    space : ConceptSpace
    scheme : CompressionScheme
        verified unlabelled scheme

    Returns
    -------
    CompressionScheme
        labelled scheme; key (sigma, f on sigma) gets H(sigma) where
        sigma is the first key that reproduces sample f

    """
    if scheme.labelled:
        raise ValueError('scheme is already labelled')
    _require_valid(space, scheme)

    defined = scheme.entries
    entries = {}
    for subset in submasks(space.full, minsize=1):
        for trace in space.traces(subset):
            for key in scheme.keys_within(subset):
                if scheme.hypothesis(key) & subset == trace:
                    break
            else:
                raise RuntimeError("no key for a sample of a verified scheme")
            if key not in defined:
                continue
            labelled_key = SchemeKey(key.points, key.copy, trace & key.points)
            entries[labelled_key] = defined[key]

    return CompressionScheme(scheme.domain, scheme.size, scheme.copies,
        'labelled', entries)


def restrict_scheme(space, scheme, subset):
    """Return scheme on the subspace on subset

    Keys inside subset are kept, hypotheses and labels are restricted
    to subset.

    Parameters
    ----------
    space : ConceptSpace
    scheme : CompressionScheme
        verified scheme on space
    subset : iterable of str

    Returns
    -------
    CompressionScheme
        scheme over the domain of space.restrict(subset)
    """
    _require_valid(space, scheme)
    mask = space.mask(subset)
    if not mask:
        raise ValueError('cannot restrict to an empty subset')
    indices = mask_indices(mask)

    entries = {}
    for key, hypothesis in scheme.entries.items():
        if key.points & ~mask:
            continue
        labels = None if key.labels is None else project(key.labels, indices)
        newkey = SchemeKey(project(key.points, indices), key.copy, labels)
        entries[newkey] = project(hypothesis, indices)

    domain = [space.domain[i] for i in indices]
    return CompressionScheme(domain, scheme.size, scheme.copies, scheme.kind,
        entries)


def widen_to_copies(space, scheme, k, n):
    """Return n-copy scheme of size k from a plain scheme of size d >= k

    Parameters
    ----------
    space : ConceptSpace
    scheme : CompressionScheme
        verified plain unlabelled scheme of size d
    k : int
        new size, k <= d
    n : int
        number of copies for every key size

    Returns
    -------
    CompressionScheme or None
        None if no key assignment respecting subsets exists

    Raises
    ------
    InfeasibleCopiesError
        if n * C(m,<=k) < C(m,<=d)

    Notes
    -----
    Every key set sigma of size at most d is matched to a pair (tau, i)
    with tau a subset of sigma, by maximum bipartite matching. The new
    scheme maps (tau, i) to the hypothesis of its sigma.
    """
    _require_plain(scheme)
    d = scheme.size
    if not 0 <= k <= d:
        raise ValueError(f'k must be in 0..{d}, got {k}')
    if n < 1:
        raise ValueError(f'n must be >= 1, got {n}')

    m = space.n_points
    if not copies_feasible(m, d, k, n):
        raise InfeasibleCopiesError((f'{n} * C({m},<={k}) < C({m},<={d}), '
            f'no {n}-copy scheme of size {k} is guaranteed'))
    _require_valid(space, scheme)

    graph = nx.Graph()
    sources = [('sigma', sigma) for sigma in submasks(space.full, maxsize=d)]
    graph.add_nodes_from(sources, bipartite=0)
    targets = [('tau', tau, i) for tau in submasks(space.full, maxsize=k)
        for i in range(1, n + 1)]
    graph.add_nodes_from(targets, bipartite=1)
    for node in sources:
        sigma = node[1]
        for tau in submasks(sigma, maxsize=k):
            for i in range(1, n + 1):
                graph.add_edge(node, ('tau', tau, i))

    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=sources)
    unmatched = [node for node in sources if node not in matching]
    if unmatched:
        msg = (f'no subset respecting matching for m={m}, d={d}, k={k}, '
            f'n={n}: {len(unmatched)} key sets unmatched')
        logger.warning(msg)
        warnings.warn(msg)
        return None

    defined = scheme.entries
    entries = {}
    for node in sources:
        sigma = node[1]
        key = SchemeKey(sigma)
        if key not in defined:
            continue
        _, tau, i = matching[node]
        entries[SchemeKey(tau, i)] = defined[key]

    logger.debug(f'widened size {d} scheme to {n}-copy size {k} scheme')
    return CompressionScheme(scheme.domain, k, [n] * (k + 1), 'unlabelled',
        entries)


def cover_to_copy_scheme(space, parts):
    """Return copy scheme from schemes of classes that cover the space

    Parameters
    ----------
    space : ConceptSpace
    parts : list of (ConceptSpace, CompressionScheme)
        classes on the same domain with verified plain schemes

    Returns
    -------
    CompressionScheme
        size k = max d_j, n_i = number of parts with d_j >= i; parts
        are ordered by decreasing size and part l provides copy l
    """
    if not parts:
        raise ValueError('cover needs at least one part')

    union = set()
    for j, (part_space, part_scheme) in enumerate(parts, 1):
        if tuple(part_space.domain) != tuple(space.domain):
            raise ValueError(f'part {j} has a different domain')
        _require_plain(part_scheme)
        _require_valid(part_space, part_scheme, what=f'scheme of part {j}')
        union |= part_space.distinct()

    uncovered = space.distinct() - union
    if uncovered:
        first = space.bitstring(min(uncovered))
        raise ValueError((f'parts do not cover the class, {len(uncovered)} '
            f'concepts missing, e.g. {first}'))

    ordered = sorted(parts, key=lambda part: -part[1].size)
    k = ordered[0][1].size
    copies = [sum(1 for _, sch in ordered if sch.size >= i) for i in range(k + 1)]

    entries = {}
    for copy, (_, part_scheme) in enumerate(ordered, 1):
        for key, hypothesis in part_scheme.entries.items():
            entries[SchemeKey(key.points, copy)] = hypothesis

    return CompressionScheme(space.domain, k, copies, 'unlabelled', entries)


def from_bit_scheme(space, size, bits, table):
    """Return copy scheme for an extended scheme of given size using bits

    Parameters
    ----------
    space : ConceptSpace
    size : int
    bits : int
        number of extra bits b
    table : dict
        (point names, bit string of length b) to hypothesis, where a
        hypothesis is a '0'/'1' string, a set of point names or a mask

    Returns
    -------
    CompressionScheme
        2^b-copy scheme; bit string t becomes copy int(t, 2) + 1
    """
    entries = {}
    for (points, tau), hypothesis in table.items():
        if len(tau) != bits or set(tau) - {'0', '1'}:
            raise ValueError(f'"{tau}" is not a string of {bits} bits')
        key = SchemeKey(space.mask(points), int(tau, 2) + 1 if bits else 1)
        entries[key] = _hypothesis(space, hypothesis)
    return CompressionScheme(space.domain, size, [2 ** bits] * (size + 1),
        'unlabelled', entries)


def array_copies(length, size):
    """Return number of sequences of given length over a set of `size`
    points plus a blank that use every point"""
    return sum((-1) ** j * int(comb(size, j, exact=True)) * (size + 1 - j) ** length
        for j in range(size + 1))


def from_array_scheme(space, length, table):
    """Return copy scheme for an array scheme of sequences of given length

    Parameters
    ----------
    space : ConceptSpace
    length : int
        sequence length
    table : dict
        sequence (tuple of point names, None for the blank) to hypothesis

    Returns
    -------
    CompressionScheme
        scheme of size min(length, |domain|); a sequence becomes the
        key of its non-blank points, with copy index the rank of the
        sequence among all sequences with the same points
    """
    size = min(length, space.n_points)
    copies = [array_copies(length, i) for i in range(size + 1)]

    ranks = {}
    entries = {}
    for sequence, hypothesis in table.items():
        if len(sequence) != length:
            raise ValueError(f'sequence {sequence} does not have length {length}')
        symbols = tuple(None if s is None else space.index(s) for s in sequence)
        points = indices_mask(s for s in symbols if s is not None)
        if points not in ranks:
            alphabet = [None] + mask_indices(points)
            everything = [seq for seq in product(alphabet, repeat=length)
                if indices_mask(s for s in seq if s is not None) == points]
            ranks[points] = {seq: r for r, seq in enumerate(everything, 1)}
        entries[SchemeKey(points, ranks[points][symbols])] = _hypothesis(
            space, hypothesis)

    return CompressionScheme(space.domain, size, copies, 'unlabelled', entries)


def _hypothesis(space, hypothesis):
    if isinstance(hypothesis, str):
        return space.concept_mask(hypothesis)
    if isinstance(hypothesis, (set, frozenset, list, tuple)):
        return space.mask(hypothesis)
    return int(hypothesis)
