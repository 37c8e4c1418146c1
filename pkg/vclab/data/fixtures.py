"""
Concept spaces and compression schemes used as fixtures.

Generated families (power sets, segments of a chain, subsets of bounded
size, rectangle traces, random spaces) and a table of small named
examples with known properties:

    1.2.4, 1.2.5  2-maximal classes on 4 points that are not 2-maximum
    2.1.4         initial segments of a chain with a size 1 scheme
    2.4.5         all subsets of two points on a 5 point domain with a
                  4-copy scheme of size 0
    2.4.6         the first 2-maximal class with a 2-copy scheme of size 1
"""

from collections import OrderedDict
from itertools import product

from ..compression import CompressionScheme, SchemeKey
from ..conceptspace import ConceptSpace
from ..relationspace import RelationSpace
from ..stats.utils import full_mask, submasks, subset_key


def chain_names(n):
    """Return point names p1..pn"""
    return [f'p{i}' for i in range(1, n + 1)]


def power_set(n):
    """Return space of all subsets of p1..pn"""
    if n < 1:
        raise ValueError(f'power set needs n >= 1, got {n}')
    return ConceptSpace(chain_names(n), range(1 << n))


def initial_segments(n, empty=True):
    """Return initial segments of the chain p1 < ... < pn

    Parameters
    ----------
    n : int
        chain length
    empty : bool, default True
        include the empty set as first concept

    Returns
    -------
    ConceptSpace
        concepts are {p1..pk} for k = 1..n
    """
    if n < 1:
        raise ValueError(f'chain needs n >= 1, got {n}')
    concepts = [full_mask(k) for k in range(0 if empty else 1, n + 1)]
    return ConceptSpace(chain_names(n), concepts)


def final_segments(n, empty=True):
    """Return final segments {pk..pn} of the chain p1 < ... < pn"""
    if n < 1:
        raise ValueError(f'chain needs n >= 1, got {n}')
    full = full_mask(n)
    concepts = [0] if empty else []
    concepts += [full & ~full_mask(k) for k in range(n)]
    return ConceptSpace(chain_names(n), concepts)


def size_at_most(n, d):
    """Return the d-maximum class of all subsets of p1..pn with at most d points"""
    if n < 1 or d < 0:
        raise ValueError(f'needs n >= 1 and d >= 0, got n={n}, d={d}')
    return ConceptSpace(chain_names(n), submasks(full_mask(n), maxsize=d))


def initial_segment_scheme(space, variant='plain'):
    """Return size 1 scheme for initial segments of a chain

    Parameters
    ----------
    space : ConceptSpace
        chain in domain order, as made by initial_segments
    variant : {'plain','complement','mixed'}, default 'plain'
        'plain' maps {x} to the initial segment up to x and the empty
        key to the empty set, 'complement' maps {x} to the initial
        segment below x and the empty key to the whole domain,
        'mixed' combines the plain singletons with the whole domain
        for the empty key and is not a valid scheme

    Returns
    -------
    CompressionScheme
    """
    if variant not in ('plain', 'complement', 'mixed'):
        raise ValueError(f'unknown initial segment scheme variant "{variant}"')
    n = space.n_points
    entries = OrderedDict()
    entries[SchemeKey(0)] = 0 if variant == 'plain' else full_mask(n)
    for i in range(n):
        segment = full_mask(i + 1)
        if variant == 'complement':
            segment = full_mask(i)
        entries[SchemeKey(1 << i)] = segment
    return CompressionScheme(space.domain, 1, entries=entries)


def final_segment_scheme(space):
    """Return size 1 scheme {x} -> final segment from x, empty key -> empty set"""
    n = space.n_points
    full = full_mask(n)
    entries = OrderedDict()
    entries[SchemeKey(0)] = 0
    for i in range(n):
        entries[SchemeKey(1 << i)] = full & ~full_mask(i)
    return CompressionScheme(space.domain, 1, entries=entries)


_DOMAIN4 = ['1', '2', '3', '4']

_MAXIMAL_A = [
    {'1'}, {'2'}, {'3'}, {'1', '2'}, {'1', '3'}, {'2', '3'},
    {'1', '4'}, {'2', '4'}, {'3', '4'}, {'1', '2', '3'},
    ]

_MAXIMAL_B = [
    {'1'}, {'2'}, {'1', '2'}, {'1', '3'}, {'2', '3'}, {'1', '4'},
    {'2', '4'}, {'3', '4'}, {'1', '2', '3'}, {'1', '2', '4'},
    ]

# key points, hypothesis of copy 1, hypothesis of copy 2
_TWO_COPY_TABLE = [
    ([], {'1', '2'}, {'3', '4'}),
    (['1'], {'3'}, {'1', '3'}),
    (['2'], {'1'}, {'2', '4'}),
    (['3'], {'2'}, {'1', '2', '3'}),
    (['4'], {'2', '3'}, {'1', '4'}),
    ]


def maximal_class_a():
    """Return 2-maximal class with 10 < 11 concepts on 4 points"""
    return ConceptSpace(_DOMAIN4, _MAXIMAL_A)


def maximal_class_b():
    """Return second 2-maximal class with 10 < 11 concepts on 4 points"""
    return ConceptSpace(_DOMAIN4, _MAXIMAL_B)


def two_copy_scheme(space=None):
    """Return the 2-copy size 1 scheme of the first 2-maximal class"""
    space = maximal_class_a() if space is None else space
    entries = OrderedDict()
    for points, first, second in _TWO_COPY_TABLE:
        key = space.mask(points)
        entries[SchemeKey(key, 1)] = space.mask(first)
        entries[SchemeKey(key, 2)] = space.mask(second)
    return CompressionScheme(space.domain, 1, [2, 2], entries=entries)


def pair_power_class():
    """Return (space, scheme): all subsets of {1,2} on {1..5} with a
    4-copy scheme of size 0"""
    space = ConceptSpace(['1', '2', '3', '4', '5'],
        [set(), {'1'}, {'2'}, {'1', '2'}])
    entries = {SchemeKey(0, copy): concept
        for copy, concept in enumerate(space.concepts, 1)}
    return space, CompressionScheme(space.domain, 0, [4], entries=entries)


def rectangle_name(point):
    x, y = point
    return f'{x:g},{y:g}'


def rectangles(points):
    """Return traces of closed axis-parallel rectangles on a finite point set

    Parameters
    ----------
    points : list of (float, float)

    Returns
    -------
    ConceptSpace
        domain names 'x,y', concepts are the empty set and every point
        set cut out by a rectangle with corners on point coordinates,
        ordered by size and point indices
    """
    points = [(float(x), float(y)) for x, y in points]
    if not points:
        raise ValueError('rectangles need at least one point')
    xs = sorted({x for x, _ in points})
    ys = sorted({y for _, y in points})

    traces = {0}
    for (x1, x2), (y1, y2) in product(
            [(a, b) for a in xs for b in xs if a <= b],
            [(a, b) for a in ys for b in ys if a <= b]):
        mask = 0
        for i, (x, y) in enumerate(points):
            if x1 <= x <= x2 and y1 <= y <= y2:
                mask |= 1 << i
        traces.add(mask)

    names = [rectangle_name(p) for p in points]
    return ConceptSpace(names, sorted(traces, key=subset_key))


def random_space(rng, n_points, max_concepts):
    """Return random concept space

    Parameters
    ----------
    rng : numpy.random.Generator
    n_points : int
    max_concepts : int
        number of concepts is drawn from 1..max_concepts, repeated
        draws are dropped

    Returns
    -------
    ConceptSpace
    """
    n_concepts = int(rng.integers(1, max_concepts + 1))
    concepts = rng.integers(0, 1 << n_points, size=n_concepts)
    return ConceptSpace(chain_names(n_points), [int(c) for c in concepts])


def random_relation(rng, n_left, n_right, p=0.5):
    """Return random relation space with entries drawn with probability p"""
    rel = rng.random((n_left, n_right)) < p
    return RelationSpace([f'x{i}' for i in range(1, n_left + 1)],
        [f'y{j}' for j in range(1, n_right + 1)], rel)


EXAMPLE_IDS = ['1.2.4', '1.2.5', '2.1.4', '2.4.5', '2.4.6']


def named_example(example_id, n=6, variant='plain'):
    """Return (space, scheme) of a named example, scheme may be None

    Parameters
    ----------
    example_id : str
        one of EXAMPLE_IDS
    n : int, default 6
        chain length of '2.1.4'
    variant : str, default 'plain'
        scheme variant of '2.1.4', see initial_segment_scheme
    """
    if example_id == '1.2.4':
        return maximal_class_a(), None
    if example_id == '1.2.5':
        return maximal_class_b(), None
    if example_id == '2.1.4':
        space = initial_segments(n)
        return space, initial_segment_scheme(space, variant=variant)
    if example_id == '2.4.5':
        return pair_power_class()
    if example_id == '2.4.6':
        space = maximal_class_a()
        return space, two_copy_scheme(space)
    raise ValueError((f'unknown example "{example_id}", valid ids are '
        f'{EXAMPLE_IDS}'))


def named_examples(n=6):
    """Return OrderedDict of all named examples in the file layouts"""
    examples = OrderedDict()
    for example_id in EXAMPLE_IDS:
        space, scheme = named_example(example_id, n=n)
        entry = OrderedDict()
        entry['space'] = space.to_dict()
        entry['scheme'] = None if scheme is None else scheme.to_dict()
        examples[example_id] = entry
    return examples

