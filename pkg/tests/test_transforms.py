import numpy as np
import pytest
import vclab as vl
from vclab import SchemeKey as K
from vclab.data import fixtures as fx
from vclab.stats.utils import full_mask, submasks
from vclab.transforms import array_copies


@pytest.fixture
def chain():
    return fx.initial_segments(4)


def identity_scheme(space, d):
    entries = {K(sigma): sigma for sigma in submasks(space.full, maxsize=d)}
    return vl.CompressionScheme(space.domain, d, entries=entries)


def test_to_labelled(chain):
    labelled = vl.to_labelled(chain, fx.initial_segment_scheme(chain))
    assert labelled.kind == 'labelled'
    assert labelled.size == 1

    expected = {K(0, 1, 0): 0}
    for i in range(4):
        expected[K(1 << i, 1, 1 << i)] = full_mask(i + 1)
    assert labelled.entries == expected
    assert vl.verify_scheme(chain, labelled)[0]


def test_to_labelled_copies():
    space = fx.maximal_class_a()
    labelled = vl.to_labelled(space, fx.two_copy_scheme(space))
    assert labelled.copies == (2, 2)
    assert vl.verify_scheme(space, labelled)[0]


def test_to_labelled_invalid():
    chain = fx.initial_segments(6)

    # scheme must verify
    with pytest.raises(vl.VerificationError):
        vl.to_labelled(chain, fx.initial_segment_scheme(chain, 'mixed'))

    labelled = vl.to_labelled(chain, fx.initial_segment_scheme(chain))
    with pytest.raises(ValueError):
        vl.to_labelled(chain, labelled)


def test_restrict_scheme(chain):
    scheme = vl.restrict_scheme(chain, fx.initial_segment_scheme(chain),
        ['p2', 'p4'])
    assert scheme.domain == ('p2', 'p4')
    assert scheme.entries == {K(0): 0, K(0b01): 0b01, K(0b10): 0b11}
    subspace = chain.restrict(['p2', 'p4'])
    assert vl.verify_scheme(subspace, scheme)[0]


def test_restrict_scheme_labelled(chain):
    labelled = vl.to_labelled(chain, fx.initial_segment_scheme(chain))
    points = ['p1', 'p3', 'p4']
    scheme = vl.restrict_scheme(chain, labelled, points)
    assert scheme.labelled
    assert vl.verify_scheme(chain.restrict(points), scheme)[0]

    with pytest.raises(ValueError):
        vl.restrict_scheme(chain, labelled, [])


def _schemes_with_spaces():
    cases = []
    for example_id in fx.EXAMPLE_IDS:
        space, scheme = fx.named_example(example_id)
        if scheme is not None:
            cases.append((example_id, space, scheme))
    space, scheme = fx.named_example('2.1.4', variant='complement')
    cases.append(('2.1.4-complement', space, scheme))
    return cases


def test_restrict_scheme_all_subsets():
    for name, space, scheme in _schemes_with_spaces():
        schemes = [scheme]
        if scheme.kind == 'unlabelled':
            schemes.append(vl.to_labelled(space, scheme))
        for current in schemes:
            for subset in submasks(space.full, minsize=1):
                points = space.points(subset)
                restricted = vl.restrict_scheme(space, current, points)
                assert restricted.domain == points
                assert restricted.kind == current.kind
                ok, counterexample = vl.verify_scheme(space.restrict(points),
                    restricted)
                assert ok, (name, points, counterexample)


def test_restrict_scheme_two_copies():
    space, scheme = fx.named_example('2.4.6')
    points = ['1', '2', '3']
    restricted = vl.restrict_scheme(space, scheme, points)
    assert restricted.copies == (2, 2)

    # keys touching point 4 are dropped
    assert len(restricted.entries) == 8
    assert restricted.hypothesis(K(0, 1)) == 0b011
    assert restricted.hypothesis(K(0, 2)) == 0b100
    assert vl.verify_scheme(space.restrict(points), restricted)[0]


def test_restrict_scheme_copies_only():
    space, scheme = fx.named_example('2.4.5')
    points = ['1', '2']
    restricted = vl.restrict_scheme(space, scheme, points)
    subspace = space.restrict(points)
    assert subspace.concept_strings() == ['00', '01', '10', '11']
    assert restricted.copies == (4,)
    assert sorted(restricted.entries.values()) == [0, 1, 2, 3]
    assert vl.verify_scheme(subspace, restricted)[0]

    # off the support every copy collapses to the empty trace
    restricted = vl.restrict_scheme(space, scheme, ['3', '5'])
    assert set(restricted.entries.values()) == {0}
    assert vl.verify_scheme(space.restrict(['3', '5']), restricted)[0]


def test_widen_to_copies(chain):
    scheme = vl.widen_to_copies(chain, fx.initial_segment_scheme(chain), 0, 5)
    assert scheme.size == 0
    assert scheme.copies == (5,)
    assert vl.verify_scheme(chain, scheme)[0]

    # 4 * C(4,<=0) < C(4,<=1)
    with pytest.raises(vl.InfeasibleCopiesError):
        vl.widen_to_copies(chain, fx.initial_segment_scheme(chain), 0, 4)


def test_widen_to_copies_invalid(chain):
    with pytest.raises(ValueError):
        vl.widen_to_copies(chain, fx.initial_segment_scheme(chain), 2, 5)

    space = fx.maximal_class_a()
    with pytest.raises(ValueError):
        vl.widen_to_copies(space, fx.two_copy_scheme(space), 0, 20)


def test_widen_to_copies_subclasses():

    # identity scheme of a subclass of all sets of size <= d
    rng = np.random.default_rng(12)
    for _ in range(100):
        n = int(rng.integers(3, 11))
        d = int(rng.integers(1, 4))
        full = list(submasks(full_mask(n), maxsize=d))
        chosen = rng.choice(len(full), size=int(rng.integers(1, len(full) + 1)),
            replace=False)
        space = vl.ConceptSpace(fx.chain_names(n), [full[i] for i in chosen])
        scheme = identity_scheme(space, d)
        for k in range(d):
            copies = vl.minimal_copies(n, d, k)
            widened = vl.widen_to_copies(space, scheme, k, copies)
            assert widened is not None
            assert widened.copies == tuple([copies] * (k + 1))
            assert vl.verify_scheme(space, widened)[0]


def test_cover_to_copy_scheme():
    n = 5
    initial = fx.initial_segments(n)
    final = fx.final_segments(n)
    space = vl.ConceptSpace(initial.domain,
        list(initial.concepts) + list(final.concepts))
    parts = [(initial, fx.initial_segment_scheme(initial)),
        (final, fx.final_segment_scheme(final))]

    scheme = vl.cover_to_copy_scheme(space, parts)
    assert scheme.size == 1
    assert scheme.copies == (2, 2)
    assert vl.verify_scheme(space, scheme)[0]

    # a single part does not cover the union
    with pytest.raises(ValueError):
        vl.cover_to_copy_scheme(space, parts[:1])

    with pytest.raises(ValueError):
        vl.cover_to_copy_scheme(space, [])


def test_cover_to_copy_scheme_sizes():

    # parts of different size give fewer copies for larger keys
    power, _ = fx.pair_power_class()
    chain = vl.ConceptSpace(power.domain, [0, 0b1])
    chain_scheme = vl.CompressionScheme(power.domain, 1,
        entries={K(0): 0, K(0b1): 0b1})
    space = vl.ConceptSpace(power.domain, list(power.concepts))
    parts = [(chain, chain_scheme), (power, identity_scheme(power, 2))]

    scheme = vl.cover_to_copy_scheme(space, parts)
    assert scheme.size == 2
    assert scheme.copies == (2, 2, 1)
    assert vl.verify_scheme(space, scheme)[0]


def test_from_bit_scheme():
    space = fx.maximal_class_a()
    table = {
        ((), '0'): {'1', '2'}, ((), '1'): {'3', '4'},
        (('1',), '0'): {'3'}, (('1',), '1'): {'1', '3'},
        (('2',), '0'): {'1'}, (('2',), '1'): {'2', '4'},
        (('3',), '0'): {'2'}, (('3',), '1'): {'1', '2', '3'},
        (('4',), '0'): {'2', '3'}, (('4',), '1'): {'1', '4'},
        }
    scheme = vl.from_bit_scheme(space, 1, 1, table)
    assert scheme == fx.two_copy_scheme(space)

    with pytest.raises(ValueError):
        vl.from_bit_scheme(space, 1, 2, table)


def test_array_copies():
    assert array_copies(2, 0) == 1
    assert array_copies(2, 1) == 3
    assert array_copies(2, 2) == 2
    assert array_copies(1, 2) == 0
    assert array_copies(3, 3) == 6


def test_from_array_scheme(chain):
    table = {(None,): 0}
    for i, name in enumerate(chain.domain):
        table[(name,)] = full_mask(i + 1)
    scheme = vl.from_array_scheme(chain, 1, table)
    assert scheme == fx.initial_segment_scheme(chain)

    # sequences of length 2 over two points
    space = vl.ConceptSpace(['a', 'b'], ['00', '10', '01', '11'])
    table = {('a', 'b'): '11', ('b', 'a'): '01', ('a', None): '10'}
    scheme = vl.from_array_scheme(space, 2, table)
    assert scheme.copies == (1, 3, 2)
    assert scheme.hypothesis(K(0b11, 1)) == 0b11
    assert scheme.hypothesis(K(0b11, 2)) == 0b10
    assert scheme.hypothesis(K(0b01, 2)) == 0b01

    with pytest.raises(ValueError):
        vl.from_array_scheme(space, 2, {('a',): '10'})
