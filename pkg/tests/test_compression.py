import pytest
import vclab as vl
from vclab import SchemeKey as K
from vclab.data import fixtures as fx


@pytest.fixture
def chain():
    return fx.initial_segments(6)


def test_SchemeKey():
    key = K(0b101)
    assert key.copy == 1
    assert key.labels is None
    assert key == K(5, 1, None)

    keys = [K(0b11, 1), K(0b100, 2), K(0b1), K(0b100, 1), K(0)]
    assert sorted(keys, key=K.sort_key) == [K(0), K(0b1), K(0b100, 1),
        K(0b100, 2), K(0b11, 1)]


def test_CompressionScheme_init():
    scheme = vl.CompressionScheme(['a', 'b'], 1, [1, 2],
        entries={K(0b01, 2): 0b11})
    assert scheme.size == 1
    assert scheme.copies == (1, 2)
    assert scheme.kind == 'unlabelled'
    assert not scheme.labelled
    assert not scheme.is_plain
    assert len(scheme) == 1

    # keys without an entry have the empty hypothesis
    assert scheme.hypothesis(K(0b01, 2)) == 0b11
    assert scheme.hypothesis(K(0b10, 1)) == 0

    scheme = vl.CompressionScheme(['a', 'b'], 2)
    assert scheme.copies == (1, 1, 1)
    assert scheme.is_plain


def test_CompressionScheme_invalid():
    domain = ['a', 'b']

    # key larger than the scheme size
    with pytest.raises(ValueError):
        vl.CompressionScheme(domain, 1, entries={K(0b11): 0})

    # copy index above n_i
    with pytest.raises(ValueError):
        vl.CompressionScheme(domain, 1, [1, 2], entries={K(0b01, 3): 0})

    # labelled key in an unlabelled scheme
    with pytest.raises(ValueError):
        vl.CompressionScheme(domain, 1, entries={K(0b01, 1, 1): 0})

    # labels outside the key points
    with pytest.raises(ValueError):
        vl.CompressionScheme(domain, 1, kind='labelled',
            entries={K(0b01, 1, 0b10): 0})

    # hypothesis outside the domain
    with pytest.raises(ValueError):
        vl.CompressionScheme(domain, 1, entries={K(0b01): 0b100})

    with pytest.raises(ValueError):
        vl.CompressionScheme(domain, 1, [1])

    with pytest.raises(ValueError):
        vl.CompressionScheme(domain, 1, kind='partial')

    with pytest.raises(TypeError):
        vl.CompressionScheme(domain, 1, entries={(0b01, 1): 0})


def test_CompressionScheme_entries():
    scheme = vl.CompressionScheme(['a'], 1, entries={K(1): 1})
    entries = scheme.entries
    entries[K(0)] = 1

    # entries returns a copy
    assert K(0) not in scheme.entries

    assert scheme.hypothesis(K(0)) == 0
    assert len(scheme) == 1


def test_CompressionScheme_keys_within():
    scheme = vl.CompressionScheme(['a', 'b'], 1, [1, 2])
    assert list(scheme.keys_within(0b11)) == [K(0), K(0b01, 1), K(0b01, 2),
        K(0b10, 1), K(0b10, 2)]
    assert list(scheme.keys_within(0)) == [K(0)]

    # labelled keys carry the labels of their points
    scheme = vl.CompressionScheme(['a', 'b'], 1, kind='labelled')
    assert list(scheme.keys_within(0b11, 0b10)) == [K(0, 1, 0),
        K(0b01, 1, 0), K(0b10, 1, 0b10)]


def test_CompressionScheme_dict():
    space = fx.maximal_class_a()
    scheme = fx.two_copy_scheme(space)
    json_dict = scheme.to_dict()
    assert json_dict['entries'][0] == {'points': [], 'copy': 1,
        'hypothesis': '1100'}
    assert json_dict['entries'][1]['hypothesis'] == '0011'
    assert vl.CompressionScheme.from_dict(json_dict, space.domain) == scheme


def test_CompressionScheme_json(tmp_path, chain):
    scheme = fx.initial_segment_scheme(chain)
    filepath = tmp_path / 'scheme.json'
    scheme.to_json(filepath)
    assert vl.CompressionScheme.from_json(filepath, chain.domain) == scheme


def test_verify_scheme_chain(chain):
    for variant in ['plain', 'complement']:
        scheme = fx.initial_segment_scheme(chain, variant=variant)
        assert vl.verify_scheme(chain, scheme) == (True, None)

    # whole domain for the empty key and plain singletons
    scheme = fx.initial_segment_scheme(chain, variant='mixed')
    ok, counterexample = vl.verify_scheme(chain, scheme)
    assert not ok
    assert counterexample == vl.Counterexample(('p1',), '0')
    assert counterexample.to_dict() == {'subset': ['p1'], 'labels': '0'}


def test_verify_scheme_examples():
    space = fx.final_segments(5)
    assert vl.verify_scheme(space, fx.final_segment_scheme(space))[0]

    space = fx.maximal_class_a()
    assert vl.verify_scheme(space, fx.two_copy_scheme(space))[0]

    space, scheme = fx.pair_power_class()
    assert vl.verify_scheme(space, scheme)[0]

    # dropping a copy loses a concept
    entries = {key: h for key, h in scheme.entries.items() if key.copy < 4}
    smaller = vl.CompressionScheme(space.domain, 0, [3], entries=entries)
    assert not vl.verify_scheme(space, smaller)[0]


def test_verify_scheme_empty_hypothesis():
    space = vl.ConceptSpace(['a', 'b'], ['00'])

    # an undefined key stands for the empty hypothesis
    scheme = vl.CompressionScheme(space.domain, 0)
    assert vl.verify_scheme(space, scheme) == (True, None)

    space = vl.ConceptSpace(['a', 'b'], ['00', '11'])
    ok, counterexample = vl.verify_scheme(space, scheme)
    assert counterexample == vl.Counterexample(('a',), '1')

    # a defined key hides the empty hypothesis
    scheme = vl.CompressionScheme(space.domain, 0, entries={K(0): 0b11})
    ok, counterexample = vl.verify_scheme(space, scheme)
    assert counterexample == vl.Counterexample(('a',), '0')


def test_verify_scheme_labelled():
    space = vl.ConceptSpace(['a'], ['0', '1'])
    scheme = vl.CompressionScheme(space.domain, 1, kind='labelled',
        entries={K(1, 1, 1): 1})
    assert vl.verify_scheme(space, scheme)[0]

    # label 0 key with a hypothesis containing the point never matches
    scheme = vl.CompressionScheme(space.domain, 1, kind='labelled',
        entries={K(1, 1, 0): 1})
    ok, counterexample = vl.verify_scheme(space, scheme)
    assert counterexample == vl.Counterexample(('a',), '1')


def test_SchemeVerifier_invalid(chain):
    scheme = fx.initial_segment_scheme(fx.initial_segments(5))
    with pytest.raises(ValueError):
        vl.SchemeVerifier(chain, scheme)

    space = vl.ConceptSpace(fx.chain_names(17), [0])
    scheme = vl.CompressionScheme(space.domain, 0)
    with pytest.raises(vl.CapExceededError):
        vl.verify_scheme(space, scheme)
    assert vl.verify_scheme(space, scheme, max_points=17)[0]
