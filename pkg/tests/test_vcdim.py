import numpy as np
import pytest
import vclab as vl
from vclab.data import fixtures as fx


@pytest.fixture
def space():
    return fx.maximal_class_a()


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


def test_vc_dimension(space):
    report = vl.vc_dimension(space)
    assert isinstance(report, vl.VcReport)
    assert report.vc == 2
    assert report.witness == ('1', '2')
    assert report.shatter_coeffs[:3] == [1, 2, 4]
    assert report.to_dict()['witness'] == ['1', '2']

    report = vl.vc_dimension(space, coefficients=False)
    assert report.shatter_coeffs == []


def test_vc_dimension_chain():
    report = vl.vc_dimension(fx.initial_segments(3))
    assert report.vc == 1
    assert report.witness == ('p1',)
    assert report.shatter_coeffs == [1, 2, 3, 4]


def test_vc_dimension_single_concept():
    report = vl.vc_dimension(vl.ConceptSpace(['a', 'b'], ['01']))
    assert report.vc == 0
    assert report.witness == ()
    assert report.shatter_coeffs == [1, 1, 1]


def test_shatter_coefficients():
    coeffs = vl.shatter_coefficients(fx.size_at_most(5, 2))
    assert list(coeffs) == [1, 2, 4, 7, 11, 16]
    assert list(coeffs.index) == [0, 1, 2, 3, 4, 5]

    coeffs = vl.shatter_coefficients(fx.power_set(4))
    assert list(coeffs) == [1, 2, 4, 8, 16]


def test_VcDimension_layers():
    vcd = vl.VcDimension(fx.initial_segments(3))
    layers = vcd.layers()
    assert layers[0] == [()]
    assert layers[1] == [(0,), (1,), (2,)]
    assert len(layers) == 2


def test_VcDimension_cap():
    space = vl.ConceptSpace(fx.chain_names(25), [0])
    with pytest.raises(vl.CapExceededError):
        vl.VcDimension(space)

    # raising the cap allows the computation
    assert vl.VcDimension(space, max_points=25).vc() == 0


def test_is_shattered(space):
    assert vl.is_shattered(space, ['1', '2'])
    assert vl.is_shattered(space, [])
    assert not vl.is_shattered(space, ['1', '2', '3'])


def test_sauer_shelah(rng):

    # |C| and every shatter coefficient are at most C(n,<=d)
    for _ in range(200):
        n = int(rng.integers(1, 8))
        space = fx.random_space(rng, n, 40)
        report = vl.vc_dimension(space)
        assert len(space.distinct()) <= vl.binom_leq(n, report.vc)
        for k, s in enumerate(report.shatter_coeffs):
            assert s <= vl.binom_leq(k, report.vc)
        assert report.shatter_coeffs[-1] == len(space.distinct())


def test_maximum_modes_agree(rng):
    spaces = [fx.size_at_most(5, 2), fx.power_set(3), fx.initial_segments(4)]
    spaces += [fx.random_space(rng, int(rng.integers(1, 6)), 20)
        for _ in range(500)]
    for space in spaces:
        d = vl.vc_dimension(space, coefficients=False).vc
        assert (vl.is_maximum(space, d, mode='definition')
            == vl.is_maximum(space, d, mode='cardinality'))


def test_is_maximum():
    assert vl.is_maximum(fx.size_at_most(5, 2), 2)
    assert vl.is_maximum(fx.initial_segments(6), 1)
    assert not vl.is_maximum(fx.final_segments(4, empty=False), 1)

    with pytest.raises(ValueError):
        vl.is_maximum(fx.power_set(2), 2, mode='fast')

    # cardinality mode needs the VC dimension to match
    with pytest.raises(ValueError):
        vl.is_maximum(fx.power_set(2), 1, mode='cardinality')


def test_is_maximum_cap():
    space = vl.ConceptSpace(fx.chain_names(17), [0])
    with pytest.raises(vl.CapExceededError):
        vl.is_maximum(space, 0)
    assert vl.is_maximum(space, 0, mode='cardinality')


def test_maximal_not_maximum():
    for space in [fx.maximal_class_a(), fx.maximal_class_b()]:
        assert vl.is_maximal(space, 2)
        assert not vl.is_maximum(space, 2)
        assert not vl.is_maximum(space, 2, mode='cardinality')


def test_maximum_is_maximal():
    for n, d in [(3, 1), (4, 2), (5, 2), (5, 3)]:
        assert vl.is_maximal(fx.size_at_most(n, d), d)
    assert vl.is_maximal(fx.initial_segments(5), 1)


def test_is_maximal_not():

    # the empty set can be added to the nonempty initial segments
    assert not vl.is_maximal(fx.initial_segments(4, empty=False), 1)

    with pytest.raises(ValueError):
        vl.is_maximal(fx.maximal_class_a(), 1)


def test_MaximumCheck_missing_traces(space):
    check = vl.MaximumCheck(space, 2)
    missing = check.missing_traces()

    # every 3-subset misses exactly one trace
    assert len(missing) == 4
    assert missing[0b0111] == 0
    assert missing[0b1011] == 0b1011


def test_count_removable(rng):
    space = fx.initial_segments(3)
    assert vl.count_removable(space, 'p3') == 1
    assert vl.count_removable(space, 'p1') == 1

    for _ in range(200):
        n = int(rng.integers(2, 8))
        space = fx.random_space(rng, n, 40)
        d = vl.vc_dimension(space, coefficients=False).vc
        if d < 1:
            continue
        for name in space.domain:
            assert vl.count_removable(space, name) <= vl.binom_leq(n - 1, d - 1)
