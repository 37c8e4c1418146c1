import math
import numpy as np
import pandas as pd
import pytest
import vclab as vl
from vclab.stats.bounds import bound_name, BOUND_NAMES


@pytest.fixture
def query():
    return vl.BoundQuery(0.05, 0.05, 7)


def test_binom_leq():
    assert vl.binom_leq(4, 2) == 11
    assert vl.binom_leq(4, 0) == 1
    assert vl.binom_leq(3, 5) == 8
    assert vl.binom_leq(0, 0) == 1

    # exact integers for large arguments
    assert vl.binom_leq(884, 7) == sum(math.comb(884, i) for i in range(8))

    with pytest.raises(ValueError):
        vl.binom_leq(-1, 2)


def test_binom_leq_pascal():
    for m in range(1, 30):
        for d in range(1, m + 1):
            assert vl.binom_leq(m, d) == (vl.binom_leq(m - 1, d)
                + vl.binom_leq(m - 1, d - 1))


def test_minimal_copies():
    assert vl.minimal_copies(884, 7, 5) == 18418
    assert vl.copies_feasible(884, 7, 5, 18418)
    assert not vl.copies_feasible(884, 7, 5, 18417)
    assert vl.minimal_copies(10, 3, 3) == 1


def test_tail_bound():
    assert vl.tail_bound(2, 2, 1.0) == pytest.approx(1.0)
    assert vl.tail_bound(20, 1, 0.3) == pytest.approx(
        0.7 ** 20 + 20 * 0.7 ** 19)
    assert vl.tail_bound(6, [2, 2], 0.2) == pytest.approx(
        2 * 0.8 ** 6 + 12 * 0.8 ** 5)

    # terms with i > m vanish
    assert vl.tail_bound(1, 3, 0.5) == pytest.approx(0.5 + 1)

    # zero copies drop a term
    assert vl.tail_bound(4, [0, 1], 0.5) == pytest.approx(4 * 0.5 ** 3)

    for m in range(8):
        assert vl.tail_bound(m, 3, 0.0) == pytest.approx(vl.binom_leq(m, 3))


def test_tail_bound_monotone():
    rng = np.random.default_rng(41)
    for _ in range(500):
        m = int(rng.integers(0, 200))
        eps = float(rng.uniform(0.01, 0.9))
        copies = [int(n) for n in rng.integers(1, 20, size=int(rng.integers(1, 6)))]
        value = vl.tail_bound(m, copies, eps)

        # decreasing in epsilon, and in m once every term shrinks
        assert vl.tail_bound(m, copies, min(eps + 0.05, 1.0)) <= value * (1 + 1e-12)
        if (m + 1) * eps >= len(copies) - 1:
            assert vl.tail_bound(m + 1, copies, eps) <= value * (1 + 1e-12)

        # increasing in every copy count and in the scheme size
        for i in range(len(copies)):
            more = list(copies)
            more[i] += 1
            assert vl.tail_bound(m, more, eps) >= value * (1 - 1e-12)
        assert vl.tail_bound(m, copies + [1], eps) >= value * (1 - 1e-12)
        d = len(copies) - 1
        assert vl.tail_bound(m, d + 1, eps) >= vl.tail_bound(m, d, eps) * (1 - 1e-12)

    # for m < d / epsilon - 1 a larger sample can raise the tail
    assert vl.tail_bound(6, 1, 0.05) > vl.tail_bound(5, 1, 0.05)


def test_tail_bound_invalid():
    with pytest.raises(ValueError):
        vl.tail_bound(-1, 2, 0.1)
    with pytest.raises(ValueError):
        vl.tail_bound(5, 2, 1.5)
    with pytest.raises(ValueError):
        vl.tail_bound(5, [1, -1], 0.1)


def test_tail_bound_large_m():

    # no overflow where C(m,i) exceeds the float range
    value = vl.tail_bound(3000, 300, 0.3)
    assert np.isfinite(value)
    assert value > 0


def test_BoundQuery(query):
    assert query.n_copies is None
    assert query.beta is None
    assert query.with_beta(0.5).beta == 0.5
    assert query.beta is None

    with pytest.raises(ValueError):
        vl.BoundQuery(0, 0.05, 1)
    with pytest.raises(ValueError):
        vl.BoundQuery(0.1, 1.5, 1)
    with pytest.raises(ValueError):
        vl.BoundQuery(0.1, 0.1, -1)
    with pytest.raises(ValueError):
        vl.BoundQuery(0.1, 0.1, 1, n_copies=0)
    with pytest.raises(ValueError):
        vl.BoundQuery(0.1, 0.1, 1, beta=1.0)


def test_bound_name():
    assert bound_name('fw') == 'floyd_warmuth'
    assert bound_name('st') == 'shawe_taylor'
    for name in BOUND_NAMES:
        assert bound_name(name) == name
    with pytest.raises(ValueError):
        bound_name('hoeffding')


def test_bound_value():
    query = vl.BoundQuery(0.05, 0.05, 1)
    expected = max(80 * math.log2(40), 160 * math.log2(260))
    assert vl.bound_value('blumer', query) == pytest.approx(expected)

    # floyd_warmuth is the one copy case of the copy bound
    query = vl.BoundQuery(0.1, 0.05, 3, beta=0.4)
    assert vl.bound_value('copy', vl.BoundQuery(0.1, 0.05, 3, n_copies=1,
        beta=0.4)) == vl.bound_value('fw', query)

    expected = (1 / 0.6) * (10 * math.log(20) + 3 + 30 * math.log(1 / 0.04))
    assert vl.bound_value('floyd_warmuth', query) == pytest.approx(expected)

    expected = (1 / 0.6) * (10 * math.log(40) + 60 * math.log(2)
        + 30 * math.log(1 / (0.1 * 0.16)))
    assert vl.bound_value('st', query) == pytest.approx(expected)

    # beta is required
    with pytest.raises(ValueError):
        vl.bound_value('fw', vl.BoundQuery(0.1, 0.05, 3))


def test_copy_bound_needs_copies():
    query = vl.BoundQuery(0.1, 0.05, 3, beta=0.4)
    with pytest.raises(ValueError, match='n_copies'):
        vl.bound_value('copy', query)
    with pytest.raises(ValueError, match='n_copies'):
        vl.optimize_beta('copy', query)

    # other bounds ignore the copy count
    assert vl.bound_value('fw', query) > 0
    value = vl.bound_value('copy', vl.BoundQuery(0.1, 0.05, 3, n_copies=4,
        beta=0.4))
    assert value > vl.bound_value('fw', query)


def test_optimize_beta():
    query = vl.BoundQuery(0.1, 0.05, 3)
    beta, value = vl.optimize_beta('fw', query)
    assert 0 < beta < 1

    # refinement agrees with a fine grid
    betas = np.linspace(1e-6, 1 - 1e-6, 1_000_000)
    grid = (1 / (1 - betas)) * (10 * np.log(20) + 3
        + 30 * np.log(1 / (betas * 0.1)))
    assert abs(value - grid.min()) < 0.5
    assert value <= vl.bound_value('fw', query.with_beta(0.5))

    with pytest.raises(ValueError):
        vl.optimize_beta('blumer', query)


def test_optimize_beta_repeatable():
    for which, query in [
            ('fw', vl.BoundQuery(0.05, 0.05, 7)),
            ('st', vl.BoundQuery(0.1, 0.2, 3)),
            ('copy', vl.BoundQuery(0.05, 0.05, 5, n_copies=18418)),
            ]:
        beta, value = vl.optimize_beta(which, query)
        for _ in range(3):
            again = vl.optimize_beta(which, query)
            assert again == (beta, value)


def test_figure31_f3_grid():

    # f(3) at eps = delta = 0.05 against a 10^6 point sweep over beta
    data = vl.figure31_data(0.05, 0.05, 3)
    f3 = float(data.loc[data['d'] == 3, 'f'].iloc[0])
    betas = np.linspace(1e-6, 1 - 1e-6, 1_000_000)
    grid = (1 / (1 - betas)) * (20 * np.log(20) + 3
        + 60 * np.log(1 / (betas * 0.05)))
    assert abs(f3 - grid.min()) < 0.5


def test_BetaOptimizer_grid():
    optimizer = vl.BetaOptimizer('st', vl.BoundQuery(0.1, 0.1, 2))
    betas, values = optimizer.grid()
    assert len(betas) == optimizer.GRID_POINTS
    assert values.shape == betas.shape
    beta, value = optimizer.optimize()
    assert value <= values.min()


def test_figure31_data():
    data = vl.figure31_data(0.05, 0.05, 50)
    assert isinstance(data, pd.DataFrame)
    assert list(data.columns) == ['d', 'beta_fw', 'f', 'beta_st', 'g']
    assert len(data) == 50
    assert list(data['d']) == list(range(1, 51))

    # compression bound is below the consistent learner bound
    assert (data['f'] < data['g']).all()

    with pytest.raises(ValueError):
        vl.figure31_data(0.05, 0.05, 0)


def test_check_lemma322():
    assert vl.check_lemma322(0.05, 0.05, 7)
    assert vl.check_lemma322(0.05, 0.05, 5, n_copies=18418)


def test_check_lemma322_grid():
    rng = np.random.default_rng(322)
    for _ in range(10_000):
        eps = float(rng.uniform(0.01, 0.99))
        delta = float(rng.uniform(0.01, 0.99))
        d = int(rng.integers(0, 11))
        beta = float(rng.uniform(0.05, 0.95))
        n_copies = None if rng.random() < 0.5 else int(rng.integers(1, 100))
        assert vl.check_lemma322(eps, delta, d, n_copies=n_copies, beta=beta)


def test_check_884():
    report = vl.check_884()
    assert report['inequality']
    assert report['copy_bound'] == 879
    assert report['fw_min_exceeds_884']
    assert report['fw_value'] > 884
    assert report['copy_value'] < 879
    assert report['ok']
    assert list(report) == ['inequality', 'copy_bound', 'fw_min_exceeds_884',
        'copy_beta', 'copy_value', 'fw_beta', 'fw_value', 'ok']

    # one copy less breaks the counting inequality
    assert not vl.check_884(n=18417)['ok']
