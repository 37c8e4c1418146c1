"""
Sample complexity bounds for consistent learners and sample compression
schemes.

Binomial sums are exact integers. Tail sums are accumulated in log
space. The bounds with a free parameter beta are minimized over beta
with a coarse grid followed by golden-section refinement.
"""

from collections import OrderedDict
from dataclasses import dataclass, replace
import math
import warnings

import numpy as np
from pandas import DataFrame
from scipy.optimize import minimize_scalar
from scipy.special import comb, logsumexp


BOUND_NAMES = ['blumer', 'shawe_taylor', 'floyd_warmuth', 'copy']

_ALIASES = {
    'fw': 'floyd_warmuth',
    'st': 'shawe_taylor',
    'blumer': 'blumer',
    'copy': 'copy',
    }


def bound_name(which):
    """Return full bound name for a name or a short alias"""
    name = _ALIASES.get(which, which)
    if name not in BOUND_NAMES:
        raise ValueError((f'unknown bound "{which}", valid names are '
            f'{BOUND_NAMES + list(_ALIASES)}'))
    return name


def binom_leq(m, d):
    """Return exact sum of C(m, i) for i = 0..d

    Parameters
    ----------
    m : int
        number of points, m >= 0
    d : int
        largest subset size, d >= 0

    Returns
    -------
    int
    """
    m, d = int(m), int(d)
    if m < 0 or d < 0:
        raise ValueError(f'binom_leq needs m, d >= 0, got m={m}, d={d}')
    return sum(int(comb(m, i, exact=True)) for i in range(min(m, d) + 1))


def copies_feasible(m, d, k, n):
    """Return True if n * C(m,<=k) >= C(m,<=d), in exact integers"""
    return int(n) * binom_leq(m, k) >= binom_leq(m, d)


def minimal_copies(m, d, k):
    """Return least n with n * C(m,<=k) >= C(m,<=d)"""
    num, den = binom_leq(m, d), binom_leq(m, k)
    return -(-num // den)


def _copies(sizes):
    if isinstance(sizes, (int, np.integer)):
        if sizes < 0:
            raise ValueError(f'scheme size must be >= 0, got {sizes}')
        return [1] * (int(sizes) + 1)
    copies = [int(n) for n in sizes]
    if any(n < 0 for n in copies):
        raise ValueError(f'copy counts must be >= 0, got {copies}')
    return copies


def tail_bound(m, sizes, epsilon):
    """Return sum of n_i * C(m,i) * (1-epsilon)^(m-i) over i

    Parameters
    ----------
    m : int
        sample size, m >= 0
    sizes : int or sequence of int
        scheme size d (all n_i equal to 1) or copy counts n_0..n_k
    epsilon : float
        accuracy in [0, 1]

    Returns
    -------
    float

    Notes
    -----
    Terms with i > m vanish. Each term is formed as a logarithm of the
    exact integer n_i * C(m,i) plus (m-i) * log1p(-epsilon), and the
    terms are combined with logsumexp.
    """
    m = int(m)
    if m < 0:
        raise ValueError(f'sample size must be >= 0, got {m}')
    if not 0 <= epsilon <= 1:
        raise ValueError(f'epsilon must be in [0, 1], got {epsilon}')

    log_keep = math.log1p(-epsilon) if epsilon < 1 else -math.inf
    terms = []
    for i, n in enumerate(_copies(sizes)):
        if i > m:
            break
        if n == 0:
            continue
        term = math.log(n * int(comb(m, i, exact=True)))
        if m - i > 0:
            term += (m - i) * log_keep
        terms.append(term)

    if not terms:
        return 0.0
    return float(np.exp(logsumexp(terms)))


@dataclass(frozen=True)
class BoundQuery:
    """
    Parameters of a sample complexity bound

    Parameters
    ----------
    epsilon : float
        accuracy in (0, 1]
    delta : float
        risk in (0, 1]
    d : int
        VC dimension or scheme size
    n_copies : int, optional
        copy count, required by the copy scheme bound
    beta : float, optional
        free parameter in (0, 1)
    """
    epsilon: float
    delta: float
    d: int
    n_copies: int = None
    beta: float = None

    def __post_init__(self):
        if not 0 < self.epsilon <= 1:
            raise ValueError(f'epsilon must be in (0, 1], got {self.epsilon}')
        if not 0 < self.delta <= 1:
            raise ValueError(f'delta must be in (0, 1], got {self.delta}')
        if int(self.d) != self.d or self.d < 0:
            raise ValueError(f'd must be an integer >= 0, got {self.d}')
        if self.n_copies is not None and (int(self.n_copies) != self.n_copies
                or self.n_copies < 1):
            raise ValueError(f'n_copies must be an integer >= 1, got {self.n_copies}')
        if self.beta is not None and not 0 < self.beta < 1:
            raise ValueError(f'beta must be in (0, 1), got {self.beta}')

    def with_beta(self, beta):
        return replace(self, beta=beta)


def _blumer(eps, delta, d):
    return max(4 / eps * math.log2(2 / delta),
        8 * d / eps * math.log2(13 / eps))


def _shawe_taylor(eps, delta, d, beta):
    return (1 / (1 - beta)) * ((1 / eps) * np.log(2 / delta)
        + 2 * d * np.log(2) / eps
        + (d / eps) * np.log(1 / (eps * beta ** 2)))


def _compression(eps, delta, d, n, beta):
    # floyd_warmuth is the n = 1 case
    return (1 / (1 - beta)) * ((1 / eps) * np.log(n / delta)
        + d + (d / eps) * np.log(1 / (beta * eps)))


def _evaluate(name, query, beta):
    eps, delta, d = query.epsilon, query.delta, query.d
    if name == 'shawe_taylor':
        return _shawe_taylor(eps, delta, d, beta)
    if name == 'floyd_warmuth':
        return _compression(eps, delta, d, 1, beta)
    return _compression(eps, delta, d, query.n_copies, beta)


def _require_copies(name, query):
    if name == 'copy' and query.n_copies is None:
        raise ValueError('bound "copy" needs a value for n_copies')


def bound_value(which, query):
    """Return value of a named sample complexity bound

    Parameters
    ----------
    which : {'blumer','shawe_taylor','floyd_warmuth','copy'}
        bound formula, short names 'fw' and 'st' are accepted
    query : BoundQuery
        beta is required for every bound except blumer, n_copies for
        the copy bound

    Returns
    -------
    float
        real valued bound, the sample size is its ceiling
    """
    name = bound_name(which)
    _require_copies(name, query)
    if name == 'blumer':
        return float(_blumer(query.epsilon, query.delta, query.d))
    if query.beta is None:
        raise ValueError(f'bound "{name}" needs a value for beta')
    return float(_evaluate(name, query, query.beta))


class BetaOptimizer:
    """
    Minimize a bound over its free parameter beta

    Parameters
    ----------
    which : {'shawe_taylor','floyd_warmuth','copy'}
    query : BoundQuery
        beta is ignored

    Notes
    -----
    The bound is evaluated on GRID_POINTS equally spaced values of
    beta in [BETA_MIN, BETA_MAX]. The grid minimum and its neighbours
    form the bracket for golden-section refinement. A minimum on the
    grid edge is returned as is. A grid that is not decreasing then
    increasing gives a warning.
    """

    GRID_POINTS = 10_000
    BETA_MIN = 1e-9
    BETA_MAX = 1 - 1e-9
    XTOL = 1e-9

    def __repr__(self):
        return f'{self.__class__.__name__}({self.which}, {self.query})'

    def __init__(self, which, query):
        self.which = bound_name(which)
        _require_copies(self.which, query)
        if self.which == 'blumer':
            raise ValueError('the blumer bound has no beta to optimize')
        self.query = query.with_beta(None)

    def grid(self):
        """Return beta grid and bound values on it"""
        betas = np.linspace(self.BETA_MIN, self.BETA_MAX, self.GRID_POINTS)
        values = _evaluate(self.which, self.query, betas)
        return betas, values

    def _check_unimodal(self, values, imin):
        tol = 1e-12 * np.abs(values)
        falling = np.all(np.diff(values[:imin + 1]) <= tol[1:imin + 1])
        rising = np.all(np.diff(values[imin:]) >= -tol[imin + 1:])
        if not (falling and rising):
            warnings.warn((f'bound {self.which} is not unimodal in beta '
                f'on the grid for {self.query}'), stacklevel=3)

    def optimize(self):
        """Return (beta, value) at the minimum"""
        betas, values = self.grid()
        imin = int(np.argmin(values))
        self._check_unimodal(values, imin)

        beta, value = float(betas[imin]), float(values[imin])
        if imin == 0 or imin == len(betas) - 1:
            return beta, value

        bracket = (betas[imin - 1], betas[imin], betas[imin + 1])
        func = lambda b: float(_evaluate(self.which, self.query, b))
        try:
            res = minimize_scalar(func, bracket=bracket, method='golden',
                options={'xtol': self.XTOL})
        except ValueError:
            # flat bracket, grid point is the answer
            return beta, value
        if res.fun <= value:
            return float(res.x), float(res.fun)
        return beta, value


def optimize_beta(which, query):
    """Return (beta, value) minimizing a bound over beta in (0, 1)

    Parameters
    ----------
    which : {'shawe_taylor','floyd_warmuth','copy'}
    query : BoundQuery

    Returns
    -------
    tuple of float
    """
    return BetaOptimizer(which, query).optimize()


def figure31_data(eps, delta, d_max):
    """Return table comparing optimized compression and consistent bounds

    Parameters
    ----------
    eps, delta : float
        accuracy and risk in (0, 1]
    d_max : int
        largest dimension, rows are d = 1..d_max

    Returns
    -------
    pd.DataFrame
        columns d, beta_fw, f, beta_st, g where f is the optimized
        floyd_warmuth bound and g the optimized shawe_taylor bound
    """
    if d_max < 1:
        raise ValueError(f'd_max must be >= 1, got {d_max}')
    rows = []
    for d in range(1, int(d_max) + 1):
        query = BoundQuery(eps, delta, d)
        beta_fw, f = optimize_beta('floyd_warmuth', query)
        beta_st, g = optimize_beta('shawe_taylor', query)
        rows.append([d, beta_fw, f, beta_st, g])
    return DataFrame(rows, columns=['d', 'beta_fw', 'f', 'beta_st', 'g'])


def check_lemma322(eps, delta, d, n_copies=None, beta=0.5):
    """Return True if the sample size from the compression bound meets delta

    Parameters
    ----------
    eps, delta : float
    d : int
        scheme size
    n_copies : int, optional
        copies per key size, None for a plain scheme
    beta : float, default 0.5

    Returns
    -------
    bool
        tail_bound(ceil(bound), sizes, eps) <= delta
    """
    if n_copies is None:
        query = BoundQuery(eps, delta, d, beta=beta)
        m = math.ceil(bound_value('floyd_warmuth', query))
        tail = tail_bound(m, d, eps)
    else:
        query = BoundQuery(eps, delta, d, n_copies=n_copies, beta=beta)
        m = math.ceil(bound_value('copy', query))
        tail = tail_bound(m, [n_copies] * (d + 1), eps)
    return tail <= delta


def check_884(m=884, d=7, k=5, n=18418, eps=0.05, delta=0.05,
        copy_target=879):
    """Return verdicts for the 884 point worked example

    Returns
    -------
    OrderedDict
        inequality, copy_bound, fw_min_exceeds_884 and the optimized
        betas and values, plus 'ok' for all verdicts together
    """
    inequality = copies_feasible(m, d, k, n)
    beta_copy, copy_value = optimize_beta('copy',
        BoundQuery(eps, delta, k, n_copies=n))
    beta_fw, fw_value = optimize_beta('floyd_warmuth', BoundQuery(eps, delta, d))
    copy_bound = math.ceil(copy_value)

    report = OrderedDict()
    report['inequality'] = inequality
    report['copy_bound'] = copy_bound
    report['fw_min_exceeds_884'] = fw_value > m
    report['copy_beta'] = beta_copy
    report['copy_value'] = copy_value
    report['fw_beta'] = beta_fw
    report['fw_value'] = fw_value
    report['ok'] = bool(inequality and abs(copy_bound - copy_target) <= 1
        and fw_value > m)
    return report
