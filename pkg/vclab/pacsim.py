"""
Monte Carlo checks of sample complexity guarantees for compression
schemes on finite spaces.

Samples of size m are drawn with replacement from a distribution on
the domain and labelled by a target concept. Trial t of an experiment
with seed s uses a PCG64 generator seeded by SeedSequence([s, t]), so
results do not depend on the number of worker threads.
"""

from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import json
import logging
import math

import numpy as np

from .compression import SchemeVerifier, verify_scheme
from .conceptspace import LabelledSample
from .exceptions import VerificationError
from .stats.bounds import tail_bound
from .stats.utils import indices_mask, mask_array

logger = logging.getLogger(__name__)


class Distribution:
    """
    Probability distribution on the points of a concept space

    Parameters
    ----------
    space : ConceptSpace
    weights : array_like or dict
        nonnegative weights in domain order, or a mapping from point
        name to weight (missing points get 0); weights must sum to 1
        within TOLERANCE
    """

    TOLERANCE = 1e-12

    def __repr__(self):
        return f'{self.__class__.__name__}({dict(zip(self.domain, self.weights))})'

    def __init__(self, space, weights):

        self.domain = tuple(space.domain)
        if isinstance(weights, dict):
            values = np.zeros(space.n_points)
            for name, weight in weights.items():
                values[space.index(name)] = weight
        else:
            values = np.array(weights, dtype=float)

        if values.shape != (space.n_points,):
            raise ValueError((f'distribution has {values.size} weights, '
                f'domain has {space.n_points} points'))
        if np.any(values < 0) or not np.all(np.isfinite(values)):
            raise ValueError('distribution weights must be finite and nonnegative')
        if abs(values.sum() - 1) > self.TOLERANCE:
            raise ValueError(f'distribution weights sum to {values.sum()}, not 1')

        values.setflags(write=False)
        self.weights = values

    @classmethod
    def uniform(cls, space):
        """Return uniform distribution on the domain"""
        return cls(space, np.full(space.n_points, 1 / space.n_points))

    @classmethod
    def from_mapping(cls, space, weights):
        """Return distribution from a point name to weight mapping"""
        if not isinstance(weights, dict):
            raise TypeError(f'weights must be a dict, not {type(weights)}')
        return cls(space, weights)

    @classmethod
    def from_json(cls, space, filepath):
        """Read distribution file {"weights": {...}} or {"weights": [...]}"""
        with open(filepath, encoding='utf-8') as json_file:
            json_dict = json.load(json_file)
        if not isinstance(json_dict, dict) or 'weights' not in json_dict:
            raise ValueError('distribution file has no "weights" field')
        return cls(space, json_dict['weights'])

    def mass(self, mask):
        """Return probability of the points in mask"""
        return float(self.weights[mask_array(mask, len(self.domain))].sum())


@dataclass
class TrialReport:
    """
    Outcome of a Monte Carlo experiment

    Attributes
    ----------
    trials, failures : int
    empirical_rate : float
        failures / trials
    theoretical_bound : float
        tail bound for the scheme at m and epsilon
    seed : int
    m : int
        sample size
    epsilon : float
    experiment : str
        'pac' or 'event321'
    """
    trials: int
    failures: int
    empirical_rate: float
    theoretical_bound: float
    seed: int
    m: int
    epsilon: float
    experiment: str = 'pac'

    @property
    def slack(self):
        """Monte Carlo slack 3*sqrt(b(1-b)/T) + 1e-6 with b the bound"""
        b = min(max(self.theoretical_bound, 0.0), 1.0)
        return 3 * math.sqrt(b * (1 - b) / self.trials) + 1e-6

    @property
    def within_bound(self):
        return self.empirical_rate <= self.theoretical_bound + self.slack

    def to_dict(self):
        report = OrderedDict()
        report['experiment'] = self.experiment
        report['trials'] = self.trials
        report['failures'] = self.failures
        report['empirical_rate'] = self.empirical_rate
        report['theoretical_bound'] = self.theoretical_bound
        report['slack'] = self.slack
        report['within_bound'] = self.within_bound
        report['seed'] = self.seed
        report['m'] = self.m
        report['epsilon'] = self.epsilon
        return report


def _agreeing(scheme, sample):
    for key in scheme.keys_within(sample.support, sample.labels):
        hypothesis = scheme.hypothesis(key)
        if sample.agrees_with(hypothesis):
            yield hypothesis


def learn(space, scheme, sample):
    """Return hypothesis of the first key that agrees with a sample

    Parameters
    ----------
    space : ConceptSpace
    scheme : CompressionScheme
    sample : LabelledSample or iterable of (point name, label)

    Returns
    -------
    int
        hypothesis bitmask; keys are tried by number of points, point
        indices and copy; 0 if no key agrees with the sample
    """
    if not isinstance(sample, LabelledSample):
        sample = LabelledSample(space, sample)
    if tuple(sample.space.domain) != tuple(scheme.domain):
        raise ValueError('sample and scheme have different domains')
    return next(_agreeing(scheme, sample), 0)


def true_error(space, dist, hypothesis, target):
    """Return probability of the symmetric difference of hypothesis and target"""
    if tuple(dist.domain) != tuple(space.domain):
        raise ValueError('distribution and space have different domains')
    return dist.mass(hypothesis ^ target)


class PacExperiment:
    """
    Repeated sampling experiment for a compression scheme

    Parameters
    ----------
    space : ConceptSpace
    scheme : CompressionScheme
    target : int
        bitmask of a concept of the space
    dist : Distribution
    m : int
        sample size
    epsilon : float
        accuracy in (0, 1]
    trials : int
    seed : int, default 0
        unsigned 64 bit seed
    threads : int, default 1
        worker threads

    Methods
    -------
    labelled_sample(support)
        return the target's LabelledSample on a support bitmask
    failure(support)
        return True if the learner's hypothesis has error > epsilon
    event(support)
        return True if some key inside the sample has a consistent
        hypothesis with error > epsilon
    run(kind)
        return TrialReport for kind 'pac' or 'event321'
    """

    KINDS = ['pac', 'event321']

    def __repr__(self):
        return (f'{self.__class__.__name__}(m={self.m}, '
            f'epsilon={self.epsilon}, trials={self.trials}, seed={self.seed})')

    def __init__(self, space, scheme, target, dist, m, epsilon, trials,
            seed=0, threads=1):

        if tuple(scheme.domain) != tuple(space.domain):
            raise ValueError('scheme and space have different domains')
        if target not in space.distinct():
            raise ValueError(f'target {target!r} is not a concept of the space')
        if int(m) != m or m < 0:
            raise ValueError(f'sample size must be an integer >= 0, got {m}')
        if not 0 < epsilon <= 1:
            raise ValueError(f'epsilon must be in (0, 1], got {epsilon}')
        if int(trials) != trials or trials < 1:
            raise ValueError(f'trials must be an integer >= 1, got {trials}')
        if int(seed) != seed or not 0 <= seed < 2 ** 64:
            raise ValueError(f'seed must be an unsigned 64 bit integer, got {seed}')

        if space.n_points <= SchemeVerifier.MAX_POINTS:
            ok, counterexample = verify_scheme(space, scheme)
            if not ok:
                raise VerificationError((f'scheme does not verify, no key for '
                    f'sample {counterexample.to_dict()}'))
        else:
            logger.warning((f'scheme on {space.n_points} points is over the '
                f'verification cap of {SchemeVerifier.MAX_POINTS}, only drawn '
                f'samples are checked'))

        self.space = space
        self.scheme = scheme
        self.target = int(target)
        self.dist = dist
        self.m = int(m)
        self.epsilon = float(epsilon)
        self.trials = int(trials)
        self.seed = int(seed)
        self.threads = max(1, int(threads))
        self._errors = {}

    def error(self, hypothesis):
        """Return true error of hypothesis against the target"""
        if hypothesis not in self._errors:
            self._errors[hypothesis] = true_error(self.space, self.dist,
                hypothesis, self.target)
        return self._errors[hypothesis]

    def sample(self, trial):
        """Return support bitmask of the sample of a trial"""
        rng = np.random.Generator(np.random.PCG64(
            np.random.SeedSequence([self.seed, trial])))
        drawn = rng.choice(self.space.n_points, size=self.m,
            p=self.dist.weights)
        return indices_mask(np.unique(drawn))

    def labelled_sample(self, support):
        """Return LabelledSample of the target on a support bitmask"""
        return LabelledSample.from_masks(self.space, support,
            self.target & support)

    def failure(self, support):
        sample = self.labelled_sample(support)
        hypothesis = next(_agreeing(self.scheme, sample), None)
        if hypothesis is None:
            raise VerificationError((f'scheme has no key for the drawn sample '
                f'{list(sample.pairs)}'))
        return self.error(hypothesis) > self.epsilon

    def event(self, support):
        sample = self.labelled_sample(support)
        hypotheses = list(_agreeing(self.scheme, sample))
        if not hypotheses:
            raise VerificationError((f'scheme has no key for the drawn sample '
                f'{list(sample.pairs)}'))
        return any(self.error(h) > self.epsilon for h in hypotheses)

    def _count(self, check, trials):
        cache = {}
        failures = 0
        for trial in trials:
            support = self.sample(trial)
            if support not in cache:
                cache[support] = check(support)
            failures += cache[support]
        return failures

    def run(self, kind='pac'):
        """Return TrialReport"""
        if kind not in self.KINDS:
            raise ValueError(f'kind must be one of {self.KINDS}, not "{kind}"')
        if kind == 'event321' and self.m < self.scheme.size:
            raise ValueError((f'sample size {self.m} is smaller than scheme '
                f'size {self.scheme.size}'))
        check = self.failure if kind == 'pac' else self.event

        if self.threads == 1:
            failures = self._count(check, range(self.trials))
        else:
            chunks = [range(i, self.trials, self.threads)
                for i in range(self.threads)]
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                failures = sum(pool.map(lambda c: self._count(check, c), chunks))

        bound = tail_bound(self.m, self.scheme.copies, self.epsilon)
        report = TrialReport(trials=self.trials, failures=int(failures),
            empirical_rate=failures / self.trials, theoretical_bound=bound,
            seed=self.seed, m=self.m, epsilon=self.epsilon, experiment=kind)
        logger.info(f'{self} {kind}: {failures} failures, bound {bound:.6g}')
        return report


def pac_experiment(space, scheme, target, dist, m, epsilon, trials, seed=0,
        threads=1):
    """Return TrialReport counting trials where the learned hypothesis
    has true error above epsilon"""
    return PacExperiment(space, scheme, target, dist, m, epsilon, trials,
        seed=seed, threads=threads).run('pac')


def event321_experiment(space, scheme, target, dist, m, epsilon, trials,
        seed=0, threads=1):
    """Return TrialReport counting trials where some key inside the sample
    has a hypothesis that agrees with the sample and has true error above
    epsilon"""
    return PacExperiment(space, scheme, target, dist, m, epsilon, trials,
        seed=seed, threads=threads).run('event321')
