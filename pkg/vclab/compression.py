"""
This module contains the classes SchemeKey and CompressionScheme for
unlabelled, labelled and copy sample compression schemes on a finite
domain, and the function verify_scheme.

A scheme maps keys to hypotheses. A key is a set of at most `size`
points with a copy index, and for labelled schemes a label per point.
Entry maps may be partial: a key without an entry has the empty
hypothesis.
"""

from collections import OrderedDict
from dataclasses import dataclass
import json

from .exceptions import CapExceededError
from .stats.utils import (popcount, submasks, subset_key, mask_indices,
    bitstring, parse_bitstring, project)


@dataclass(frozen=True)
class SchemeKey:
    """
    Compression key

    Attributes
    ----------
    points : int
        bitmask of the key points
    copy : int
        copy index, 1 for plain schemes
    labels : int or None
        bitmask of key points labelled 1, None for unlabelled schemes
    """
    points: int
    copy: int = 1
    labels: int = None

    def sort_key(self):
        size, indices = subset_key(self.points)
        return (size, indices, self.copy,
            -1 if self.labels is None else self.labels)


@dataclass(frozen=True)
class Counterexample:
    """Sample (subset, trace) for which a scheme has no matching key"""
    subset: tuple
    labels: str

    def to_dict(self):
        return {'subset': list(self.subset), 'labels': self.labels}


class CompressionScheme:
    """
    Sample compression scheme with optional copies and labels

    Parameters
    ----------
    domain : sequence of str
        point names, the bit order of all masks
    size : int
        largest key size
    copies : sequence of int, optional
        n_0..n_size, number of copies per key size, default all 1
    kind : {'unlabelled','labelled'}, default 'unlabelled'
    entries : dict, optional
        SchemeKey to hypothesis bitmask

    Methods
    -------
    hypothesis(key)
        return hypothesis of a key, empty if the key has no entry
    keys_within(mask, labels)
        return keys inside a point set in learning order
    from_dict(json_dict, domain), to_dict()
        read or write the scheme file layout

    Notes
    -----
    Keys are ordered by number of points, then by point indices, then
    by copy index. This order is used by verification, by the solver
    and by the learning rule.
    """

    KINDS = ['unlabelled', 'labelled']

    def __repr__(self):
        return (f'{self.__class__.__name__}(size={self.size}, '
            f'copies={list(self.copies)}, kind={self.kind}, '
            f'entries={len(self._entries)})')

    def __init__(self, domain, size, copies=None, kind='unlabelled',
            entries=None):

        self._domain = tuple(str(name) for name in domain)
        if int(size) != size or size < 0:
            raise ValueError(f'scheme size must be an integer >= 0, got {size}')
        self.size = int(size)

        if copies is None:
            copies = [1] * (self.size + 1)
        copies = tuple(int(n) for n in copies)
        if len(copies) != self.size + 1:
            raise ValueError((f'copies {list(copies)} must have size+1 = '
                f'{self.size + 1} values'))
        if any(n < 0 for n in copies):
            raise ValueError(f'copies {list(copies)} must be >= 0')
        self.copies = copies

        if kind not in self.KINDS:
            raise ValueError(f'kind must be one of {self.KINDS}, not "{kind}"')
        self.kind = kind

        self._full = (1 << len(self._domain)) - 1
        self._entries = {}
        for key, hypothesis in (entries or {}).items():
            self._check_key(key)
            hypothesis = int(hypothesis)
            if hypothesis < 0 or hypothesis > self._full:
                raise ValueError((f'hypothesis {hypothesis} does not fit a '
                    f'domain of {len(self._domain)} points'))
            self._entries[key] = hypothesis

    def _check_key(self, key):
        if not isinstance(key, SchemeKey):
            raise TypeError(f'key {key!r} is not a SchemeKey')
        if key.points & ~self._full:
            raise ValueError(f'key {key} has points outside the domain')
        npoints = popcount(key.points)
        if npoints > self.size:
            raise ValueError(f'key {self.key_names(key)} exceeds scheme size {self.size}')
        if not 1 <= key.copy <= self.copies[npoints]:
            raise ValueError((f'copy {key.copy} of key {self.key_names(key)} '
                f'exceeds n_{npoints} = {self.copies[npoints]}'))
        if self.labelled != (key.labels is not None):
            raise ValueError(f'key {key} does not match a {self.kind} scheme')
        if key.labels is not None and key.labels & ~key.points:
            raise ValueError(f'key {key} labels points it does not contain')

    def __eq__(self, other):
        if not isinstance(other, CompressionScheme):
            return NotImplemented
        return (self._domain == other._domain and self.size == other.size
            and self.copies == other.copies and self.kind == other.kind
            and self._entries == other._entries)

    @property
    def domain(self):
        return self._domain

    @property
    def labelled(self):
        return self.kind == 'labelled'

    @property
    def is_plain(self):
        """True if every key size has a single copy"""
        return all(n == 1 for n in self.copies)

    @property
    def entries(self):
        """Copy of the entry map"""
        return dict(self._entries)

    def __len__(self):
        return len(self._entries)

    def hypothesis(self, key):
        """Return hypothesis bitmask of key, 0 for keys without an entry"""
        return self._entries.get(key, 0)

    def sorted_keys(self):
        """Return defined keys in key order"""
        return sorted(self._entries, key=SchemeKey.sort_key)

    def keys_within(self, mask, labels=0):
        """Yield all keys with points inside mask, in key order

        Parameters
        ----------
        mask : int
            point set
        labels : int, default 0
            labels of the points in mask, used by labelled schemes
        """
        for sigma in submasks(mask, maxsize=self.size):
            keylabels = labels & sigma if self.labelled else None
            for copy in range(1, self.copies[popcount(sigma)] + 1):
                yield SchemeKey(sigma, copy, keylabels)

    def key_names(self, key):
        """Return point names of a key"""
        return tuple(self._domain[i] for i in mask_indices(key.points))

    def to_dict(self):
        """Return OrderedDict in the scheme file layout"""
        n = len(self._domain)
        rows = []
        for key in self.sorted_keys():
            row = OrderedDict()
            row['points'] = list(self.key_names(key))
            row['copy'] = key.copy
            if key.labels is not None:
                row['labels'] = bitstring(
                    project(key.labels, mask_indices(key.points)),
                    popcount(key.points))
            row['hypothesis'] = bitstring(self._entries[key], n)
            rows.append(row)

        json_dict = OrderedDict()
        json_dict['size'] = self.size
        json_dict['copies'] = list(self.copies)
        json_dict['kind'] = self.kind
        json_dict['entries'] = rows
        return json_dict

    @classmethod
    def from_dict(cls, json_dict, domain):
        """Return scheme from the scheme file layout over domain"""
        if not isinstance(json_dict, dict):
            raise ValueError('scheme must be a JSON object')
        for field in ['size', 'entries']:
            if field not in json_dict:
                raise ValueError(f'scheme has no "{field}" field')
        domain = tuple(domain)
        index = {name: i for i, name in enumerate(domain)}
        kind = json_dict.get('kind', 'unlabelled')

        entries = {}
        for row in json_dict['entries']:
            try:
                names = row['points']
                hypothesis = parse_bitstring(row['hypothesis'], len(domain))
            except KeyError as err:
                raise ValueError(f'scheme entry {row} has no field {err}') from None
            indices = []
            for name in names:
                if str(name) not in index:
                    raise ValueError(f'unknown point "{name}" in scheme entry')
                indices.append(index[str(name)])
            if len(set(indices)) != len(indices):
                raise ValueError(f'repeated point in scheme entry {names}')
            points = sum(1 << i for i in indices)

            labels = None
            if kind == 'labelled':
                if 'labels' not in row:
                    raise ValueError(f'labelled scheme entry {names} has no labels')
                # labels follow the order in which points are listed
                bits = parse_bitstring(row['labels'], len(indices))
                labels = sum(1 << idx for j, idx in enumerate(indices)
                    if (bits >> j) & 1)

            key = SchemeKey(points, int(row.get('copy', 1)), labels)
            if key in entries:
                raise ValueError(f'duplicate scheme entry for key {names}')
            entries[key] = hypothesis

        return cls(domain, json_dict['size'], json_dict.get('copies'), kind,
            entries)

    @classmethod
    def from_json(cls, filepath, domain):
        """Read scheme file for a domain"""
        with open(filepath, encoding='utf-8') as json_file:
            json_dict = json.load(json_file)
        return cls.from_dict(json_dict, domain)

    def to_json(self, filepath=None):
        """Return json string and optionally write it to filepath"""
        json_str = json.dumps(self.to_dict())
        if filepath is not None:
            with open(filepath, 'w', encoding='utf-8') as f:
                f.write(json_str)
        return json_str


class SchemeVerifier:
    """
    Exhaustive verification of a compression scheme on a concept space

    Parameters
    ----------
    space : ConceptSpace
    scheme : CompressionScheme
        scheme over the same domain

    Notes
    -----
    Every nonempty subset A of the domain is visited by size, then
    lexicographically; traces on A are visited in bit string order.
    The first trace that no key inside A reproduces is the
    counterexample.
    """

    MAX_POINTS = 16

    def __repr__(self):
        return f'{self.__class__.__name__}({self.space}, {self.scheme})'

    def __init__(self, space, scheme, max_points=None):
        if tuple(space.domain) != tuple(scheme.domain):
            raise ValueError('scheme domain does not match space domain')
        max_points = self.MAX_POINTS if max_points is None else max_points
        if space.n_points > max_points:
            raise CapExceededError((f'domain has {space.n_points} points, '
                f'cap for scheme verification is {max_points}'))
        self.space = space
        self.scheme = scheme
        self._concepts = space.distinct()
        self._entries = [(key.points, key.labels, h)
            for key, h in scheme.entries.items()]

        # number of defined keys per point set that can give the empty
        # hypothesis a competitor: all keys for unlabelled schemes,
        # all-zero label keys for labelled schemes
        self._defined = {}
        for key in scheme.entries:
            if key.labels is None or key.labels == 0:
                self._defined[key.points] = self._defined.get(key.points, 0) + 1

    def _empty_available(self, subset):
        copies = self.scheme.copies
        for sigma in submasks(subset, maxsize=self.scheme.size):
            if self._defined.get(sigma, 0) < copies[popcount(sigma)]:
                return True
        return False

    def covered(self, subset):
        """Return set of traces on subset that some key reproduces"""
        found = set()
        for points, labels, hypothesis in self._entries:
            if points & ~subset:
                continue
            trace = hypothesis & subset
            if labels is not None and trace & points != labels:
                continue
            found.add(trace)
        if 0 not in found and self._empty_available(subset):
            found.add(0)
        return found

    def verify(self):
        """Return (True, None) or (False, Counterexample)"""
        for subset in submasks(self.space.full, minsize=1):
            traces = {c & subset for c in self._concepts}
            missing = traces - self.covered(subset)
            if missing:
                indices = mask_indices(subset)
                order = lambda t: bitstring(project(t, indices), len(indices))
                first = min(missing, key=order)
                return False, Counterexample(self.space.points(subset),
                    order(first))
        return True, None


def verify_scheme(space, scheme, max_points=None):
    """Return (ok, counterexample) for a compression scheme on a space

    Parameters
    ----------
    space : ConceptSpace
    scheme : CompressionScheme
    max_points : int, optional
        domain size cap, default SchemeVerifier.MAX_POINTS

    Returns
    -------
    tuple
        (True, None) if every sample of every concept has a key, else
        (False, Counterexample) for the first sample without one
    """
    return SchemeVerifier(space, scheme, max_points=max_points).verify()
