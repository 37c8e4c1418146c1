"""
This module contains the class ConceptSpace for a finite domain of
named points with a class of concepts over it, and the class
LabelledSample for a labelled multiset of domain points.

Example
-------
space = ConceptSpace(['1','2','3'], ['000','100','110','111'])
sub = space.restrict(['1','2'])
"""

from collections import OrderedDict
import json

import numpy as np
from pandas import DataFrame
import pandas as pd

from .stats.utils import (bitstring, parse_bitstring, full_mask,
    indices_mask, mask_indices, project, array_mask)


class ConceptSpace:
    """
    Finite concept space with concepts stored as bitmasks

    Parameters
    ----------
    domain : list of str
        ordered, pairwise distinct point names
    concepts : list
        concepts as '0'/'1' strings (position i is domain[i]), integer
        bitmasks (bit i is domain[i]) or sets of point names
    dedup : bool, default True
        drop repeated concepts, keeping the first occurrence

    Methods
    -------
    mask(points)
        return bitmask of an iterable of point names
    points(mask)
        return point names in mask, in domain order
    traces(points)
        return set of distinct concept traces on points
    restrict(points)
        return subspace on points
    to_frame()
        return concepts as table of 0/1 values
    from_json(filepath), to_json(filepath)
        read or write the concept space file format

    Examples
    --------
    >>> space = ConceptSpace(['a'], ['0','1'])
    >>> space.n_concepts
    2

    Notes
    -----
    Concept spaces are immutable. Empty domains and empty concept
    classes are rejected.
    """

    def __repr__(self):
        return (f'{self.__class__.__name__}(points={self.n_points}, '
            f'concepts={self.n_concepts})')

    def __init__(self, domain, concepts, dedup=True):

        if isinstance(domain, str):
            raise TypeError('domain must be a list of point names, not a string')
        domain = tuple(str(name) for name in domain)
        if not domain:
            raise ValueError('domain is empty')

        index = {}
        for i, name in enumerate(domain):
            if name in index:
                raise ValueError(f'duplicate point name "{name}" in domain')
            index[name] = i

        self._domain = domain
        self._index = index
        self._full = full_mask(len(domain))

        masks = [self.concept_mask(c) for c in concepts]
        if not masks:
            raise ValueError('concept class is empty')
        if dedup:
            masks = list(dict.fromkeys(masks))

        self._concepts = tuple(masks)
        self._dedup = bool(dedup)


    def concept_mask(self, concept):
        """Return bitmask of a concept given as bit string, mask or set of names"""
        if isinstance(concept, str):
            return parse_bitstring(concept, len(self._domain))

        if isinstance(concept, (int, np.integer)) and not isinstance(concept, bool):
            concept = int(concept)
            if concept < 0 or concept > self._full:
                raise ValueError((f'concept mask {concept} does not fit a '
                    f'domain of {len(self._domain)} points'))
            return concept

        if isinstance(concept, (set, frozenset)):
            return self.mask(concept)

        raise TypeError(f'concept {concept!r} is not a bit string, mask or set')


    def __eq__(self, other):
        if not isinstance(other, ConceptSpace):
            return NotImplemented
        return (self._domain == other._domain
            and self._concepts == other._concepts)

    def __hash__(self):
        return hash((self._domain, self._concepts))

    def __len__(self):
        return len(self._concepts)

    def __contains__(self, concept):
        try:
            mask = self.concept_mask(concept)
        except (TypeError, ValueError):
            return False
        return mask in self.distinct()

    @property
    def domain(self):
        """Ordered tuple of point names"""
        return self._domain

    @property
    def concepts(self):
        """Tuple of concept bitmasks"""
        return self._concepts

    @property
    def dedup(self):
        return self._dedup

    @property
    def n_points(self):
        return len(self._domain)

    @property
    def n_concepts(self):
        return len(self._concepts)

    @property
    def full(self):
        """Bitmask of the whole domain"""
        return self._full

    def distinct(self):
        """Return frozenset of distinct concept masks"""
        return frozenset(self._concepts)

    def index(self, name):
        """Return domain position of a point name"""
        try:
            return self._index[str(name)]
        except KeyError:
            raise ValueError(f'unknown point "{name}"') from None

    def mask(self, points):
        """Return bitmask of an iterable of point names"""
        if isinstance(points, str):
            points = [points]
        return indices_mask(self.index(name) for name in points)

    def points(self, mask):
        """Return tuple of point names in mask, in domain order"""
        return tuple(self._domain[i] for i in mask_indices(mask))

    def bitstring(self, mask):
        """Return '0'/'1' string of a mask over this domain"""
        return bitstring(mask, len(self._domain))

    def concept_strings(self):
        """Return list of concepts as '0'/'1' strings"""
        return [self.bitstring(c) for c in self._concepts]

    def traces(self, points):
        """Return set of distinct traces C & A for A given as names or mask"""
        mask = points if isinstance(points, int) else self.mask(points)
        return {c & mask for c in self._concepts}

    def restrict(self, points):
        """Return the subspace on a nonempty subset of the domain

        Parameters
        ----------
        points : iterable of str
            point names of the subset

        Returns
        -------
        ConceptSpace
            domain in parent order, distinct traces ordered
            lexicographically by bit string

        """
        mask = self.mask(points)
        if not mask:
            raise ValueError('cannot restrict to an empty subset')

        indices = mask_indices(mask)
        n = len(indices)
        traces = {project(c, indices) for c in self._concepts}
        ordered = sorted(traces, key=lambda t: bitstring(t, n))
        domain = [self._domain[i] for i in indices]
        return ConceptSpace(domain, ordered, dedup=True)


    def to_frame(self):
        """Return concepts as DataFrame of 0/1 with points as columns"""
        data = [[(c >> i) & 1 for i in range(self.n_points)]
            for c in self._concepts]
        return DataFrame(data, columns=list(self._domain), dtype=int)

    @classmethod
    def from_frame(cls, frame, dedup=True):
        """Return ConceptSpace from a 0/1 DataFrame with points as columns"""
        if not isinstance(frame, pd.DataFrame):
            raise TypeError(f'frame is not a pandas DataFrame but {type(frame)}')
        values = frame.to_numpy().astype(bool)
        concepts = [array_mask(row) for row in values]
        return cls([str(c) for c in frame.columns], concepts, dedup=dedup)

    def to_dict(self):
        """Return OrderedDict in the concept space file layout"""
        json_dict = OrderedDict()
        json_dict['domain'] = list(self._domain)
        json_dict['concepts'] = self.concept_strings()
        json_dict['dedup'] = self._dedup
        return json_dict

    @classmethod
    def from_dict(cls, json_dict):
        """Return ConceptSpace from a dict in the concept space file layout"""
        if not isinstance(json_dict, dict):
            raise ValueError('concept space must be a JSON object')
        for key in ['domain', 'concepts']:
            if key not in json_dict:
                raise ValueError(f'concept space has no "{key}" field')
        if not isinstance(json_dict['domain'], list):
            raise ValueError('"domain" must be a list of point names')
        if not isinstance(json_dict['concepts'], list):
            raise ValueError('"concepts" must be a list of bit strings')
        dedup = json_dict.get('dedup', True)
        if not isinstance(dedup, bool):
            raise ValueError('"dedup" must be true or false')
        for concept in json_dict['concepts']:
            if not isinstance(concept, str):
                raise ValueError(f'concept {concept!r} is not a bit string')
        return cls(json_dict['domain'], json_dict['concepts'], dedup=dedup)

    @classmethod
    def from_json(cls, filepath):
        """Read concept space from json file"""
        with open(filepath, encoding='utf-8') as json_file:
            json_dict = json.load(json_file)
        return cls.from_dict(json_dict)

    def to_json(self, filepath=None):
        """Return json string and optionally write it to filepath"""
        json_str = json.dumps(self.to_dict())
        if filepath is not None:
            with open(filepath, 'w', encoding='utf-8') as f:
                f.write(json_str)
        return json_str


def restrict(space, subset):
    """Return subspace (A, C n A) of space on subset A

    Parameters
    ----------
    space : ConceptSpace
    subset : iterable of str

    Returns
    -------
    ConceptSpace
    """
    return space.restrict(subset)


class LabelledSample:
    """
    Labelled multiset of points of a concept space

    Parameters
    ----------
    space : ConceptSpace
        parent space, all point names must be in its domain
    pairs : iterable of (str, int)
        (point name, label) pairs, repeated points must carry the
        same label

    Notes
    -----
    The support is the set of distinct points; `labels` is the mask of
    support points labelled 1.
    """

    def __repr__(self):
        return (f'{self.__class__.__name__}(n={len(self._pairs)}, '
            f'support={self.space.points(self._support)})')

    def __init__(self, space, pairs):

        if not isinstance(space, ConceptSpace):
            raise TypeError(f'space is not a ConceptSpace but {type(space)}')

        self.space = space
        seen = {}
        cleaned = []
        for name, label in pairs:
            name = str(name)
            index = space.index(name)
            if label not in (0, 1):
                raise ValueError(f'label {label!r} for point "{name}" is not 0 or 1')
            label = int(label)
            if seen.get(index, label) != label:
                raise ValueError(f'conflicting labels for point "{name}"')
            seen[index] = label
            cleaned.append((name, label))

        self._pairs = tuple(cleaned)
        self._support = indices_mask(seen)
        self._labels = indices_mask(i for i, lab in seen.items() if lab)

    @classmethod
    def from_concept(cls, space, concept, points):
        """Return sample of points labelled by a concept mask"""
        pairs = [(name, (concept >> space.index(name)) & 1) for name in points]
        return cls(space, pairs)

    @classmethod
    def from_masks(cls, space, support, labels):
        """Return sample with one draw of each point in support"""
        if labels & ~support:
            raise ValueError('labels must be a subset of the support')
        pairs = [(space.domain[i], (labels >> i) & 1)
            for i in mask_indices(support)]
        return cls(space, pairs)

    @property
    def pairs(self):
        return self._pairs

    @property
    def support(self):
        """Bitmask of distinct sampled points"""
        return self._support

    @property
    def labels(self):
        """Bitmask of sampled points labelled 1"""
        return self._labels

    def __len__(self):
        return len(self._pairs)

    def agrees_with(self, hypothesis):
        """Return True if hypothesis mask matches every label"""
        return ((hypothesis ^ self._labels) & self._support) == 0
