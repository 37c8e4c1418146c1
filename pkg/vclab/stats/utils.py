"""
Helper functions for working with subsets of a finite domain stored as
integer bitmasks. Bit i of a mask is the membership of domain point i.
"""

from itertools import combinations

import numpy as np


def popcount(mask):
    """Return number of points in mask"""
    return bin(mask).count('1')


def mask_indices(mask):
    """Return sorted list of point indices in mask"""
    indices = []
    i = 0
    while mask:
        if mask & 1:
            indices.append(i)
        mask >>= 1
        i += 1
    return indices


def indices_mask(indices):
    """Return bitmask with the given point indices set"""
    mask = 0
    for i in indices:
        mask |= 1 << int(i)
    return mask


def full_mask(n):
    """Return bitmask of a domain with n points"""
    return (1 << n) - 1


def bitstring(mask, n):
    """Return '0'/'1' string of length n, character i is bit i"""
    return ''.join('1' if (mask >> i) & 1 else '0' for i in range(n))


def parse_bitstring(text, n=None):
    """Return bitmask from '0'/'1' string, character i is bit i

    Parameters
    ----------
    text : str
        string of '0' and '1' characters
    n : int, optional
        required string length

    Returns
    -------
    int
    """
    if not isinstance(text, str):
        raise TypeError(f'bit vector must be a string, not {type(text)}')
    if n is not None and len(text) != n:
        raise ValueError((f'bit vector "{text}" has length {len(text)}, '
            f'expected {n}'))
    mask = 0
    for i, char in enumerate(text):
        if char == '1':
            mask |= 1 << i
        elif char != '0':
            raise ValueError(f'invalid character "{char}" in bit vector "{text}"')
    return mask


def array_mask(bits):
    """Return bitmask from a one dimensional boolean array"""
    return indices_mask(np.flatnonzero(np.asarray(bits)))


def mask_array(mask, n):
    """Return boolean numpy array of length n from bitmask"""
    return np.array([(mask >> i) & 1 for i in range(n)], dtype=bool)


def project(mask, indices):
    """Return mask re-indexed on the points at the given positions

    Bit j of the result is bit indices[j] of mask.
    """
    out = 0
    for j, i in enumerate(indices):
        if (mask >> i) & 1:
            out |= 1 << j
    return out


def subset_key(mask):
    """Sort key ordering subsets by size, then by index vector"""
    indices = mask_indices(mask)
    return (len(indices), indices)


def submasks(mask, maxsize=None, minsize=0):
    """Yield submasks of mask by increasing size, lexicographic within a size

    Parameters
    ----------
    mask : int
        superset to enumerate
    maxsize : int, optional
        largest subset size, default all
    minsize : int, default 0
        smallest subset size

    Yields
    ------
    int
    """
    indices = mask_indices(mask)
    if maxsize is None or maxsize > len(indices):
        maxsize = len(indices)
    for size in range(minsize, maxsize + 1):
        for combi in combinations(indices, size):
            yield indices_mask(combi)

