"""
Read and write the compression scheme file format

{"size": 1, "copies": [2,2], "kind": "unlabelled",
 "entries": [{"points": ["1"], "copy": 1, "hypothesis": "0010"}, ...]}

Labelled entries add "labels", one character per listed point.
Hypotheses are bit strings over the domain of the concept space the
scheme is read for.
"""

from ..compression import CompressionScheme
from .spacefile import _decode


def load_scheme(data, space):
    """Return CompressionScheme over the domain of space from file bytes

    Parameters
    ----------
    data : bytes or str
    space : ConceptSpace
        space whose domain names the scheme points

    Returns
    -------
    CompressionScheme
    """
    return CompressionScheme.from_dict(_decode(data), space.domain)


def save_scheme(scheme):
    """Return scheme file contents as UTF-8 bytes"""
    return scheme.to_json().encode('utf-8')


def read_scheme(filepath, space):
    """Read scheme file for a space"""
    with open(filepath, 'rb') as f:
        return load_scheme(f.read(), space)
