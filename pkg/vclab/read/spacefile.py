"""
Read and write the concept space file format

{"domain": ["p1", ...], "concepts": ["0101", ...], "dedup": true}

Concept strings are '0'/'1' characters, position i is domain[i].
"""

import json
import sys

from ..conceptspace import ConceptSpace


def _decode(data):
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode('utf-8')
        except UnicodeDecodeError as err:
            raise ValueError(f'file is not valid UTF-8: {err}') from None
    if not isinstance(data, str):
        raise TypeError(f'expected bytes or str, not {type(data)}')
    try:
        return json.loads(data)
    except json.JSONDecodeError as err:
        raise ValueError(f'malformed JSON: {err}') from None


def load_space(data):
    """Return ConceptSpace from the bytes of a concept space file

    Parameters
    ----------
    data : bytes or str

    Returns
    -------
    ConceptSpace
    """
    return ConceptSpace.from_dict(_decode(data))


def save_space(space):
    """Return concept space file contents as UTF-8 bytes"""
    return space.to_json().encode('utf-8')


def read_space(filepath):
    """Read concept space file, '-' reads standard input"""
    if filepath == '-':
        return load_space(sys.stdin.buffer.read())
    with open(filepath, 'rb') as f:
        return load_space(f.read())
