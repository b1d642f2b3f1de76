"""Determinantal ideals of symmetric matrices and their biliaison descent.

Matrices and ideals are plain dicts in the same JSON layout the
``liaison-forge`` command line tool reads and writes.
"""

import json

from . import _core
from ._core import (
    CharTwoRefused,
    ChainObstruction,
    GenericityExhausted,
    LiaisonError,
    ParseError,
    PreconditionFailed,
    __version__,
)

__all__ = [
    "CharTwoRefused",
    "ChainObstruction",
    "GenericityExhausted",
    "LiaisonError",
    "ParseError",
    "PreconditionFailed",
    "__version__",
    "chain",
    "classify",
    "corpus_entry",
    "corpus_names",
    "groebner",
    "height",
    "minor_ideal",
    "run_corpus_entry",
    "verify_cross",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def corpus_names():
    return list(_core.corpus_names())


def corpus_entry(name, field=""):
    return json.loads(_core.corpus_entry(name, field))


def run_corpus_entry(name, seed=0):
    return json.loads(_core.run_corpus_entry(name, seed))


def classify(matrix, t):
    return json.loads(_core.classify(_dump(matrix), t))


def minor_ideal(matrix, t):
    return json.loads(_core.minor_ideal(_dump(matrix), t))


def groebner(ideal):
    return json.loads(_core.groebner(_dump(ideal)))


def height(ideal):
    return _core.height(_dump(ideal))


def chain(matrix, t, seed=0, force_char2=False):
    return json.loads(_core.chain(_dump(matrix), t, seed, force_char2))


def verify_cross(matrix, t):
    """Returns (checked, failed) for the cross identities of one step."""
    return _core.verify_cross(_dump(matrix), t)
