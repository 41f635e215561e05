"""Copositive and SPN cone membership, SPN graph classification and witnesses.

Results are the same dictionaries that the command line tool writes under
"result" in its JSON reports. Graph vertices are 1-based.
"""

import json

from . import _spnkit
from ._spnkit import SpnkitError, __version__, format_matrix, parse_matrix

__all__ = [
    "SpnkitError",
    "__version__",
    "catalog",
    "classify",
    "decompose",
    "format_matrix",
    "parse_matrix",
    "test_matrix",
    "verify",
    "witness",
]

DEFAULT_TOL = 1e-9


def _rows(matrix):
    return [[float(x) for x in row] for row in matrix]


def test_matrix(matrix, prop="spn", tol=DEFAULT_TOL):
    """Membership of a symmetric matrix in the psd, copositive or spn cone."""
    text, _ = _spnkit.test_matrix(_rows(matrix), prop, tol)
    return json.loads(text)


# not a pytest test despite the name
test_matrix.__test__ = False


def decompose(matrix, tol=DEFAULT_TOL):
    text, _ = _spnkit.decompose(_rows(matrix), tol)
    return json.loads(text)


def classify(n, edges):
    return json.loads(_spnkit.classify(n, [tuple(e) for e in edges]))


def witness(n, edges):
    return json.loads(_spnkit.witness(n, [tuple(e) for e in edges]))


def catalog(name, *params):
    return json.loads(_spnkit.catalog(name, list(params)))


def verify(command, result):
    """Re-check a result dictionary; returns a list of (what, ok, reason)."""
    report = {"command": command, "result": result}
    return _spnkit.verify(json.dumps(report))
