"""Normalization, scaling and limit models of rigid finite-type domains.

Inputs may be dicts or JSON text; every function returns a dict decoded from the
JSON report produced by the C++ core.
"""

import json

from . import _core
from ._core import DegreeCapExceeded, Error, HypothesisError, JSONError, ParseError, ShapeError

__all__ = [
    "parse", "analyze", "normalize", "scale", "limit", "classify", "match",
    "Error", "ParseError", "ShapeError", "DegreeCapExceeded", "HypothesisError", "JSONError",
]


def _text(value):
    return value if isinstance(value, str) and value.lstrip().startswith(("{", "[", '"')) else json.dumps(value)


def _point(point):
    if isinstance(point, str):
        return point
    coords = []
    for c in point:
        c = complex(c) if not isinstance(c, str) else c
        coords.append(c if isinstance(c, str) else f"{c.real!r},{c.imag!r}")
    return ";".join(coords)


def parse(expr, nvars=1):
    return json.loads(_core.parse(expr, nvars))


def analyze(domain, radius=0.2, count=1024):
    return json.loads(_core.analyze(_text(domain), radius, count))


def normalize(domain, point):
    return json.loads(_core.normalize(_text(domain), _point(point)))


def scale(domain, point, epsilon):
    return json.loads(_core.scale(_text(domain), _point(point), str(epsilon)))


def limit(domain, sequence, tol=1e-9, window=3, samples=4096):
    return json.loads(_core.limit(_text(domain), _text(sequence), tol, window, samples))


def classify(poly, samples=4096):
    return json.loads(_core.classify(_text(poly), samples))


def match(P, H, tol=1e-9, samples=4096):
    return json.loads(_core.match(_text(P), _text(H), tol, samples))
