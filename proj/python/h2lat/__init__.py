"""Exact homology-lattice computations for rational and ruled 4-manifolds.

Models are given as "rational:N" or "ruled:h=G,n=N". Classes are accepted either
as expressions ("3H - E1 - 2E2") or as coefficient lists in basis order.
Coefficients come back as Python ints (or Fractions for forms).
"""

import json
from fractions import Fraction

from . import _h2lat
from ._h2lat import LatticeError, ParseError

__all__ = [
    "LatticeError",
    "ParseError",
    "parse_class",
    "print_class",
    "pairing",
    "reflect",
    "classify",
    "reduce",
    "cone",
    "lagrangian",
    "exceptional",
    "null_spherical",
    "decompose",
    "crosscheck",
]


def _arg(x):
    if isinstance(x, str):
        return x
    return json.dumps([_scalar_out(v) for v in x])


def _scalar_out(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    if isinstance(v, int):
        # big values travel as strings
        return v if abs(v) < 2**53 else str(v)
    return v


def _num(v):
    if isinstance(v, str):
        f = Fraction(v)
        return int(f) if f.denominator == 1 else f
    return v


def _coeffs(vs):
    return [_num(v) for v in vs]


def _fix(obj, keys):
    for k in keys:
        if k in obj and obj[k] is not None:
            obj[k] = _coeffs(obj[k])
    return obj


def _nf(obj):
    _fix(obj, ["representative"])
    obj["word"] = [_coeffs(g) for g in obj["word"]]
    return obj


def parse_class(model, text):
    return _coeffs(json.loads(_h2lat.parse_class(model, text)))


def print_class(model, cls):
    return _h2lat.print_class(model, _arg(cls))


def pairing(model, x, y):
    return _num(json.loads(_h2lat.pairing(model, _arg(x), _arg(y))))


def reflect(model, gamma, beta):
    return _coeffs(json.loads(_h2lat.reflect(model, _arg(gamma), _arg(beta))))


def classify(model, cls):
    out = json.loads(_h2lat.classify(model, _arg(cls)))
    out["square"] = _num(out["square"])
    out["k0_pairing"] = _num(out["k0_pairing"])
    if "normal_form" in out:
        _nf(out["normal_form"])
    return out


def reduce(model, cls):
    return _nf(json.loads(_h2lat.reduce(model, _arg(cls))))


def cone(model, form, degree_bound=None):
    out = json.loads(_h2lat.cone(model, _arg(form), degree_bound))
    return _fix(out, ["witness"])


def lagrangian(model, cls, form, accept_bounded=False, degree_bound=None):
    out = json.loads(_h2lat.lagrangian(model, _arg(cls), _arg(form), accept_bounded, degree_bound))
    if "certificate" in out:
        _nf(out["certificate"])
    return _fix(out, ["binary_class"])


def exceptional(model, degree_bound=None):
    out = json.loads(_h2lat.exceptional(model, degree_bound))
    out["classes"] = [_coeffs(c) for c in out["classes"]]
    return out


def null_spherical(model, degree_bound=None):
    out = json.loads(_h2lat.null_spherical(model, degree_bound))
    out["classes"] = [_coeffs(c) for c in out["classes"]]
    return out


def decompose(model, matrix, alpha=None):
    """Reflection word (application order) whose product is the matrix."""
    rows = json.dumps([[_scalar_out(v) for v in r] for r in matrix])
    out = json.loads(_h2lat.decompose(model, rows, None if alpha is None else _arg(alpha)))
    out["word"] = [_coeffs(g) for g in out["word"]]
    return out


def crosscheck(model, square=None, k_pairing=None, bound=1, predicate=None):
    return json.loads(_h2lat.crosscheck(model, square, k_pairing, bound, predicate))
