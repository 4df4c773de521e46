"""Python access to the fsparse C++ core.

Spectra and concept classes travel as the same JSON documents the command
line tool reads and writes, decoded here into plain dicts.
"""

import json

from . import _core
from ._core import Error

__all__ = [
    "Error",
    "wht",
    "gen_function",
    "is_boolean",
    "fourier_dimension",
    "granularity_check",
    "learn",
    "verify_improved_chang",
    "scan_all",
    "subspace_count",
    "point_class",
    "linear_class",
    "subspace_class",
    "spectral_ratio",
    "certify_split",
    "query_learn",
    "cli",
]


def _dump(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def wht(values):
    """Spectrum of a ±1 truth table listed in input-index order."""
    return json.loads(_core.wht(list(values)))


def gen_function(family="random", n=6, k=4, r_core=2, t=3, m=2, seed=0):
    return json.loads(_core.gen_function(family, n, k, r_core, t, m, seed))


def is_boolean(spectrum):
    return _core.is_boolean(_dump(spectrum))


def fourier_dimension(spectrum):
    return _core.fourier_dimension(_dump(spectrum))


def granularity_check(spectrum):
    return _core.granularity_check(_dump(spectrum))


def learn(target, k, seed=0, delta=1 / 3, mode="estimate"):
    return json.loads(_core.learn(_dump(target), k, seed, delta, mode))


def verify_improved_chang(spectrum):
    return json.loads(_core.verify_improved_chang(_dump(spectrum)))


def scan_all(n, which="improved", jobs=1):
    return json.loads(_core.scan_all(n, which, jobs))


def subspace_count(n, d):
    return int(_core.subspace_count(n, d))


def point_class(n_points):
    return json.loads(_core.point_class(n_points))


def linear_class(n):
    return json.loads(_core.linear_class(n))


def subspace_class(n, k):
    return json.loads(_core.subspace_class(n, k))


def spectral_ratio(cls):
    return _core.spectral_ratio(_dump(cls))


def certify_split(cls):
    return json.loads(_core.certify_split(_dump(cls)))


def query_learn(cls, stop_mass=5 / 6):
    return json.loads(_core.query_learn(_dump(cls), stop_mass))


def cli(*args):
    """Runs the command line tool in-process; returns (exit code, stdout, stderr)."""
    return _core.cli([str(a) for a in args])
