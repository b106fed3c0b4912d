"""Conditioning experiments for polynomial system solvers.

Systems, root reports and sweep results are plain dicts in the same layout
as the JSON files written by the ``polylab`` command-line tool.
"""

import json as _json

from . import _core
from ._core import InvalidArgument, PolylabError, digits_of_accuracy, figure_ids, suite_names

__all__ = [
    "InvalidArgument",
    "PolylabError",
    "audit",
    "digits_of_accuracy",
    "figure",
    "figure_ids",
    "generate",
    "roots_as_complex",
    "solve",
    "suite_names",
    "sweep",
    "verify",
]


def generate(family, d=2, param=1e-2, shift=None, randomize=True, seed=1):
    """Build a system from a named family."""
    if shift is not None and not isinstance(shift, (list, tuple)):
        shift = [float(shift)]
    return _json.loads(_core.generate_json(family, d, param, shift, randomize, seed))


def solve(system, method, polish=False, seed=1):
    return _json.loads(_core.solve_json(_json.dumps(system), method, polish, seed))


def audit(system, root, seed=1):
    """Condition reports for every applicable method at ``root`` (a list of complex numbers)."""
    pairs = [[complex(z).real, complex(z).imag] for z in root]
    return _json.loads(_core.audit_json(_json.dumps(system), _json.dumps(pairs), seed))


def figure(figure_id, trials=100, seed=1, threads=0):
    return _json.loads(_core.figure_json(str(figure_id), trials, seed, threads))


def sweep(method, family, xs, axis="log_sigma", d=2, param=1e-2, trials=100, seed=1, polish=False, shift=None,
          threads=0):
    return _json.loads(_core.sweep_json(method, family, axis, list(xs), d, param, trials, seed, polish, shift, threads))


def verify(suite, seed=1):
    return _json.loads(_core.verify_json(suite, seed))


def roots_as_complex(report):
    """Roots of a solve() result as lists of Python complex numbers."""
    return [[complex(re, im) for re, im in root] for root in report["roots"]]
