"""L2-invariants of group ring matrices by finite approximation.

Problems, complexes and reports use the same JSON schemas as the
``l2approx`` command-line tool; this module accepts and returns plain dicts.
"""

import json

from . import _l2approx
from ._l2approx import Error, mahler, round12, suite_names, trivial_logdet

__all__ = ["Error", "approx", "cw", "density", "mahler", "round12", "suite_names", "trivial_logdet", "verify"]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def approx(problem, levels=None, boxes=None, grid=None, eps_ker=None, tol=0.02, jobs=1):
    """Run the problem's scheme and return the approx report."""
    return json.loads(_l2approx.approx(_dump(problem), levels, boxes, grid, eps_ker, tol, jobs))


def density(problem, levels=None, boxes=None, grid=None, eps_ker=None):
    """Spectral density at the last level, box or oracle grid."""
    return json.loads(_l2approx.density(_dump(problem), levels, boxes, grid, eps_ker))


def cw(complex, method="auto", levels=None, grid=None):
    """L2-Betti numbers, determinants and torsion of a chain complex."""
    return json.loads(_l2approx.cw(_dump(complex), method, levels, grid))


def verify(suite, seed=None):
    """Run one bundled property suite."""
    return json.loads(_l2approx.verify(suite, seed))
