"""Python access to the ternrec library.

A sequence is given as a preset name ("tribonacci") or a dict with the keys
a1, a2, a3, u0, u1, u2.
"""

import json

from . import _ternrec
from ._ternrec import BudgetExceeded

__all__ = ["BudgetExceeded", "term", "analyze", "classify_prime", "z_primes", "represent", "count", "solve_exponents"]


def _spec(spec):
    return json.dumps(spec)


def term(spec, n):
    return int(_ternrec.term(_spec(spec), n))


def analyze(spec):
    return json.loads(_ternrec.analyze(_spec(spec)))


def classify_prime(spec, p):
    return json.loads(_ternrec.classify_prime(_spec(spec), p))


def z_primes(spec, x):
    return _ternrec.z_primes(_spec(spec), x)


def represent(N, n):
    """(u, v) with N = u^2 + n v^2 and v minimal, or None."""
    r = _ternrec.represent(str(N), n)
    return None if r is None else (int(r[0]), int(r[1]))


def count(spec, x, n_exact=120, threads=1):
    return json.loads(_ternrec.count(_spec(spec), x, n_exact, threads))


def solve_exponents():
    return json.loads(_ternrec.solve_exponents())
