"""Hopping cyclic codes, optical orthogonal codes and their bounds."""

import json
from fractions import Fraction

from . import _core
from ._core import CapacityError, ContractViolation, DomainError, ParseError, auto_distance, class_distance

__all__ = [
    "CapacityError",
    "ContractViolation",
    "DomainError",
    "ParseError",
    "auto_distance",
    "ball_volume",
    "bounds",
    "class_distance",
    "construct",
    "correlations",
    "cw_ball_volume",
    "exact_set_a",
    "gv_bound",
    "mc_tail",
    "read_code",
    "verify",
    "version",
    "write_code",
]


def version():
    return _core.version()


def ball_volume(n, q, t):
    return int(_core.ball_volume(n, q, t))


def cw_ball_volume(n, w, t):
    return int(_core.cw_ball_volume(n, w, t))


def gv_bound(n, q, d):
    return Fraction(_core.gv_bound(n, q, d))


def bounds(n, q=2, d=None, w=None, lam=None, kappa=None, eps=None, tau=None, p=None):
    return json.loads(_core.bounds(n, q, d, w, lam, kappa, eps, tau, p))


def construct(n, q, d, weight=None, solver="gv-greedy", seed=0, restarts=8, threads=1, exact_limit=0):
    """Returns (report, words); words are lists of symbols."""
    report, words = _core.construct(n, q, d, weight, solver, seed, restarts, threads, exact_limit)
    return json.loads(report), words


def verify(words, n, q, d, weight=None):
    return json.loads(_core.verify(words, n, q, d, weight))


def correlations(words, q):
    return json.loads(_core.correlations(words, q))


def exact_set_a(n, q, eps):
    return json.loads(_core.exact_set_a(n, q, eps))


def mc_tail(n, q, eps, samples, seed=0, threads=1):
    return json.loads(_core.mc_tail(n, q, eps, samples, seed, threads))


def read_code(text):
    header, words = _core.read_code(text)
    return json.loads(header), words


def write_code(kind, n, q, d, words, weight=None, lam=None, kappa=None):
    return _core.write_code(kind, n, q, d, words, weight, lam, kappa)
