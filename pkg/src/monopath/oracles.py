"""Slow, independent reference computations used to cross-check the fast paths."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from .vectors import FiniteVec


def james_norm_sq_bruteforce(x: FiniteVec, N: int) -> Fraction:
    """Max of ``sum (x_{n_j} - x_{n_{j+1}})^2`` over every index subset of ``1..N+1``.

    Exhaustive (2^(N+1) subsets).  Values are brought to a common
    denominator so the inner loop runs on Python ints.
    """
    values = x.to_list(N) + [Fraction(0)]
    den = math.lcm(*(v.denominator for v in values))
    ints = [int(v * den) for v in values]
    best = 0
    n = len(ints)
    for r in range(2, n + 1):
        for chain in itertools.combinations(range(n), r):
            s = 0
            for a, b in zip(chain, chain[1:]):
                d = ints[a] - ints[b]
                s += d * d
            if s > best:
                best = s
    return Fraction(best, den * den)


def james_dual_grid(f: FiniteVec, N: int = 3, steps: int = 40) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Grid maximum of ``<x, f>`` over ``||x||_J <= 1`` in ``[-1, 1]^N``.

    Points are ``k / steps``; feasibility is decided exactly with the
    exhaustive James norm, so the result is a certified lower bound.
    """
    from .vectors import james_norm_sq

    coeffs = f.to_list(N)
    grid = [Fraction(k, steps) for k in range(-steps, steps + 1)]
    best, arg = None, None
    for point in itertools.product(grid, repeat=N):
        value = sum((c * p for c, p in zip(coeffs, point)), Fraction(0))
        if best is not None and value <= best:
            continue
        if james_norm_sq(FiniteVec.from_list(point), N) <= 1:
            best, arg = value, point
    return best, arg


def conjugate_grid_1d(fn, xs: float, radius: float = 4.0, step: float = 1 / 256) -> float:
    """``sup_x x xs - fn(x)`` over a 1-D grid (numpy)."""
    grid = np.arange(-radius, radius + step / 2, step)
    return float(np.max(xs * grid - fn(grid)))
