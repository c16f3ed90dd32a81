"""Fitzpatrick functions: exact for the skew operators, sampled otherwise.

For a graph ``G`` the Fitzpatrick function is

    F(x, x*) = sup_{(a, a*) in G} <x, a*> + <a, x*> - <a, a*>.

For ``T_alpha`` the graph is a subspace on which ``<a, a*> = 0``, so the
supremum is that of a linear functional over a subspace: 0 when the bracket
``<x, a*> + <a, x*>`` vanishes on a spanning set, +inf otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import PreconditionError
from .operators import GraphSample, adjoint_A_alpha, apply_A_alpha
from .report import Fragment
from .vectors import AlphaSpec, Extended, FiniteVec, Vec, as_rational, format_rational, pair

EXACTNESS = ("closed-form", "span-exact", "lower-bound")


@dataclass(frozen=True)
class FitzValue:
    value: Extended
    exactness: str
    sample_size: int | None = None

    def __post_init__(self):
        if self.exactness not in EXACTNESS:
            raise ValueError(f"unknown exactness marker {self.exactness!r}")

    def to_json(self) -> dict:
        out = {"value": format_rational(self.value), "exactness": self.exactness}
        if self.sample_size is not None:
            out["sample_size"] = self.sample_size
        return out


def bracket(x: Vec, xstar: Vec, a: Vec, astar: Vec) -> Fraction:
    """``<x, a*> + <a, x*>``, linear in ``(a, a*)``."""
    return pair(x, astar) + pair(a, xstar)


def fitzpatrick_term(x: Vec, xstar: Vec, a: Vec, astar: Vec) -> Fraction:
    return bracket(x, xstar, a, astar) - pair(a, astar)


def fitz_skew_exact(alpha: AlphaSpec, x: Vec, xstar: FiniteVec) -> FitzValue:
    """``iota_C(x, x*)`` with ``C = {(-A_alpha x*, x*)}``."""
    inside = x == -apply_A_alpha(alpha, xstar)
    return FitzValue(Fraction(0) if inside else math.inf, "closed-form")


def fitz_sampled_lb(g: GraphSample, x: Vec, xstar: Vec,
                    scales: Iterable[object] = (1,)) -> FitzValue:
    """Max of the Fitzpatrick term over ``t * p`` for sample points ``p``, ``t`` in ``scales``.

    Always a lower bound for the true value; never reports +inf.
    """
    sample = g if tuple(scales) == (1,) else g.scaled(scales)
    if not len(sample):
        raise PreconditionError("empty graph sample")
    best = max(fitzpatrick_term(x, xstar, a, astar) for a, astar in sample)
    return FitzValue(best, "lower-bound", len(sample))


def is_skew_on_span(g: GraphSample) -> bool:
    """True when the quadratic form ``<a, a*>`` vanishes on the span of the sample.

    Needs the sample flagged linear; checks the diagonal and all
    symmetrised cross terms, which determine the form on the span.
    """
    if not g.linear:
        return False
    pts = g.points
    for i, (a, astar) in enumerate(pts):
        if pair(a, astar) != 0:
            return False
        for b, bstar in pts[i + 1:]:
            if pair(a, bstar) + pair(b, astar) != 0:
                return False
    return True


def fitz_span(g: GraphSample, x: Vec, xstar: Vec) -> FitzValue:
    """Exact Fitzpatrick value over the span of a skew subspace sample."""
    if not is_skew_on_span(g):
        raise PreconditionError("sample does not span a skew subspace graph")
    zero = all(bracket(x, xstar, a, astar) == 0 for a, astar in g.points)
    return FitzValue(Fraction(0) if zero else math.inf, "span-exact", len(g))


@dataclass(frozen=True)
class DivergenceEvidence:
    """A scaled graph point whose Fitzpatrick term exceeds ``threshold``."""

    index: int
    direction_bracket: Fraction
    scale: Fraction
    value: Fraction
    threshold: Fraction
    truncation: int | None

    @property
    def exceeds(self) -> bool:
        return self.value > self.threshold

    def describe(self) -> str:
        return (f"Fitzpatrick term reaches {format_rational(self.value)} > "
                f"{format_rational(self.threshold)} at scale {format_rational(self.scale)} "
                f"along sample point {self.index} (truncation N={self.truncation})")


def divergence_evidence(g: GraphSample, x: Vec, xstar: Vec, threshold) -> DivergenceEvidence | None:
    """Scale the first direction with a nonzero bracket past ``threshold``.

    On a skew sample the term along ``t * (a, a*)`` is ``t * bracket``, so
    ``t = sign(b) * (floor(M / |b|) + 1)`` gives a value strictly above ``M``.
    Returns ``None`` when every bracket vanishes.
    """
    m = as_rational(threshold)
    if not is_skew_on_span(g):
        raise PreconditionError("divergence evidence is only derived for skew subspace samples")
    for i, (a, astar) in enumerate(g.points):
        b = bracket(x, xstar, a, astar)
        if b != 0:
            t = Fraction(math.floor(max(m, 0) / abs(b)) + 1) * (1 if b > 0 else -1)
            value = fitzpatrick_term(x, xstar, a * t, astar * t)
            return DivergenceEvidence(i, b, t, value, m, g.generator.N)
    return None


class FitzpatrickSkew:
    """Closed-form ``F_T = iota_C`` for ``T_alpha``, with its conjugate.

    ``C`` is a subspace, so ``F_T*`` is the indicator of its annihilator:
    ``F_T*(y*, y**) = 0`` iff ``y** = A* y*``.
    """

    def __init__(self, alpha: AlphaSpec):
        self.alpha = alpha

    def __call__(self, x: Vec, xstar: FiniteVec) -> Extended:
        return fitz_skew_exact(self.alpha, x, xstar).value

    def conjugate(self):
        alpha = self.alpha

        def conj(ystar: FiniteVec, ybidual: Vec) -> Extended:
            return Fraction(0) if ybidual == adjoint_A_alpha(alpha, ystar) else math.inf

        return conj

    @property
    def name(self) -> str:
        return f"F_T[{self.alpha.name}]"


def fitzpatrick_function(alpha: AlphaSpec) -> FitzpatrickSkew:
    return FitzpatrickSkew(alpha)


def bc_test(F, sample: Sequence[tuple[Vec, Vec]], anchor: str = "BC-function inequalities") -> Fragment:
    """Check ``F*(x*, x) >= F(x, x*) >= <x, x*>`` at every sample point.

    ``F`` is any handle with ``F(x, x*)`` and ``F.conjugate()(x*, x)``;
    both the product functions of :mod:`monopath.convex` and
    :class:`FitzpatrickSkew` qualify.
    """
    conj = F.conjugate()
    frag = Fragment()
    for k, (x, xstar) in enumerate(sample):
        fv = F(x, xstar)
        frag.check(f"point {k}: F(x,x*) >= <x,x*>", fv, "≥", pair(x, xstar), anchor)
        frag.check(f"point {k}: F*(x*,x) >= F(x,x*)", conj(xstar, x), "≥", fv, anchor)
    return frag
