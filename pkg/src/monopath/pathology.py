"""Certificates for the monotonicity pathologies of ``T_alpha`` at truncation.

Everything here is exact.  Statements about the infinite-dimensional
operator are reduced to finite ones through linearity: a bracket that is
zero on a spanning set of the truncated graph is zero on its span.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .convex import HALF_L1_SQ, HALF_DUAL_SUP_SQ, eval_fn, scaled
from .errors import PreconditionError
from .fitzpatrick import bracket, fitzpatrick_term, is_skew_on_span
from .linalg import l1_distance_to_span
from .operators import (GraphSample, adjoint_A_alpha, alpha_pair, apply_A_alpha, apply_S_alpha,
                        graph_T_alpha)
from .report import Fragment
from .vectors import (AlphaSpec, EventualVec, Extended, FiniteVec, Vec, as_rational, kernel_basis,
                      norm_sup, pair)


@dataclass(frozen=True)
class WitnessPoint:
    """Bidual pair ``(x**, x*)`` with a note on how it was built."""

    x_bidual: Vec
    x_star: FiniteVec
    provenance: str


def adjoint_witness(alpha: AlphaSpec, xstar: FiniteVec | None = None) -> WitnessPoint:
    """``(A* x*, x*)``, by default with ``x* = e_1``."""
    xstar = FiniteVec.basis(1) if xstar is None else xstar
    return WitnessPoint(adjoint_A_alpha(alpha, xstar), xstar, f"(A* x*, x*) for alpha={alpha.name}")


def _points(g: GraphSample, scales: Iterable[object] | None):
    return g.points if scales is None else g.scaled(scales).points


def mono_related_min(g: GraphSample, x: Vec, xstar: FiniteVec,
                     scales: Iterable[object] | None = None) -> Fraction:
    """``min <x - a, x* - a*>`` over the (optionally scaled) sample."""
    pts = _points(g, scales)
    if not pts:
        raise PreconditionError("empty graph sample")
    return min(pair(x - a, xstar - astar) for a, astar in pts)


@dataclass(frozen=True)
class PhelpsSimons:
    passed: bool
    pairing: Fraction
    worst_index: int | None
    worst_excess: Fraction


def phelps_simons_check(g: GraphSample, x: Vec, xstar: FiniteVec) -> PhelpsSimons:
    """Quadratic criterion for relatedness to a linear graph.

    Tests ``<x, x*> >= 0`` and ``(<a*, x> + <x*, a>)^2 <= 4 <x*, x> <a*, a>``
    at each sample point; the excess ``lhs - rhs`` of the worst point is
    returned (positive means violated).
    """
    p = pair(x, xstar)
    worst, worst_i = None, None
    for i, (a, astar) in enumerate(g.points):
        excess = bracket(x, xstar, a, astar) ** 2 - 4 * p * pair(a, astar)
        if worst is None or excess > worst:
            worst, worst_i = excess, i
    worst = Fraction(0) if worst is None else worst
    passed = p >= 0 and worst <= 0
    return PhelpsSimons(passed, p, worst_i if worst > 0 else None, worst)


@dataclass(frozen=True)
class NIGap:
    gap: Extended
    mode: str  # "span-exact" or "sampled"
    bracket_zero: bool


def ni_gap(g: GraphSample, w: WitnessPoint) -> NIGap:
    """``<x**, x*> - sup_{(a,a*)} (<a, x*> + <a*, x**> - <a, a*>)``.

    On a skew subspace sample the supremum over the span is 0 or +inf; the
    gap is then ``<x**, x*>`` or ``-inf``.  Other samples fall back to the
    sampled maximum (origin included), which over-estimates the gap.
    """
    value = pair(w.x_bidual, w.x_star)
    if is_skew_on_span(g):
        zero = all(bracket(w.x_bidual, w.x_star, a, astar) == 0 for a, astar in g.points)
        return NIGap(value if zero else -math.inf, "span-exact", zero)
    best = max([Fraction(0)] + [fitzpatrick_term(w.x_bidual, w.x_star, a, astar) for a, astar in g.points])
    zero = all(bracket(w.x_bidual, w.x_star, a, astar) == 0 for a, astar in g.points)
    return NIGap(value - best, "sampled", zero)


def br_witness_check(alpha: AlphaSpec, zstar: FiniteVec, N: int) -> Fragment:
    """Certify that ``(-A z*, z*)`` has finite coupling infimum but ``z*`` is off the range.

    The infimum of ``<-A z* - a, z* - a*>`` over the truncated graph span is
    ``-<alpha, z*>^2`` once the bracket is zero on the kernel basis.  The
    range of ``T_alpha`` at truncation is the kernel span itself, and the l1
    distance from ``z*`` to it is solved as an exact LP.
    """
    s = alpha_pair(alpha, zstar)
    if s == 0:
        raise PreconditionError("<alpha, z*> = 0: z* lies in the domain, no failure to certify")
    if zstar.max_index > N:
        raise PreconditionError(f"support of z* reaches {zstar.max_index}, beyond N={N}")
    g = graph_T_alpha(alpha, N)
    x = -apply_A_alpha(alpha, zstar)
    frag = Fragment()
    anchor_inf = "coupling infimum of (-Az*, z*) over gra T is <-Az*, z*>"
    anchor_dist = "z* is not in the closure of ran T"
    brackets_zero = all(bracket(x, zstar, a, astar) == 0 for a, astar in g.points)
    skew = is_skew_on_span(g)
    frag.check("bracket vanishes on kernel basis (count of nonzero)",
               sum(bracket(x, zstar, a, astar) != 0 for a, astar in g.points), "=", 0, anchor_inf)
    inf_value = pair(x, zstar) if (brackets_zero and skew) else -math.inf
    frag.check("inf <-Az*-a, z*-a*> over span", inf_value, "=", -s * s, anchor_inf)
    frag.check("inf is finite", inf_value, ">", -math.inf, anchor_inf)

    basis = kernel_basis(alpha, N)
    res = l1_distance_to_span(zstar.to_list(N), [v.to_list(N) for v in basis])
    if res.status != "optimal":
        raise AssertionError(f"distance LP ended {res.status}")
    oracle = abs(s) / max(abs(alpha(n)) for n in range(1, N + 1))
    frag.check("l1 distance from z* to truncated range", res.value, "=", oracle, anchor_dist)
    frag.check("distance is positive", res.value, ">", 0, anchor_dist)
    frag.data.update({"inf": inf_value, "distance": res.value, "coefficients": res.x})
    frag.notes.append(f"alpha={alpha.name}, N={N}: range of the truncated T is the kernel span; "
                      f"distance oracle |<alpha,z*>| / max_n<=N |alpha_n|")
    return frag


@dataclass(frozen=True)
class AdjointWitness:
    first: tuple[Vec, FiniteVec]
    second: tuple[Vec, FiniteVec]
    product: Fraction


def _in_adjoint_graph(alpha: AlphaSpec, xb: Vec, xs: FiniteVec) -> bool:
    n = max(xs.max_index, 1) + 2
    return all(pair(apply_S_alpha(alpha, v), xs) + pair(v, xb) == 0 for v in kernel_basis(alpha, n))


def adjoint_nonmono_witness(alpha: AlphaSpec, xstar: FiniteVec | None = None,
                            r1: object | None = None, r2: object = 0) -> AdjointWitness:
    """Two adjoint-graph points with a negative monotonicity product.

    Points ``(S x* + r1 alpha, x*)`` and ``(r2 alpha, 0)``; their product is
    ``(r1 - r2) <alpha, x*>`` since ``S`` is skew.  By default ``x* = e_1`` and
    ``r1 = -sign<alpha, x*>``, ``r2 = 0``.
    """
    xstar = FiniteVec.basis(1) if xstar is None else xstar
    s = alpha_pair(alpha, xstar)
    if r1 is None:
        if s == 0:
            raise PreconditionError("<alpha, x*> = 0: the product vanishes for every r")
        r1 = -1 if s > 0 else 1
    r1, r2 = as_rational(r1), as_rational(r2)
    av = alpha.as_vec()
    p1 = (apply_S_alpha(alpha, xstar) + av * r1, xstar)
    p2 = (av * r2, FiniteVec.zero())
    for xb, xs in (p1, p2):
        if not _in_adjoint_graph(alpha, xb, xs):
            raise AssertionError("witness point is not in the adjoint graph")
    product = pair(p1[0] - p2[0], p1[1] - p2[1])
    return AdjointWitness(p1, p2, product)


def quadratic_gap(a) -> Fraction:
    """``min_t t^2 - a t + 1 = 1 - a^2/4``."""
    a = as_rational(a)
    return 1 - a * a / 4


def quadratic_grid_min(a, step=Fraction(1, 1000), lo=-3, hi=3) -> tuple[Fraction, Fraction]:
    """Exact minimum of ``t^2 - a t + 1`` over ``t = lo, lo+step, ..., hi``; returns ``(value, t)``."""
    a, step, lo, hi = as_rational(a), as_rational(step), as_rational(lo), as_rational(hi)
    if step <= 0 or hi < lo:
        raise PreconditionError("need step > 0 and lo <= hi")
    best = None
    k = 0
    while lo + k * step <= hi:
        t = lo + k * step
        v = t * t - a * t + 1
        if best is None or v < best[0]:
            best = (v, t)
        k += 1
    return best


def nonuniqueness_product(a1, a2, pairing_val) -> Fraction:
    """``(a1 - a2)(1/a1 - 1/a2) * pairing_val``; negative whenever ``0 < a1 < a2 < 2``."""
    a1, a2, pv = as_rational(a1), as_rational(a2), as_rational(pairing_val)
    if not 0 < a1 < a2 < 2:
        raise PreconditionError("need 0 < a1 < a2 < 2")
    if pv < 1:
        raise PreconditionError("need pairing_val >= 1")
    return (a1 - a2) * (1 / a1 - 1 / a2) * pv


def _attaining_index(w: EventualVec) -> int:
    n = norm_sup(w)
    for k in range(1, w.horizon + 1):
        if abs(w[k]) == n:
            return k
    return w.horizon + 1  # only the constant tail attains; its first index


def sum_ni_witness(alpha: AlphaSpec, x0star: FiniteVec, N: int, lam=1) -> Fragment:
    """Strict conjugate inequality behind the NI failure of ``T_alpha + lam J``.

    With ``f = (lam/2)||.||^2`` and ``w = A* x0*``, the norming functional
    ``y0* = lam ||w|| sign(w_m) e_m`` at the first attaining coordinate ``m``
    satisfies ``f**(w) + f*(y0*) = <w, y0*>``.  Setting ``z0* = y0* + x0*``
    the same left side falls short of ``<w, z0*>`` by ``<alpha, x0*>^2``.
    """
    lam = as_rational(lam)
    if lam <= 0:
        raise PreconditionError("lam must be positive")
    s = alpha_pair(alpha, x0star)
    if s == 0:
        raise PreconditionError("<alpha, x0*> = 0: eps0 vanishes, no strict inequality")
    w = adjoint_A_alpha(alpha, x0star)
    m = _attaining_index(w)
    if m > N:
        raise PreconditionError(f"sup |A* x0*| is first attained at index {m} > N={N}; "
                                f"any index >= {m} attains it, raise N to materialize one")
    if x0star.max_index > N:
        raise PreconditionError(f"support of x0* reaches {x0star.max_index}, beyond N={N}")
    nw = norm_sup(w)
    sign = 1 if w[m] > 0 else -1
    y0 = FiniteVec.basis(m, lam * nw * sign)
    z0 = y0 + x0star
    f_bidual = scaled(lam, HALF_DUAL_SUP_SQ)
    f_conj = scaled(1 / lam, HALF_L1_SQ)
    fw = eval_fn(f_bidual, w)
    fy = eval_fn(f_conj, z0 - x0star)
    lhs = fw + fy
    frag = Fragment()
    anchor = "f**(A*x0*) + f*(z0* - x0*) < <A*x0*, z0*> for T + lam J"
    frag.check("f**(w) + f*(y0*) = <w, y0*>", lhs, "=", pair(w, y0), "y0* is a subgradient of f** at A*x0*")
    frag.check("f**(w) + f*(z0*-x0*) < <w, z0*>", lhs, "<", pair(w, z0), anchor)
    frag.check("margin = <alpha, x0*>^2 = 2 eps0", pair(w, z0) - lhs, "=", s * s, anchor)
    frag.data.update({"w": w, "m": m, "y0": y0, "z0": z0, "eps0": s * s / 2})
    frag.notes.append(f"w = A*x0* attains its sup-norm {nw} first at index {m}; "
                      f"f = ({lam}/2)||.||^2, f* = (1/(2*{lam}))||.||_1^2")
    return frag
