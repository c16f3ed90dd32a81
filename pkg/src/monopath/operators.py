"""The operators A_alpha, P_alpha, S_alpha, Gossez's G, and their graphs.

For ``x*`` in l1,

    (A_alpha x*)_n = alpha_n^2 x*_n + 2 sum_{i>n} alpha_n alpha_i x*_i

with symmetric part ``P_alpha x* = <alpha, x*> alpha`` and skew part

    (S_alpha x*)_n = sum_{i>n} alpha_n alpha_i x*_i - sum_{i<n} alpha_n alpha_i x*_i.

``T_alpha`` is the skew operator on c0 with graph
``{(-A_alpha x*, x*) : <alpha, x*> = 0}``.  Graphs are represented by finite
spanning samples (:class:`GraphSample`); downstream checks that are linear in
a graph point extend from the sample to its span.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .convex import ConvexFnTag
from .errors import PreconditionError
from .linalg import rank, solve, to_matrix, transpose
from .vectors import (E, AlphaSpec, EventualVec, FiniteVec, Vec, as_rational, kernel_basis,
                      norm_l1, norm_sup, pair)

__all__ = [
    "alpha_pair",
    "apply_A_alpha",
    "apply_P_alpha",
    "apply_S_alpha",
    "apply_G",
    "adjoint_A_alpha",
    "Generator",
    "GraphSample",
    "graph_T_alpha",
    "graph_T_star",
    "SupNormSubdiff",
    "subdiff_supnorm",
    "duality_map_halfsq",
    "graph_T_plus_subdiff",
    "dual_gossez_coeffs",
    "dual_gossez_plus_rank1",
    "range_coefficients",
    "schauder_skew_replay",
    "LinearMap",
    "transport_graph",
]


def alpha_pair(alpha: AlphaSpec, xstar: FiniteVec) -> Fraction:
    """``<alpha, x*>``."""
    return sum((alpha(n) * v for n, v in xstar.items()), Fraction(0))


def apply_A_alpha(alpha: AlphaSpec, xstar: FiniteVec) -> FiniteVec:
    m = xstar.max_index
    x = xstar.to_list(m)
    out = {}
    later = Fraction(0)  # sum_{i>n} alpha_i x*_i
    for n in range(m, 0, -1):
        a = alpha(n)
        out[n] = a * a * x[n - 1] + 2 * a * later
        later += a * x[n - 1]
    return FiniteVec(out)


def apply_P_alpha(alpha: AlphaSpec, xstar: FiniteVec) -> EventualVec:
    return EventualVec((), alpha_pair(alpha, xstar), alpha)


def apply_S_alpha(alpha: AlphaSpec, xstar: FiniteVec) -> EventualVec:
    m = xstar.max_index
    x = xstar.to_list(m)
    weighted = [alpha(n) * x[n - 1] for n in range(1, m + 1)]
    total = sum(weighted, Fraction(0))
    prefix = []
    earlier = Fraction(0)  # sum_{i<n} alpha_i x*_i
    for n in range(1, m + 1):
        later = total - earlier - weighted[n - 1]
        prefix.append(alpha(n) * (later - earlier))
        earlier += weighted[n - 1]
    # past the support only the "i < n" sum survives: -<alpha, x*> alpha_n
    return EventualVec(prefix, -total, alpha)


def apply_G(xstar: FiniteVec) -> EventualVec:
    """Gossez's operator, ``(G x*)_n = sum_{i>n} x*_i - sum_{i<n} x*_i``."""
    m = xstar.max_index
    prefix = [sum((v for i, v in xstar.items() if i > n), Fraction(0))
              - sum((v for i, v in xstar.items() if i < n), Fraction(0))
              for n in range(1, m + 1)]
    return EventualVec(prefix, -sum((v for _, v in xstar.items()), Fraction(0)), E)


def adjoint_A_alpha(alpha: AlphaSpec, xstar: FiniteVec) -> EventualVec:
    """``A* x* = P x* - S x*`` (restricted to l1, landing in l-infinity)."""
    return apply_P_alpha(alpha, xstar) - apply_S_alpha(alpha, xstar)


@dataclass(frozen=True)
class Generator:
    """Where a graph sample came from."""

    operator: str
    alpha: AlphaSpec | None = None
    N: int | None = None
    f_tag: ConvexFnTag | None = None

    def to_json(self) -> dict:
        return {
            "operator": self.operator,
            "alpha": self.alpha.name if self.alpha is not None else None,
            "N": self.N,
            "f_tag": self.f_tag.name if self.f_tag is not None else None,
        }


@dataclass(frozen=True)
class GraphSample:
    """Finite list of graph points ``(x, x*)``.

    ``linear`` marks samples that span a linear-subspace graph, which lets
    bracket computations be certified on the span from the points alone.
    """

    points: tuple
    generator: Generator
    linear: bool = False

    def __post_init__(self):
        pts = tuple((p[0], p[1]) for p in self.points)
        if len(set(pts)) != len(pts):
            raise PreconditionError("graph sample points must be distinct")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def scaled(self, scales: Iterable[object]) -> "GraphSample":
        """All points ``t (a, a*)`` for ``t`` in ``scales`` (duplicates dropped)."""
        seen = {}
        for t in scales:
            t = as_rational(t)
            for a, astar in self.points:
                seen.setdefault((a * t, astar * t), None)
        return GraphSample(tuple(seen), self.generator, self.linear)


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise AssertionError(message)


def graph_T_alpha(alpha: AlphaSpec, N: int, pairwise_sums: bool = False) -> GraphSample:
    """Points ``(-A_alpha v, v)`` for ``v`` in the kernel basis of ``<alpha, .>``.

    Every first component is finitely supported: on the kernel the tail of
    ``S_alpha v`` vanishes.
    """
    basis = kernel_basis(alpha, N)
    vs = list(basis)
    if pairwise_sums:
        vs += [basis[i] + basis[j] for i in range(len(basis)) for j in range(i + 1, len(basis))]
    points = []
    for v in vs:
        a = -apply_A_alpha(alpha, v)
        _check(alpha_pair(alpha, v) == 0, "kernel vector not orthogonal to alpha")
        _check(a == -apply_S_alpha(alpha, v), "-A v and -S v disagree on the kernel")
        points.append((a, v))
    return GraphSample(tuple(points), Generator("T_alpha", alpha, N), linear=True)


def graph_T_star(alpha: AlphaSpec, N: int, r_values: Sequence[object] = (0,),
                 include_zero: bool = True) -> GraphSample:
    """Points ``(S x* + r alpha, x*)`` of the adjoint graph.

    ``x*`` runs over ``0`` (if ``include_zero``) and ``e_1..e_N``; ``r`` over
    ``r_values``.  Each point is checked against the annihilator definition
    ``<S v, x*> + <v, x**> = 0`` for every kernel basis vector ``v``.
    """
    kernel = kernel_basis(alpha, max(N, 2))
    xstars = ([FiniteVec.zero()] if include_zero else []) + [FiniteVec.basis(k) for k in range(1, N + 1)]
    points = []
    for xs in xstars:
        s = apply_S_alpha(alpha, xs)
        for r in r_values:
            xb = s + alpha.as_vec() * as_rational(r)
            for v in kernel:
                _check(pair(apply_S_alpha(alpha, v), xs) + pair(v, xb) == 0,
                       "point fails the adjoint annihilator condition")
            points.append((xb, xs))
    return GraphSample(tuple(points), Generator("T_alpha_star", alpha, N))


@dataclass(frozen=True)
class SupNormSubdiff:
    """``scale * (subdifferential of the sup-norm at x)`` on c0.

    With ``scale = ||x||`` this is the duality map, the subdifferential of
    ``(1/2)||.||^2``.
    """

    x: FiniteVec
    scale: Fraction = Fraction(1)

    def contains(self, xstar: FiniteVec) -> bool:
        if not self.x:
            return norm_l1(xstar) <= self.scale
        n = norm_sup(self.x)
        return norm_l1(xstar) == self.scale and pair(self.x, xstar) == self.scale * n

    @property
    def attaining(self) -> tuple[int, ...]:
        n = norm_sup(self.x)
        return tuple(i for i, v in self.x.items() if abs(v) == n)

    def vertices(self, N: int | None = None) -> list[FiniteVec]:
        """Signed coordinate functionals generating the set.

        At ``x = 0`` the set is a whole l1 ball; its vertices are listed for
        coordinates ``1..N``.
        """
        if self.scale == 0:
            return [FiniteVec.zero()]
        if not self.x:
            if N is None:
                raise PreconditionError("vertices of the subdifferential at 0 need N")
            out = []
            for k in range(1, N + 1):
                out += [FiniteVec.basis(k, self.scale), FiniteVec.basis(k, -self.scale)]
            return out
        return [FiniteVec.basis(k, self.scale if self.x[k] > 0 else -self.scale)
                for k in self.attaining]


def subdiff_supnorm(x: FiniteVec) -> SupNormSubdiff:
    return SupNormSubdiff(x, Fraction(1))


def duality_map_halfsq(x: FiniteVec) -> SupNormSubdiff:
    return SupNormSubdiff(x, norm_sup(x))


def _subdiff_for(tag: ConvexFnTag, x: FiniteVec) -> SupNormSubdiff:
    if tag.kind == "SupNorm":
        return subdiff_supnorm(x)
    if tag.kind == "HalfSupNormSq":
        return duality_map_halfsq(x)
    if tag.kind == "Scaled" and tag.inner.kind in ("SupNorm", "HalfSupNormSq"):
        inner = _subdiff_for(tag.inner, x)
        return SupNormSubdiff(x, inner.scale * tag.lam)
    raise PreconditionError(f"no subdifferential oracle for {tag.name}")


def graph_T_plus_subdiff(alpha: AlphaSpec, N: int, f_tag: ConvexFnTag) -> GraphSample:
    """Points ``(x, x* + s*)`` with ``(x, x*)`` in the T_alpha sample (plus the
    origin) and ``s*`` a vertex of ``df(x)``."""
    base = [(FiniteVec.zero(), FiniteVec.zero())] + list(graph_T_alpha(alpha, N).points)
    points = []
    for x, xstar in base:
        sub = _subdiff_for(f_tag, x)
        for s in sub.vertices(N):
            _check(sub.contains(s), "vertex outside the subdifferential")
            points.append((x, xstar + s))
    return GraphSample(tuple(points), Generator("T_alpha+df", alpha, N, f_tag))


def dual_gossez_coeffs(ystar: FiniteVec, N: int | None = None) -> EventualVec:
    """Basis coefficients ``sum_{i>n} y_i - sum_{i<n} y_i`` of the image of ``y*``.

    ``y_i = <e_i, y*>`` are the coordinates of ``y*``; the coefficient
    sequence tends to ``-<e, y*>``.
    """
    if N is not None and ystar.max_index > N:
        raise PreconditionError(f"support of y* reaches {ystar.max_index}, beyond N={N}")
    m = ystar.max_index
    y = ystar.to_list(m)
    total = sum(y, Fraction(0))
    prefix = []
    earlier = Fraction(0)
    for n in range(1, m + 1):
        later = total - earlier - y[n - 1]
        prefix.append(later - earlier)
        earlier += y[n - 1]
    return EventualVec(prefix, -total, E)


def dual_gossez_plus_rank1(ystar: FiniteVec, N: int | None = None) -> EventualVec:
    """Coefficients of the image of ``y*`` under the Gossez part plus ``<., e> e``."""
    s = sum((v for _, v in ystar.items()), Fraction(0))
    return dual_gossez_coeffs(ystar, N) + E.as_vec() * s


def range_coefficients(ystar: FiniteVec) -> FiniteVec:
    """Closed form ``c_k = 2 sum_{i>k} y_i + y_k``; always finitely supported."""
    m = ystar.max_index
    y = ystar.to_list(m)
    out = {}
    later = Fraction(0)
    for k in range(m, 0, -1):
        out[k] = 2 * later + y[k - 1]
        later += y[k - 1]
    return FiniteVec(out)


def schauder_skew_replay(ystar: FiniteVec, k: int) -> Fraction:
    """``-sum_{n<=k} (sum_{i>=n+1} y_i + sum_{i>=n} y_i) y_n``.

    This is the coefficient pairing of the negated Gossez formula after
    rewriting ``sum_{i<n} y_i`` as ``-sum_{i>=n} y_i`` (valid when the total
    ``s`` vanishes).  It telescopes to ``-(s^2 - (sum_{i>k} y_i)^2)``, hence
    to ``-s^2`` once ``k`` covers the support.
    """
    y = ystar.to_list(max(k, ystar.max_index))
    tails = [Fraction(0)] * (len(y) + 2)
    for n in range(len(y), 0, -1):
        tails[n] = tails[n + 1] + y[n - 1]
    return -sum(((tails[n + 1] + tails[n]) * y[n - 1] for n in range(1, k + 1)), Fraction(0))


class LinearMap:
    """Rational matrix ``L: R^n -> R^m`` (rows are output coordinates)."""

    def __init__(self, rows: Sequence[Sequence[object]], injective: bool = True):
        self.matrix = to_matrix(rows)
        if not self.matrix or not self.matrix[0]:
            raise PreconditionError("empty matrix")
        self.n_out = len(self.matrix)
        self.n_in = len(self.matrix[0])
        self.injective = injective
        if injective and rank(self.matrix) != self.n_in:
            raise PreconditionError("columns are not linearly independent")

    def apply(self, y: FiniteVec) -> FiniteVec:
        vals = y.to_list(self.n_in)
        return FiniteVec.from_list(sum((r * v for r, v in zip(row, vals)), Fraction(0))
                                   for row in self.matrix)

    def apply_transpose(self, w: FiniteVec) -> FiniteVec:
        vals = w.to_list(self.n_out)
        return FiniteVec.from_list(sum((r * v for r, v in zip(col, vals)), Fraction(0))
                                   for col in transpose(self.matrix))

    def adjoint_preimage(self, ystar: FiniteVec) -> FiniteVec:
        """A ``w*`` with ``L^T w* = y*``: the basic solution on the first
        linearly independent rows of ``L`` (support at most ``n``)."""
        if ystar.max_index > self.n_in:
            raise PreconditionError("y* lies outside the input dimension")
        w = solve(transpose(self.matrix), ystar.to_list(self.n_in))
        return FiniteVec.from_list(w)


def transport_graph(L: LinearMap, g: GraphSample) -> GraphSample:
    """Graph of ``(L*)^{-1} T L^{-1}``: points ``(L y, w*)`` with ``L^T w* = y*``."""
    if not L.injective:
        raise PreconditionError("transport needs an injective L")
    points = []
    for y, ystar in g.points:
        if not isinstance(y, FiniteVec) or y.max_index > L.n_in:
            raise PreconditionError("graph point lies outside the input dimension of L")
        w = L.adjoint_preimage(ystar)
        _check(L.apply_transpose(w) == ystar, "adjoint system solved inexactly")
        points.append((L.apply(y), w))
    gen = Generator(f"transport({g.generator.operator})", g.generator.alpha, L.n_out, g.generator.f_tag)
    return GraphSample(tuple(points), gen, g.linear)
