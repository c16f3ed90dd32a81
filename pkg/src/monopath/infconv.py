"""Partial inf-convolutions with the Fitzpatrick indicator, and the BC-failure runners.

``F_T`` is the indicator of ``C = {(-A x*, x*)}``, so an inf-convolution with
it in either variable collapses to an exact linear solve.  A generic grid
version, used only to check the conjugate formulas for partial
inf-convolutions, lives in :func:`dual_formula_bruteforce`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .convex import (HALF_DUAL_SUP_SQ, HALF_L1_SQ, INDICATOR_L1_BALL, SUP_NORM, ConvexFnTag,
                     conj_tag, eval_fn)
from .errors import PreconditionError
from .operators import adjoint_A_alpha, apply_A_alpha
from .report import Fragment
from .vectors import AlphaSpec, Extended, FiniteVec, Vec, as_rational, pair

_X_SIDE = ("SupNorm", "HalfSupNormSq")


def _check_tag(tag: ConvexFnTag) -> ConvexFnTag:
    inner = tag.inner if tag.kind == "Scaled" else tag
    if inner.kind not in _X_SIDE:
        raise PreconditionError(f"{tag.name} is not a function on c0 from the table")
    return conj_tag(tag)


def box1_structured(alpha: AlphaSpec, f_tag: ConvexFnTag, x: FiniteVec, xstar: FiniteVec) -> Extended:
    """``(F_T box_1 (f (+) f*))(x, x*) = f(x + A x*) + f*(x*)``.

    ``F_T(u, x*)`` is finite only at ``u = -A x*``.
    """
    fstar = _check_tag(f_tag)
    return eval_fn(f_tag, x + apply_A_alpha(alpha, xstar)) + eval_fn(fstar, xstar)


def box2_structured(alpha: AlphaSpec, f_tag: ConvexFnTag, x: FiniteVec, xstar: FiniteVec) -> Extended:
    """``(F_T box_2 (f (+) f*))(x, x*) = f(x) + min {f*(x* - w) : -A w = x}``.

    Let ``M`` cover the supports and the prefix of ``alpha``.  Beyond ``M``
    alpha is a nonzero constant and ``A w = 0`` there forces ``w = 0``.  On
    ``[1..M]`` the system is upper triangular: coordinates with
    ``alpha_n != 0`` are fixed by back-substitution, while coordinates with
    ``alpha_n = 0`` do not enter ``A w`` at all and are set to ``x*_n``
    (every table ``f*`` is nondecreasing in ``||.||_1``).  Returns ``inf``
    when no ``w`` exists.
    """
    fstar = _check_tag(f_tag)
    m = max(x.max_index, xstar.max_index, alpha.horizon, 1)
    a = [alpha(n) for n in range(1, m + 1)]
    target = [-v for v in x.to_list(m)]
    w = [Fraction(0)] * m
    later = Fraction(0)  # sum_{i>n} alpha_i w_i
    for n in range(m, 0, -1):
        an = a[n - 1]
        if an == 0:
            if target[n - 1] != 0:
                return math.inf
            w[n - 1] = xstar[n]
            continue
        w[n - 1] = (target[n - 1] / an - 2 * later) / an
        later += an * w[n - 1]
    w_vec = FiniteVec.from_list(w)
    if apply_A_alpha(alpha, w_vec) != -x:
        raise AssertionError("back-substitution produced a wrong solution")
    return eval_fn(f_tag, x) + eval_fn(fstar, xstar - w_vec)


# ---------------------------------------------------------------------------
# brute-force dual formulas


@dataclass(frozen=True)
class QuadSpec:
    """``F(x, y) = a x^2 + b y^2`` on R x R, plus indicators of ``x = 0`` / ``y = 0``."""

    a: Fraction
    b: Fraction
    x_zero: bool = False
    y_zero: bool = False

    def __post_init__(self):
        a, b = as_rational(self.a), as_rational(self.b)
        if a < 0 or b < 0:
            raise PreconditionError("QuadSpec coefficients must be nonnegative")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __call__(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        val = float(self.a) * x ** 2 + float(self.b) * y ** 2
        if self.x_zero:
            val = np.where(np.abs(x) < 1e-12, val, np.inf)
        if self.y_zero:
            val = np.where(np.abs(y) < 1e-12, val, np.inf)
        return val

    @property
    def name(self) -> str:
        parts = [f"{c}{v}^2" for c, v in ((self.a, "x"), (self.b, "y")) if c]
        if self.x_zero:
            parts.append("i{x=0}")
        if self.y_zero:
            parts.append("i{y=0}")
        return " + ".join(parts) or "0"


DEFAULT_SPECS = (
    (QuadSpec(Fraction(1, 2), Fraction(1, 2)), QuadSpec(Fraction(1, 2), Fraction(1, 2))),
    (QuadSpec(Fraction(1, 2), Fraction(1, 2)), QuadSpec(0, 0, y_zero=True)),
    (QuadSpec(1, 1), QuadSpec(Fraction(1, 2), Fraction(1, 2))),
)

PRIMAL_STEP = Fraction(1, 48)
PRIMAL_RADIUS = Fraction(5, 2)
DUAL_STEP = Fraction(1, 24)
DUAL_RADIUS = Fraction(2)
TEST_POINTS = (-1.0, -0.5, 0.0, 0.5, 1.0)


def _grid(step: Fraction, radius: Fraction) -> np.ndarray:
    k = int(radius / step)
    return np.arange(-k, k + 1) * float(step)


def _grid_sup(values: np.ndarray) -> float:
    """``max`` over a 2-D grid of objective values, or ``inf`` when the
    maximum is reached only on the boundary (sup lies off the grid)."""
    best = values.max()
    if not np.isfinite(best):
        return best
    interior = values[1:-1, 1:-1].max() if min(values.shape) > 2 else -np.inf
    return best if interior >= best - 1e-12 else np.inf


def _conjugate(values: np.ndarray, X: np.ndarray, Y: np.ndarray, xs: float, ys: float) -> float:
    with np.errstate(invalid="ignore"):
        obj = xs * X + ys * Y - values
    return _grid_sup(np.where(np.isfinite(values), obj, -np.inf))


def _conjugate_line(values: np.ndarray, X: np.ndarray, Y: np.ndarray, free: np.ndarray,
                    fixed: float, free_axis: int, chunk: int = 32) -> np.ndarray:
    """Grid conjugate at ``(t, fixed)`` (``free_axis=0``) or ``(fixed, t)`` for all ``t`` in ``free``."""
    base = np.where(np.isfinite(values), -values + fixed * (Y if free_axis == 0 else X), -np.inf)
    lin = X if free_axis == 0 else Y
    out = np.empty(len(free))
    for start in range(0, len(free), chunk):
        t = free[start:start + chunk, None, None]
        obj = t * lin[None] + base[None]
        best = obj.max(axis=(1, 2))
        interior = obj[:, 1:-1, 1:-1].max(axis=(1, 2))
        out[start:start + chunk] = np.where(interior >= best - 1e-12, best, np.inf)
    return out


@dataclass(frozen=True)
class DualFormulaResult:
    kind: str
    max_abs_diff: float
    inf_mismatches: int
    local_failures: int
    qualification: bool
    rows: tuple


def _box_values(F1: QuadSpec, F2: QuadSpec, kind: str, P: np.ndarray) -> np.ndarray:
    """``(F1 box F2)`` on the primal grid ``P x P``, inner inf over ``P``."""
    out = np.empty((len(P), len(P)))
    Y, V = np.broadcast_arrays(P[:, None], P[None, :])
    for i, x in enumerate(P):
        X = np.full_like(Y, x)
        if kind == "box2":
            vals = F1(X, Y - V) + F2(X, V)
        else:  # V plays the split variable u of the first coordinate
            vals = F1(V, Y) + F2(X - V, Y)
        out[i] = vals.min(axis=1)
    return out


def _qualification(F1: QuadSpec, F2: QuadSpec, kind: str) -> bool:
    """Is the cone over ``proj dom F1 - proj dom F2`` a closed subspace?

    In dimension 1 each projection is ``{0}`` or ``R``, so the cone is
    ``{0}`` or ``R``; the flag is computed rather than assumed so a wider
    family of QuadSpecs would surface a failure.
    """
    flag = "x_zero" if kind == "box2" else "y_zero"
    dims = [0 if getattr(F, flag) else 1 for F in (F1, F2)]
    cone_dim = max(dims)
    return cone_dim in (0, 1)


def dual_formula_bruteforce(F1: QuadSpec, F2: QuadSpec, kind: str = "box2",
                            tol: float = 1e-6) -> tuple[Fragment, DualFormulaResult]:
    """Compare ``(F1 box F2)*`` with the min-formula on a grid, in dimension 1.

    ``box2`` (convolution in the dual variable) pairs with
    ``min_u* F1*(x* - u*, y*) + F2*(u*, y*)``; ``box1`` with
    ``min_v* F1*(x*, v*) + F2*(x*, y* - v*)``.  Conjugates are grid sups on
    a primal grid of step 1/48; minimisers are searched on a dual grid of
    step 1/24.  For the quadratic specs every optimiser sits on these grids
    at the test points, so the comparison is tight up to float round-off.
    """
    if kind not in ("box1", "box2"):
        raise PreconditionError("kind must be 'box1' or 'box2'")
    P = _grid(PRIMAL_STEP, PRIMAL_RADIUS)
    D = _grid(DUAL_STEP, DUAL_RADIUS)
    X, Y = np.meshgrid(P, P, indexing="ij")
    H = _box_values(F1, F2, kind, P)
    F1v, F2v = F1(X, Y), F2(X, Y)
    # conjugates along the line the min-formula moves on; wide enough that
    # every test point minus every dual grid point is on it
    per = int(1 / DUAL_STEP)
    wide_k = int(DUAL_RADIUS * per) + per
    wide = np.arange(-wide_k, wide_k + 1) / per
    free_axis = 0 if kind == "box2" else 1
    tables = {}
    for t in TEST_POINTS:
        tables[1, t] = _conjugate_line(F1v, X, Y, wide, t, free_axis)
        tables[2, t] = _conjugate_line(F2v, X, Y, wide, t, free_axis)
    d_idx = np.arange(len(D)) - len(D) // 2  # D in units of the dual step

    rows = []
    max_diff = 0.0
    inf_mismatch = 0
    local_fail = 0
    for xs in TEST_POINTS:
        for ys in TEST_POINTS:
            lhs = _conjugate(H, X, Y, xs, ys)
            if kind == "box2":  # F1*(xs - u, ys) + F2*(u, ys)
                shift = round(xs * per)
                terms = tables[1, ys][wide_k + shift - d_idx] + tables[2, ys][wide_k + d_idx]
            else:  # F1*(xs, v) + F2*(xs, ys - v)
                shift = round(ys * per)
                terms = tables[1, xs][wide_k + d_idx] + tables[2, xs][wide_k + shift - d_idx]
            j = int(np.argmin(terms))
            rhs = float(terms[j])
            if np.isfinite(rhs):
                nbrs = [terms[k] for k in (j - 1, j + 1) if 0 <= k < len(terms)]
                if any(n < rhs - 1e-12 for n in nbrs) or j in (0, len(terms) - 1):
                    local_fail += 1
            if np.isfinite(lhs) != np.isfinite(rhs):
                inf_mismatch += 1
            elif np.isfinite(lhs):
                max_diff = max(max_diff, abs(lhs - rhs))
            rows.append((xs, ys, float(lhs), rhs, float(D[j])))
    cq = _qualification(F1, F2, kind)
    frag = Fragment()
    anchor = ("conjugate of a partial inf-convolution equals the min-formula of the conjugates"
              if kind == "box2" else
              "conjugate of a first-variable partial inf-convolution equals its min-formula")
    label = f"{kind} [{F1.name}] , [{F2.name}]"
    frag.check(f"{label}: max |lhs - rhs| on finite points", Fraction(max_diff), "≤",
               Fraction(tol), anchor)
    frag.check(f"{label}: finite/infinite disagreements", inf_mismatch, "=", 0, anchor)
    frag.check(f"{label}: minimiser beaten by a grid neighbour", local_fail, "=", 0,
               "minimum attained (local grid certificate)")
    frag.check(f"{label}: constraint qualification holds", int(cq), "=", 1,
               "cone over the domain-projection difference is a closed subspace")
    result = DualFormulaResult(kind, max_diff, inf_mismatch, local_fail, cq, tuple(rows))
    frag.data[f"{kind}:{F1.name}|{F2.name}"] = result
    return frag, result


# ---------------------------------------------------------------------------
# BC-failure runners


def bc_fail_a2(alpha: AlphaSpec, i0: int) -> Fragment:
    """``f = ||.||``: ``f*(v0*) + f**(v0 - A* v0*) < <v0, v0*>`` with
    ``v0* = e_i0`` and ``v0 = 3 ||alpha||^2 e_i0``."""
    ai = alpha(i0)
    if ai == 0:
        raise PreconditionError(f"alpha_{i0} = 0")
    na = alpha.sup_norm
    v0s = FiniteVec.basis(i0)
    v0 = FiniteVec.basis(i0, 3 * na * na)
    residual = v0 - adjoint_A_alpha(alpha, v0s)
    fs = eval_fn(INDICATOR_L1_BALL, v0s)
    fbb = eval_fn(SUP_NORM, residual)
    lhs = fs + fbb
    rhs = pair(v0, v0s)
    anchor = "F_T box_1 (||.|| (+) i_B) is not a BC-function: f*(v0*) + f**(v0 - A*v0*) < <v0, v0*>"
    frag = Fragment()
    frag.check("i_B(v0*)", fs, "=", 0, anchor)
    frag.check("||v0 - A*v0*||", fbb, "<", 3 * na * na, anchor)
    frag.check("f*(v0*) + f**(v0 - A*v0*) < <v0, v0*>", lhs, "<", rhs, anchor)
    frag.data.update({"lhs": lhs, "rhs": rhs, "margin": rhs - lhs, "residual": residual})
    frag.notes.append(f"alpha={alpha.name}, i0={i0}: margin {rhs - lhs}")
    return frag


def bc_fail_a4(alpha: AlphaSpec, i0: int) -> Fragment:
    """``f = (1/2)||.||^2`` with ``1/2 < alpha_i0^2`` and ``||alpha|| <= 1``:
    ``v1* = e_i0 / 2``, ``v1 = (1 + alpha_i0^2 / 2) e_i0``."""
    ai = alpha(i0)
    if not ai * ai > Fraction(1, 2):
        raise PreconditionError(f"need alpha_{i0}^2 > 1/2, got {ai * ai}")
    if alpha.sup_norm > 1:
        raise PreconditionError("need ||alpha|| <= 1")
    v1s = FiniteVec.basis(i0, Fraction(1, 2))
    v1 = FiniteVec.basis(i0, 1 + ai * ai / 2)
    residual = v1 - adjoint_A_alpha(alpha, v1s)
    fs = eval_fn(HALF_L1_SQ, v1s)
    fbb = eval_fn(HALF_DUAL_SUP_SQ, residual)
    lhs = fs + fbb
    rhs = pair(v1, v1s)
    anchor = "F_T box_1 ((1/2)||.||^2 (+) (1/2)||.||_1^2) is not a BC-function"
    frag = Fragment()
    frag.check("(1/2)||v1*||_1^2", fs, "=", Fraction(1, 8), anchor)
    residual_norm = eval_fn(SUP_NORM, residual)
    frag.check("||v1 - A*v1*||", residual_norm, "≤", 1, anchor)
    frag.check("f*(v1*) + f**(v1 - A*v1*) < <v1, v1*>", lhs, "<", rhs, anchor)
    frag.data.update({"lhs": lhs, "rhs": rhs, "margin": rhs - lhs, "residual_norm": residual_norm})
    frag.notes.append(f"alpha={alpha.name}, i0={i0}: {lhs} < {rhs}")
    return frag

