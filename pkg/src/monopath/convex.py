"""Stock convex functions on c0, l1 and l-infinity, with a closed conjugate table.

Conjugates are looked up, never computed numerically: every inequality that
the counterexamples hinge on is an exact comparison between table values.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .vectors import (EventualVec, Extended, FiniteVec, Vec, as_rational, format_rational,
                      norm_l1, norm_sup, pair)

KINDS = ("SupNorm", "L1Norm", "HalfSupNormSq", "HalfL1NormSq", "IndicatorUnitBallL1",
         "HalfDualSupSq", "Scaled")

_CONJUGATE = {
    "SupNorm": "IndicatorUnitBallL1",
    "IndicatorUnitBallL1": "SupNorm",  # bidual: sup-norm on l-infinity
    "HalfSupNormSq": "HalfL1NormSq",
    "HalfL1NormSq": "HalfDualSupSq",
}
_QUADRATIC = {"HalfSupNormSq", "HalfL1NormSq", "HalfDualSupSq"}


@dataclass(frozen=True)
class ConvexFnTag:
    kind: str
    lam: Fraction | None = None
    inner: "ConvexFnTag | None" = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown function kind {self.kind!r}")
        if self.kind == "Scaled":
            lam = as_rational(self.lam)
            if lam <= 0:
                raise PreconditionError("Scaled needs lambda > 0")
            if self.inner is None:
                raise PreconditionError("Scaled needs an inner function")
            object.__setattr__(self, "lam", lam)
        elif self.lam is not None or self.inner is not None:
            raise PreconditionError(f"{self.kind} takes no parameters")

    @property
    def name(self) -> str:
        if self.kind == "Scaled":
            return f"Scaled({format_rational(self.lam)},{self.inner.name})"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "ConvexFnTag":
        text = text.strip()
        m = re.fullmatch(r"Scaled\(\s*([^,]+?)\s*,\s*(.+)\)", text)
        if m:
            return cls("Scaled", Fraction(m.group(1)), cls.parse(m.group(2)))
        return cls(text)

    def __repr__(self):
        return f"ConvexFnTag({self.name!r})"


SUP_NORM = ConvexFnTag("SupNorm")
L1_NORM = ConvexFnTag("L1Norm")
HALF_SUP_SQ = ConvexFnTag("HalfSupNormSq")
HALF_L1_SQ = ConvexFnTag("HalfL1NormSq")
INDICATOR_L1_BALL = ConvexFnTag("IndicatorUnitBallL1")
HALF_DUAL_SUP_SQ = ConvexFnTag("HalfDualSupSq")


def scaled(lam, inner: ConvexFnTag) -> ConvexFnTag:
    return ConvexFnTag("Scaled", as_rational(lam), inner)


def _as_finite(tag: ConvexFnTag, x: Vec) -> FiniteVec:
    if isinstance(x, FiniteVec):
        return x
    if isinstance(x, EventualVec) and x.limit == 0:
        return x.to_finite()
    raise PreconditionError(f"{tag.name} is defined on finitely supported sequences only")


def eval_fn(tag: ConvexFnTag, x: Vec) -> Extended:
    """Exact value of the tagged function at ``x`` (``math.inf`` off the domain)."""
    kind = tag.kind
    if kind == "Scaled":
        value = eval_fn(tag.inner, x)
        return value if value == math.inf else tag.lam * value
    if kind in ("SupNorm", "HalfDualSupSq"):
        n = norm_sup(x)
        return n if kind == "SupNorm" else n * n / 2
    if kind == "HalfSupNormSq":
        n = norm_sup(_as_finite(tag, x))
        return n * n / 2
    x = _as_finite(tag, x)
    n = norm_l1(x)
    if kind == "L1Norm":
        return n
    if kind == "HalfL1NormSq":
        return n * n / 2
    return Fraction(0) if n <= 1 else math.inf  # IndicatorUnitBallL1


def conj_tag(tag: ConvexFnTag) -> ConvexFnTag:
    """Fenchel conjugate from the closed table.

    ``(lam f)* = lam f*(./lam)``; for the quadratic kinds that is
    ``(1/lam) f*``, the only scaled case the table covers.
    """
    if tag.kind == "Scaled":
        if tag.inner.kind not in _QUADRATIC:
            raise PreconditionError(f"conjugate of {tag.name} is outside the table")
        return scaled(1 / tag.lam, conj_tag(tag.inner))
    try:
        return ConvexFnTag(_CONJUGATE[tag.kind])
    except KeyError:
        raise PreconditionError(f"conjugate of {tag.name} is outside the table") from None


class ProductFunction:
    """``(u, v) -> first(u) + second(v)`` on a product space, e.g. ``f (+) f*``."""

    def __init__(self, first: ConvexFnTag, second: ConvexFnTag):
        self.first = first
        self.second = second

    def __call__(self, u: Vec, v: Vec) -> Extended:
        return eval_fn(self.first, u) + eval_fn(self.second, v)

    def conjugate(self) -> "ProductFunction":
        """``(f (+) g)* = f* (+) g*``, evaluated at ``(u*, v*)``."""
        return ProductFunction(conj_tag(self.first), conj_tag(self.second))

    @property
    def name(self) -> str:
        return f"{self.first.name} (+) {self.second.name}"

    def __repr__(self):
        return f"ProductFunction({self.name!r})"


def oplus(fx: ConvexFnTag, gxs: ConvexFnTag) -> ProductFunction:
    return ProductFunction(fx, gxs)


def fenchel_young_gap(tag: ConvexFnTag, x: Vec, xstar: Vec) -> Extended:
    """``f(x) + f*(x*) - <x, x*>``; nonnegative, zero exactly on the graph of df."""
    fx = eval_fn(tag, x)
    if fx == math.inf:
        raise PreconditionError(f"x is outside dom {tag.name}")
    fs = eval_fn(conj_tag(tag), xstar)
    if fs == math.inf:
        return math.inf
    return fx + fs - pair(x, xstar)


def eps_subdiff_test(tag: ConvexFnTag, x: Vec, xstar: Vec, eps) -> bool:
    """Is ``x*`` in the eps-subdifferential of ``f`` at ``x``?

    Decided through the conjugate: ``f(x) + f*(x*) <= <x, x*> + eps``.
    """
    eps = as_rational(eps)
    if eps < 0:
        raise PreconditionError("eps must be nonnegative")
    return fenchel_young_gap(tag, x, xstar) <= eps
