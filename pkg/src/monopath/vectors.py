"""Exact-rational sequences on c0, l1 and l-infinity, their pairing and norms.

Two concrete sequence types cover everything the operators produce:

* :class:`FiniteVec` -- finitely supported sequences (points of c0 and l1).
* :class:`EventualVec` -- a rational prefix followed by ``c * alpha_n``,
  where ``alpha`` is an :class:`AlphaSpec`.  Because every ``AlphaSpec`` has a
  constant tail, these are exactly the eventually constant sequences; they
  stand in for the l-infinity (bidual) points such as ``e = (1, 1, ...)``.

Indices are 1-based throughout, matching the usual sequence notation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import ConvergenceError, PreconditionError

Rational = Fraction
Extended = Union[Fraction, float]  # a Fraction or +/- math.inf

__all__ = [
    "Rational",
    "as_rational",
    "format_rational",
    "parse_rational",
    "FiniteVec",
    "EventualVec",
    "AlphaSpec",
    "E",
    "pair",
    "norm_l1",
    "norm_sup",
    "james_norm_sq",
    "james_chain",
    "james_dual_norm",
    "Bracket",
    "kernel_basis",
]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: silently importing binary rounding would defeat the
    point of exact checks.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_rational(value: Extended) -> str:
    if isinstance(value, float):
        if value == math.inf:
            return "inf"
        if value == -math.inf:
            return "-inf"
        raise TypeError("only infinite floats can be formatted")
    value = as_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Extended:
    text = text.strip()
    if text in ("inf", "+inf"):
        return math.inf
    if text == "-inf":
        return -math.inf
    return Fraction(text)


class FiniteVec:
    """Finitely supported rational sequence; immutable.

    >>> FiniteVec({1: 1, 3: Fraction(-1, 2)})
    FiniteVec({1: 1, 3: -1/2})
    """

    __slots__ = ("_items",)

    def __init__(self, entries: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        if isinstance(entries, Mapping):
            entries = entries.items()
        acc: dict[int, Fraction] = {}
        for index, value in entries:
            if isinstance(index, bool) or not isinstance(index, int) or index < 1:
                raise PreconditionError(f"indices are positive integers, got {index!r}")
            acc[index] = acc.get(index, Fraction(0)) + as_rational(value)
        self._items = tuple(sorted((i, v) for i, v in acc.items() if v != 0))

    @classmethod
    def from_list(cls, values: Iterable[object], start: int = 1) -> "FiniteVec":
        return cls((start + k, v) for k, v in enumerate(values))

    @classmethod
    def basis(cls, index: int, scale: object = 1) -> "FiniteVec":
        return cls({index: scale})

    @classmethod
    def zero(cls) -> "FiniteVec":
        return cls()

    def items(self) -> tuple[tuple[int, Fraction], ...]:
        return self._items

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self._items)

    @property
    def max_index(self) -> int:
        return self._items[-1][0] if self._items else 0

    def __getitem__(self, index: int) -> Fraction:
        for i, v in self._items:
            if i == index:
                return v
            if i > index:
                break
        return Fraction(0)

    def to_list(self, length: int) -> list[Fraction]:
        out = [Fraction(0)] * length
        for i, v in self._items:
            if i > length:
                raise PreconditionError(f"support index {i} exceeds length {length}")
            out[i - 1] = v
        return out

    def __bool__(self) -> bool:
        return bool(self._items)

    def __neg__(self) -> "FiniteVec":
        return FiniteVec((i, -v) for i, v in self._items)

    def __add__(self, other):
        if isinstance(other, FiniteVec):
            return FiniteVec(self._items + other._items)
        if isinstance(other, EventualVec):
            return other + self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (FiniteVec, EventualVec)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, EventualVec):
            return other + (-self)
        return NotImplemented

    def __mul__(self, scalar):
        if isinstance(scalar, (FiniteVec, EventualVec)):
            return NotImplemented
        s = as_rational(scalar)
        return FiniteVec((i, s * v) for i, v in self._items)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / as_rational(scalar))

    def __eq__(self, other):
        if isinstance(other, FiniteVec):
            return self._items == other._items
        if isinstance(other, EventualVec):
            return other == self
        return NotImplemented

    def __hash__(self):
        return hash(EventualVec.from_finite(self)._key())

    def __repr__(self):
        body = ", ".join(f"{i}: {format_rational(v)}" for i, v in self._items)
        return f"FiniteVec({{{body}}})"

    def to_json(self) -> dict[str, str]:
        return {str(i): format_rational(v) for i, v in self._items}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "FiniteVec":
        return cls((int(k), Fraction(v)) for k, v in data.items())


@dataclass(frozen=True)
class AlphaSpec:
    """Multiplier sequence ``alpha_n``: a rational prefix, then a constant tail.

    The tail must be nonzero so that ``alpha`` is not in c0.  The prefix is
    stored without trailing entries equal to the tail.
    """

    prefix: tuple = ()
    tail: Fraction = Fraction(1)

    def __post_init__(self):
        prefix = [as_rational(v) for v in self.prefix]
        tail = as_rational(self.tail)
        if tail == 0:
            raise PreconditionError("alpha needs a nonzero tail (limsup alpha_n != 0)")
        while prefix and prefix[-1] == tail:
            prefix.pop()
        object.__setattr__(self, "prefix", tuple(prefix))
        object.__setattr__(self, "tail", tail)

    def __call__(self, n: int) -> Fraction:
        if n < 1:
            raise PreconditionError(f"indices start at 1, got {n}")
        return self.prefix[n - 1] if n <= len(self.prefix) else self.tail

    @property
    def horizon(self) -> int:
        """Last index at which ``alpha`` may differ from its tail."""
        return len(self.prefix)

    @property
    def sup_norm(self) -> Fraction:
        return max([abs(v) for v in self.prefix] + [abs(self.tail)])

    @property
    def name(self) -> str:
        if not self.prefix and self.tail == 1:
            return "e"
        head = ",".join(format_rational(v) for v in self.prefix)
        return f"{head};{format_rational(self.tail)}"

    @classmethod
    def parse(cls, text: str) -> "AlphaSpec":
        """Parse ``"e"`` or ``"p1,p2,...;tail"`` (parentheses optional)."""
        text = text.strip()
        if text == "e":
            return E
        body = text.strip("()")
        if ";" not in body:
            raise PreconditionError(f"alpha must look like 'prefix;tail' or 'e', got {text!r}")
        head, tail = body.split(";", 1)
        prefix = tuple(Fraction(p.strip()) for p in head.split(",") if p.strip())
        return cls(prefix, Fraction(tail.strip()))

    def as_vec(self) -> "EventualVec":
        return EventualVec((), 1, self)

    def first_nonzero(self) -> int:
        for n, v in enumerate(self.prefix, start=1):
            if v != 0:
                return n
        return len(self.prefix) + 1

    def __repr__(self):
        return f"AlphaSpec({self.name!r})"


E = AlphaSpec((), Fraction(1))


class EventualVec:
    """Sequence equal to ``prefix[n]`` for ``n <= L`` and ``tail_coeff * alpha_n`` after.

    Equality is by sequence values, so the same sequence written over two
    different ``alpha`` compares equal.
    """

    __slots__ = ("prefix", "tail_coeff", "alpha")

    def __init__(self, prefix: Iterable[object] = (), tail_coeff: object = 0, alpha: AlphaSpec = E):
        prefix = [as_rational(v) for v in prefix]
        tail_coeff = as_rational(tail_coeff)
        if tail_coeff == 0:
            alpha = E
        while prefix and prefix[-1] == tail_coeff * alpha(len(prefix)):
            prefix.pop()
        self.prefix = tuple(prefix)
        self.tail_coeff = tail_coeff
        self.alpha = alpha

    @classmethod
    def from_finite(cls, x: FiniteVec) -> "EventualVec":
        return cls(x.to_list(x.max_index), 0)

    def __getitem__(self, n: int) -> Fraction:
        if n < 1:
            raise PreconditionError(f"indices start at 1, got {n}")
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        return self.tail_coeff * self.alpha(n)

    @property
    def horizon(self) -> int:
        """Beyond this index the sequence is constant, equal to :attr:`limit`."""
        return max(len(self.prefix), self.alpha.horizon)

    @property
    def limit(self) -> Fraction:
        return self.tail_coeff * self.alpha.tail

    def head(self, length: int) -> list[Fraction]:
        return [self[n] for n in range(1, length + 1)]

    def to_finite(self) -> FiniteVec:
        if self.limit != 0:
            raise PreconditionError("sequence has a nonzero limit; it is not finitely supported")
        return FiniteVec.from_list(self.head(self.horizon))

    def _key(self):
        values = self.head(self.horizon)
        limit = self.limit
        while values and values[-1] == limit:
            values.pop()
        return tuple(values), limit

    def _on_e(self) -> "EventualVec":
        return EventualVec(self.head(self.horizon), self.limit, E)

    def __neg__(self):
        return EventualVec([-v for v in self.prefix], -self.tail_coeff, self.alpha)

    def __add__(self, other):
        if isinstance(other, FiniteVec):
            length = max(len(self.prefix), other.max_index)
            values = [self[n] + other[n] for n in range(1, length + 1)]
            return EventualVec(values, self.tail_coeff, self.alpha)
        if isinstance(other, EventualVec):
            if other.tail_coeff == 0 or self.alpha == other.alpha:
                alpha = self.alpha
            elif self.tail_coeff == 0:
                alpha = other.alpha
            else:
                return self._on_e() + other._on_e()
            length = max(len(self.prefix), len(other.prefix))
            values = [self[n] + other[n] for n in range(1, length + 1)]
            return EventualVec(values, self.tail_coeff + other.tail_coeff, alpha)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (FiniteVec, EventualVec)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, FiniteVec):
            return (-self) + other
        return NotImplemented

    def __mul__(self, scalar):
        if isinstance(scalar, (FiniteVec, EventualVec)):
            return NotImplemented
        s = as_rational(scalar)
        return EventualVec([s * v for v in self.prefix], s * self.tail_coeff, self.alpha)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, FiniteVec):
            other = EventualVec.from_finite(other)
        if isinstance(other, EventualVec):
            return self._key() == other._key()
        return NotImplemented

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        head = ", ".join(format_rational(v) for v in self.prefix)
        return (f"EventualVec([{head}], tail={format_rational(self.tail_coeff)}, "
                f"alpha={self.alpha.name!r})")

    def to_json(self) -> dict:
        return {
            "prefix": [format_rational(v) for v in self.prefix],
            "tail": format_rational(self.tail_coeff),
            "alpha": self.alpha.name,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "EventualVec":
        return cls([Fraction(v) for v in data["prefix"]], Fraction(data["tail"]),
                   AlphaSpec.parse(data["alpha"]))


Vec = Union[FiniteVec, EventualVec]


def vec_to_json(v: Vec):
    return v.to_json()


def pair(x: Vec, y: Vec) -> Fraction:
    """Duality pairing ``sum_n x_n y_n``; one side must be finitely supported."""
    if isinstance(x, FiniteVec):
        finite, other = x, y
    elif isinstance(y, FiniteVec):
        finite, other = y, x
    else:
        raise PreconditionError("pairing two eventually-constant sequences may diverge")
    total = Fraction(0)
    for n, v in finite.items():
        total += v * other[n]
    return total


def norm_l1(x: FiniteVec) -> Fraction:
    return sum((abs(v) for _, v in x.items()), Fraction(0))


def norm_sup(x: Vec) -> Fraction:
    if isinstance(x, FiniteVec):
        return max((abs(v) for _, v in x.items()), default=Fraction(0))
    values = [abs(x[n]) for n in range(1, x.horizon + 1)]
    values.append(abs(x.limit))
    return max(values)


def _james_dp(values):
    """Best chain value over increasing index chains of ``values`` (0-based).

    ``B[j]`` is the best sum of squared gaps over chains ending at ``j``; a
    chain of a single index scores 0.  Works for Fractions and floats alike.
    """
    n = len(values)
    best = [0] * n
    pred = [-1] * n
    for j in range(n):
        xj = values[j]
        for i in range(j):
            d = values[i] - xj
            cand = best[i] + d * d
            if cand > best[j]:
                best[j] = cand
                pred[j] = i
    j_best = max(range(n), key=lambda j: (best[j], -j)) if n else -1
    chain = []
    j = j_best
    while j >= 0:
        chain.append(j)
        j = pred[j]
    chain.reverse()
    return (best[j_best] if n else 0), chain


def james_chain(x: FiniteVec, N: int) -> tuple[Fraction, tuple[int, ...]]:
    """Squared James norm of ``x`` and one maximising index chain (1-based).

    The chain may end at ``N + 1``: past the support all entries vanish, so one
    appended zero index is enough -- any longer run of zeros adds gaps of 0.
    """
    if x.max_index > N:
        raise PreconditionError(f"support reaches {x.max_index}, beyond N={N}")
    values = x.to_list(N) + [Fraction(0)]
    value, chain = _james_dp(values)
    return Fraction(value), tuple(i + 1 for i in chain)


def james_norm_sq(x: FiniteVec, N: int) -> Fraction:
    """Squared James norm, ``sup (x_{n1}-x_{n2})^2 + ... + (x_{nk-1}-x_{nk})^2``.

    Dynamic programme over indices ``1..N+1`` with ``x_{N+1} = 0``; O(N^2).
    """
    return james_chain(x, N)[0]


@dataclass(frozen=True)
class Bracket:
    """Closed interval ``[lo, hi]`` of rationals."""

    lo: Fraction
    hi: Fraction
    iterations: int = 0

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi


_LO_SLACK = Fraction(1, 10**12)
_HI_SLACK = Fraction(1, 10**9)  # LP primal feasibility tolerance


def _round_down(value: float, digits: int = 12) -> Fraction:
    scale = 10**digits
    return Fraction(math.floor(value * scale), scale)


def _round_up(value: float, digits: int = 12) -> Fraction:
    scale = 10**digits
    return Fraction(math.ceil(value * scale), scale)


def james_dual_norm(f: FiniteVec, tol=Fraction(1, 10**4), N: int | None = None,
                    max_iter: int = 2000) -> Bracket:
    """Bracket the James dual norm ``sup{<x, f> : ||x||_J <= 1}``.

    Supporting-hyperplane cutting planes.  Each LP iterate ``x`` (floats, via
    HiGHS) is separated by the James DP: the maximising chain ``c`` gives the
    convex quadratic ``q_c(x) = sum (x_a - x_b)^2``, ``x`` is scaled back to the
    boundary point ``y = x / ||x||_J`` and the tangent cut
    ``grad q_c(y) . x <= grad q_c(y) . y`` is added.  ``f . y`` is a feasible
    value (lower end) and the LP optimum is an outer bound (upper end).

    Only coordinates ``1..N`` matter: truncating ``x`` after ``N`` cannot raise
    its James norm, and ``<x, f>`` ignores them.  The returned endpoints are
    widened by 1e-12 (lower) and 1e-9 (upper) to absorb float round-off.
    """
    from scipy.optimize import linprog

    tol = as_rational(tol)
    if tol <= 0:
        raise PreconditionError("tol must be positive")
    n = f.max_index if N is None else N
    if n < f.max_index:
        raise PreconditionError(f"support of f reaches {f.max_index}, beyond N={n}")
    if not f:
        return Bracket(Fraction(0), Fraction(0), 0)

    coeffs = [float(v) for v in f.to_list(n)]
    objective = [-c for c in coeffs]
    cuts_a: list[list[float]] = []
    cuts_b: list[float] = []
    lo_f = 0.0
    hi_f = math.inf
    for it in range(1, max_iter + 1):
        res = linprog(objective, A_ub=cuts_a or None, b_ub=cuts_b or None,
                      bounds=[(-1.0, 1.0)] * n, method="highs")
        if res.status != 0:
            raise ConvergenceError(f"LP failed: {res.message}")
        x = list(res.x)
        hi_f = min(hi_f, -res.fun)
        q, chain = _james_dp(x + [0.0])
        if q <= 0:
            break
        scale = 1.0 / math.sqrt(q)
        y = [v * scale for v in x] + [0.0]
        lo_f = max(lo_f, sum(c * v for c, v in zip(coeffs, y)))
        if hi_f - lo_f <= float(tol) / 2:
            break
        grad = [0.0] * (n + 1)
        for a, b in zip(chain, chain[1:]):
            d = 2.0 * (y[a] - y[b])
            grad[a] += d
            grad[b] -= d
        q_y = sum((y[a] - y[b]) ** 2 for a, b in zip(chain, chain[1:]))
        cuts_a.append(grad[:n])
        cuts_b.append(sum(g * v for g, v in zip(grad, y)) + 1.0 - q_y)
    else:
        bracket = Bracket(_round_down(lo_f) - _LO_SLACK, _round_up(hi_f) + _HI_SLACK, max_iter)
        raise ConvergenceError(f"no {tol}-bracket after {max_iter} cuts", bracket)
    return Bracket(_round_down(lo_f) - _LO_SLACK, _round_up(hi_f) + _HI_SLACK, it)


def kernel_basis(alpha: AlphaSpec, N: int) -> list[FiniteVec]:
    """Basis of ``{x* : supp x* in [1..N], <alpha, x*> = 0}`` (dimension N-1).

    With all ``alpha_1..alpha_N`` nonzero this is the adjacent pattern
    ``alpha_{k+1} e_k - alpha_k e_{k+1}``.  Otherwise each zero coordinate
    contributes ``e_k`` and the nonzero coordinates are chained left to right,
    ``alpha_{m'} e_m - alpha_m e_{m'}`` for consecutive nonzero ``m < m'``.
    Output is sorted by leading index.
    """
    if N < 2:
        raise PreconditionError("kernel_basis needs N >= 2")
    values = [alpha(n) for n in range(1, N + 1)]
    nonzero = [n for n in range(1, N + 1) if values[n - 1] != 0]
    if not nonzero:
        raise PreconditionError(f"alpha vanishes on 1..{N}")
    basis = [FiniteVec.basis(n) for n in range(1, N + 1) if values[n - 1] == 0]
    for m, m_next in zip(nonzero, nonzero[1:]):
        basis.append(FiniteVec({m: values[m_next - 1], m_next: -values[m - 1]}))
    basis.sort(key=lambda v: v.support)
    return basis
