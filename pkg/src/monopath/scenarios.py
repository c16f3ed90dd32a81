"""Named certification scenarios and their configuration."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .convex import HALF_SUP_SQ
from .errors import ConfigError, ConvergenceError, PreconditionError
from .fitzpatrick import (FitzpatrickSkew, bc_test, bracket, divergence_evidence, fitz_skew_exact,
                          fitz_span)
from .infconv import (DEFAULT_SPECS, bc_fail_a2, bc_fail_a4, box1_structured, box2_structured,
                      dual_formula_bruteforce)
from .operators import (LinearMap, alpha_pair, apply_A_alpha, apply_G,
                        apply_P_alpha, apply_S_alpha, dual_gossez_coeffs, dual_gossez_plus_rank1,
                        graph_T_alpha, range_coefficients, schauder_skew_replay, transport_graph)
from .oracles import james_dual_grid, james_norm_sq_bruteforce
from .pathology import (adjoint_nonmono_witness, adjoint_witness, br_witness_check,
                        mono_related_min, ni_gap, phelps_simons_check, sum_ni_witness)
from .report import CertReport, Fragment
from .vectors import (E, AlphaSpec, FiniteVec, as_rational, format_rational, james_chain,
                      james_dual_norm, james_norm_sq, pair)

FORMATS = ("json", "markdown")
JAMES_ENUM_MAX = 12


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    alpha: AlphaSpec = E
    N: int = 5
    seed: int = 0
    tol: Fraction = Fraction(1, 10**4)
    format: str = "json"
    out: str | None = None

    def __post_init__(self):
        if self.scenario not in CATALOGUE:
            raise ConfigError(f"unknown scenario {self.scenario!r}; see --list")
        if isinstance(self.N, bool) or not isinstance(self.N, int) or self.N < 2:
            raise ConfigError(f"truncation N must be an integer >= 2, got {self.N!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int):
            raise ConfigError(f"seed must be an integer, got {self.seed!r}")
        try:
            tol = as_rational(self.tol)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"tol must be a rational, got {self.tol!r}") from exc
        if tol <= 0:
            raise ConfigError("tol must be positive")
        object.__setattr__(self, "tol", tol)
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.format!r}")

    def echo(self) -> dict:
        """Inputs as echoed in the report (the output path is left out)."""
        return {
            "scenario": self.scenario,
            "alpha": self.alpha.name,
            "N": self.N,
            "seed": self.seed,
            "tol": format_rational(self.tol),
            "format": self.format,
        }

    def to_text(self) -> str:
        lines = [f"scenario = {self.scenario}", f"alpha = {self.alpha.name}", f"trunc = {self.N}",
                 f"seed = {self.seed}", f"tol = {format_rational(self.tol)}",
                 f"format = {self.format}"]
        if self.out is not None:
            lines.append(f"out = {self.out}")
        return "\n".join(lines) + "\n"


_KEYS = {"scenario", "alpha", "trunc", "seed", "tol", "format", "out"}


def parse_config_text(text: str) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment; blank lines ignored."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value
    return values


def config_from_values(values: dict[str, str]) -> ScenarioConfig:
    if "scenario" not in values:
        raise ConfigError("no scenario given")
    kwargs: dict = {"scenario": values["scenario"]}
    try:
        if "alpha" in values:
            kwargs["alpha"] = AlphaSpec.parse(values["alpha"])
        if "trunc" in values:
            kwargs["N"] = int(values["trunc"])
        if "seed" in values:
            kwargs["seed"] = int(values["seed"])
        if "tol" in values:
            kwargs["tol"] = Fraction(values["tol"])
    except (ValueError, ZeroDivisionError, PreconditionError) as exc:
        raise ConfigError(str(exc)) from exc
    if "format" in values:
        kwargs["format"] = values["format"]
    if values.get("out"):
        kwargs["out"] = values["out"]
    return ScenarioConfig(**kwargs)


def parse_config(text: str) -> ScenarioConfig:
    return config_from_values(parse_config_text(text))


# ---------------------------------------------------------------------------
# helpers


def random_rational(rng: random.Random, bound: int = 9) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_finite_vec(rng: random.Random, max_support: int = 20, nonzero: bool = True) -> FiniteVec:
    while True:
        k = rng.randint(1, max_support)
        idx = rng.sample(range(1, max_support + 1), k)
        v = FiniteVec({i: random_rational(rng) for i in idx})
        if v or not nonzero:
            return v


def _first_nonzero(alpha: AlphaSpec, N: int) -> int:
    m = alpha.first_nonzero()
    if m > N:
        raise PreconditionError(f"alpha vanishes on 1..{N}; raise N to at least {m}")
    return m


_ALPHA_FAMILY = (E, AlphaSpec((2,), 1), AlphaSpec((1,), -1))


def _alpha_family(alpha: AlphaSpec) -> list[AlphaSpec]:
    out = [alpha]
    for a in _ALPHA_FAMILY:
        if a not in out:
            out.append(a)
    return out


# ---------------------------------------------------------------------------
# scenarios


def _quadratic_identity(cfg: ScenarioConfig, rng: random.Random) -> Fragment:
    frag = Fragment()
    vecs = [random_finite_vec(rng) for _ in range(1000)]
    for alpha in _alpha_family(cfg.alpha):
        bad_q = sum(pair(apply_A_alpha(alpha, v), v) != alpha_pair(alpha, v) ** 2 for v in vecs)
        bad_d = sum(apply_A_alpha(alpha, v) != apply_P_alpha(alpha, v) + apply_S_alpha(alpha, v)
                    for v in vecs)
        frag.check(f"alpha={alpha.name}: <A x*, x*> != <alpha, x*>^2 (of {len(vecs)})", bad_q, "=", 0,
                   "<A x*, x*> = <alpha, x*>^2")
        frag.check(f"alpha={alpha.name}: A != P + S (of {len(vecs)})", bad_d, "=", 0,
                   "A splits into symmetric part P and skew part S")
        v = vecs[0]
        frag.check(f"alpha={alpha.name}: first sample <A x*, x*>", pair(apply_A_alpha(alpha, v), v), "=",
                   alpha_pair(alpha, v) ** 2, "<A x*, x*> = <alpha, x*>^2")
    frag.notes.append("1000 seeded random x* with support in [1..20], entries p/q with |p|, q <= 9")
    return frag


def _skewness(cfg: ScenarioConfig, rng: random.Random) -> Fragment:
    frag = Fragment()
    vecs = [random_finite_vec(rng) for _ in range(1000)]
    for alpha in _alpha_family(cfg.alpha):
        bad = sum(pair(apply_S_alpha(alpha, v), v) != 0 for v in vecs)
        frag.check(f"alpha={alpha.name}: <S x*, x*> != 0 (of {len(vecs)})", bad, "=", 0,
                   "S is skew")
    frag.check("<G x*, x*> != 0", sum(pair(apply_G(v), v) != 0 for v in vecs), "=", 0,
               "Gossez operator is skew")
    frag.check("G != S_e", sum(apply_G(v) != apply_S_alpha(E, v) for v in vecs), "=", 0,
               "G is the skew part for alpha = e")
    frag.check("<dual Gossez coefficients, y*> != 0",
               sum(pair(dual_gossez_coeffs(v), v) != 0 for v in vecs), "=", 0,
               "dual-side Gossez coefficient map is skew")
    bad_replay = 0
    for v in vecs:
        s = sum((c for _, c in v.items()), Fraction(0))
        if schauder_skew_replay(v, v.max_index) != -s * s:
            bad_replay += 1
    frag.check("telescoping replay != -s^2 at k = max supp", bad_replay, "=", 0,
               "telescoped skew sum equals -s^2 with s = <e, y*>")
    frag.notes.append("the replay rewrites sum_{i<n} as -sum_{i>=n}, valid only when s = 0; "
                      "for s != 0 the direct coefficient pairing is 0 while the replay gives -s^2")
    return frag


def _fitzpatrick_indicator(cfg: ScenarioConfig, rng: random.Random) -> Fragment:
    alpha, N = cfg.alpha, cfg.N
    g = graph_T_alpha(alpha, N)
    frag = Fragment()
    anchor = "F_T is the indicator of C = {(-A x*, x*)}"
    xstars = [FiniteVec.basis(k) for k in range(1, N + 1)]
    xstars += [random_finite_vec(rng, N) for _ in range(20)]
    nonzero = 0
    for xs in xstars:
        x = -apply_A_alpha(alpha, xs)
        nonzero += sum(bracket(x, xs, a, astar) != 0 for a, astar in g.points)
        if fitz_span(g, x, xs).value != 0 or fitz_skew_exact(alpha, x, xs).value != 0:
            nonzero += 1
    frag.check(f"nonzero brackets on kernel basis over {len(xstars)} points of C", nonzero, "=", 0, anchor)
    e1 = FiniteVec.basis(1)
    frag.check("F_T(e1, e1) closed form", fitz_skew_exact(alpha, e1, e1).value, "=", float("inf"), anchor)
    frag.check("F_T(e1, e1) over the truncated span", fitz_span(g, e1, e1).value, "=", float("inf"), anchor)
    threshold = Fraction(10**6)
    ev = divergence_evidence(g, e1, e1, threshold)
    if ev is None:
        frag.notes.append("every bracket of (e1, e1) vanishes at this truncation")
    else:
        frag.check("sampled Fitzpatrick term along a scaled nonzero-bracket direction", ev.value, ">",
                   threshold, "sampled sup exceeds any threshold: divergence evidence")
        frag.notes.append(ev.describe())
    m = _first_nonzero(alpha, N)
    em = FiniteVec.basis(m)
    frag.check("(-A e_m, e_m) in dom F_T", fitz_skew_exact(alpha, -apply_A_alpha(alpha, em), em).value,
               "=", 0, anchor)
    frag.check("(-A e_m, e_m) off gra T: <alpha, e_m> != 0 (squared)", alpha_pair(alpha, em) ** 2, ">", 0,
               "dom F_T strictly contains gra T")
    F = FitzpatrickSkew(alpha)
    sample = [(-apply_A_alpha(alpha, xs), xs) for xs in xstars[:N]] + [(FiniteVec.zero(), FiniteVec.zero())]
    frag.extend(bc_test(F, sample, "F_T is a BC-function: F_T*(x*,x) >= F_T(x,x*) >= <x,x*>"))
    return frag


def _ni_gap(cfg: ScenarioConfig, rng: random.Random) -> Fragment:
    alpha, N = cfg.alpha, cfg.N
    m = _first_nonzero(alpha, N)
    g = graph_T_alpha(alpha, N)
    w = adjoint_witness(alpha, FiniteVec.basis(m))
    res = ni_gap(g, w)
    frag = Fragment()
    anchor = "T is not of type (NI): gap <A*e_m, e_m> - sup over gra T is positive"
    frag.check("bracket vanishes on kernel basis", int(res.bracket_zero), "=", 1, anchor)
    frag.check("NI gap", res.gap, ">", 0, anchor)
    frag.check("NI gap = alpha_m^2", res.gap, "=", alpha(m) ** 2, anchor)
    frag.check("min <x** - a, x* - a*> over sample", mono_related_min(g, w.x_bidual, w.x_star), "≥", 0,
               "(A*e_m, e_m) is monotonically related to gra T")
    ps = phelps_simons_check(g, w.x_bidual, w.x_star)
    frag.check("quadratic criterion worst excess", ps.worst_excess, "≤", 0,
               "quadratic criterion for monotone relatedness")
    frag.notes.append(f"positive NI gap at truncation N={N} with the bracket certified zero on a "
                      f"spanning set of the truncated graph; the gap does not depend on N")
    return frag


def _br_failure(cfg: ScenarioConfig, rng: random.Random) -> Fragment:
    m = _first_nonzero(cfg.alpha, cfg.N)
    return br_witness_check(cfg.alpha, FiniteVec.basis(m), cfg.N)


def _adjoint_nonmonotone(cfg: ScenarioConfig, rng: random.Random) -> Fragment:
    alpha = cfg.alpha
    m = _first_nonzero(alpha, cfg.N)
    xs = FiniteVec.basis(m)
    wit = adjoint_nonmono_witness(alpha, xs)
    anchor = "T* is not monotone, so T is not of type (D)"
    frag = Fragment()
    frag.check("monotonicity product of two adjoint-graph points", wit.product, "<", 0, anchor)
    frag.check("product = -|<alpha, x*>|", wit.product, "=", -abs(alpha_pair(alpha, xs)), anchor)
    same = adjoint_nonmono_witness(alpha, xs, r1=1, r2=1)
    frag.check("equal r: product", same.product, "=", 0, "S is skew")
    return frag


def _bc_simons_a2(cfg: ScenarioConfig, rng: random.Random) -> Fragment:
    return bc_fail_a2(cfg.alpha, _first_nonzero(cfg.alpha, cfg.N))


def _bc_simons_a4(cfg: ScenarioConfig, rng: random.Random) -> Fragment:
    alpha = cfg.alpha
    i0 = next((n for n in range(1, cfg.N + 1) if alpha(n) ** 2 > Fraction(1, 2)), None)
    if i0 is None:
        raise PreconditionError(f"no index n <= {cfg.N} with alpha_n^2 > 1/2")
    return bc_fail_a4(alpha, i0)


def _sum_ni(cfg: ScenarioConfig, rng: random.Random) -> Fragment:
    m = _first_nonzero(cfg.alpha, cfg.N)
    frag = sum_ni_witness(cfg.alpha, FiniteVec.basis(m), cfg.N)
    # the structured inf-convolutions dominate the pairing along the witness
    for x, xs in [(FiniteVec.zero(), FiniteVec.basis(m)), (-apply_A_alpha(cfg.alpha, FiniteVec.basis(m)),
                                                          FiniteVec.basis(m))]:
        frag.check("(F_T box_2 F)(x, x*) >= <x, x*>", box2_structured(cfg.alpha, HALF_SUP_SQ, x, xs), "≥",
                   pair(x, xs), "F_T box_2 F dominates the pairing")
        frag.check("(F_T box_1 F)(x, x*) >= <x, x*>", box1_structured(cfg.alpha, HALF_SUP_SQ, x, xs), "≥",
                   pair(x, xs), "F_T box_1 F dominates the pairing")
    return frag


def _james_norm(cfg: ScenarioConfig, rng: random.Random) -> Fragment:
    frag = Fragment()
    anchor = "James norm: sup over increasing chains of summed squared gaps"
    top = min(cfg.N, JAMES_ENUM_MAX)
    if cfg.N > JAMES_ENUM_MAX:
        frag.notes.append(f"exhaustive enumeration capped at N={JAMES_ENUM_MAX}")
    for n in range(2, top + 1):
        bad = 0
        bad_h = 0
        for _ in range(100):
            x = FiniteVec.from_list(random_rational(rng) for _ in range(n))
            dp = james_norm_sq(x, n)
            if dp != james_norm_sq_bruteforce(x, n):
                bad += 1
            lam = random_rational(rng)
            if james_norm_sq(x * lam, n) != lam * lam * dp:
                bad_h += 1
        frag.check(f"N={n}: DP != enumeration (of 100)", bad, "=", 0, anchor)
        frag.check(f"N={n}: degree-2 homogeneity failures (of 100)", bad_h, "=", 0, anchor)
    for vals, expected in (((1,), 1), ((1, -1), 5), ((1, 2, 1), 5)):
        x = FiniteVec.from_list(vals)
        value, chain = james_chain(x, len(vals))
        frag.check(f"||{list(vals)}||_J^2", value, "=", expected, anchor)
        frag.notes.append(f"{list(vals)}: maximising chain {list(chain)}")
    return frag


def _james_dual_norm(cfg: ScenarioConfig, rng: random.Random) -> Fragment:
    frag = Fragment()
    anchor = "dual James norm sup{<x, f> : ||x||_J <= 1} bracketed by cutting planes"
    for label, f in (("e1*", FiniteVec({1: 1})), ("e1*+e2*", FiniteVec({1: 1, 2: 1})),
                     ("e1*-e2*", FiniteVec({1: 1, 2: -1}))):
        br = james_dual_norm(f, cfg.tol, N=3)
        opt, _ = james_dual_grid(f, 3, 8)
        frag.check(f"{label}: lower end <= grid optimum", br.lo, "≤", opt, anchor)
        frag.check(f"{label}: grid optimum <= upper end", opt, "≤", br.hi, anchor)
        frag.check(f"{label}: bracket width <= tol", br.width, "≤", cfg.tol, anchor)
        frag.notes.append(f"{label}: bracket [{float(br.lo):.9f}, {float(br.hi):.9f}] after "
                          f"{br.iterations} LP solves")
    return frag


def _dual_gossez_range(cfg: ScenarioConfig, rng: random.Random) -> Fragment:
    frag = Fragment()
    anchor = "range of the dual-side operator lies in J: coefficients have zero tail"
    vecs = [random_finite_vec(rng, cfg.N) for _ in range(200)]
    frag.check("nonzero tails among range coefficient sequences",
               sum(dual_gossez_plus_rank1(v).limit != 0 for v in vecs), "=", 0, anchor)
    frag.check("closed form 2 sum_{i>k} y_i + y_k disagrees",
               sum(dual_gossez_plus_rank1(v) != range_coefficients(v) for v in vecs), "=", 0, anchor)
    e2 = FiniteVec.basis(2)
    c = range_coefficients(e2)
    for k, expected in ((1, 2), (2, 1), (3, 0)):
        frag.check(f"y* = e2*: coefficient {k}", c[k], "=", expected, anchor)
    frag.check("y* = e2*: support size", len(c.support), "=", 2, anchor)
    g = dual_gossez_coeffs(e2)
    frag.check("y* = e2*: Gossez coefficient tail", g.limit, "=", -1,
               "Gossez coefficients tend to -<e, y*>")
    return frag


def _dual_formula(cfg: ScenarioConfig, rng: random.Random) -> Fragment:
    frag = Fragment()
    for kind in ("box2", "box1"):
        for F1, F2 in DEFAULT_SPECS:
            sub, _ = dual_formula_bruteforce(F1, F2, kind, tol=1e-6)
            frag.extend(sub)
    frag.notes.append("grid conjugates: primal step 1/48 on [-5/2, 5/2]^2, dual step 1/24 on [-2, 2], "
                      "test points {-1, -1/2, 0, 1/2, 1}^2; float path, tolerance 1e-6")
    return frag


def _transport(cfg: ScenarioConfig, rng: random.Random) -> Fragment:
    alpha, N = cfg.alpha, cfg.N
    g = graph_T_alpha(alpha, N)
    frag = Fragment()
    anchor = "(L*)^{-1} T L^{-1} stays monotone and skew"
    two = LinearMap([[2 if i == j else 0 for j in range(N)] for i in range(N)])
    t2 = transport_graph(two, g)
    frag.check("L = 2I: points equal (2x, x*/2)",
               sum((a2, s2) != (a * 2, s / 2) for (a, s), (a2, s2) in zip(g.points, t2.points)), "=", 0, anchor)
    # random injective tall L
    while True:
        rows = [[rng.randint(-3, 3) for _ in range(N)] for _ in range(N + 1)]
        try:
            L = LinearMap(rows)
            break
        except PreconditionError:
            continue
    t = transport_graph(L, g)
    bad = 0
    pts, tpts = g.points, t.points
    for i in range(len(pts)):
        for j in range(i, len(pts)):
            (x, xs), (y, ys) = pts[i], pts[j]
            (u, us), (v, vs) = tpts[i], tpts[j]
            if pair(u - v, us - vs) != pair(x - y, xs - ys):
                bad += 1
    frag.check("pairwise monotonicity products changed by transport", bad, "=", 0, anchor)
    frag.check("transported points with <x, x*> != 0",
               sum(pair(u, us) != 0 for u, us in tpts), "=", 0, anchor)
    frag.notes.append(f"random L of shape {N + 1}x{N} with entries in [-3, 3], full column rank")
    return frag


@dataclass(frozen=True)
class ScenarioInfo:
    name: str
    anchor: str
    runner: Callable = field(repr=False, compare=False)

    def to_text(self) -> str:
        return f"scenario = {self.name}\n"


CATALOGUE: dict[str, ScenarioInfo] = {}
for _name, _anchor, _runner in (
    ("quadratic-identity", "<A x*, x*> = <alpha, x*>^2 and A = P + S", _quadratic_identity),
    ("skewness", "S_alpha and the Gossez operator G are skew", _skewness),
    ("fitzpatrick-indicator", "F_T is the indicator of C = {(-A x*, x*)}", _fitzpatrick_indicator),
    ("ni-gap", "T is not of type (NI): positive gap at (A*e_1, e_1)", _ni_gap),
    ("br-failure", "T fails the Brondsted-Rockafellar property", _br_failure),
    ("adjoint-nonmonotone", "T* is not monotone, so T is not of type (D)", _adjoint_nonmonotone),
    ("bc-simons-a2", "F_T box_1 (||.|| (+) i_B) is not a BC-function", _bc_simons_a2),
    ("bc-simons-a4", "F_T box_1 ((1/2)||.||^2 (+) (1/2)||.||_1^2) is not a BC-function", _bc_simons_a4),
    ("sum-ni", "T + J fails type (NI): strict conjugate inequality", _sum_ni),
    ("james-norm", "James norm dynamic programme equals enumeration", _james_norm),
    ("james-dual-norm", "dual James norm brackets contain grid optima", _james_dual_norm),
    ("dual-gossez-range", "range of the dual-side operator lies in J", _dual_gossez_range),
    ("dual-formula", "conjugates of partial inf-convolutions match min-formulas", _dual_formula),
    ("transport", "operator transport by an injective L keeps the monotone structure", _transport),
):
    CATALOGUE[_name] = ScenarioInfo(_name, _anchor, _runner)


def list_scenarios() -> list[ScenarioInfo]:
    return list(CATALOGUE.values())


def run_scenario(cfg: ScenarioConfig) -> CertReport:
    """Run a scenario; deterministic in ``(scenario, alpha, N, seed, tol)``.

    Precondition failures and solver non-convergence are recorded in the
    report's ``errors`` rather than raised.  Writes ``cfg.out`` when set.
    """
    report = CertReport(cfg.scenario, cfg.echo())
    rng = random.Random(cfg.seed)
    try:
        report.add(CATALOGUE[cfg.scenario].runner(cfg, rng))
    except (PreconditionError, ConvergenceError) as exc:
        report.errors.append({"type": type(exc).__name__, "message": str(exc)})
    if cfg.out is not None:
        Path(cfg.out).write_text(report.render(cfg.format), encoding="utf-8")
    return report
