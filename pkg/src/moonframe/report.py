"""
Verification suites and the VerificationReport they produce.

Each check has a stable id (see CHECK_IDS) and returns (passed, expected,
actual).  A check that raises CapacityError is recorded as failed with a
machine-readable reason instead of aborting the suite.
"""

from __future__ import annotations

import datetime as _dt
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import __version__, codes, defaults, griess
from .characters import (
    F_BOUND_REAL,
    F_LOWER_SPEC,
    code_voa_character,
    direct_module_character,
    f_bound,
    f_lower_bound,
    fermionic_products,
    induced_module_character,
    ratio_divergence_check,
)
from .codes import BinaryWord
from .errors import CapacityError
from .modules import hamming, moonshine
from .qseries import (
    NS_PLUS,
    J,
    QSeries,
    coeffwise_violations,
    eta,
    ising_char,
    theta_D24plus,
    to_index,
)

SUITES = ("codes", "modules", "characters", "inequality", "hamming")


@dataclass
class Check:
    check_id: str
    status: str  # pass | fail | skipped
    expected: str
    actual: str
    runtime_ms: int
    reason: str | None = None

    def as_dict(self) -> dict:
        d = {
            "check_id": self.check_id,
            "status": self.status,
            "expected": self.expected,
            "actual": self.actual,
            "runtime_ms": self.runtime_ms,
        }
        if self.reason is not None:
            d["reason"] = self.reason
        return d


@dataclass
class VerificationReport:
    config: dict
    checks: list[Check] = field(default_factory=list)
    generated_at: str = ""
    tool_version: str = __version__

    @property
    def suite_status(self) -> str:
        return "fail" if any(c.status == "fail" for c in self.checks) else "pass"

    def as_dict(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "generated_at": self.generated_at,
            "config": self.config,
            "checks": [c.as_dict() for c in self.checks],
            "suite_status": self.suite_status,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"moonframe {self.tool_version}  defaults v{self.config.get('defaults_version')}"]
        for c in self.checks:
            lines.append(f"[{c.status.upper():7}] {c.check_id}  ({c.runtime_ms} ms)")
            if c.status != "pass":
                lines.append(f"          expected: {c.expected}")
                lines.append(f"          actual:   {c.actual}")
                if c.reason:
                    lines.append(f"          reason:   {c.reason}")
        lines.append(f"suite_status: {self.suite_status}")
        return "\n".join(lines) + "\n"


@dataclass
class Config:
    order: int = defaults.ORDER
    grid: tuple[float, ...] = defaults.GRID
    seed: int = 0

    def as_dict(self) -> dict:
        d = defaults.as_dict()
        d.update(order=self.order, grid=list(self.grid), seed=self.seed)
        return d


Result = tuple[bool, str, str]
REGISTRY: dict[str, list[tuple[str, Callable[[Config], Result]]]] = {s: [] for s in SUITES}


def check(suite: str, check_id: str):
    def deco(fn):
        REGISTRY[suite].append((check_id, fn))
        return fn

    return deco


def _short(x, limit: int = 300) -> str:
    s = str(x)
    return s if len(s) <= limit else s[: limit - 3] + "..."


# -- codes ------------------------------------------------------------------------


@check("codes", "codes.dim_D")
def _(cfg):
    d = codes.moonshine_D().dimension
    return d == 7, "7", str(d)


@check("codes", "codes.dim_C")
def _(cfg):
    d = codes.moonshine_C().dimension
    return d == 41, "41", str(d)


@check("codes", "codes.weight_distribution_D")
def _(cfg):
    got = codes.weight_distribution(codes.moonshine_D()).nonzero()
    want = {0: 1, 16: 3, 24: 120, 32: 3, 48: 1}
    return got == want, str(want), str(got)


@check("codes", "codes.min_weight_C")
def _(cfg):
    wc = codes.macwilliams(codes.weight_distribution(codes.moonshine_D()), 7, 48)
    a = wc.counts
    ok = a[1] == a[2] == a[3] == 0 and a[4] > 0 and wc.min_weight() == 4
    return ok, "A1=A2=A3=0, A4>0", f"A1..A4={a[1:5]}"


@check("codes", "codes.D_subset_C")
def _(cfg):
    ok = codes.moonshine_D() <= codes.moonshine_C()
    return ok, "True", str(ok)


@check("codes", "codes.C_even")
def _(cfg):
    ok = all(r.bit_count() % 2 == 0 for r in codes.moonshine_C().rows)
    return ok, "all basis rows even", str(ok)


@check("codes", "codes.C_generated_by_weight4")
def _(cfg):
    ok = codes.generated_by_weight4(codes.moonshine_C())
    return ok, "True", str(ok)


def _weight16_words() -> list[BinaryWord]:
    return [BinaryWord(48, w) for w in sorted(codes.moonshine_D().words()) if w.bit_count() == 16]


@check("codes", "codes.cbeta_block_rm24")
def _(cfg):
    rm = codes.reed_muller(2, 4)
    bad = []
    for beta in _weight16_words():
        cb = codes.cbeta(codes.moonshine_D(), beta)
        local = codes.project(cb, beta.support())
        if local != rm or cb.dimension != 11:
            bad.append(str(beta))
    return not bad, "cbeta = RM(2,4) on each weight-16 block", f"mismatches: {bad}"


@check("codes", "codes.cbeta_in_C")
def _(cfg):
    C = codes.moonshine_C()
    D = codes.moonshine_D()
    bad = [w for w in D.words() if not codes.cbeta(D, BinaryWord(48, w)) <= C]
    return not bad, "cbeta(beta) <= C for all 128 beta", f"{len(bad)} failures"


@check("codes", "codes.h_beta_dimension")
def _(cfg):
    D = codes.moonshine_D()
    bad = []
    for w in D.words():
        beta = BinaryWord(48, w)
        h = codes.max_self_orthogonal_subcode(codes.cbeta(D, beta))
        if 2 * h.dimension != beta.weight:
            bad.append((str(beta), h.dimension))
    return not bad, "dim H_beta = |beta|/2 for all 128 beta", _short(f"failures: {bad}")


@check("codes", "codes.hamming_self_dual")
def _(cfg):
    H = codes.hamming8()
    ok = codes.dual(H) == H and H == codes.reed_muller(1, 3)
    return ok, "H8 = H8^perp = RM(1,3)", str(ok)


def random_code(rng: random.Random, n: int | None = None, k: int | None = None):
    n = n or rng.randint(1, 20)
    k = rng.randint(0, min(n, 12)) if k is None else k
    return codes.code_from_ints(n, [rng.getrandbits(n) for _ in range(k)])


@check("codes", "codes.macwilliams_random")
def _(cfg):
    rng = random.Random(cfg.seed)
    bad = 0
    for _ in range(defaults.RANDOM_CODES):
        c = random_code(rng)
        d = codes.dual(c)
        w, wd = codes.weight_distribution(c), codes.weight_distribution(d)
        if codes.dual(d) != c or codes.macwilliams(w, c.dimension, c.length) != wd:
            bad += 1
        if w.total != 1 << c.dimension:
            bad += 1
    return bad == 0, f"{defaults.RANDOM_CODES} random codes consistent", f"{bad} failures"


# -- modules ----------------------------------------------------------------------


def _generators(voa):
    gens = [voa.label(g, BinaryWord.zero(voa.n)) for g in voa.generators]
    zero = BinaryWord.zero(voa.n)
    gens += [voa.label(zero, voa.lift(1 << j)) for j in range(voa.k)]
    return gens


@check("modules", "modules.census")
def _(cfg):
    voa = moonshine()
    labels = set(voa.labels())
    ok = len(labels) == voa.census() == 16384
    return ok, "16384 labels = census", f"{len(labels)} labels, census {voa.census()}"


@check("modules", "modules.fusion_identity_inverse")
def _(cfg):
    voa = moonshine()
    vac = voa.vacuum()
    bad = sum(1 for m in voa.labels() if voa.fuse(vac, m) != m or voa.fuse(m, m) != vac)
    return bad == 0, "M x 1 = M and M x M = 1 for all labels", f"{bad} failures"


@check("modules", "modules.fusion_bijective")
def _(cfg):
    voa = moonshine()
    labels = sorted(voa.labels())
    bad = 0
    for g in _generators(voa):
        if len({voa.fuse(g, m) for m in labels}) != len(labels):
            bad += 1
        if len({voa.fuse(m, g) for m in labels}) != len(labels):
            bad += 1
    return bad == 0, "fusion with each generator permutes the labels", f"{bad} failures"


@check("modules", "modules.fusion_generates")
def _(cfg):
    voa = moonshine()
    span = {voa.vacuum()}
    for g in _generators(voa):
        span |= {voa.fuse(g, m) for m in span}
    return len(span) == 16384, "14 generators span 2^14 labels", str(len(span))


@check("modules", "modules.fusion_associative_random")
def _(cfg):
    voa = moonshine()
    labels = sorted(voa.labels())
    rng = random.Random(cfg.seed)
    bad = 0
    for _ in range(defaults.FUSION_RANDOM_TRIPLES):
        a, b, c = rng.choice(labels), rng.choice(labels), rng.choice(labels)
        if voa.fuse(voa.fuse(a, b), c) != voa.fuse(a, voa.fuse(b, c)) or voa.fuse(a, b) != voa.fuse(b, a):
            bad += 1
    return bad == 0, f"{defaults.FUSION_RANDOM_TRIPLES} random triples associative", f"{bad} failures"


@check("modules", "modules.fusion_well_defined_random")
def _(cfg):
    voa = moonshine()
    rng = random.Random(cfg.seed + 1)
    betas = voa.betas()
    C = voa.C
    bad = 0
    for _ in range(2000):
        b1, b2 = rng.choice(betas), rng.choice(betas)
        g1, g2 = BinaryWord(48, rng.getrandbits(48)), BinaryWord(48, rng.getrandbits(48))
        c1 = BinaryWord(48, _random_codeword(C, rng))
        c2 = BinaryWord(48, _random_codeword(C, rng))
        m = voa.fuse(voa.label(b1, g1), voa.label(b2, g2))
        m2 = voa.label(b1 + b2, g1 + c1 + g2 + c2)
        if m != m2:
            bad += 1
    return bad == 0, "fusion independent of coset representatives", f"{bad} failures"


def _random_codeword(code, rng: random.Random) -> int:
    w = 0
    for r in code.rows:
        if rng.getrandbits(1):
            w ^= r
    return w


@check("modules", "modules.lowest_weights")
def _(cfg):
    voa = moonshine()
    ws = sorted({voa.lowest_weight(m) for m in voa.labels()})
    want = [Fraction(k, 2) for k in range(7)]
    return ws == want, str([str(x) for x in want]), str([str(x) for x in ws])


@check("modules", "modules.coordinate_automorphism_kernel")
def _(cfg):
    voa = moonshine()
    in_d = all(voa.coordinate_automorphism_class(b) == 0 for b in voa.betas())
    unit = voa.coordinate_automorphism_class(BinaryWord.unit(48, 0)) != 0
    return in_d and unit, "class 0 exactly on D", f"D words trivial: {in_d}, unit nontrivial: {unit}"


@check("modules", "modules.hamming_census")
def _(cfg):
    voa = hamming()
    n = len(set(voa.labels()))
    return n == voa.census() == 88, "88", f"{n} labels, census {voa.census()}"


@check("modules", "modules.hamming_fusion_rule")
def _(cfg):
    # Brute force over every representative: M(b1, a1) x M(b2, a2) must be
    # M(b1 + b2, a1 + a2) whichever words a1, a2 stand for the classes.
    voa = hamming()
    zero, ones = BinaryWord.zero(8), BinaryWord.ones(8)
    lab = {(b, a): voa.label(b, BinaryWord(8, a)) for b in voa.betas() for a in range(256)}
    fused: dict = {}
    bad = pairs = 0
    for b1 in (zero, ones):
        for b2 in voa.betas():
            b = b1 + b2
            for a1 in range(256):
                m1 = lab[b1, a1]
                for a2 in range(256):
                    m2 = lab[b2, a2]
                    key = (m1, m2)
                    if key not in fused:
                        fused[key] = voa.fuse(m1, m2)
                    pairs += 1
                    if fused[key] != lab[b, a1 ^ a2]:
                        bad += 1
    return bad == 0, "fusion rule holds for every representative pair", f"{bad}/{pairs} failures"


# -- characters -------------------------------------------------------------------


@check("characters", "characters.J_two_routes")
def _(cfg):
    n = defaults.J_ROUTE_ORDER
    try:
        J(n)
        return True, f"routes agree through q^{n}", "agree"
    except ArithmeticError as exc:
        return False, f"routes agree through q^{n}", str(exc)


@check("characters", "characters.J_leading")
def _(cfg):
    j = J(1)
    got = [j.coeff(-1), j.coeff(0), j.coeff(1)]
    return got == [1, 0, 196884], "[1, 0, 196884]", str(got)


@check("characters", "characters.theta_eta_constant")
def _(cfg):
    s = theta_D24plus(2) / eta(2) ** 24
    c = s.coeff(0)
    return c == 1128, "1128", str(c)


@check("characters", "characters.ising_product_identity")
def _(cfg):
    n = cfg.order
    lhs = ising_char(0, n) + ising_char(Fraction(1, 2), n)
    # q^{-1/48} prod_{n>=0}(1 + q^{n+1/2}); NS_PLUS carries no prefactor
    rhs = NS_PLUS.series(n + 1).shift(to_index(Fraction(-1, 48))).truncate(48 * n)
    lhs = lhs.truncate(48 * n)
    return lhs == rhs, f"ch_0 + ch_1/2 = product through q^{n}", "equal" if lhs == rhs else "differ"


@check("characters", "characters.hamming_weight2")
def _(cfg):
    ch = code_voa_character(codes.weight_distribution(codes.hamming8()), 2)
    c = ch.coeff(Fraction(2) - Fraction(8, 48))
    return c == 22, "22", str(c)


@check("characters", "characters.C_weight2")
def _(cfg):
    wc = codes.macwilliams(codes.weight_distribution(codes.moonshine_D()), 7, 48)
    ch = code_voa_character(wc, 1)
    c = ch.coeff(1)
    want = 48 + wc.counts[4]
    return c == want, f"48 + A4 = {want}", str(c)


@check("characters", "characters.hamming_induced_vs_direct")
def _(cfg):
    voa = hamming()
    order = defaults.CHARACTER_ORDER
    bad = [
        str(m)
        for m in voa.labels()
        if induced_module_character(m, order, voa) != direct_module_character(m, order, voa)
    ]
    return not bad, "induced = direct for all 88 labels", _short(f"mismatches: {bad}")


@check("characters", "characters.hamming_half_integral_labels")
def _(cfg):
    voa = hamming()
    good = [m for m in voa.labels() if (2 * voa.lowest_weight(m)).denominator == 1]
    betas = {m.beta for m in good}
    ok = len(good) == 32 and betas == {BinaryWord.zero(8), BinaryWord.ones(8)}
    return ok, "32 labels, beta in {0^8, 1^8}", f"{len(good)} labels, betas {sorted(map(str, betas))}"


# -- inequality -------------------------------------------------------------------


def _violations(lo: QSeries, hi: QSeries) -> Result:
    bad = coeffwise_violations(lo, hi)
    detail = ", ".join(f"q^{e}: {a} > {b}" for e, a, b in bad[:3])
    return not bad, "no coefficientwise violations", f"{len(bad)} violations; {detail}"


@check("inequality", "inequality.f_bound_lower_coeffwise")
def _(cfg):
    return _violations(f_lower_bound(cfg.order), f_bound(cfg.order))


@check("inequality", "inequality.f_bound_lower_on_grid")
def _(cfg):
    # Near q = 1 the P- term is below double precision, so the two sides
    # agree to rounding; compare logs with a relative tolerance.
    tol = defaults.RATIO_REL_TOL
    bad = []
    for q in cfg.grid:
        lo, hi = F_LOWER_SPEC.log_evaluate(q), F_BOUND_REAL.log_evaluate(q)
        if lo - hi > tol * max(1.0, abs(hi)):
            bad.append(q)
    return not bad, "lower bound <= f at every grid point", f"violations at {bad}"


@check("inequality", "inequality.J_le_3NS")
def _(cfg):
    ns, _r = fermionic_products(cfg.order)
    return _violations(J(cfg.order) + QSeries({0: 1128}, 48 * cfg.order), ns * 3)


@check("inequality", "inequality.R_le_2NS")
def _(cfg):
    ns, r = fermionic_products(cfg.order)
    return _violations(r, ns * 2)


@check("inequality", "inequality.ratio_increasing")
def _(cfg):
    rep = ratio_divergence_check(list(cfg.grid))
    ok = rep.positive and rep.strictly_increasing
    return ok, "positive and strictly increasing", json.dumps(rep.as_dict())


@check("inequality", "inequality.ratio_oracle")
def _(cfg):
    rep = ratio_divergence_check(list(cfg.grid))
    registered = [(q, r) for q, r in rep.values if q in defaults.RATIO_ORACLE]
    if not registered:
        return None, "registered oracle values", "no grid point has a registered value"
    errs = {q: abs(r / defaults.RATIO_ORACLE[q] - 1) for q, r in registered}
    worst = max(errs.values())
    return worst <= defaults.RATIO_REL_TOL, f"rel err <= {defaults.RATIO_REL_TOL}", f"max rel err {worst:.3e}"


@check("inequality", "inequality.ratio_growth")
def _(cfg):
    rep = ratio_divergence_check(list(cfg.grid))
    return (
        rep.growth > defaults.RATIO_GROWTH_THRESHOLD,
        f"growth > {defaults.RATIO_GROWTH_THRESHOLD:g}",
        f"{rep.growth:.6e}",
    )


# -- hamming ----------------------------------------------------------------------


@check("hamming", "hamming.form_invariance")
def _(cfg):
    bad = griess.invariance_failures()
    return not bad, "(ab, c) = (b, ac) on all 22^3 triples", f"{len(bad)} failures"


@check("hamming", "hamming.frames")
def _(cfg):
    res = {
        "e": griess.is_frame(griess.e_frame()),
        "d": griess.is_frame(griess.d_frame()),
        "f": griess.is_frame(griess.f_frame()),
    }
    return all(res.values()), "e, d, f are frames", str(res)


@check("hamming", "hamming.non_frame")
def _(cfg):
    vs = [griess.e(i) for i in range(1, 8)] + [griess.omega()]
    ok = not griess.is_frame(vs)
    return ok, "{e1..e7, omega} is not a frame", str(ok)


@check("hamming", "hamming.s_vector_count")
def _(cfg):
    vs = {griess.s_vector(BinaryWord(8, x)) for x in range(256)}
    return len(vs) == 16, "16", str(len(vs))


@check("hamming", "hamming.alternative_constants")
def _(cfg):
    eq_alt = bool(griess.invariance_failures(griess.build_table(eq=1)))
    ee_alt = not griess.is_frame(griess.e_frame(), griess.build_table(ee=1))
    ok = eq_alt and ee_alt
    return ok, "eq=1 breaks invariance, ee=1 breaks frames", f"{eq_alt}, {ee_alt}"


# -- driver -----------------------------------------------------------------------

CHECK_IDS = tuple(cid for s in SUITES for cid, _fn in REGISTRY[s])


def suite_names(suite: str) -> tuple[str, ...]:
    if suite == "all":
        return SUITES
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return (suite,)


def run_check(check_id: str, fn, cfg: Config) -> Check:
    start = time.perf_counter()
    reason = None
    try:
        passed, expected, actual = fn(cfg)
    except CapacityError as exc:
        passed, expected, actual = False, "completes within capacity", str(exc)
        reason = f"capacity:{exc.reason}"
    ms = int((time.perf_counter() - start) * 1000)
    if passed is None:
        status = "skipped"
    else:
        status = "pass" if passed else "fail"
    return Check(check_id, status, expected, actual, ms, reason)


def run(suite: str = "all", cfg: Config | None = None, only: set[str] | None = None) -> VerificationReport:
    cfg = cfg or Config(order=defaults.default_order())
    report = VerificationReport(
        config=dict(cfg.as_dict(), suite=suite),
        generated_at=_dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    )
    for s in suite_names(suite):
        for cid, fn in REGISTRY[s]:
            if only is None or cid in only:
                report.checks.append(run_check(cid, fn, cfg))
    return report
