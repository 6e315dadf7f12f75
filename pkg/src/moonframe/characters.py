"""
Characters of code VOAs and their modules, the fermionic comparison series,
and the series/real-function pieces of the frame-character inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import codes
from .codes import WeightDistribution
from .errors import InputError
from .modules import CodeVOA, ModuleLabel, moonshine
from .qseries import (
    HALF,
    NS_MINUS,
    NS_PLUS,
    PARTITIONS_FROM_2,
    UNIT,
    ProductFactor,
    ProductSpec,
    QSeries,
    eval_real,
    ising_leading_index,
    ising_normalized,
)

SIXTEENTH = Fraction(1, 16)
LEAD = {h: ising_leading_index(h) for h in (Fraction(0), HALF, SIXTEENTH)}


@lru_cache(maxsize=None)
def _npow(h: Fraction, k: int, trunc: int) -> QSeries:
    if k == 0:
        return QSeries({0: 1}, trunc)
    return _npow(h, k - 1, trunc) * ising_normalized(h, trunc)


def ising_monomial(n0: int, nhalf: int, n16: int, order: int, pad: int) -> QSeries:
    """ch_0^n0 * ch_{1/2}^nhalf * ch_{1/16}^n16 known through q^order.

    ``pad`` fixes the internal truncation (UNIT*order + pad) so that calls
    sharing it share the power cache.
    """
    shift = n0 * LEAD[Fraction(0)] + nhalf * LEAD[HALF] + n16 * LEAD[SIXTEENTH]
    top = UNIT * order
    if shift > top:
        return QSeries({}, top)
    t = top + pad
    if top - shift > t:
        raise InputError("pad too small for this monomial")
    prod = _npow(Fraction(0), n0, t) * _npow(HALF, nhalf, t) * _npow(SIXTEENTH, n16, t)
    return prod.truncate(top - shift).shift(shift)


def _coset_sum(dist: WeightDistribution, n16: int, order: int, pad: int) -> QSeries:
    n = dist.length
    total = QSeries({}, UNIT * order)
    for w, a in enumerate(dist.counts):
        if a:
            total = total + ising_monomial(n - w, w, n16, order, pad) * a
    return total


def code_voa_character(W: WeightDistribution, order: int) -> QSeries:
    """sum_w A_w ch_0^(n-w) ch_{1/2}^w."""
    return _coset_sum(W, 0, order, W.length)


def induced_module_character(m: ModuleLabel, order: int, voa: CodeVOA | None = None) -> QSeries:
    """[C_beta : H_beta] * ch_{1/16}^|beta| * (coset character of p_{beta^c}(gamma + C))."""
    voa = voa or moonshine()
    sec = voa.sector(m.beta)
    dist = codes.coset_weight_distribution(sec.outer, voa.outer_shift(m))
    return _coset_sum(dist, m.beta.weight, order, voa.n) * sec.multiplicity


def direct_module_character(m: ModuleLabel, order: int, voa: CodeVOA) -> QSeries:
    """Character by summing the T-module summands over C / H_beta word by word.

    Independent of the projection/coset-enumerator route; small codes only.
    """
    sec = voa.sector(m.beta)
    gamma = voa.lift(m.gamma).bits
    beta = m.beta.bits
    counts: dict[tuple[int, int, int], int] = {}
    for c in voa.C.words():
        g = (gamma ^ c) & ~beta
        key = (voa.n - m.beta.weight - g.bit_count(), g.bit_count(), m.beta.weight)
        counts[key] = counts.get(key, 0) + 1
    size = 1 << sec.h_beta.dimension
    total = QSeries({}, UNIT * order)
    for (a, b, c), k in counts.items():
        if k % size:
            raise InputError("coset count not divisible by |H_beta|")
        total = total + ising_monomial(a, b, c, order, voa.n) * (k // size)
    return total


# -- fermionic comparison series and the inequality chain ----------------------

NS_SPEC = ProductSpec((ProductFactor(HALF, 1, 48),), q_power=Fraction(-1))
R_SPEC = ProductSpec((ProductFactor(Fraction(1), 1, 48),), q_power=Fraction(-1))
F_LOWER_SPEC = ProductSpec(
    (ProductFactor(HALF, 1, 47), ProductFactor(Fraction(2), -1, -1)),
    constant=Fraction(1, 2**47),
    q_power=Fraction(-1),
)
RATIO_SPEC = ProductSpec(
    (ProductFactor(HALF, 1, -1), ProductFactor(Fraction(2), -1, -1)),
    constant=Fraction(1, 3 * 2**47),
)


def fermionic_products(order: int) -> tuple[QSeries, QSeries]:
    """(NS, R) = (q^-1 prod_{n>=0}(1+q^{n+1/2})^48, q^-1 prod_{n>=1}(1+q^n)^48)."""
    return NS_SPEC.series(order), R_SPEC.series(order)


def f_bound(order: int) -> QSeries:
    """q^-1 2^-47 (P+ + P-)^47 prod_{n>=2} (1-q^n)^-1 with P+-= prod_{n>=0}(1 +- q^{n+1/2})."""
    s = NS_PLUS.series(order + 1) + NS_MINUS.series(order + 1)
    body = s**47 * PARTITIONS_FROM_2.series(order + 1) * Fraction(1, 2**47)
    return body.shift(-UNIT).truncate(UNIT * order)


def f_lower_bound(order: int) -> QSeries:
    """q^-1 2^-47 P+^47 prod_{n>=2} (1-q^n)^-1."""
    return F_LOWER_SPEC.series(order)


class FBoundReal:
    """f as a real function of q, from directly evaluated products."""

    def log_evaluate(self, q: float) -> float:
        plus = NS_PLUS.evaluate(q)
        minus = NS_MINUS.evaluate(q)
        return math.fsum(
            [47 * math.log((plus + minus) / 2), PARTITIONS_FROM_2.log_evaluate(q), -math.log(q)]
        )

    def evaluate(self, q: float) -> float:
        return math.exp(self.log_evaluate(q))


F_BOUND_REAL = FBoundReal()


def ratio(q: float) -> float:
    """(2^47 * 3)^-1 prod_{n>=0}(1+q^{n+1/2})^-1 prod_{n>=2}(1-q^n)^-1."""
    return eval_real(RATIO_SPEC, q)


@dataclass(frozen=True)
class RatioReport:
    values: tuple[tuple[float, float], ...]
    positive: bool
    strictly_increasing: bool
    growth: float  # value at the largest q over value at the smallest

    def as_dict(self) -> dict:
        return {
            "values": [[q, r] for q, r in self.values],
            "positive": self.positive,
            "strictly_increasing": self.strictly_increasing,
            "growth": self.growth,
        }


def ratio_divergence_check(grid: Sequence[float]) -> RatioReport:
    qs = sorted(grid)
    if not qs:
        raise InputError("empty grid")
    vals = tuple((q, ratio(q)) for q in qs)
    rs = [r for _, r in vals]
    return RatioReport(
        values=vals,
        positive=all(r > 0 for r in rs),
        strictly_increasing=all(a < b for a, b in zip(rs, rs[1:])),
        growth=rs[-1] / rs[0],
    )
