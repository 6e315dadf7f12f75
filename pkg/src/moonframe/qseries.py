"""
Truncated q-expansions with exponents in (1/48)Z and exact rational coefficients.

A series stores ``{index: coefficient}`` where index k stands for q^(k/48),
plus a truncation index: coefficients above it are unknown.  Builders take an
``order`` N meaning "known through q^N", i.e. truncation index 48*N.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, inf
from typing import Iterable, Mapping, Union

from .errors import InconsistencyError, InputError

UNIT = 48
Number = Union[int, Fraction]


def _norm(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def to_index(exponent) -> int:
    """Exponent (int, Fraction or 'a/b' string) to a 1/48 index."""
    e = Fraction(exponent) * UNIT
    if e.denominator != 1:
        raise InputError(f"exponent {exponent} not in (1/48)Z")
    return e.numerator


def to_exponent(index: int) -> Fraction:
    return Fraction(index, UNIT)


class QSeries:
    """Immutable truncated series; see module docstring for the index convention."""

    __slots__ = ("_c", "_trunc", "_keys")

    def __init__(self, coeffs: Mapping[int, Number] | None = None, trunc: float = inf):
        c = {}
        for k, v in (coeffs or {}).items():
            if v and k <= trunc:
                c[int(k)] = _norm(v)
        self._c = c
        self._trunc = trunc
        self._keys = None

    # construction helpers
    @classmethod
    def monomial(cls, index: int, coeff: Number = 1) -> QSeries:
        """Exact term coeff*q^(index/48)."""
        return cls({index: coeff})

    @classmethod
    def one(cls) -> QSeries:
        return cls({0: 1})

    @property
    def trunc(self):
        return self._trunc

    @property
    def coeffs(self) -> dict[int, Number]:
        return dict(self._c)

    def keys(self) -> list[int]:
        if self._keys is None:
            self._keys = sorted(self._c)
        return self._keys

    @property
    def valuation(self):
        """Lowest index with nonzero coefficient (trunc+1 for a zero series)."""
        if self._c:
            return self.keys()[0]
        return self._trunc + 1

    @property
    def is_exact(self) -> bool:
        return self._trunc == inf

    def __getitem__(self, index: int) -> Number:
        if index > self._trunc:
            raise InputError(f"index {index} above truncation {self._trunc}")
        return self._c.get(index, 0)

    def coeff(self, exponent) -> Number:
        """Coefficient of q^exponent."""
        return self[to_index(exponent)]

    def items(self):
        return ((k, self._c[k]) for k in self.keys())

    def truncate(self, trunc) -> QSeries:
        if trunc > self._trunc:
            raise InputError(f"cannot raise truncation {self._trunc} to {trunc}")
        return QSeries(self._c, trunc)

    def shift(self, index: int) -> QSeries:
        """Multiply by q^(index/48)."""
        return QSeries({k + index: v for k, v in self._c.items()}, self._trunc + index)

    def stride(self) -> int:
        """gcd of index gaps from the leading term (UNIT for monomials and zero)."""
        ks = self.keys()
        g = 0
        for k in ks[1:]:
            g = gcd(g, k - ks[0])
        return g or UNIT

    # arithmetic
    def __add__(self, other) -> QSeries:
        if not isinstance(other, QSeries):
            other = QSeries({0: other})
        t = min(self._trunc, other._trunc)
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return QSeries(c, t)

    __radd__ = __add__

    def __neg__(self) -> QSeries:
        return QSeries({k: -v for k, v in self._c.items()}, self._trunc)

    def __sub__(self, other) -> QSeries:
        if not isinstance(other, QSeries):
            other = QSeries({0: other})
        return self + (-other)

    def __rsub__(self, other) -> QSeries:
        return (-self) + other

    def __mul__(self, other) -> QSeries:
        if not isinstance(other, QSeries):
            other = _norm(Fraction(other)) if isinstance(other, float) else other
            return QSeries({k: v * other for k, v in self._c.items()}, self._trunc)
        t = min(self._trunc + other.valuation, other._trunc + self.valuation)
        c: dict[int, Number] = {}
        bk = other.keys()
        bc = other._c
        for i in self.keys():
            a = self._c[i]
            lim = t - i
            for j in bk:
                if j > lim:
                    break
                k = i + j
                c[k] = c.get(k, 0) + a * bc[j]
        return QSeries(c, t)

    __rmul__ = __mul__

    def __truediv__(self, other) -> QSeries:
        if isinstance(other, QSeries):
            return self * other.recip()
        return self * _norm(1 / Fraction(other))

    def recip(self) -> QSeries:
        if not self._c:
            raise ZeroDivisionError("reciprocal of a series with no known nonzero term")
        v = self.valuation
        lead = Fraction(self._c[v])
        rel = self._trunc - v
        offs = [(k - v, self._c[k]) for k in self.keys()[1:] if k - v <= rel]
        if rel == inf:
            if offs:
                raise InputError("reciprocal of an exact non-monomial needs a truncation")
            return QSeries({-v: 1 / lead})
        step = 0
        for o, _ in offs:
            step = gcd(step, o)
        step = step or UNIT
        inv = 1 / lead
        b = {0: _norm(inv)}
        for k in range(step, rel + 1, step):
            s = 0
            for o, a in offs:
                if o > k:
                    break
                bv = b.get(k - o)
                if bv:
                    s += a * bv
            if s:
                b[k] = _norm(-s * inv)
        return QSeries({k - v: x for k, x in b.items()}, rel - v)

    def __pow__(self, k: int) -> QSeries:
        if k < 0:
            return self.recip() ** (-k)
        result = QSeries.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # comparison
    def agrees(self, other: QSeries, through=None) -> bool:
        """Coefficients equal up to min(truncations) (or ``through`` if smaller)."""
        t = min(self._trunc, other._trunc)
        if through is not None:
            t = min(t, through)
        keys = {k for k in self._c if k <= t} | {k for k in other._c if k <= t}
        return all(self._c.get(k, 0) == other._c.get(k, 0) for k in keys)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self._trunc == other._trunc and self._c == other._c

    def __hash__(self):
        return hash((self._trunc, frozenset(self._c.items())))

    def __repr__(self) -> str:
        terms = []
        for k, v in list(self.items())[:6]:
            terms.append(f"{v}*q^({to_exponent(k)})")
        more = " + ..." if len(self._c) > 6 else ""
        return f"QSeries({' + '.join(terms) or '0'}{more}; O(q^{to_exponent(self._trunc) if self._trunc != inf else 'inf'}))"


def coeffwise_leq(a: QSeries, b: QSeries) -> bool:
    """True iff every coefficient of a is <= that of b, through the common truncation."""
    return not coeffwise_violations(a, b)


def coeffwise_violations(a: QSeries, b: QSeries) -> list[tuple[Fraction, Number, Number]]:
    t = min(a.trunc, b.trunc)
    keys = sorted({k for k in a.coeffs if k <= t} | {k for k in b.coeffs if k <= t})
    ac, bc = a.coeffs, b.coeffs
    return [(to_exponent(k), ac.get(k, 0), bc.get(k, 0)) for k in keys if ac.get(k, 0) > bc.get(k, 0)]


# -- infinite products --------------------------------------------------------


def _binomial_terms(step: int, sign: int, power: int, trunc) -> dict[int, Number]:
    """(1 + sign*q^(step/48))^power through index ``trunc``."""
    out = {0: 1}
    c = 1
    i = 0
    while True:
        i += 1
        if i * step > trunc or (power >= 0 and i > power):
            break
        c = c * (power - i + 1) // i if power >= 0 else Fraction(c * (power - i + 1), i)
        c = _norm(c)
        if c:
            out[i * step] = c * sign**i
    return out


@dataclass(frozen=True)
class ProductFactor:
    """prod_{n >= 0} (1 + sign * q^(start + n))^power."""

    start: Fraction
    sign: int
    power: int


@dataclass(frozen=True)
class ProductSpec:
    """constant * q^q_power * product of factor families."""

    factors: tuple[ProductFactor, ...]
    constant: Fraction = Fraction(1)
    q_power: Fraction = Fraction(0)

    def series(self, order: int) -> QSeries:
        shift = to_index(self.q_power)
        t = UNIT * order - shift
        acc = QSeries({0: 1}, t)
        for f in self.factors:
            s0 = to_index(f.start)
            if s0 <= 0:
                raise InputError("factor exponents must be positive")
            k = s0
            while k <= t:
                acc = acc * QSeries(_binomial_terms(k, f.sign, f.power, t), t)
                k += UNIT
        return (acc * _norm(Fraction(self.constant))).shift(shift)

    def log_evaluate(self, q: float) -> float:
        """Natural log of the (positive) product at real 0 < q < 1."""
        logs = [math.log(self.constant), float(self.q_power) * math.log(q)]
        for f in self.factors:
            n = 0
            while True:
                t = q ** (float(f.start) + n)
                if t < 1e-15:
                    break
                logs.append(f.power * math.log1p(f.sign * t))
                n += 1
        return math.fsum(logs)

    def evaluate(self, q: float) -> float:
        return math.exp(self.log_evaluate(q))


def eval_real(spec, q: float) -> float:
    """Evaluate a product-type spec as a real function on 0 < q <= 0.99.

    Infinite products are evaluated factor by factor until the factor is
    within 1e-15 of 1; truncated series are never used here.
    """
    if not (0 < q <= 0.99):
        raise InputError(f"q = {q} outside (0, 0.99]")
    return spec.evaluate(q)


HALF = Fraction(1, 2)

EULER = ProductSpec((ProductFactor(Fraction(1), -1, 1),))  # prod (1 - q^n)
ETA = ProductSpec((ProductFactor(Fraction(1), -1, 1),), q_power=Fraction(1, 24))
NS_PLUS = ProductSpec((ProductFactor(HALF, 1, 1),))  # prod_{n>=0} (1 + q^{n+1/2})
NS_MINUS = ProductSpec((ProductFactor(HALF, -1, 1),))
PARTITIONS_FROM_2 = ProductSpec((ProductFactor(Fraction(2), -1, -1),))  # prod_{n>=2} 1/(1 - q^n)


def eta(order: int) -> QSeries:
    if order < 1:
        raise InputError("eta needs order >= 1")
    return ETA.series(order)


def euler_product(order: int) -> QSeries:
    return EULER.series(order)


def jacobi_thetas(order: int) -> tuple[QSeries, QSeries, QSeries]:
    """(theta2, theta3, theta4) with theta3 = sum_k q^(k^2/2)."""
    t = UNIT * order
    th2, th3, th4 = {}, {}, {}
    k = 0
    while 24 * k * k <= t:
        mult = 1 if k == 0 else 2
        th3[24 * k * k] = mult
        th4[24 * k * k] = mult * (-1) ** k
        k += 1
    k = 0
    while 6 * (2 * k + 1) ** 2 <= t:
        th2[6 * (2 * k + 1) ** 2] = 2  # k and -k-1
        k += 1
    return QSeries(th2, t), QSeries(th3, t), QSeries(th4, t)


def theta_D24plus(order: int) -> QSeries:
    """Theta series of the Niemeier lattice D24+ as (theta2^24 + theta3^24 + theta4^24)/2."""
    th2, th3, th4 = jacobi_thetas(order)
    return (th2**24 + th3**24 + th4**24) * Fraction(1, 2)


def _sigma3(n: int) -> int:
    return sum(d**3 for d in range(1, n + 1) if n % d == 0)


def eisenstein_E4(order: int) -> QSeries:
    return QSeries({UNIT * n: (240 * _sigma3(n) if n else 1) for n in range(order + 1)}, UNIT * order)


def J_from_theta(order: int) -> QSeries:
    """theta_{D24+}/eta^24 - 1128."""
    e = eta(order + 2) ** 24
    return (theta_D24plus(order + 2) * e.recip() - 1128).truncate(UNIT * order)


def J_from_E4(order: int) -> QSeries:
    """E4^3/eta^24 - 744."""
    e = eta(order + 2) ** 24
    return (eisenstein_E4(order + 2) ** 3 * e.recip() - 744).truncate(UNIT * order)


@lru_cache(maxsize=None)
def j_two_routes(order: int) -> QSeries:
    """J(q) computed both ways; raises InconsistencyError if they differ."""
    if order > 60:
        raise InputError("order capped at 60")
    a, b = J_from_theta(order), J_from_E4(order)
    if a != b:
        raise InconsistencyError("the lattice and Eisenstein routes to J disagree")
    return a


def J(order: int) -> QSeries:
    return j_two_routes(order)


# -- Ising characters -----------------------------------------------------------

ISING_WEIGHTS = (Fraction(0), HALF, Fraction(1, 16))


def _h(h) -> Fraction:
    h = Fraction(h)
    if h not in ISING_WEIGHTS:
        raise InputError(f"Ising weight must be 0, 1/2 or 1/16, got {h}")
    return h


@lru_cache(maxsize=None)
def ising_normalized(h: Fraction, trunc: int) -> QSeries:
    """q^-(h - 1/48) * ch_h: a series with constant term 1, known through ``trunc``."""
    h = _h(h)
    if h == Fraction(1, 16):
        acc = QSeries({0: 1}, trunc)
        k = UNIT
        while k <= trunc:
            acc = acc * QSeries({0: 1, k: 1}, trunc)
            k += UNIT
        return acc
    plus = _half_product(1, trunc + 24)
    minus = _half_product(-1, trunc + 24)
    if h == 0:
        return ((plus + minus) * Fraction(1, 2)).truncate(trunc)
    return ((plus - minus) * Fraction(1, 2)).shift(-24).truncate(trunc)


@lru_cache(maxsize=None)
def _half_product(sign: int, trunc: int) -> QSeries:
    acc = QSeries({0: 1}, trunc)
    k = 24
    while k <= trunc:
        acc = acc * QSeries({0: 1, k: sign}, trunc)
        k += UNIT
    return acc


def ising_leading_index(h) -> int:
    return to_index(_h(h) - Fraction(1, 48))


def ising_char(h, order: int) -> QSeries:
    """Character of L(1/2, h), known through q^order."""
    lead = ising_leading_index(h)
    return ising_normalized(_h(h), UNIT * order - lead).shift(lead)


# -- export / import ------------------------------------------------------------


def _fmt(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def series_to_json(s: QSeries) -> dict:
    if s.trunc == inf:
        raise InputError("exact series have no truncation to export")
    terms = []
    for k, v in s.items():
        v = Fraction(v)
        terms.append([k, v.numerator, v.denominator])
    return {"unit": UNIT, "truncation": s.trunc, "terms": terms}


def series_from_json(obj) -> QSeries:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if obj.get("unit") != UNIT:
        raise InputError("only unit 48 is supported")
    return QSeries({k: Fraction(n, d) for k, n, d in obj["terms"]}, obj["truncation"])


def series_rows(s: QSeries) -> list[tuple[Fraction, Number]]:
    """(exponent, coefficient) on the series' own stride, zeros included."""
    if not s.coeffs:
        return []
    step = s.stride()
    rows = []
    k = s.valuation
    while k <= s.trunc:
        rows.append((to_exponent(k), s.coeffs.get(k, 0)))
        k += step
    return rows


def series_to_csv(s: QSeries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["exponent", "coefficient"])
    for e, c in series_rows(s):
        w.writerow([_fmt(e), _fmt(c)])
    return buf.getvalue()


def series_from_csv(text: str, trunc=None) -> QSeries:
    """Parse the CSV form; truncation defaults to the largest listed exponent."""
    rows = list(csv.reader(io.StringIO(text)))
    if rows and rows[0] and rows[0][0] == "exponent":
        rows = rows[1:]
    coeffs = {}
    top = None
    for e, c in rows:
        k = to_index(Fraction(e))
        coeffs[k] = Fraction(c)
        top = k if top is None else max(top, k)
    if trunc is None:
        trunc = top if top is not None else 0
    return QSeries(coeffs, trunc)


def series_sum(items: Iterable[QSeries]) -> QSeries:
    total = None
    for s in items:
        total = s if total is None else total + s
    if total is None:
        raise InputError("empty sum")
    return total
