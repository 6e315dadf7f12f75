"""Code-VOA and module characters, the fermionic comparison series and the
bound/ratio functions of the frame-character inequality."""

import itertools
import random
from fractions import Fraction
from math import comb

import mpmath
import pytest

from moonframe import codes, defaults
from moonframe.characters import (
    F_BOUND_REAL,
    F_LOWER_SPEC,
    code_voa_character,
    direct_module_character,
    f_bound,
    f_lower_bound,
    fermionic_products,
    induced_module_character,
    ratio,
    ratio_divergence_check,
)
from moonframe.codes import BinaryWord, WeightDistribution
from moonframe.errors import InputError
from moonframe.modules import CodeVOA, hamming, moonshine
from moonframe.qseries import HALF, UNIT, J, QSeries, coeffwise_leq, ising_char
from tests.conftest import span

SIXTEENTH = Fraction(1, 16)


# -- oracle: character of M(beta, gamma) by direct summation ----------------------


def brute_max_self_orthogonal_size(words):
    """Size of the largest self-orthogonal subspace spanned by the given words."""
    words = [w for w in words if w]
    best = 1
    for k in range(1, 6):
        for combo in itertools.combinations(words, k):
            if all((x & y).bit_count() % 2 == 0 for x in combo for y in combo):
                best = max(best, len(span(combo)))
    return best


def oracle_character(n, c_words, beta, gamma, order):
    """sum over c in C of ch_0^a ch_{1/2}^b ch_{1/16}^|beta|, divided by |H_beta|."""
    cb = [c for c in c_words if c & ~beta == 0]
    h_size = brute_max_self_orthogonal_size(cb)
    counts = {}
    for c in c_words:
        g = (gamma ^ c) & ~beta
        key = (n - beta.bit_count() - g.bit_count(), g.bit_count())
        counts[key] = counts.get(key, 0) + 1
    o = order + 1
    c0, ch, c16 = ising_char(0, o), ising_char(HALF, o), ising_char(SIXTEENTH, o)
    total = QSeries({}, UNIT * order)
    for (a, b), k in counts.items():
        assert k % h_size == 0
        term = c0**a * ch**b * c16 ** beta.bit_count()
        total = total + term.truncate(min(term.trunc, UNIT * order)) * (k // h_size)
    return total


class TestCodeVOACharacter:
    def test_trivial_code(self):
        ch = code_voa_character(WeightDistribution.from_dict(1, {0: 1}), 5)
        assert ch == ising_char(0, 5)

    def test_hamming_weight2(self):
        ch = code_voa_character(codes.weight_distribution(codes.hamming8()), 3)
        assert ch.coeff(2 - Fraction(8, 48)) == 22
        assert ch.coeff(1 - Fraction(8, 48)) == 0
        assert ch.coeff(-Fraction(8, 48)) == 1

    def test_moonshine_weight2(self):
        wc = codes.macwilliams(codes.weight_distribution(codes.moonshine_D()), 7, 48)
        ch = code_voa_character(wc, 2)
        assert (ch.coeff(-1), ch.coeff(0), ch.coeff(1)) == (1, 0, 48 + wc[4]) == (1, 0, 3348)

    def test_nonnegative_integers(self):
        ch = code_voa_character(codes.weight_distribution(codes.reed_muller(2, 4)), 4)
        assert all(isinstance(v, int) and v > 0 for v in ch.coeffs.values())


class TestInducedCharacter:
    def test_hamming_all_labels_vs_oracle(self):
        voa = hamming()
        words = list(voa.C.words())
        for m in voa.labels():
            want = oracle_character(8, words, m.beta.bits, voa.lift(m.gamma).bits, 3)
            assert induced_module_character(m, 3, voa) == want, m

    def test_rm_analog_vs_direct(self):
        rm = codes.reed_muller(1, 4)
        voa = CodeVOA([BinaryWord(16, r) for r in rm.rows])
        for m in voa.labels():
            assert induced_module_character(m, 2, voa) == direct_module_character(m, 2, voa)

    def test_hamming_twisted_is_pure_sixteenth(self):
        voa = hamming()
        want = ising_char(SIXTEENTH, 4) ** 8
        for s in range(16):
            m = voa.label(BinaryWord.ones(8), voa.lift(s))
            got = induced_module_character(m, 3, voa)
            assert got == want.truncate(got.trunc)

    def test_untwisted_is_coset_character(self):
        voa = moonshine()
        rng = random.Random(0)
        for _ in range(5):
            m = voa.label(BinaryWord.zero(48), voa.lift(rng.getrandbits(7)))
            dist = codes.coset_weight_distribution(voa.C, voa.lift(m.gamma))
            assert induced_module_character(m, 2, voa) == code_voa_character(dist, 2)

    def test_full_beta_leading_exponent(self):
        voa = moonshine()
        m = voa.label(BinaryWord.ones(48), voa.lift(5))
        ch = induced_module_character(m, 3, voa)
        assert ch.valuation == UNIT * 2
        assert ch.coeff(2) == 2 ** (41 - 24)

    def test_leading_exponent_matches_lowest_weight(self):
        voa = moonshine()
        rng = random.Random(1)
        for _ in range(60):
            m = voa.label(voa.d_element(rng.getrandbits(7)), voa.lift(rng.getrandbits(7)))
            ch = induced_module_character(m, 3, voa)
            assert Fraction(ch.valuation, UNIT) == voa.lowest_weight(m) - 1
            assert all(isinstance(v, int) and v > 0 for v in ch.coeffs.values())


# -- fermionic series and bounds --------------------------------------------------


class TestFermionic:
    def test_leading_terms(self):
        ns, r = fermionic_products(3)
        assert ns.valuation == r.valuation == -UNIT
        assert ns.coeff(-1) == r.coeff(-1) == 1

    def test_constant_terms(self):
        ns, r = fermionic_products(3)
        assert ns.coeff(-HALF) == 48
        assert ns.coeff(0) == comb(48, 2) == 1128
        assert r.coeff(0) == 48

    def test_J_chain(self):
        ns, _r = fermionic_products(30)
        j = J(30) + QSeries({0: 1128}, UNIT * 30)
        assert coeffwise_leq(j, ns * 3)

    def test_R_below_2NS(self):
        ns, r = fermionic_products(30)
        assert coeffwise_leq(r, ns * 2)


class TestFBound:
    def test_leading(self):
        f = f_bound(4)
        assert f.valuation == -UNIT and f.coeff(-1) == 1

    def test_only_integer_exponents(self):
        f = f_bound(12)
        assert f.coeff(-HALF) == 0
        assert all(k % UNIT == 0 for k in f.coeffs)

    def test_dyadic_coefficients(self):
        f = f_bound(10)
        for v in f.coeffs.values():
            d = Fraction(v).denominator
            assert d & (d - 1) == 0

    def test_lower_bound_has_half_powers(self):
        # the lower bound keeps odd half-powers that the symmetrised f cancels,
        # so a coefficientwise comparison fails at q^{-1/2}
        lo, f = f_lower_bound(2), f_bound(2)
        assert lo.coeff(-HALF) == Fraction(47, 2**47) and f.coeff(-HALF) == 0
        assert not coeffwise_leq(lo, f)

    @pytest.mark.parametrize("q", [0.05, 0.3, 0.5, 0.7])
    def test_lower_bound_as_functions(self, q):
        assert F_LOWER_SPEC.evaluate(q) < F_BOUND_REAL.evaluate(q)

    @pytest.mark.parametrize("q", [0.9, 0.95, 0.99])
    def test_lower_bound_in_log_space(self, q):
        # P- is below double precision here; compare logs with a relative slack
        lo, hi = F_LOWER_SPEC.log_evaluate(q), F_BOUND_REAL.log_evaluate(q)
        assert lo <= hi + 1e-12 * max(1.0, abs(hi))

    @pytest.mark.parametrize("q", [0.05, 0.1, 0.2])
    def test_series_vs_function(self, q):
        # well inside the disc, the truncated series converges to the product
        f = f_bound(40)
        approx = sum(float(c) * q ** (k / UNIT) for k, c in f.items())
        assert F_BOUND_REAL.evaluate(q) == pytest.approx(approx, rel=1e-9)


# -- ratio ------------------------------------------------------------------------


def mp_ratio(q):
    mpmath.mp.dps = 40
    q = mpmath.mpf(q)
    a = mpmath.qp(-mpmath.sqrt(q), q, maxterms=10**6)
    b = mpmath.qp(q, q, maxterms=10**6) / (1 - q)
    return 1 / (3 * mpmath.mpf(2) ** 47 * a * b)


class TestRatio:
    @pytest.mark.parametrize("q", [0.3, 0.5, 0.8, 0.99])
    def test_against_mpmath(self, q):
        assert ratio(q) == pytest.approx(float(mp_ratio(q)), rel=1e-12)

    def test_registered_values(self):
        for q, want in defaults.RATIO_ORACLE.items():
            assert ratio(q) == pytest.approx(want, rel=defaults.RATIO_REL_TOL)

    def test_divergence_report(self):
        rep = ratio_divergence_check(list(defaults.GRID))
        assert rep.positive and rep.strictly_increasing
        assert rep.growth > defaults.RATIO_GROWTH_THRESHOLD
        assert [q for q, _ in rep.values] == sorted(defaults.GRID)

    def test_unsorted_grid(self):
        rep = ratio_divergence_check([0.9, 0.5, 0.7])
        assert [q for q, _ in rep.values] == [0.5, 0.7, 0.9]

    def test_bad_grid(self):
        with pytest.raises(InputError):
            ratio_divergence_check([])
        with pytest.raises(InputError):
            ratio_divergence_check([0.5, 1.0])
