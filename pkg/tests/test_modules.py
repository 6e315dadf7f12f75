"""Module labels, equivalence, fusion and lowest weights for code VOAs."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moonframe import codes
from moonframe.codes import BinaryWord
from moonframe.errors import InputError
from moonframe.modules import (
    CodeVOA,
    census,
    coordinate_automorphism_class,
    fuse,
    fusion_table_csv,
    hamming,
    is_equivalent,
    label,
    lowest_weight,
    moonshine,
    tau_word,
)

N = 48
ZERO = BinaryWord.zero(N)
ONES = BinaryWord.ones(N)


def nu(i, n=N):
    return BinaryWord.unit(n, i)


@pytest.fixture(scope="module")
def all_labels():
    return sorted(moonshine().labels())


def random_codeword(code, rng):
    w = 0
    for r in code.rows:
        if rng.getrandbits(1):
            w ^= r
    return BinaryWord(code.length, w)


labels_st = st.builds(
    lambda b, g: (b, g), st.integers(0, 127), st.integers(0, 127)
)


def from_ints(b, g):
    voa = moonshine()
    return voa.label(voa.d_element(b), voa.lift(g))


class TestTauWord:
    def test_all_sixteenth(self):
        assert tau_word([Fraction(1, 16)] * 48) == ONES

    def test_all_zero(self):
        assert tau_word([0] * 48) == ZERO

    def test_mixed(self):
        h = [Fraction(1, 2), 0, Fraction(1, 16)] + [0] * 45
        assert str(tau_word(h)) == "001" + "0" * 45

    def test_invalid(self):
        with pytest.raises(InputError):
            tau_word([Fraction(1, 3)] + [0] * 47)
        with pytest.raises(InputError):
            tau_word([0] * 47)


class TestLabels:
    def test_vacuum_from_codeword(self):
        rng = random.Random(0)
        voa = moonshine()
        for _ in range(20):
            c = random_codeword(voa.C, rng)
            assert label(ZERO, c) == voa.vacuum()

    def test_shift_by_C(self):
        rng = random.Random(1)
        voa = moonshine()
        for _ in range(50):
            beta = voa.d_element(rng.getrandbits(7))
            g = BinaryWord(N, rng.getrandbits(N))
            c = random_codeword(voa.C, rng)
            assert label(beta, g) == label(beta, g + c)

    def test_distinct_units(self):
        assert label(ZERO, nu(0)) != label(ZERO, nu(1))

    def test_beta_not_in_D(self):
        with pytest.raises(InputError):
            label(nu(0), ZERO)

    def test_k_beta_is_C(self):
        # (H_beta)^{perp_beta} = H_beta sits inside C, so only C matters at length 48
        voa = moonshine()
        assert all(voa.sector(b).k_beta == voa.C for b in voa.betas())

    def test_tau_orthogonal_to_C(self, all_labels):
        C = moonshine().C
        betas = {m.beta.bits for m in all_labels}
        assert all((b & r).bit_count() % 2 == 0 for b in betas for r in C.rows)


class TestEquivalence:
    def test_same_class(self):
        voa = moonshine()
        g = BinaryWord(N, 0xABCDEF)
        c = random_codeword(voa.C, random.Random(5))
        beta = voa.d_element(3)
        assert is_equivalent(label(beta, g), label(beta, g + c))

    def test_different_beta(self):
        voa = moonshine()
        assert not is_equivalent(label(ZERO, ZERO), label(voa.generators[0], ZERO))

    def test_vacuum(self):
        v = moonshine().vacuum()
        assert is_equivalent(v, v)

    def test_matches_label_equality(self):
        voa = moonshine()
        rng = random.Random(2)
        for _ in range(200):
            beta = voa.d_element(rng.getrandbits(7))
            a, b = voa.label(beta, voa.lift(rng.getrandbits(7))), voa.label(beta, voa.lift(rng.getrandbits(7)))
            assert is_equivalent(a, b) == (a == b)


class TestFusion:
    def test_untwisted_shift(self):
        voa = moonshine()
        rng = random.Random(3)
        for _ in range(100):
            g1, g2 = BinaryWord(N, rng.getrandbits(N)), BinaryWord(N, rng.getrandbits(N))
            beta = voa.d_element(rng.getrandbits(7))
            assert fuse(label(ZERO, g1), label(beta, g2)) == label(beta, g1 + g2)

    def test_self_inverse_and_identity(self, all_labels):
        voa = moonshine()
        v = voa.vacuum()
        for m in all_labels:
            assert fuse(m, m) == v
            assert fuse(m, v) == m

    @given(labels_st, labels_st, labels_st)
    @settings(max_examples=200)
    def test_group_laws(self, a, b, c):
        a, b, c = from_ints(*a), from_ints(*b), from_ints(*c)
        assert fuse(a, b) == fuse(b, a)
        assert fuse(fuse(a, b), c) == fuse(a, fuse(b, c))

    def test_bijective(self, all_labels):
        voa = moonshine()
        gens = [voa.label(g, ZERO) for g in voa.generators] + [voa.label(ZERO, voa.lift(1 << j)) for j in range(7)]
        for g in gens:
            assert len({fuse(g, m) for m in all_labels}) == len(all_labels)

    def test_hamming_rule_every_representative(self):
        # the fusion rule for beta_1 in {0^8, 1^8} holds for every choice of words
        voa = hamming()
        lab = {(b, a): voa.label(b, BinaryWord(8, a)) for b in voa.betas() for a in range(256)}
        for b1 in (BinaryWord.zero(8), BinaryWord.ones(8)):
            for b2 in voa.betas():
                for a1, a2 in itertools.product(range(0, 256, 3), range(256)):
                    assert voa.fuse(lab[b1, a1], lab[b2, a2]) == lab[b1 + b2, a1 ^ a2]

    def test_csv(self):
        voa = hamming()
        labels = sorted(voa.labels())[:5]
        text = fusion_table_csv(voa, labels)
        rows = text.strip().splitlines()
        assert rows[0] == "beta1,gamma1,beta2,gamma2,beta,gamma"
        assert len(rows) == 1 + 25


class TestCensus:
    def test_moonshine(self, all_labels):
        assert census() == 128 * 128 == len(all_labels) == len(set(all_labels))

    def test_repetition_2(self):
        v = CodeVOA([BinaryWord.from_string("11")])
        assert v.census() == 4 == len(list(v.labels()))

    def test_full_space(self):
        v = CodeVOA([], length=5)
        assert v.census() == 1 == len(list(v.labels()))

    def test_hamming(self):
        v = hamming()
        assert v.census() == 88 == len(set(v.labels()))

    def test_dependent_generators(self):
        with pytest.raises(InputError):
            CodeVOA([BinaryWord.from_string("1100"), BinaryWord.from_string("1100")])


def coset_leaders_by_weight(checks, n, max_w):
    """syndrome -> least weight, by enumerating words of weight 0..max_w."""
    best = {}
    for w in range(max_w + 1):
        for sup in itertools.combinations(range(n), w):
            bits = 0
            for i in sup:
                bits |= 1 << i
            s = codes.syndrome(checks, bits)
            best.setdefault(s, w)
        if len(best) == 1 << len(checks):
            break
    return best


class TestLowestWeight:
    def test_vacuum(self):
        assert lowest_weight(moonshine().vacuum()) == 0

    def test_full_beta(self):
        voa = moonshine()
        for s in range(128):
            assert lowest_weight(voa.label(ONES, voa.lift(s))) == 3

    def test_hamming_twisted(self):
        voa = hamming()
        for s in range(16):
            assert voa.lowest_weight(voa.label(BinaryWord.ones(8), voa.lift(s))) == Fraction(1, 2)

    def test_untwisted_brute_force(self):
        voa = moonshine()
        gens = [g.bits for g in voa.generators]
        leaders = coset_leaders_by_weight(gens, N, 4)
        assert len(leaders) == 128
        for s in range(128):
            assert lowest_weight(voa.label(ZERO, voa.lift(s))) == Fraction(leaders[s], 2)

    def test_twisted_brute_force_block(self):
        # beta a weight-16 block: the complement code is the projection of C
        voa = moonshine()
        beta = voa.generators[0] if voa.generators[0].weight == 16 else next(
            b for b in voa.betas() if b.weight == 16
        )
        sec = voa.sector(beta)
        checks = codes.dual(sec.outer).rows
        leaders = coset_leaders_by_weight(checks, len(sec.complement), 4)
        for s in range(128):
            m = voa.label(beta, voa.lift(s))
            shift = codes.project_bits(voa.lift(s).bits, sec.complement)
            want = Fraction(16, 16) + Fraction(leaders[codes.syndrome(checks, shift)], 2)
            assert lowest_weight(m) == want

    def test_values(self, all_labels):
        ws = {lowest_weight(m) for m in all_labels}
        assert ws == {Fraction(k, 2) for k in range(7)}

    def test_small_analog(self):
        v = CodeVOA([BinaryWord.from_string("11")])
        got = sorted(v.lowest_weight(m) for m in v.labels())
        # untwisted: 0 and 1/2; twisted beta=11: 2/16 each
        assert got == [0, Fraction(1, 8), Fraction(1, 8), Fraction(1, 2)]


class TestCoordinateAutomorphisms:
    def test_D_trivial(self):
        assert all(coordinate_automorphism_class(b) == 0 for b in moonshine().betas())

    def test_same_class(self):
        rng = random.Random(4)
        voa = moonshine()
        for _ in range(50):
            b = BinaryWord(N, rng.getrandbits(N))
            d = voa.d_element(rng.getrandbits(7))
            assert coordinate_automorphism_class(b) == coordinate_automorphism_class(b + d)

    def test_single_bit(self):
        assert all(coordinate_automorphism_class(nu(i)) != 0 for i in range(N))

    def test_class_count(self):
        # the class is a full invariant of Z_2^48 / D: 41 independent bits
        classes = [coordinate_automorphism_class(nu(i)) for i in range(N)]
        assert codes.code_from_ints(41, classes).dimension == 41
