"""
Irreducible modules M(beta, gamma) of a code VOA M_C, with C = D^perp.

A label is (beta, gamma-class).  The class is stored as the syndrome of a
representative against the fixed generator list of D, after reducing the
representative modulo K_beta = C + (H_beta)^{perp_beta}.  For the length-48
codes K_beta = C for every beta, so the syndrome alone is the class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from . import codes
from .codes import BinaryWord, LinearCode
from .errors import InputError

TAU_VALUES = (Fraction(0), Fraction(1, 2), Fraction(1, 16))


@dataclass(frozen=True, order=True)
class ModuleLabel:
    beta: BinaryWord
    gamma: int

    def __str__(self) -> str:
        return f"M({self.beta}, {self.gamma:#x})"


def tau_word(h: Sequence, length: int = 48) -> BinaryWord:
    """Bit i is set iff h_i = 1/16."""
    if len(h) != length:
        raise InputError(f"need exactly {length} highest weights, got {len(h)}")
    bits = 0
    for i, x in enumerate(h):
        x = Fraction(x)
        if x not in TAU_VALUES:
            raise InputError(f"h_{i} = {x} is not one of 0, 1/2, 1/16")
        if x == Fraction(1, 16):
            bits |= 1 << i
    return BinaryWord(length, bits)


@dataclass(frozen=True)
class Sector:
    """Per-beta data: C_beta, H_beta, K_beta and the projection of C off supp(beta)."""

    beta: BinaryWord
    c_beta: LinearCode
    h_beta: LinearCode
    k_beta: LinearCode
    complement: tuple[int, ...]
    outer: LinearCode  # p_{beta^c}(C), length n - |beta|

    @cached_property
    def outer_checks(self) -> tuple[int, ...]:
        return codes.dual(self.outer).rows

    @property
    def multiplicity(self) -> int:
        """Copies of each T-module summand: [C_beta : H_beta]."""
        return 1 << (self.c_beta.dimension - self.h_beta.dimension)


class CodeVOA:
    """Module calculus for M_C where C is the dual of span(D generators).

    The generator order is part of the label convention: bit i of a gamma
    syndrome is <g_i, gamma>.
    """

    def __init__(self, d_generators: Sequence[BinaryWord], length: int | None = None):
        gens = list(d_generators)
        if length is None:
            if not gens:
                raise InputError("length required when D has no generators")
            length = gens[0].length
        self.n = length
        self.D = codes.code_from_rows(gens, length)
        if self.D.dimension != len(gens):
            raise InputError("D generators are linearly dependent")
        self.generators = tuple(gens)
        self.k = len(gens)
        self.C = codes.dual(self.D)
        self._gen_bits = tuple(g.bits for g in gens)

    def __repr__(self) -> str:
        return f"CodeVOA(n={self.n}, dim D={self.k})"

    # gamma classes
    def syndrome(self, gamma: BinaryWord | int) -> int:
        bits = gamma.bits if isinstance(gamma, BinaryWord) else gamma
        return codes.syndrome(self._gen_bits, bits)

    @cached_property
    def _lift_table(self) -> dict[int, int]:
        units = [1 << p for p in self.D.pivots]
        table = {}
        for combo in range(1 << self.k):
            w = 0
            for i, u in enumerate(units):
                if combo >> i & 1:
                    w |= u
            table[self.syndrome(w)] = w
        return table

    def lift(self, syn: int) -> BinaryWord:
        """A word gamma with the given syndrome against the D generators."""
        try:
            return BinaryWord(self.n, self._lift_table[syn])
        except KeyError:
            raise InputError(f"syndrome {syn} out of range for dim D = {self.k}") from None

    # per-beta structure
    def sector(self, beta: BinaryWord) -> Sector:
        return self._sector(beta)

    @lru_cache(maxsize=None)
    def _sector(self, beta: BinaryWord) -> Sector:
        if beta.length != self.n or not codes.contains(self.D, beta):
            raise InputError(f"{beta} is not a codeword of D")
        c_beta = codes.cbeta(self.D, beta)
        h_beta = codes.max_self_orthogonal_subcode(c_beta)
        supp = beta.support()
        h_perp_local = codes.dual(codes.project(h_beta, supp))
        extra = [codes.embed_bits(r, supp) for r in h_perp_local.rows]
        k_beta = codes.code_from_ints(self.n, list(self.C.rows) + extra)
        comp = tuple(i for i in range(self.n) if not beta.bits >> i & 1)
        outer = codes.project(self.C, comp)
        return Sector(beta, c_beta, h_beta, k_beta, comp, outer)

    # labels
    def label(self, beta: BinaryWord, gamma: BinaryWord) -> ModuleLabel:
        sec = self.sector(beta)
        if gamma.length != self.n:
            raise InputError("gamma has the wrong length")
        return ModuleLabel(beta, self.syndrome(sec.k_beta.reduce(gamma.bits)))

    def vacuum(self) -> ModuleLabel:
        return ModuleLabel(BinaryWord.zero(self.n), 0)

    def is_equivalent(self, m1: ModuleLabel, m2: ModuleLabel) -> bool:
        """M(b1, g1) ~ M(b2, g2) iff b1 = b2 and g1 + g2 in C + (H_b)^{perp_b}."""
        if m1.beta != m2.beta:
            return False
        diff = self.lift(m1.gamma) + self.lift(m2.gamma)
        return codes.contains(self.sector(m1.beta).k_beta, diff)

    def fuse(self, m1: ModuleLabel, m2: ModuleLabel) -> ModuleLabel:
        return self.label(m1.beta + m2.beta, self.lift(m1.gamma) + self.lift(m2.gamma))

    def betas(self) -> list[BinaryWord]:
        return [BinaryWord(self.n, w) for w in sorted(self.D.words())]

    def labels(self) -> Iterator[ModuleLabel]:
        """Every inequivalent irreducible module label, each once."""
        for beta in self.betas():
            seen = set()
            for s in range(1 << self.k):
                m = self.label(beta, self.lift(s))
                if m.gamma not in seen:
                    seen.add(m.gamma)
                    yield m

    def census(self) -> int:
        return sum(1 << (self.n - self.sector(b).k_beta.dimension) for b in self.betas())

    # weights
    def outer_shift(self, m: ModuleLabel) -> BinaryWord:
        """p_{beta^c}(gamma) for the stored representative."""
        sec = self.sector(m.beta)
        bits = codes.project_bits(self.lift(m.gamma).bits, sec.complement)
        return BinaryWord(len(sec.complement), bits)

    def lowest_weight(self, m: ModuleLabel) -> Fraction:
        """|beta|/16 + (1/2) * min weight of the coset p_{beta^c}(gamma + C)."""
        sec = self.sector(m.beta)
        shift = self.outer_shift(m)
        key = codes.syndrome(sec.outer_checks, shift.bits)
        cache = self._min_cache.setdefault(m.beta.bits, {})
        if key not in cache:
            cache[key] = codes.coset_min_weight(sec.outer, shift)
        return Fraction(m.beta.weight, 16) + Fraction(cache[key], 2)

    @cached_property
    def _min_cache(self) -> dict[int, dict[int, int]]:
        return {}

    def sector_key(self, m: ModuleLabel) -> tuple[int, int]:
        """(beta bits, outer syndrome): labels with equal keys have equal characters."""
        sec = self.sector(m.beta)
        return m.beta.bits, codes.syndrome(sec.outer_checks, self.outer_shift(m).bits)

    def coordinate_automorphism_class(self, beta: BinaryWord) -> int:
        """Class of beta in Z_2^n / D, as its syndrome against the basis of C = D^perp.

        Zero exactly when sigma_beta acts trivially on M_C.
        """
        if beta.length != self.n:
            raise InputError("beta has the wrong length")
        return codes.syndrome(self.C.rows, beta.bits)

    def d_coordinates(self, delta: BinaryWord) -> int:
        """Bitmask m with delta = sum of generators i for bits i of m."""
        table = self._coord_table
        try:
            return table[delta.bits]
        except KeyError:
            raise InputError(f"{delta} is not in D") from None

    @cached_property
    def _coord_table(self) -> dict[int, int]:
        out = {}
        for m in range(1 << self.k):
            w = 0
            for i, g in enumerate(self._gen_bits):
                if m >> i & 1:
                    w ^= g
            out[w] = m
        return out

    def d_element(self, mask: int) -> BinaryWord:
        w = 0
        for i, g in enumerate(self._gen_bits):
            if mask >> i & 1:
                w ^= g
        return BinaryWord(self.n, w)


@lru_cache(maxsize=None)
def moonshine() -> CodeVOA:
    return CodeVOA(codes.moonshine_D_generators())


@lru_cache(maxsize=None)
def hamming() -> CodeVOA:
    return CodeVOA(codes.hamming8_generators())


def label(beta: BinaryWord, gamma: BinaryWord, voa: CodeVOA | None = None) -> ModuleLabel:
    return (voa or moonshine()).label(beta, gamma)


def fuse(m1: ModuleLabel, m2: ModuleLabel, voa: CodeVOA | None = None) -> ModuleLabel:
    return (voa or moonshine()).fuse(m1, m2)


def is_equivalent(m1: ModuleLabel, m2: ModuleLabel, voa: CodeVOA | None = None) -> bool:
    return (voa or moonshine()).is_equivalent(m1, m2)


def census(voa: CodeVOA | None = None) -> int:
    return (voa or moonshine()).census()


def lowest_weight(m: ModuleLabel, voa: CodeVOA | None = None) -> Fraction:
    return (voa or moonshine()).lowest_weight(m)


def coordinate_automorphism_class(beta: BinaryWord, voa: CodeVOA | None = None) -> int:
    return (voa or moonshine()).coordinate_automorphism_class(beta)


def fusion_table_csv(voa: CodeVOA, labels: Sequence[ModuleLabel]) -> str:
    """CSV rows beta1,gamma1,beta2,gamma2,beta,gamma for all ordered pairs."""
    lines = ["beta1,gamma1,beta2,gamma2,beta,gamma"]
    for a, b in itertools.product(labels, repeat=2):
        c = voa.fuse(a, b)
        lines.append(f"{a.beta},{a.gamma},{b.beta},{b.gamma},{c.beta},{c.gamma}")
    return "\n".join(lines) + "\n"
