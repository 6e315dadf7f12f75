"""
Binary linear codes of length <= 64.

Words are stored as Python ints; coordinate i is bit i, and the string form
lists coordinates left to right, so ``BinaryWord.from_string("1000")`` has
bits == 1.  Codes keep a reduced row-echelon basis whose pivot in each row is
its lowest set bit, which makes the basis a canonical form: two codes are
equal iff their bases are identical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapacityError, InconsistencyError, InputError

MAX_LENGTH = 64
ENUM_CAP = 28  # log2 of the largest code/coset enumerated word by word
SYNDROME_CAP = 20  # log2 of the largest syndrome space walked by BFS
SELF_ORTHO_CAP = 64


def _popcount(x: int) -> int:
    return x.bit_count()


def _low_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


def _check_length(n: int) -> None:
    if not 0 <= n <= MAX_LENGTH:
        raise InputError(f"word length {n} outside [0, {MAX_LENGTH}]")


@dataclass(frozen=True, order=True)
class BinaryWord:
    length: int
    bits: int = 0

    def __post_init__(self):
        _check_length(self.length)
        if self.bits < 0 or self.bits >> self.length:
            raise InputError("bits set above word length")

    @classmethod
    def from_string(cls, s: str) -> BinaryWord:
        s = "".join(s.split())
        if any(ch not in "01" for ch in s):
            raise InputError(f"not a binary string: {s!r}")
        bits = 0
        for i, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << i
        return cls(len(s), bits)

    @classmethod
    def from_support(cls, n: int, support: Iterable[int]) -> BinaryWord:
        bits = 0
        for i in support:
            if not 0 <= i < n:
                raise InputError(f"coordinate {i} outside length {n}")
            bits |= 1 << i
        return cls(n, bits)

    @classmethod
    def zero(cls, n: int) -> BinaryWord:
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> BinaryWord:
        return cls(n, (1 << n) - 1)

    @classmethod
    def unit(cls, n: int, i: int) -> BinaryWord:
        """The word with a single 1 in coordinate i (0-based)."""
        return cls.from_support(n, [i])

    @property
    def weight(self) -> int:
        return _popcount(self.bits)

    def support(self) -> list[int]:
        return [i for i in range(self.length) if self.bits >> i & 1]

    def dot(self, other: BinaryWord) -> int:
        self._same_length(other)
        return _popcount(self.bits & other.bits) & 1

    def _same_length(self, other: BinaryWord) -> None:
        if self.length != other.length:
            raise InputError(f"length mismatch: {self.length} vs {other.length}")

    def __add__(self, other: BinaryWord) -> BinaryWord:
        self._same_length(other)
        return BinaryWord(self.length, self.bits ^ other.bits)

    def __and__(self, other: BinaryWord) -> BinaryWord:
        self._same_length(other)
        return BinaryWord(self.length, self.bits & other.bits)

    def __str__(self) -> str:
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.length))

    def __repr__(self) -> str:
        return f"BinaryWord('{self}')"


def _rref(rows: Iterable[int]) -> tuple[int, ...]:
    basis: dict[int, int] = {}  # pivot -> row
    for r in rows:
        for p, row in basis.items():
            if r >> p & 1:
                r ^= row
        if not r:
            continue
        p = _low_bit(r)
        for q in list(basis):
            if basis[q] >> p & 1:
                basis[q] ^= r
        basis[p] = r
    return tuple(basis[p] for p in sorted(basis))


@dataclass(frozen=True)
class LinearCode:
    """A binary linear code given by its canonical RREF basis."""

    length: int
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        _check_length(self.length)
        if _rref(self.rows) != self.rows:
            raise InputError("rows are not in canonical reduced row-echelon form")
        if any(r >> self.length for r in self.rows):
            raise InputError("row has bits above code length")

    @property
    def dimension(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> list[BinaryWord]:
        return [BinaryWord(self.length, r) for r in self.rows]

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(_low_bit(r) for r in self.rows)

    def reduce(self, bits: int) -> int:
        """Canonical coset representative of ``bits`` modulo the code."""
        for p, r in zip(self.pivots, self.rows):
            if bits >> p & 1:
                bits ^= r
        return bits

    def __contains__(self, w: BinaryWord) -> bool:
        return contains(self, w)

    def __le__(self, other: LinearCode) -> bool:
        """Subcode test."""
        if self.length != other.length:
            return False
        return all(other.reduce(r) == 0 for r in self.rows)

    def words(self) -> Iterator[int]:
        """All codewords as ints, in Gray-code order."""
        w = 0
        yield w
        for i in range(1, 1 << self.dimension):
            w ^= self.rows[_low_bit(i)]
            yield w

    def dual(self) -> LinearCode:
        return dual(self)

    def __str__(self) -> str:
        return f"[{self.length}, {self.dimension}] code"


def code_from_rows(rows: Sequence[BinaryWord], length: int | None = None) -> LinearCode:
    """Span of ``rows`` in canonical form; ``length`` is required when rows is empty."""
    lengths = {w.length for w in rows}
    if length is not None:
        lengths.add(length)
    if len(lengths) != 1:
        if not lengths:
            raise InputError("length required for an empty row list")
        raise InputError(f"rows of mixed lengths {sorted(lengths)}")
    (n,) = lengths
    return LinearCode(n, _rref(w.bits for w in rows))


def code_from_ints(n: int, rows: Iterable[int]) -> LinearCode:
    return LinearCode(n, _rref(rows))


def full_space(n: int) -> LinearCode:
    return LinearCode(n, tuple(1 << i for i in range(n)))


def zero_code(n: int) -> LinearCode:
    return LinearCode(n, ())


def dual(code: LinearCode) -> LinearCode:
    """{x : x.c = 0 for all c in code}."""
    n = code.length
    pivot_set = set(code.pivots)
    out = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = 1 << f
        for p, r in zip(code.pivots, code.rows):
            if r >> f & 1:
                v |= 1 << p
        out.append(v)
    return code_from_ints(n, out)


def contains(code: LinearCode, w: BinaryWord) -> bool:
    if w.length != code.length:
        raise InputError(f"word length {w.length} != code length {code.length}")
    return code.reduce(w.bits) == 0


def syndrome(checks: Sequence[int], bits: int) -> int:
    """Bit j of the result is the parity of ``bits & checks[j]``."""
    s = 0
    for j, h in enumerate(checks):
        s |= (_popcount(bits & h) & 1) << j
    return s


# -- weight distributions ---------------------------------------------------


@dataclass(frozen=True)
class WeightDistribution:
    length: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.length + 1:
            raise InputError("need exactly length+1 counts")
        if any(c < 0 for c in self.counts):
            raise InputError("negative weight count")

    @classmethod
    def from_dict(cls, n: int, d: dict[int, int]) -> WeightDistribution:
        counts = [0] * (n + 1)
        for w, c in d.items():
            counts[w] = c
        return cls(n, tuple(counts))

    def __getitem__(self, w: int) -> int:
        return self.counts[w]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def nonzero(self) -> dict[int, int]:
        return {w: c for w, c in enumerate(self.counts) if c}

    def min_weight(self) -> int | None:
        """Smallest nonzero weight present, or None."""
        for w in range(1, self.length + 1):
            if self.counts[w]:
                return w
        return None

    def __str__(self) -> str:
        return " + ".join(f"{c}X^{w}" for w, c in sorted(self.nonzero().items(), reverse=True))


def _span_array(rows: Sequence[int]) -> np.ndarray:
    arr = np.zeros(1, dtype=np.uint64)
    for r in rows:
        arr = np.concatenate([arr, arr ^ np.uint64(r)])
    return arr


def _histogram(rows: Sequence[int], n: int, shift: int = 0) -> list[int]:
    """Weight histogram of shift + span(rows)."""
    lo, hi = list(rows[:16]), list(rows[16:])
    base = _span_array(lo)
    counts = np.zeros(n + 1, dtype=np.int64)
    cur = shift
    for i in range(1 << len(hi)):
        if i:
            cur ^= hi[_low_bit(i)]
        wts = np.bitwise_count(base ^ np.uint64(cur))
        counts += np.bincount(wts, minlength=n + 1)[: n + 1]
    return [int(c) for c in counts]


def weight_distribution(code: LinearCode) -> WeightDistribution:
    """Direct enumeration; raises CapacityError above 2**ENUM_CAP codewords."""
    if code.dimension > ENUM_CAP:
        raise CapacityError(
            f"dimension {code.dimension} exceeds enumeration cap {ENUM_CAP}; "
            "enumerate the dual and apply macwilliams()",
            reason="enumeration_cap",
        )
    return WeightDistribution(code.length, tuple(_histogram(code.rows, code.length)))


@lru_cache(maxsize=None)
def krawtchouk(w: int, j: int, n: int) -> int:
    """K_w(j; n) = sum_s (-1)^s C(j, s) C(n-j, w-s)."""
    return sum((-1) ** s * comb(j, s) * comb(n - j, w - s) for s in range(min(j, w) + 1))


def macwilliams(dist: WeightDistribution, dim: int, n: int) -> WeightDistribution:
    """Weight distribution of the dual of a [n, dim] code with distribution ``dist``."""
    if dist.length != n:
        raise InputError(f"distribution length {dist.length} != n = {n}")
    size = 1 << dim
    out = []
    for w in range(n + 1):
        s = sum(a * krawtchouk(w, j, n) for j, a in enumerate(dist.counts) if a)
        q, r = divmod(s, size)
        if r or q < 0:
            raise InconsistencyError(
                f"MacWilliams transform gives non-integral or negative A_{w} = {s}/{size}"
            )
        out.append(q)
    return WeightDistribution(n, tuple(out))


def coset_weight_distribution(code: LinearCode, shift: BinaryWord) -> WeightDistribution:
    """Weight counts of shift + code, enumerating whichever of code / dual is smaller."""
    n = code.length
    if shift.length != n:
        raise InputError("shift length differs from code length")
    codim = n - code.dimension
    if code.dimension <= min(codim, ENUM_CAP):
        return WeightDistribution(n, tuple(_histogram(code.rows, n, shift.bits)))
    if codim > ENUM_CAP:
        raise CapacityError(
            f"neither the code (dim {code.dimension}) nor its dual (dim {codim}) is enumerable",
            reason="enumeration_cap",
        )
    # A_w(s + C) = |C^perp|^-1 sum_{u in C^perp} (-1)^{u.s} K_w(wt u)
    signed = [0] * (n + 1)
    s = shift.bits
    for u in dual(code).words():
        signed[_popcount(u)] += -1 if _popcount(u & s) & 1 else 1
    size = 1 << codim
    out = []
    for w in range(n + 1):
        t = sum(c * krawtchouk(w, j, n) for j, c in enumerate(signed) if c)
        q, r = divmod(t, size)
        if r or q < 0:
            raise InconsistencyError(f"coset transform inconsistent at weight {w}")
        out.append(q)
    return WeightDistribution(n, tuple(out))


def coset_min_weight(code: LinearCode, shift: BinaryWord) -> int:
    """Weight of a coset leader of shift + code, by BFS over syndromes."""
    n = code.length
    if shift.length != n:
        raise InputError("shift length differs from code length")
    codim = n - code.dimension
    if codim > SYNDROME_CAP:
        raise CapacityError(
            f"syndrome space 2^{codim} exceeds cap 2^{SYNDROME_CAP}", reason="syndrome_cap"
        )
    checks = dual(code).rows
    target = syndrome(checks, shift.bits)
    if target == 0:
        return 0
    units = np.array(sorted({syndrome(checks, 1 << i) for i in range(n)} - {0}), dtype=np.int64)
    seen = np.zeros(1 << codim, dtype=bool)
    seen[0] = True
    frontier = np.array([0], dtype=np.int64)
    dist = 0
    while frontier.size:
        dist += 1
        nxt = np.unique((frontier[:, None] ^ units[None, :]).ravel())
        nxt = nxt[~seen[nxt]]
        if nxt.size and np.any(nxt == target):
            return dist
        seen[nxt] = True
        frontier = nxt
    raise InconsistencyError("syndrome unreachable from unit vectors")


# -- projections ------------------------------------------------------------


def project_bits(bits: int, support: Sequence[int]) -> int:
    """Restrict to ``support`` and compress those coordinates to 0..len-1."""
    out = 0
    for k, i in enumerate(support):
        if bits >> i & 1:
            out |= 1 << k
    return out


def embed_bits(bits: int, support: Sequence[int]) -> int:
    out = 0
    for k, i in enumerate(support):
        if bits >> k & 1:
            out |= 1 << i
    return out


def project(code: LinearCode, support: Sequence[int]) -> LinearCode:
    return code_from_ints(len(support), (project_bits(r, support) for r in code.rows))


def shorten(code: LinearCode, support: Sequence[int]) -> LinearCode:
    """Subcode of words supported inside ``support`` (kept at full length)."""
    mask = 0
    for i in support:
        mask |= 1 << i
    outside = [i for i in range(code.length) if not mask >> i & 1]
    # words vanishing on the complement: dual of the projection to the complement, pulled back
    return dual(code_from_ints(code.length, list(dual(code).rows) + [1 << i for i in outside]))


# -- named codes ------------------------------------------------------------

HAMMING8_ROWS = ("11111111", "11110000", "11001100", "10101010")

MOONSHINE_D_ROWS = (
    "1111111111111111" "0000000000000000" "0000000000000000",
    "0000000000000000" "1111111111111111" "0000000000000000",
    "0000000000000000" "0000000000000000" "1111111111111111",
    "0000000011111111" "0000000011111111" "0000000011111111",
    "0000111100001111" "0000111100001111" "0000111100001111",
    "0011001100110011" "0011001100110011" "0011001100110011",
    "0101010101010101" "0101010101010101" "0101010101010101",
)


def hamming8_generators() -> list[BinaryWord]:
    return [BinaryWord.from_string(s) for s in HAMMING8_ROWS]


def hamming8() -> LinearCode:
    return code_from_rows(hamming8_generators())


def moonshine_D_generators() -> list[BinaryWord]:
    """Generator rows of the length-48 structure code, in their fixed order."""
    return [BinaryWord.from_string(s) for s in MOONSHINE_D_ROWS]


@lru_cache(maxsize=None)
def moonshine_D() -> LinearCode:
    return code_from_rows(moonshine_D_generators())


@lru_cache(maxsize=None)
def moonshine_C() -> LinearCode:
    return dual(moonshine_D())


def reed_muller(r: int, m: int) -> LinearCode:
    """RM(r, m): point i has x_k = bit k of i; rows are monomials of degree <= r."""
    if not (0 <= r <= m <= 6):
        raise InputError(f"need 0 <= r <= m <= 6, got r={r}, m={m}")
    n = 1 << m
    rows = []
    for deg in range(r + 1):
        for vars_ in itertools.combinations(range(m), deg):
            mask = sum(1 << k for k in vars_)
            rows.append(sum(1 << i for i in range(n) if i & mask == mask))
    return code_from_ints(n, rows)


def cbeta(D: LinearCode, beta: BinaryWord) -> LinearCode:
    """Words of D^perp supported inside supp(beta), as a full-length code."""
    if not contains(D, beta):
        raise InputError("beta is not a codeword of D")
    supp = beta.support()
    local = dual(project(D, supp))
    return code_from_ints(D.length, (embed_bits(r, supp) for r in local.rows))


def max_self_orthogonal_subcode(code: LinearCode) -> LinearCode:
    """A maximal subcode H with x.y = 0 for all x, y in H.

    Self-orthogonal words are even, so we work inside the even subcode where
    the dot product is alternating and split off hyperbolic pairs in basis
    order; every maximal totally isotropic subspace has the same dimension,
    so the result is also of maximum dimension.
    """
    if code.dimension > SELF_ORTHO_CAP:
        raise CapacityError("dimension too large", reason="self_orthogonal_cap")
    n = code.length
    rows = list(code.rows)
    odd = [r for r in rows if _popcount(r) & 1]
    even = [r for r in rows if not _popcount(r) & 1]
    if odd:
        even += [odd[0] ^ r for r in odd[1:]]
    rest = list(_rref(even))

    def dot(a, b):
        return _popcount(a & b) & 1

    chosen = []
    while rest:
        x = rest.pop(0)
        j = next((k for k, y in enumerate(rest) if dot(x, y)), None)
        chosen.append(x)
        if j is None:
            continue
        y = rest.pop(j)
        # make the remaining vectors orthogonal to both x and y
        rest = [z ^ (x if dot(z, y) else 0) ^ (y if dot(z, x) else 0) for z in rest]
        rest = list(_rref(rest))
    return code_from_ints(n, chosen)


def words_of_weight(code: LinearCode, w: int) -> list[int]:
    """All codewords of weight w, searching supports by syndrome when the dual is small."""
    n = code.length
    codim = n - code.dimension
    if code.dimension <= min(codim, ENUM_CAP):
        return [c for c in code.words() if _popcount(c) == w]
    if codim > SYNDROME_CAP:
        raise CapacityError("neither side small enough to search", reason="syndrome_cap")
    checks = dual(code).rows
    unit = [syndrome(checks, 1 << i) for i in range(n)]
    out = []
    for supp in itertools.combinations(range(n), w):
        s = 0
        for i in supp:
            s ^= unit[i]
        if not s:
            out.append(sum(1 << i for i in supp))
    return out


def generated_by_weight4(code: LinearCode) -> bool:
    found = words_of_weight(code, 4)
    return code_from_ints(code.length, found) == code


# -- code files --------------------------------------------------------------


def parse_code_text(text: str) -> list[BinaryWord]:
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(BinaryWord.from_string(line))
    if len({r.length for r in rows}) > 1:
        raise InputError("code file rows have unequal lengths")
    return rows


def read_code_file(path) -> LinearCode:
    rows = parse_code_text(Path(path).read_text())
    if not rows:
        raise InputError(f"{path}: no codewords")
    return code_from_rows(rows)


def format_code_text(rows: Sequence[BinaryWord], comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines += [str(r) for r in rows]
    return "\n".join(lines) + "\n"


def write_code_file(path, rows: Sequence[BinaryWord], comment: str | None = None) -> None:
    Path(path).write_text(format_code_text(rows, comment))
