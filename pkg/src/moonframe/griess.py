"""
The weight-2 algebra of the Hamming code VOA M_{H8}.

Basis order: e^1..e^8 (indices 0-7), then q^alpha for the 14 weight-4 words
of H8 sorted lexicographically as 8-character strings (indices 8-21).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .codes import BinaryWord, hamming8
from .errors import InputError

DIM = 22
EE = Fraction(2)  # e^i e^i
EQ = Fraction(1, 2)  # e^i q^beta = (beta_i / 2) q^beta
E_NORM = Fraction(1, 4)
Q_NORM = Fraction(1)


@lru_cache(maxsize=None)
def weight4_words() -> tuple[BinaryWord, ...]:
    words = [BinaryWord(8, w) for w in hamming8().words() if w.bit_count() == 4]
    return tuple(sorted(words, key=str))


def q_index(alpha: BinaryWord) -> int:
    try:
        return 8 + weight4_words().index(alpha)
    except ValueError:
        raise InputError(f"{alpha} is not a weight-4 word of H8") from None


def basis_names() -> list[str]:
    return [f"e{i + 1}" for i in range(8)] + [f"q^{a}" for a in weight4_words()]


@dataclass(frozen=True)
class AlgebraElement:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != DIM:
            raise InputError(f"need {DIM} coefficients")

    @classmethod
    def zero(cls) -> AlgebraElement:
        return cls((Fraction(0),) * DIM)

    @classmethod
    def basis(cls, i: int) -> AlgebraElement:
        c = [Fraction(0)] * DIM
        c[i] = Fraction(1)
        return cls(tuple(c))

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, k) -> AlgebraElement:
        k = Fraction(k)
        return AlgebraElement(tuple(a * k for a in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        names = basis_names()
        parts = [f"{c}*{names[i]}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(parts) or "0"


def e(i: int) -> AlgebraElement:
    """Frame vector e^i, 1-based."""
    if not 1 <= i <= 8:
        raise InputError("frame index must be 1..8")
    return AlgebraElement.basis(i - 1)


def qv(alpha: BinaryWord) -> AlgebraElement:
    return AlgebraElement.basis(q_index(alpha))


def omega() -> AlgebraElement:
    return sum((e(i) for i in range(1, 9)), AlgebraElement.zero())


def build_table(ee=EE, eq=EQ) -> dict[tuple[int, int], dict[int, Fraction]]:
    """Structure constants {(i, j): {k: c}} of the commutative product.

    ``ee`` and ``eq`` are the two constants not fixed by the q^a q^b table;
    they are parameters only so the tests can show the alternatives fail.
    """
    ws = weight4_words()
    table: dict[tuple[int, int], dict[int, Fraction]] = {}

    def put(i, j, k, c):
        if c:
            table.setdefault((i, j), {})[k] = Fraction(c)
            table.setdefault((j, i), {})[k] = Fraction(c)

    for i in range(8):
        put(i, i, i, ee)
        for b, beta in enumerate(ws):
            if beta.bits >> i & 1:
                put(i, 8 + b, 8 + b, eq)
    for a, alpha in enumerate(ws):
        for b, beta in enumerate(ws):
            if b < a:
                continue
            meet = (alpha.bits & beta.bits).bit_count()
            if a == b:
                for i in range(8):
                    if alpha.bits >> i & 1:
                        put(8 + a, 8 + a, i, 2)
            elif meet == 2:
                put(8 + a, 8 + b, q_index(alpha + beta), 1)
    return table


@lru_cache(maxsize=None)
def _default_table():
    return build_table()


def multiply(a: AlgebraElement, b: AlgebraElement, table=None) -> AlgebraElement:
    table = table or _default_table()
    out = [Fraction(0)] * DIM
    nz_a = [(i, c) for i, c in enumerate(a.coeffs) if c]
    nz_b = [(j, c) for j, c in enumerate(b.coeffs) if c]
    for i, x in nz_a:
        for j, y in nz_b:
            for k, c in table.get((i, j), {}).items():
                out[k] += x * y * c
    return AlgebraElement(tuple(out))


NORMS = (E_NORM,) * 8 + (Q_NORM,) * 14


def form(a: AlgebraElement, b: AlgebraElement) -> Fraction:
    """Invariant form with orthogonal basis, (e^i, e^i) = 1/4, (q^a, q^a) = 1."""
    return sum((x * y * n for x, y, n in zip(a.coeffs, b.coeffs, NORMS)), Fraction(0))


def s_vector(xi: BinaryWord) -> AlgebraElement:
    """(1/8) sum e^i + (1/8) sum_{|beta|=4} (-1)^<xi,beta> q^beta."""
    if xi.length != 8:
        raise InputError("xi must have length 8")
    c = [Fraction(1, 8)] * 8
    for beta in weight4_words():
        c.append(Fraction(-1 if xi.dot(beta) else 1, 8))
    return AlgebraElement(tuple(c))


def nu(i: int) -> BinaryWord:
    """nu_i with a single 1 in (1-based) position i."""
    return BinaryWord.unit(8, i - 1)


def d_frame() -> list[AlgebraElement]:
    return [s_vector(nu(1) + nu(i)) for i in range(1, 9)]


def f_frame() -> list[AlgebraElement]:
    return [s_vector(nu(i)) for i in range(1, 9)]


def e_frame() -> list[AlgebraElement]:
    return [e(i) for i in range(1, 9)]


def is_virasoro_c_half(v: AlgebraElement, table=None) -> bool:
    """v v = 2v and (v, v) = 1/4, i.e. central charge 2 (v, v) = 1/2."""
    return multiply(v, v, table) == v * 2 and form(v, v) == Fraction(1, 4)


def is_frame(vs: Sequence[AlgebraElement], table=None) -> bool:
    if len(vs) != 8:
        raise InputError("a frame here has exactly 8 vectors")
    if not all(is_virasoro_c_half(v, table) for v in vs):
        return False
    for i in range(8):
        for j in range(i + 1, 8):
            if not multiply(vs[i], vs[j], table).is_zero() or form(vs[i], vs[j]) != 0:
                return False
    return sum(vs, AlgebraElement.zero()) == omega()


def invariance_failures(table=None) -> list[tuple[int, int, int]]:
    """Basis triples with (ab, c) != (b, ac)."""
    basis = [AlgebraElement.basis(i) for i in range(DIM)]
    prods = [[multiply(x, y, table) for y in basis] for x in basis]
    bad = []
    for a in range(DIM):
        for b in range(DIM):
            for c in range(DIM):
                if form(prods[a][b], basis[c]) != form(basis[b], prods[a][c]):
                    bad.append((a, b, c))
    return bad


def table_csv(table=None) -> str:
    table = table or _default_table()
    lines = ["i,j,k,coefficient"]
    for (i, j), terms in sorted(table.items()):
        for k, c in sorted(terms.items()):
            lines.append(f"{i},{j},{k},{c}")
    return "\n".join(lines) + "\n"
