"""
Search for homomorphisms phi: D -> Z_2^n / C whose sectors M(delta, phi(delta))
assemble into a holomorphic character equal to J.

phi is fixed by the images of the D generators.  Generators are assigned
heaviest first; after each assignment every newly reachable delta must give
an integral lowest weight >= 2, which prunes before any character is built.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .characters import code_voa_character, induced_module_character
from .codes import macwilliams, weight_distribution
from .errors import InputError
from .modules import CodeVOA, ModuleLabel, moonshine
from .qseries import QSeries, J


@dataclass(frozen=True, order=True)
class Assignment:
    """phi on the generators: images[i] is the gamma syndrome of phi(g_i)."""

    images: tuple[int, ...]

    def phi(self, mask: int) -> int:
        s = 0
        for i, img in enumerate(self.images):
            if mask >> i & 1:
                s ^= img
        return s

    def to_json(self, k: int | None = None) -> list[dict]:
        k = k or len(self.images)
        return [
            {"generator_index": i, "gamma_syndrome_bits": format_bits(img, k)}
            for i, img in enumerate(self.images)
        ]


def format_bits(s: int, k: int) -> str:
    """Syndrome as a k-character string, generator 0 first."""
    return "".join("1" if s >> i & 1 else "0" for i in range(k))


@dataclass
class SearchResult:
    max_order: int
    assignments: list[Assignment]
    complete: bool
    nodes: int
    elapsed: float
    rejected_by_character: int = 0
    totals: list[QSeries] = field(default_factory=list)

    @property
    def identical_totals(self) -> bool:
        return len({t for t in self.totals}) <= 1

    def to_json(self, k: int = 7) -> dict:
        return {
            "max_order": self.max_order,
            "complete": self.complete,
            "nodes": self.nodes,
            "rejected_by_character": self.rejected_by_character,
            "assignments": [a.to_json(k) for a in self.assignments],
        }


def admissible(voa: CodeVOA, m: ModuleLabel) -> bool:
    w = voa.lowest_weight(m)
    return w.denominator == 1 and w >= 2


class _Sectors:
    """Per-mask admissibility and characters, computed lazily."""

    def __init__(self, voa: CodeVOA, order: int, predicate=None):
        self.voa = voa
        self.order = order
        self.predicate = predicate or admissible
        self._ok: dict[int, frozenset[int]] = {}
        self._chars: dict[tuple[int, int], QSeries] = {}

    def ok(self, mask: int) -> frozenset[int]:
        if mask not in self._ok:
            voa = self.voa
            d = voa.d_element(mask)
            if mask == 0:
                self._ok[mask] = frozenset({0})
            else:
                self._ok[mask] = frozenset(
                    s for s in range(1 << voa.k) if self.predicate(voa, voa.label(d, voa.lift(s)))
                )
        return self._ok[mask]

    def key(self, mask: int, s: int) -> tuple[int, int]:
        voa = self.voa
        return voa.sector_key(voa.label(voa.d_element(mask), voa.lift(s)))

    def character(self, mask: int, s: int) -> QSeries:
        key = self.key(mask, s)
        if key not in self._chars:
            voa = self.voa
            m = voa.label(voa.d_element(mask), voa.lift(s))
            if mask == 0:
                dist = macwilliams(weight_distribution(voa.D), voa.k, voa.n)
                self._chars[key] = code_voa_character(dist, self.order)
            else:
                self._chars[key] = induced_module_character(m, self.order, voa)
        return self._chars[key]


def generator_order(voa: CodeVOA) -> list[int]:
    return sorted(range(voa.k), key=lambda i: (-voa.generators[i].weight, i))


def total_character(a: Assignment, order: int, voa: CodeVOA | None = None) -> QSeries:
    voa = voa or moonshine()
    sec = _Sectors(voa, order)
    return _total(a, sec)


def _total(a: Assignment, sec: _Sectors) -> QSeries:
    total = None
    for mask in range(1 << sec.voa.k):
        ch = sec.character(mask, a.phi(mask))
        total = ch if total is None else total + ch
    return total


def assignment_search(
    max_order: int = 4,
    budget: float = 600.0,
    voa: CodeVOA | None = None,
    max_solutions: int | None = None,
    target: QSeries | None | str = "J",
    predicate=None,
) -> SearchResult:
    """All homomorphisms passing the sector pruning whose total character is J through q^max_order.

    Stops early (complete=False) when ``budget`` seconds elapse or
    ``max_solutions`` assignments have been accepted.  ``target=None`` (and
    max_order 0) drops the character test; ``predicate(voa, label)`` replaces the sector pruning.
    """
    if not 0 <= max_order <= 8:
        raise InputError("max_order must lie in [0, 8]")
    voa = voa or moonshine()
    sec = _Sectors(voa, max_order, predicate)
    if isinstance(target, str):
        # Through q^0 the pruning already forces 1/q + 0, so order 0 is vacuous.
        target = J(max_order).truncate(48 * max_order) if max_order > 0 else None
    order = generator_order(voa)
    start = time.monotonic()
    found: list[Assignment] = []
    totals: dict[tuple, QSeries] = {}
    stats = {"nodes": 0, "rejected": 0, "stopped": False}

    def leaf(images: list[int]) -> None:
        a = Assignment(tuple(images))
        if target is None:
            found.append(a)
            return
        key = tuple(sec.key(m, a.phi(m)) for m in range(1 << voa.k))
        if key not in totals:
            totals[key] = _total(a, sec)
        if totals[key].agrees(target) and totals[key].trunc >= target.trunc:
            found.append(a)
        else:
            stats["rejected"] += 1

    def dfs(t: int, span: dict[int, int], images: list[int]) -> None:
        if stats["stopped"]:
            return
        if time.monotonic() - start > budget or (
            max_solutions is not None and len(found) >= max_solutions
        ):
            stats["stopped"] = True
            return
        stats["nodes"] += 1
        if t == len(order):
            leaf(images)
            return
        g = order[t]
        gm = 1 << g
        for s in sorted(sec.ok(gm)):
            new = {}
            for m, p in span.items():
                if p ^ s not in sec.ok(m | gm):
                    break
                new[m | gm] = p ^ s
            else:
                new.update(span)
                images[g] = s
                dfs(t + 1, new, images)
                images[g] = 0

    dfs(0, {0: 0}, [0] * voa.k)
    return SearchResult(
        max_order=max_order,
        assignments=sorted(found),
        complete=not stats["stopped"],
        nodes=stats["nodes"],
        elapsed=time.monotonic() - start,
        rejected_by_character=stats["rejected"],
        totals=list(totals.values()),
    )


def forced_sector_sum(order: int, voa: CodeVOA | None = None) -> tuple[QSeries, bool]:
    """Sum over delta of the admissible sector character, if it is unique for each delta.

    Returns (sum, unique); the sum ignores additivity of phi entirely.
    """
    voa = voa or moonshine()
    sec = _Sectors(voa, order)
    total = None
    unique = True
    for mask in range(1 << voa.k):
        chars = {sec.key(mask, s): sec.character(mask, s) for s in sec.ok(mask)}
        if len(set(chars.values())) != 1:
            unique = False
        ch = next(iter(chars.values())) if chars else QSeries({}, 48 * order)
        total = ch if total is None else total + ch
    return total, unique


def lowest_weights_of(a: Assignment, voa: CodeVOA | None = None) -> dict[int, Fraction]:
    voa = voa or moonshine()
    return {
        m: voa.lowest_weight(voa.label(voa.d_element(m), voa.lift(a.phi(m))))
        for m in range(1 << voa.k)
    }
