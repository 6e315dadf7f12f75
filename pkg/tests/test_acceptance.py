"""Acceptance gate: one test per criterion, each within its time limit.

Every test records (PASS|FAIL, seconds, detail) in RESULTS and prints a
one-line verdict; conftest prints the collected table at the end of the run.
"""

import time

import pytest

from moonframe import defaults, report
from moonframe.qseries import J
from moonframe.search import assignment_search, total_character

RESULTS: dict[str, tuple[str, float, str]] = {}

CFG = report.Config(order=defaults.ISING_IDENTITY_ORDER, grid=defaults.GRID)

CRITERIA = {
    1: (
        10,
        [
            "codes.dim_D",
            "codes.dim_C",
            "codes.weight_distribution_D",
            "codes.min_weight_C",
            "codes.D_subset_C",
            "codes.C_even",
            "codes.C_generated_by_weight4",
        ],
    ),
    2: (60, ["codes.cbeta_block_rm24", "codes.cbeta_in_C", "codes.h_beta_dimension"]),
    3: (30, ["codes.macwilliams_random", "codes.hamming_self_dual"]),
    4: (
        60,
        [
            "modules.census",
            "modules.fusion_identity_inverse",
            "modules.fusion_bijective",
            "modules.fusion_generates",
            "modules.fusion_associative_random",
            "modules.fusion_well_defined_random",
            "modules.hamming_fusion_rule",
        ],
    ),
    5: (30, ["characters.J_two_routes", "characters.J_leading", "characters.theta_eta_constant"]),
    6: (
        30,
        ["characters.ising_product_identity", "characters.hamming_weight2", "characters.C_weight2"],
    ),
    7: (30, ["characters.hamming_half_integral_labels", "characters.hamming_induced_vs_direct"]),
    8: (
        60,
        [
            "inequality.f_bound_lower_coeffwise",
            "inequality.J_le_3NS",
            "inequality.R_le_2NS",
            "inequality.ratio_increasing",
            "inequality.ratio_oracle",
            "inequality.ratio_growth",
        ],
    ),
    9: (
        30,
        ["hamming.form_invariance", "hamming.frames", "hamming.non_frame", "hamming.s_vector_count"],
    ),
}


def record(n: int, ok: bool, secs: float, limit: float, detail: str) -> None:
    if secs > limit:
        ok = False
        detail = f"took {secs:.1f}s > {limit}s; {detail}"
    status = "PASS" if ok else "FAIL"
    RESULTS[str(n)] = (status, secs, detail)
    print(f"\ncriterion {n}: {status} ({secs:.2f}s / {limit}s) {detail}")
    assert ok, f"criterion {n}: {detail}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    limit, ids = CRITERIA[n]
    t0 = time.monotonic()
    rep = report.run("all", CFG, only=set(ids))
    secs = time.monotonic() - t0
    assert sorted(c.check_id for c in rep.checks) == sorted(ids)
    failed = [c for c in rep.checks if c.status != "pass"]
    detail = "; ".join(f"{c.check_id}: {c.actual}" for c in failed) or f"{len(ids)} checks"
    record(n, not failed, secs, limit, detail)


def test_criterion_10():
    limit = defaults.SEARCH_BUDGET
    t0 = time.monotonic()
    res = assignment_search(defaults.SEARCH_MAX_ORDER, defaults.SEARCH_BUDGET)
    target = J(defaults.SEARCH_MAX_ORDER)
    totals = {total_character(a, defaults.SEARCH_MAX_ORDER) for a in res.assignments}
    secs = time.monotonic() - t0
    ok = bool(res.assignments) and len(totals) == 1 and next(iter(totals)).agrees(target)
    detail = (
        f"{len(res.assignments)} assignments, complete={res.complete}, nodes={res.nodes}, "
        f"distinct totals={len(totals)}"
    )
    record(10, ok, secs, limit, detail)
