"""Executable checkers for the covering/size theorems, run over catalogs.

Proved statements act as oracles for the implementation: a counterexample
means the code (or a hypothesis reduction) is wrong, halts the sweep and is
reported with enough material to replay it in isolation.  Hypothesis-dropped
variants live in `hunt_counterexample`, where a hit is a finding, not a
failure.

Degeneracy accounting: an admissible instance is degenerate when it asserted
nothing (empty inner domain) or when its hypothesis admits no base other
than the full set, so the run only exercised the absolute theory.  The lone
exception is the prethick/not-small equivalence on groups, whose hypothesis
always collapses onto the absolute case; those instances are annotated
instead of discounted, otherwise the check could never be effective.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .catalog import CatalogEntry
from .classify import SizeTables, delta_tau, trace_set
from .errors import BoundViolation
from .filters import (
    PrincipalFilter,
    check_hypothesis,
    hypothesis_forces_full_base,
)
from .masks import bits, elements, is_subset, popcount
from .partitions import SWEEP_ORDER_LIMIT, enumerate_partitions, sweep_partitions
from .semigroups import (
    FinSemigroup,
    is_subgroup,
    left_quotient,
    minimal_left_ideals,
    translate_set,
)

THEOREM_IDS = (
    "T2_1",
    "T2_2",
    "T2_3",
    "T2_4",
    "C2_5",
    "T2_6",
    "T3_1",
    "C3_1",
    "T3_2",
    "T3_5",
    "T3_6",
    "T3_7",
)

HUNT_VARIANTS = {
    "T2_6_large": "shift stability of large sets under the neighborhood-shift "
    "hypothesis (the thick conclusion with large in its place)",
    "T2_3_no_extrathick": "thick = meets-every-large with the extrathick "
    "hypothesis dropped",
    "T3_6_semigroup": "prethick iff not small on non-group semigroups with a "
    "left invariant filter",
}


@dataclass
class VerifyConfig:
    regularity_order_limit: int = 6   # partition-regularity subset sweeps
    small_order_limit: int = 8        # quadratic small-table checks
    cells: int = 2                    # partition sweep width for T3_2
    workers: int = 0                  # 0 = take SEMSIZE_WORKERS, default 1

    def resolved_workers(self) -> int:
        if self.workers > 0:
            return self.workers
        return max(1, int(os.environ.get("SEMSIZE_WORKERS", "1")))


@dataclass
class InstanceOutcome:
    admissible: bool = True
    assertions: int = 0
    forced_base: bool = False
    counterexample: Optional[dict] = None


@dataclass
class TheoremReport:
    theorem_id: str
    catalog_label: str
    instances_checked: int
    degenerate_count: int
    effective_count: int
    skipped_count: int
    forced_absolute_count: int
    assertions: int
    counterexample: Optional[dict]
    vacuity_warning: bool
    notes: Tuple[str, ...]
    elapsed: float
    search: bool = False
    found: bool = False

    def to_json_dict(self) -> dict:
        # elapsed is intentionally absent: reports must be byte-identical
        # across reruns of the same config
        out = {
            "theorem": self.theorem_id,
            "catalog": self.catalog_label,
            "instances_checked": self.instances_checked,
            "degenerate_count": self.degenerate_count,
            "effective_count": self.effective_count,
            "skipped_count": self.skipped_count,
            "forced_absolute_count": self.forced_absolute_count,
            "assertions": self.assertions,
            "counterexample": self.counterexample,
            "vacuity_warning": self.vacuity_warning,
            "notes": list(self.notes),
        }
        if self.search:
            out["search"] = True
            out["found"] = self.found
        return out


@lru_cache(maxsize=None)
def _tables(S: FinSemigroup, base: int) -> SizeTables:
    return SizeTables(S, PrincipalFilter(S, base))


def _detail_mask(mask: int) -> List[int]:
    return elements(mask)


def _counterexample(S: FinSemigroup, tau: PrincipalFilter, **detail) -> dict:
    shown = {}
    for key, value in detail.items():
        if key.endswith("_mask"):
            shown[key[: -len("_mask")]] = _detail_mask(value)
        else:
            shown[key] = value
    return {
        "semigroup": S.name,
        "order": S.order,
        "table": [list(row) for row in S.table],
        "base": _detail_mask(tau.base),
        "detail": shown,
    }


def _forced(S: FinSemigroup, tau: PrincipalFilter, kind: str) -> bool:
    return tau.base == S.full_mask and hypothesis_forces_full_base(S, kind)


# ---------------------------------------------------------------------------
# individual checkers


def _check_t2_1(S, tau, cfg) -> InstanceOutcome:
    out = InstanceOutcome()
    tb = _tables(S, tau.base)
    U0 = tau.base
    gs = elements(U0)
    for L in range(S.full_mask + 1):
        lhs = tb.large[L]
        rhs = all(trace_set(S, L, g) & U0 for g in gs)
        out.assertions += 1
        if lhs != rhs:
            out.counterexample = _counterexample(
                S, tau, subset_mask=L, large=lhs, trace_condition=rhs
            )
            return out
    return out


def _check_t2_2(S, tau, cfg) -> InstanceOutcome:
    out = InstanceOutcome()
    tb = _tables(S, tau.base)
    U0 = tau.base
    gs = elements(U0)
    for T in range(S.full_mask + 1):
        lhs = tb.thick[T]
        rhs = any(is_subset(U0, trace_set(S, T, g)) for g in gs)
        out.assertions += 1
        if lhs != rhs:
            out.counterexample = _counterexample(
                S, tau, subset_mask=T, thick=lhs, trace_condition=rhs
            )
            return out
    return out


def _meets_every_large(tb: SizeTables, S, U0: int, T: int) -> bool:
    # T meets L & U0 for every large L  <=>  the complement of T & U0 is not
    # large (up-closure of the large family); the literal sweep equivalence
    # is property-tested at small orders
    return not tb.large[S.full_mask & ~(T & U0)]


def _check_t2_3(S, tau, cfg) -> InstanceOutcome:
    out = InstanceOutcome()
    if not check_hypothesis(tau, "extrathick_members"):
        out.admissible = False
        return out
    out.forced_base = _forced(S, tau, "extrathick_members")
    tb = _tables(S, tau.base)
    U0 = tau.base
    for T in range(S.full_mask + 1):
        lhs = tb.thick[T]
        rhs = _meets_every_large(tb, S, U0, T)
        out.assertions += 1
        if lhs != rhs:
            out.counterexample = _counterexample(
                S, tau, subset_mask=T, thick=lhs, meets_every_large=rhs
            )
            return out
    return out


def _check_t2_4(S, tau, cfg) -> InstanceOutcome:
    out = InstanceOutcome()
    tb = _tables(S, tau.base)
    shiftable = [
        g for g in range(S.order) if check_hypothesis(tau, "shiftable_at", g=g)
    ]
    for g in shiftable:
        for A in range(S.full_mask + 1):
            if tb.large[A]:
                out.assertions += 1
                if not tb.large[translate_set(S, g, A)]:
                    out.counterexample = _counterexample(
                        S, tau, g=g, subset_mask=A, claim="translate of large is large"
                    )
                    return out
            if tb.thick[A]:
                out.assertions += 1
                if not tb.thick[left_quotient(S, g, A)]:
                    out.counterexample = _counterexample(
                        S, tau, g=g, subset_mask=A, claim="quotient of thick is thick"
                    )
                    return out
    return out


def _check_c2_5(S, tau, cfg) -> InstanceOutcome:
    out = InstanceOutcome()
    if not check_hypothesis(tau, "left_inverse_invariant"):
        out.admissible = False
        return out
    out.forced_base = _forced(S, tau, "left_inverse_invariant")
    tb = _tables(S, tau.base)
    for g in range(S.order):
        for A in range(S.full_mask + 1):
            if tb.large[A]:
                out.assertions += 1
                if not tb.large[translate_set(S, g, A)]:
                    out.counterexample = _counterexample(
                        S, tau, g=g, subset_mask=A, claim="large family left invariant"
                    )
                    return out
            if tb.thick[A]:
                out.assertions += 1
                if not tb.thick[left_quotient(S, g, A)]:
                    out.counterexample = _counterexample(
                        S, tau, g=g, subset_mask=A,
                        claim="thick family left inverse invariant",
                    )
                    return out
    return out


def _check_t2_6(S, tau, cfg) -> InstanceOutcome:
    out = InstanceOutcome()
    if not check_hypothesis(tau, "neighborhood_shift"):
        out.admissible = False
        return out
    out.forced_base = _forced(S, tau, "neighborhood_shift")
    tb = _tables(S, tau.base)
    gs = elements(tau.base)
    for T in range(S.full_mask + 1):
        if not tb.thick[T]:
            continue
        for g in gs:
            out.assertions += 1
            if not tb.thick[left_quotient(S, g, T)]:
                out.counterexample = _counterexample(
                    S, tau, subset_mask=T, g=g, claim="quotient of thick is thick"
                )
                return out
    return out


def _minimal_ideal_union(S: FinSemigroup, within: int) -> int:
    M = 0
    for L in minimal_left_ideals(S, within):
        M |= L
    return M


def _check_t3_1(S, tau, cfg) -> InstanceOutcome:
    out = InstanceOutcome()
    if not check_hypothesis(tau, "semigroup_filter"):
        out.admissible = False
        return out
    out.forced_base = _forced(S, tau, "semigroup_filter")
    tb = _tables(S, tau.base)
    U0 = tau.base
    M = _minimal_ideal_union(S, U0)
    for g in bits(U0):
        in_minimal = bool((M >> g) & 1)
        rhs = True
        bad_A = None
        for A in range(S.full_mask + 1):
            if not (A >> g) & 1:
                continue
            if not tb.large[trace_set(S, A, g)]:
                rhs = False
                bad_A = A
                break
        out.assertions += 1
        if in_minimal != rhs:
            out.counterexample = _counterexample(
                S,
                tau,
                g=g,
                in_minimal_ideal=in_minimal,
                traces_all_large=rhs,
                failing_set=None if bad_A is None else _detail_mask(bad_A),
            )
            return out
    return out


def _check_c3_1(S, tau, cfg) -> InstanceOutcome:
    out = InstanceOutcome()
    if not check_hypothesis(tau, "semigroup_filter"):
        out.admissible = False
        return out
    out.forced_base = _forced(S, tau, "semigroup_filter")
    tb = _tables(S, tau.base)
    M = _minimal_ideal_union(S, tau.base)
    for A in range(S.full_mask + 1):
        if not A & M:
            continue
        out.assertions += 1
        if not tb.prethick[A]:
            out.counterexample = _counterexample(
                S, tau, subset_mask=A, claim="set meeting a minimal ideal is prethick"
            )
            return out
    return out


def _check_t3_2(S, tau, cfg) -> InstanceOutcome:
    out = InstanceOutcome()
    n = cfg.cells
    if not S.is_group or not is_subgroup(S, tau.base):
        out.admissible = False
        return out
    if S.order > SWEEP_ORDER_LIMIT.get(n, 8) or popcount(tau.base) < n:
        out.admissible = False
        return out
    try:
        record = sweep_partitions(S, tau, n, "translate", V=tau.base)
    except BoundViolation as exc:
        out.counterexample = _counterexample(S, tau, cells=n, violation=str(exc))
        return out
    out.assertions = record.partitions_checked
    if record.worst_min_F > record.proved_bound:
        out.counterexample = _counterexample(
            S,
            tau,
            cells=n,
            worst_min_F=record.worst_min_F,
            proved_bound=record.proved_bound,
            partition_labels=record.argmax_partition.label_string(),
        )
    return out


def _check_t3_5(S, tau, cfg) -> InstanceOutcome:
    out = InstanceOutcome()
    if not check_hypothesis(tau, "left_inverse_invariant"):
        out.admissible = False
        return out
    out.forced_base = _forced(S, tau, "left_inverse_invariant")
    tb = _tables(S, tau.base)
    M = _minimal_ideal_union(S, tau.base)
    for A in range(S.full_mask + 1):
        lhs = tb.prethick[A]
        rhs = bool(A & M)
        out.assertions += 1
        if lhs != rhs:
            out.counterexample = _counterexample(
                S, tau, part="i", subset_mask=A, prethick=lhs, meets_minimal=rhs
            )
            return out
    if S.order > cfg.regularity_order_limit:
        return out
    for A in range(S.full_mask + 1):
        if not tb.prethick[A]:
            continue
        sizes = (2, 3) if popcount(A) <= 8 else (2,)
        for cells in sizes:
            if popcount(A) < cells:
                continue
            for part in enumerate_partitions(A, cells):
                out.assertions += 1
                if not any(tb.prethick[c] for c in part.cell_masks()):
                    out.counterexample = _counterexample(
                        S,
                        tau,
                        part="iii",
                        subset_mask=A,
                        partition_labels=part.label_string(),
                    )
                    return out
    return out


def _check_t3_6(S, tau, cfg) -> InstanceOutcome:
    out = InstanceOutcome()
    if not S.is_group or not check_hypothesis(tau, "left_invariant"):
        out.admissible = False
        return out
    if S.order > cfg.small_order_limit:
        out.admissible = False
        return out
    # the hypothesis provably admits only the full base on a finite group;
    # flagged via forced_base but still counted as effective (see module doc)
    out.forced_base = _forced(S, tau, "left_invariant")
    tb = _tables(S, tau.base)
    small = tb.small
    for A in range(S.full_mask + 1):
        lhs = tb.prethick[A]
        rhs = not small[A]
        out.assertions += 1
        if lhs != rhs:
            out.counterexample = _counterexample(
                S, tau, subset_mask=A, prethick=lhs, not_small=rhs
            )
            return out
    return out


def _check_t3_7(S, tau, cfg) -> InstanceOutcome:
    out = InstanceOutcome()
    if not check_hypothesis(tau, "left_inverse_invariant"):
        out.admissible = False
        return out
    out.forced_base = _forced(S, tau, "left_inverse_invariant")
    tb = _tables(S, tau.base)
    for A in range(S.full_mask + 1):
        if not tb.prethick[A]:
            continue
        out.assertions += 1
        if not tb.large[delta_tau(S, tau, A)]:
            out.counterexample = _counterexample(
                S, tau, subset_mask=A, claim="difference set of prethick is large"
            )
            return out
    return out


CHECKERS: Dict[str, Callable] = {
    "T2_1": _check_t2_1,
    "T2_2": _check_t2_2,
    "T2_3": _check_t2_3,
    "T2_4": _check_t2_4,
    "C2_5": _check_c2_5,
    "T2_6": _check_t2_6,
    "T3_1": _check_t3_1,
    "C3_1": _check_c3_1,
    "T3_2": _check_t3_2,
    "C3_2": _check_t3_2,  # corollary alias for the same partition sweep
    "T3_5": _check_t3_5,
    "T3_6": _check_t3_6,
    "T3_7": _check_t3_7,
}

_THEOREM_NOTES = {
    "T3_5": (
        "closure membership statement degenerates onto the minimal-ideal "
        "membership statement at finite scale",
    ),
    "T3_6": (
        "left invariance admits only the full base on a finite group; "
        "instances exercise the absolute theory and are annotated, not "
        "discounted",
    ),
}


# ---------------------------------------------------------------------------
# hunt variants (hypothesis dropped / conclusion strengthened)


def _hunt_t2_6_large(S, tau, cfg) -> InstanceOutcome:
    out = InstanceOutcome()
    if not check_hypothesis(tau, "neighborhood_shift"):
        out.admissible = False
        return out
    tb = _tables(S, tau.base)
    gs = elements(tau.base)
    for L in range(S.full_mask + 1):
        if not tb.large[L]:
            continue
        for g in gs:
            out.assertions += 1
            if not tb.large[left_quotient(S, g, L)]:
                out.counterexample = _counterexample(
                    S, tau, subset_mask=L, g=g,
                    finding="quotient of a large set stopped being large",
                )
                return out
    return out


def _hunt_t2_3_no_extrathick(S, tau, cfg) -> InstanceOutcome:
    out = InstanceOutcome()
    if check_hypothesis(tau, "extrathick_members"):
        out.admissible = False
        return out
    tb = _tables(S, tau.base)
    U0 = tau.base
    for T in range(S.full_mask + 1):
        lhs = tb.thick[T]
        rhs = _meets_every_large(tb, S, U0, T)
        out.assertions += 1
        if lhs != rhs:
            out.counterexample = _counterexample(
                S, tau, subset_mask=T, thick=lhs, meets_every_large=rhs,
                finding="equivalence breaks without the extrathick hypothesis",
            )
            return out
    return out


def _hunt_t3_6_semigroup(S, tau, cfg) -> InstanceOutcome:
    out = InstanceOutcome()
    if S.is_group or not check_hypothesis(tau, "left_invariant"):
        out.admissible = False
        return out
    if S.order > cfg.small_order_limit:
        out.admissible = False
        return out
    tb = _tables(S, tau.base)
    small = tb.small
    for A in range(S.full_mask + 1):
        lhs = tb.prethick[A]
        rhs = not small[A]
        out.assertions += 1
        if lhs != rhs:
            out.counterexample = _counterexample(
                S, tau, subset_mask=A, prethick=lhs, not_small=rhs,
                finding="prethick/not-small equivalence fails off groups",
            )
            return out
    return out


HUNTERS: Dict[str, Callable] = {
    "T2_6_large": _hunt_t2_6_large,
    "T2_3_no_extrathick": _hunt_t2_3_no_extrathick,
    "T3_6_semigroup": _hunt_t3_6_semigroup,
}


# ---------------------------------------------------------------------------
# drivers


def _instance_stream(catalog: Sequence[CatalogEntry]):
    for entry in catalog:
        for base in entry.bases:
            yield entry.semigroup, base


def _run_instances(
    checker: Callable,
    theorem_id: str,
    pairs: Sequence[Tuple[FinSemigroup, int]],
    cfg: VerifyConfig,
    stop_on_counterexample: bool,
) -> dict:
    counts = {
        "checked": 0,
        "degenerate": 0,
        "effective": 0,
        "skipped": 0,
        "forced": 0,
        "assertions": 0,
    }
    counterexample = None
    for S, base in pairs:
        tau = PrincipalFilter(S, base)
        outcome = checker(S, tau, cfg)
        if not outcome.admissible:
            counts["skipped"] += 1
            continue
        counts["checked"] += 1
        counts["assertions"] += outcome.assertions
        if outcome.forced_base:
            counts["forced"] += 1
        degenerate = outcome.assertions == 0 or (
            outcome.forced_base and theorem_id != "T3_6"
        )
        if degenerate:
            counts["degenerate"] += 1
        else:
            counts["effective"] += 1
        if outcome.counterexample is not None:
            counterexample = dict(outcome.counterexample)
            counterexample["theorem"] = theorem_id
            if stop_on_counterexample:
                break
    counts["counterexample"] = counterexample
    return counts


def _run_chunk(args):
    kind, theorem_id, chunk, cfg_tuple = args
    cfg = VerifyConfig(*cfg_tuple)
    table = CHECKERS if kind == "verify" else HUNTERS
    pairs = [(FinSemigroup(t, name=nm), base) for t, nm, base in chunk]
    return _run_instances(table[theorem_id], theorem_id, pairs, cfg, True)


def _merge_counts(parts: List[dict]) -> dict:
    merged = {
        "checked": 0,
        "degenerate": 0,
        "effective": 0,
        "skipped": 0,
        "forced": 0,
        "assertions": 0,
        "counterexample": None,
    }
    for part in parts:
        for key in ("checked", "degenerate", "effective", "skipped", "forced",
                    "assertions"):
            merged[key] += part[key]
        if part["counterexample"] is not None:
            merged["counterexample"] = part["counterexample"]
            break  # earlier chunks are merged first; later work is discarded
    return merged


def _drive(
    kind: str,
    theorem_id: str,
    catalog: Sequence[CatalogEntry],
    catalog_label: str,
    cfg: Optional[VerifyConfig],
) -> TheoremReport:
    cfg = cfg or VerifyConfig()
    registry = CHECKERS if kind == "verify" else HUNTERS
    if theorem_id not in registry:
        raise ValueError(f"unknown {kind} id {theorem_id!r}")
    pairs = list(_instance_stream(catalog))
    started = time.perf_counter()
    workers = cfg.resolved_workers()
    if workers > 1 and len(pairs) > workers:
        import multiprocessing

        chunks = []
        step = (len(pairs) + workers - 1) // workers
        cfg_tuple = (
            cfg.regularity_order_limit,
            cfg.small_order_limit,
            cfg.cells,
            1,
        )
        for i in range(0, len(pairs), step):
            chunk = [
                (S.table, S.name, base) for S, base in pairs[i : i + step]
            ]
            chunks.append((kind, theorem_id, chunk, cfg_tuple))
        with multiprocessing.Pool(workers) as pool:
            results = pool.map(_run_chunk, chunks)
        counts = _merge_counts(results)
    else:
        counts = _run_instances(
            registry[theorem_id], theorem_id, pairs, cfg, True
        )
    elapsed = time.perf_counter() - started
    notes = list(_THEOREM_NOTES.get(theorem_id, ()))
    if kind == "hunt":
        notes.append(HUNT_VARIANTS[theorem_id])
        notes.append(
            "found" if counts["counterexample"] else "exhausted the catalog"
        )
    return TheoremReport(
        theorem_id=theorem_id,
        catalog_label=catalog_label,
        instances_checked=counts["checked"],
        degenerate_count=counts["degenerate"],
        effective_count=counts["effective"],
        skipped_count=counts["skipped"],
        forced_absolute_count=counts["forced"],
        assertions=counts["assertions"],
        counterexample=counts["counterexample"],
        vacuity_warning=counts["effective"] == 0,
        notes=tuple(notes),
        elapsed=elapsed,
        search=kind == "hunt",
        found=counts["counterexample"] is not None,
    )


def verify(
    theorem_id: str,
    catalog: Sequence[CatalogEntry],
    catalog_label: str = "custom",
    cfg: Optional[VerifyConfig] = None,
) -> TheoremReport:
    return _drive("verify", theorem_id, catalog, catalog_label, cfg)


def hunt_counterexample(
    variant: str,
    catalog: Sequence[CatalogEntry],
    catalog_label: str = "custom",
    cfg: Optional[VerifyConfig] = None,
) -> TheoremReport:
    return _drive("hunt", variant, catalog, catalog_label, cfg)


def replay(counterexample: dict, cfg: Optional[VerifyConfig] = None) -> bool:
    """Re-run the named checker on the stored instance; True if it fails again."""
    cfg = cfg or VerifyConfig()
    theorem_id = counterexample["theorem"]
    registry = CHECKERS if theorem_id in CHECKERS else HUNTERS
    S = FinSemigroup(
        tuple(tuple(row) for row in counterexample["table"]),
        name=counterexample["semigroup"],
    )
    base = 0
    for e in counterexample["base"]:
        base |= 1 << e
    outcome = registry[theorem_id](S, PrincipalFilter(S, base), cfg)
    return outcome.counterexample is not None


__all__ = [
    "THEOREM_IDS",
    "HUNT_VARIANTS",
    "VerifyConfig",
    "TheoremReport",
    "verify",
    "hunt_counterexample",
    "replay",
]
