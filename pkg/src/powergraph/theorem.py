"""Minimum cut-sets of P(C_n) from the candidate families, with oracle cross-checks.

For r >= 4 the minimum is the lightest member of the family
{Z_r^1} + {Z_a^{n_a} : n_a >= 2} + {X_{a,b}^{s,t}}; for r = 2 and r = 3 the
family is the single known minimiser (or, for r = 2 with p_1 = 2, the n_2 tied
sets Z_2^s). No graph work is needed to produce kappa; the oracles only audit.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

from .arith import DEFAULT_CLASS_CAP, Factorization, divisor_classes, factorize
from .candidates import CutCandidate, all_x_candidates, all_z_candidates, x_candidate, z_candidate
from .errors import CapacityError, ConsistencyError, ParameterError
from .graph import (
    COMPLETE_GRAPH,
    DEFAULT_EXHAUSTIVE_LIMIT,
    build_divisor_graph,
    check_separation,
    exhaustive_min_cut,
    weighted_vertex_connectivity,
)

ORACLES = ("maxflow", "exhaustive", "both", "none")


class Regime(str, Enum):
    PRIME_POWER = "prime_power"
    R2_P1_ODD = "r2_p1_odd"
    R2_P1_EVEN = "r2_p1_even"
    R3_P1_ODD = "r3_p1_odd"
    R3_P1_EVEN = "r3_p1_even"
    R_GE_4 = "r_ge_4"


def classify_regime(f: Factorization) -> Regime:
    if f.r == 1:
        return Regime.PRIME_POWER
    even = f.primes[0] == 2
    if f.r == 2:
        return Regime.R2_P1_EVEN if even else Regime.R2_P1_ODD
    if f.r == 3:
        return Regime.R3_P1_EVEN if even else Regime.R3_P1_ODD
    return Regime.R_GE_4


@dataclass(frozen=True)
class MinCutReport:
    n: int
    r: int
    regime: Regime
    kappa: int | None
    achieving: tuple[CutCandidate, ...]
    family_size: int
    family: tuple[CutCandidate, ...] = field(repr=False, default=())


@dataclass(frozen=True)
class VerificationRecord:
    n: int
    formula_kappa: int | None
    oracle_kappa: int | None
    oracle_used: str
    match: bool
    disconnection_ok: bool
    elapsed: float  # seconds
    oracle_cut: frozenset[int] = frozenset()
    cut_in_family: bool | None = None
    note: str = ""


def candidate_family(f: Factorization, classes=None) -> list[CutCandidate]:
    if f.r == 1:
        return []
    classes = divisor_classes(f, DEFAULT_CLASS_CAP) if classes is None else classes
    r = f.r
    if r == 2:
        if f.primes[0] == 2:
            return [z_candidate(f, 2, s, classes) for s in range(1, f.e(2) + 1)]
        return [z_candidate(f, 2, 1, classes)]
    if r == 3:
        s = f.e(3) if f.primes[0] == 2 else 1
        return [z_candidate(f, 3, s, classes)]
    family = [z_candidate(f, r, 1, classes)]
    family += [z_candidate(f, a, f.e(a), classes) for a in range(1, r + 1) if f.e(a) >= 2]
    family += [
        x_candidate(f, a, b, s, t, classes)
        for a in range(1, r + 1)
        for b in range(1, r + 1)
        if a != b
        for s in range(1, f.e(a) + 1)
        for t in range(1, f.e(b) + 1)
    ]
    return family


def comparison_pool(f: Factorization, classes=None) -> list[CutCandidate]:
    """Every Z_a^s and X_{a,b}^{s,t} that exists for n, family or not."""
    classes = divisor_classes(f, DEFAULT_CLASS_CAP) if classes is None else classes
    return all_z_candidates(f, classes) + all_x_candidates(f, classes)


def distinct_by_classes(candidates) -> dict[frozenset[int], list[CutCandidate]]:
    """Group candidates that name the same vertex set (e.g. Z_1^1 = Z_2^1 when r = 2)."""
    groups: dict[frozenset[int], list[CutCandidate]] = {}
    for c in candidates:
        groups.setdefault(c.values, []).append(c)
    return groups


def minimum_cutset(f: Factorization, class_cap: int = DEFAULT_CLASS_CAP) -> MinCutReport:
    regime = classify_regime(f)
    if regime is Regime.PRIME_POWER:
        return MinCutReport(f.n, f.r, regime, None, (), 0)
    family = sorted(candidate_family(f, divisor_classes(f, class_cap)), key=lambda c: c.sort_key)
    kappa = min(c.size for c in family)
    achieving = tuple(c for c in family if c.size == kappa)
    return MinCutReport(f.n, f.r, regime, kappa, achieving, len(family), tuple(family))


def verify(
    f: Factorization,
    mode: str = "maxflow",
    class_cap: int = DEFAULT_CLASS_CAP,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
    strategy: str = "full",
) -> VerificationRecord:
    """Compute kappa from the family and audit it with the selected oracle(s).

    ``mode="both"`` runs the exhaustive oracle only where the class count
    permits; ``oracle_used`` records what actually ran.
    """
    if mode not in ORACLES:
        raise ParameterError(f"unknown oracle {mode!r}; expected one of {ORACLES}")
    start = time.perf_counter()
    report = minimum_cutset(f, class_cap)
    if report.regime is Regime.PRIME_POWER:
        return VerificationRecord(f.n, None, None, "none", True, True, time.perf_counter() - start,
                                  note=COMPLETE_GRAPH)
    g = build_divisor_graph(f, class_cap)
    try:
        for c in report.achieving:
            check_separation(g, c)
        disconnection_ok = True
    except ConsistencyError:
        disconnection_ok = False

    results, used, note = [], [], ""
    if mode in ("maxflow", "both"):
        results.append(weighted_vertex_connectivity(g, strategy))
        used.append("maxflow")
    if mode in ("exhaustive", "both"):
        try:
            results.append(exhaustive_min_cut(g, exhaustive_limit))
            used.append("exhaustive")
        except CapacityError as exc:
            if mode == "exhaustive":
                note = str(exc)
            else:
                note = "exhaustive skipped: " + str(exc)
    oracle_used = "both" if len(used) == 2 else (used[0] if used else "none")

    if not results:
        # Nothing to compare against: vacuous, like a prime power.
        elapsed = time.perf_counter() - start
        return VerificationRecord(f.n, report.kappa, None, oracle_used, True,
                                  disconnection_ok, elapsed, note=note or "no oracle run")
    values = {res.kappa for res in results}
    oracle_kappa = results[0].kappa if len(values) == 1 else None
    if len(values) > 1:
        note = f"oracles disagree: {sorted(values)}"
    cut = results[0].cut_classes
    family_sets = {c.values for c in report.family}
    elapsed = time.perf_counter() - start
    return VerificationRecord(
        f.n,
        report.kappa,
        oracle_kappa,
        oracle_used,
        oracle_kappa == report.kappa,
        disconnection_ok,
        elapsed,
        cut,
        cut in family_sets,
        note,
    )


# -- serialisation --------------------------------------------------------------

CSV_HEADER = "n,r,regime,kappa,achieving_kind,achieving_params,match"


def report_to_dict(report: MinCutReport, record: VerificationRecord | None = None) -> dict:
    out = {
        "n": report.n,
        "r": report.r,
        "regime": report.regime.value,
        "kappa": report.kappa,
        "achieving": [c.to_dict() for c in report.achieving],
    }
    if record is not None:
        out["verification"] = {
            "oracle_kappa": record.oracle_kappa,
            "oracle_used": record.oracle_used,
            "match": record.match,
            "disconnection_ok": record.disconnection_ok,
            "elapsed_ms": round(record.elapsed * 1000, 3),
        }
    return out


def csv_row(report: MinCutReport, record: VerificationRecord | None = None) -> str:
    kinds = "|".join(c.kind for c in report.achieving)
    params = "|".join(";".join(map(str, c.params)) for c in report.achieving)
    kappa = "" if report.kappa is None else str(report.kappa)
    match = "" if record is None else str(record.match).lower()
    return f"{report.n},{report.r},{report.regime.value},{kappa},{kinds},{params},{match}"


# -- sweeps -----------------------------------------------------------------------


def _verify_one(args):
    n, mode, class_cap, strategy = args
    f = factorize(n)
    return minimum_cutset(f, class_cap), verify(f, mode, class_cap, strategy=strategy)


def sweep(lo: int, hi: int, mode: str = "maxflow", workers: int = 1,
          class_cap: int = DEFAULT_CLASS_CAP, strategy: str = "full", stop_on_mismatch: bool = True):
    """Yield (report, record) for n = lo..hi in order.

    With ``stop_on_mismatch`` the generator ends right after yielding the
    first mismatching record, so the caller can persist it before failing.
    """
    jobs = [(n, mode, class_cap, strategy) for n in range(lo, hi + 1)]
    if workers <= 1:
        results = map(_verify_one, jobs)
        pool = None
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = pool.map(_verify_one, jobs, chunksize=16)
    try:
        for report, record in results:
            yield report, record
            if stop_on_mismatch and not record.match:
                return
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
