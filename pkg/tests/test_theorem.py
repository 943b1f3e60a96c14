import json

import pytest

from powergraph.arith import factorize
from powergraph.errors import ParameterError
from powergraph.theorem import (
    CSV_HEADER,
    Regime,
    candidate_family,
    classify_regime,
    comparison_pool,
    csv_row,
    distinct_by_classes,
    minimum_cutset,
    report_to_dict,
    sweep,
    verify,
)


@pytest.mark.parametrize(
    "n,regime",
    [(9, Regime.PRIME_POWER), (15, Regime.R2_P1_ODD), (12, Regime.R2_P1_EVEN),
     (105, Regime.R3_P1_ODD), (30, Regime.R3_P1_EVEN), (210, Regime.R_GE_4)],
)
def test_regimes(n, regime):
    assert classify_regime(factorize(n)) is regime


def test_family_shapes():
    assert [c.label for c in candidate_family(factorize(12))] == ["Z_2^1"]
    assert [c.label for c in candidate_family(factorize(72))] == ["Z_2^1", "Z_2^2"]
    assert [c.label for c in candidate_family(factorize(45))] == ["Z_2^1"]
    assert [c.label for c in candidate_family(factorize(30))] == ["Z_3^1"]
    assert [c.label for c in candidate_family(factorize(2 * 3 * 25))] == ["Z_3^2"]
    assert [c.label for c in candidate_family(factorize(105))] == ["Z_3^1"]
    family = candidate_family(factorize(210))
    assert len(family) == 13 and family[0].label == "Z_4^1"
    assert candidate_family(factorize(16)) == []


def test_family_r_ge_4_with_square():
    labels = {c.label for c in candidate_family(factorize(4 * 3 * 5 * 7))}
    assert {"Z_4^1", "Z_1^2", "X_{1,2}^{2,1}", "X_{2,1}^{1,2}"} <= labels
    assert "Z_1^1" not in labels


def test_minimum_cutset_examples():
    rep = minimum_cutset(factorize(12))
    assert rep.kappa == 6 and [c.label for c in rep.achieving] == ["Z_2^1"]
    rep = minimum_cutset(factorize(210))
    assert rep.kappa == 70 and [c.label for c in rep.achieving] == ["Z_4^1"]
    assert min(c.size for c in rep.family if c.kind == "X") == 72
    rep = minimum_cutset(factorize(2310))
    assert rep.kappa == 630 and rep.achieving[0].label == "X_{4,5}^{1,1}"
    rep = minimum_cutset(factorize(49))
    assert rep.kappa is None and rep.achieving == () and rep.family_size == 0


def test_report_invariants():
    for n in (36, 60, 420, 1260):
        rep = minimum_cutset(factorize(n))
        assert rep.achieving and all(c.size == rep.kappa for c in rep.achieving)
        assert all(c.size >= rep.kappa for c in rep.family)


@pytest.mark.parametrize("mode", ["maxflow", "exhaustive", "both"])
def test_verify_modes(mode):
    rec = verify(factorize(60), mode)
    assert rec.match and rec.disconnection_ok and rec.oracle_kappa == rec.formula_kappa
    assert rec.oracle_used == mode


def test_verify_skips_exhaustive_when_large():
    rec = verify(factorize(2310), "both")
    assert rec.oracle_used == "maxflow" and "exhaustive skipped" in rec.note and rec.match
    rec = verify(factorize(2310), "exhaustive")
    assert rec.oracle_used == "none" and rec.oracle_kappa is None


def test_verify_prime_power_and_none():
    rec = verify(factorize(27), "maxflow")
    assert rec.match and rec.note == "complete_graph" and rec.formula_kappa is None
    rec = verify(factorize(30), "none")
    assert rec.match and rec.oracle_kappa is None and rec.oracle_used == "none"
    with pytest.raises(ParameterError):
        verify(factorize(30), "magic")


def test_cut_in_family_for_ties():
    for n in (18, 36):
        rec = verify(factorize(n), "maxflow")
        assert rec.cut_in_family


def test_distinct_by_classes_merges_equal_sets():
    pool = comparison_pool(factorize(15))
    groups = distinct_by_classes(pool)
    assert len(groups) < len(pool)


def test_serialisation():
    rep = minimum_cutset(factorize(210))
    rec = verify(factorize(210), "maxflow")
    d = report_to_dict(rep, rec)
    assert set(d) == {"n", "r", "regime", "kappa", "achieving", "verification"}
    assert set(d["verification"]) == {"oracle_kappa", "oracle_used", "match", "disconnection_ok", "elapsed_ms"}
    json.dumps(d)
    assert CSV_HEADER == "n,r,regime,kappa,achieving_kind,achieving_params,match"
    assert csv_row(rep, rec) == "210,4,r_ge_4,70,Z,4;1,true"
    assert csv_row(minimum_cutset(factorize(8))) == "8,1,prime_power,,,,"


def test_sweep_in_order_and_parallel():
    serial = [(r.n, v.match) for r, v in sweep(2, 40)]
    assert [n for n, _ in serial] == list(range(2, 41)) and all(m for _, m in serial)
    parallel = [(r.n, v.match) for r, v in sweep(2, 40, workers=2)]
    assert parallel == serial
