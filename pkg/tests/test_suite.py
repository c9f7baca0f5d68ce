import dataclasses

import jsonschema
import pytest

from mockxi import suite
from mockxi.congruence import CongruenceClaim
from mockxi.suite import (
    CATALOG,
    DEFAULT_CONFIG,
    GROUPS,
    IdentityEntry,
    ProgressionEntry,
    blocking_failures,
    catalog_by_id,
    dumps_report,
    family_entries,
    full_report,
    report_exit_code,
    report_schema,
    run_group,
)


@pytest.fixture(scope="module")
def report():
    return full_report()


@pytest.fixture(scope="module")
def half_report():
    return full_report({g: n // 2 for g, n in DEFAULT_CONFIG.items()})


def by_id(rep):
    return {r["id"]: r for r in rep["results"]}


def test_ids_unique_and_grouped():
    ids = [e.id for e in CATALOG] + [e.id for e in family_entries()]
    assert len(ids) == len(set(ids))
    for e in CATALOG:
        assert e.id.split(".")[0] == e.group and e.group in GROUPS


def test_group_sizes():
    assert len(run_group("lemma1", 60)) == 8
    assert len(run_group("lemma2", 60)) == 2
    with pytest.raises(KeyError):
        run_group("nope", 10)


def test_default_report_validates_and_exits_zero(report):
    jsonschema.validate(report, report_schema())
    assert report_exit_code(report) == 0
    assert blocking_failures(report) == []
    assert [r["id"] for r in report["results"]] == sorted(r["id"] for r in report["results"])
    assert report["summary"]["skipped"] == 0
    assert sum(report["summary"].values()) == len(report["results"])


def test_every_failure_is_a_refuted_variant(report):
    for r in report["results"]:
        if r["status"] == "fail":
            assert r["adjudication"] is not None
            assert suite._variant(r["id"]) != r["adjudication"]


def test_adjudication_verdicts(report):
    res = by_id(report)
    assert res["congruences.45n41_mod5.printed"]["adjudication"] == "congruences.45n42_mod5"
    assert res["congruences.45n41_mod5.printed"]["first_failure"] == 0
    assert res["congruences.45n42_mod5"]["status"] == "pass"
    assert res["characterizations.xi_4n2_mod4.printed"]["first_failure"] == 0
    assert res["dissections.xi_12n10"]["adjudication"] == "dissections.xi_12n10"
    assert res["mock.omega_g3.printed_definition"]["status"] == "fail"
    # scaled-3r as printed breaks exactly where 3 is a nonresidue
    for p, held in [(5, "scaled-3r-corrected"), (7, "scaled-3r-corrected"), (11, None)]:
        ids = [i for i in res if i.startswith(f"families.scaled-3r.p{p}.")]
        adj = {res[i]["adjudication"] for i in ids}
        assert adj == {None if held is None else f"families.{held}.p{p}"}


def test_conjectures_are_non_blocking():
    rep = {
        "results": [
            {"id": "conjectures.x", "kind": "conjecture", "status": "fail", "adjudication": None},
            {"id": "congruences.y", "kind": "congruence", "status": "pass", "adjudication": None},
        ]
    }
    assert report_exit_code(rep) == 0
    rep["results"][1]["status"] = "fail"
    assert report_exit_code(rep) == 1
    assert blocking_failures(rep) == ["congruences.y"]


def test_conjectures_reported_as_conjectures(report):
    conj = [r for r in report["results"] if r["id"].startswith("conjectures.")]
    assert conj and all(r["kind"] == "conjecture" and r["status"] == "pass" for r in conj)


def test_halving_orders_keeps_statuses(report, half_report):
    full, half = by_id(report), by_id(half_report)
    assert full.keys() == half.keys()
    for i in full:
        assert full[i]["status"] == half[i]["status"], i


def test_order_zero_skips_everything():
    rep = full_report({g: 0 for g in GROUPS})
    assert rep["summary"] == {"pass": 0, "fail": 0, "skipped": len(rep["results"])}
    assert report_exit_code(rep) == 0
    jsonschema.validate(rep, report_schema())


def test_group_selection_and_config_validation():
    rep = full_report({"lemma2": 50}, groups=["lemma2"])
    assert rep["config"] == {"lemma2": 50}
    assert len(rep["results"]) == 2
    with pytest.raises(KeyError):
        full_report({"bogus": 1})


def test_mutated_identity_fails_early():
    entry = catalog_by_id()["lemma1.f1cube_over_f3"]
    bad = dataclasses.replace(entry, rhs=entry.rhs.replace("f_4^3/f_12", "f_4^3/f_12^2"))
    [r] = run_group("lemma1", 200, entries=[bad])
    assert r.status == "fail" and r.first_failure < 20


def test_mutated_congruence_fails_early():
    e = ProgressionEntry("congruences.mut", "", "congruences", CongruenceClaim(8, 5, 4))
    [r] = run_group("congruences", 2000, entries=[e])
    assert r.status == "fail" and r.first_failure < 20


def test_identity_entry_line():
    e = IdentityEntry("x.y", "", "x", "f_1", "f_1", modulus=4)
    assert e.line == "f_1 == f_1 [mod 4]"


def test_progression_count_uses_index_bound():
    e = catalog_by_id()["congruences.8n6_mod4"]
    assert e.count(5) == 0 and e.count(6) == 1 and e.count(14) == 2


def test_report_is_byte_identical_under_source_date_epoch(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    cfg = {g: n // 20 for g, n in DEFAULT_CONFIG.items()}
    a, b = full_report(cfg), full_report(cfg)
    assert a["generated_at"] == "1970-01-01T00:00:00Z"
    assert all(r["elapsed"] == 0.0 for r in a["results"])
    assert dumps_report(a) == dumps_report(b)


def test_timings_reported_without_source_date_epoch(monkeypatch):
    monkeypatch.delenv("SOURCE_DATE_EPOCH", raising=False)
    rep = full_report({"lemma1": 300}, groups=["lemma1"])
    assert all(r["elapsed"] > 0 for r in rep["results"])
