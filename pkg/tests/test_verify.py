import csv
import io
import json
import math

import jsonschema
import pytest

from freeid.closedforms import CLOSED_FORMS
from freeid.quad import DEFAULT_CONFIG
from freeid.verify import (
    GR_IDENTITIES,
    REPORT_SCHEMA,
    SUITE_TOLERANCES,
    SUITES,
    Report,
    UnknownIdentity,
    UnknownSuite,
    covered_closed_forms,
    emit_report,
    gr_table_check,
    load_report,
    make_case,
    run_suite,
)


@pytest.fixture(scope="module")
def report_all():
    return run_suite("all")


def _strip_time(doc):
    doc = dict(doc)
    doc.pop("created_at")
    return doc


# -- table identities ----------------------------------------------------------------


def test_gr_4342_2():
    c = gr_table_check("4.342(2)", {"xi": 2.0})
    assert c.pass_
    assert c.rhs.real == pytest.approx(0.0965735903, abs=1e-10)


def test_gr_3522_2():
    c = gr_table_check("3.522(2)", {"b": 1.0})
    assert c.pass_
    assert c.rhs.real == pytest.approx(0.1931471806, abs=1e-10)
    assert c.lhs.real == pytest.approx(math.log(2.0) - 0.5, abs=1e-9)


def test_gr_remark6c():
    c = gr_table_check("remark6c", {})
    assert c.pass_
    assert c.rhs.real == pytest.approx(0.0364899740, abs=1e-10)


def test_printed_variant_is_expected_failure():
    c = gr_table_check("4.342(3)-printed", {"xi": 2.0})
    assert c.expect_fail
    assert c.pass_
    assert c.abs_err > 1e-3


@pytest.mark.parametrize("gid", sorted(GR_IDENTITIES))
def test_every_identity_checks(gid):
    names = GR_IDENTITIES[gid][1]
    params = {n: 1.5 for n in names}
    if gid == "3.551(3)":
        params["mu"] = 2.0
    c = gr_table_check(gid, params)
    assert c.pass_, c


def test_3551_only_for_mu_two():
    with pytest.raises(ValueError):
        gr_table_check("3.551(3)", {"beta": 1.5, "mu": 1.5})


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        gr_table_check("9.999(9)", {})


def test_identity_parameter_errors():
    with pytest.raises(ValueError):
        gr_table_check("4.342(2)", {})
    with pytest.raises(ValueError):
        gr_table_check("4.342(2)", {"xi": -1.0})


# -- case bookkeeping ------------------------------------------------------------------


def test_make_case_tolerance_is_relative_plus_absolute():
    assert make_case("s", "n", {}, 1000.0, 1000.0 + 5e-7, 1e-9).pass_
    assert not make_case("s", "n", {}, 0.0, 2e-9, 1e-9).pass_


def test_make_case_condition_and_expect_fail():
    assert not make_case("s", "n", {}, 1.0, 1.0, 1e-9, condition=False).pass_
    assert make_case("s", "n", {}, 1.0, 2.0, 1e-9, expect_fail=True).pass_
    assert not make_case("s", "n", {}, 1.0, 1.0, 1e-9, expect_fail=True).pass_


def test_nan_never_passes():
    assert not make_case("s", "n", {}, math.nan, 1.0, 1.0).pass_


# -- suites -----------------------------------------------------------------------------


@pytest.mark.parametrize("suite", [s for s in SUITES if s != "all"])
def test_suite_green(suite, report_all):
    cases = [c for c in report_all.cases if c.suite == suite]
    assert cases
    failed = [c.name for c in cases if not c.pass_]
    assert not failed


def test_all_is_union_without_duplicates(report_all):
    names = [(c.suite, c.name) for c in report_all.cases]
    assert len(names) == len(set(names))
    assert {c.suite for c in report_all.cases} == set(SUITE_TOLERANCES)
    gr = run_suite("gr-table")
    assert [c.name for c in gr.cases] == [c.name for c in report_all.cases if c.suite == "gr-table"]


def test_counts_consistent(report_all):
    assert report_all.n_pass + report_all.n_fail == len(report_all.cases)
    assert report_all.n_fail == 0


def test_every_closed_form_is_covered(report_all):
    assert covered_closed_forms(report_all) == set(CLOSED_FORMS)


def test_tol_override_applies_to_primary_cases():
    r = run_suite("decay", tol=1e-3)
    assert r.tol == 1e-3
    assert all(c.tol == 1e-3 for c in r.cases)
    assert run_suite("decay").tol == SUITE_TOLERANCES["decay"]


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nosuch")


def test_deterministic_modulo_timestamp():
    a = json.loads(emit_report(run_suite("specfun-identities")))
    b = json.loads(emit_report(run_suite("specfun-identities")))
    assert _strip_time(a) == _strip_time(b)


# -- serialisation ---------------------------------------------------------------------


def _empty():
    return Report(suite="routes", tol=1e-6, config=DEFAULT_CONFIG)


def test_empty_json():
    doc = json.loads(emit_report(_empty(), "json"))
    assert doc["cases"] == [] and doc["n_pass"] == 0 and doc["n_fail"] == 0
    jsonschema.validate(doc, REPORT_SCHEMA)


def test_csv_single_row():
    r = _empty()
    r.cases.append(make_case("routes", "one", {"t": 2.0}, 1j * (1 - 2 * math.log(2)), -0.386294361119890j, 1e-6))
    rows = list(csv.reader(io.StringIO(emit_report(r, "csv").decode())))
    assert rows[0] == ["name", "t", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err", "rel_err", "pass"]
    assert len(rows) == 2
    assert rows[1][0] == "one" and rows[1][1] == "2"
    assert rows[1][3] == "-0.38629436112"
    assert rows[1][2] == "0"
    assert rows[1][-1] == "true"


def test_table_format():
    r = _empty()
    r.cases.append(make_case("routes", "x", {}, 1.0, 1.0, 1e-6))
    r.cases.append(make_case("routes", "y", {}, 1.0, 2.0, 1e-6, expect_fail=True))
    text = emit_report(r, "table").decode()
    assert "PASS" in text and "expected fail" in text
    assert text.rstrip().endswith("2 passed, 0 failed")


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_report(_empty(), "xml")


def test_schema_and_round_trip(report_all):
    raw = emit_report(report_all, "json")
    doc = json.loads(raw)
    jsonschema.validate(doc, REPORT_SCHEMA, format_checker=jsonschema.FormatChecker())
    back = load_report(raw)
    assert back.cases == report_all.cases
    assert back.created_at == report_all.created_at
    assert emit_report(back, "json") == raw


def test_timestamp_is_utc(report_all):
    assert report_all.created_at.endswith("+00:00")
