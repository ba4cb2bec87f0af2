import json
import os
import re
from fractions import Fraction

import pytest

from progset.cli import main
from progset.reports import ReportEnvelope, jsonable, render_csv, render_json

from conftest import get_field


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_jsonable_big_ints_and_rationals():
    doc = jsonable({"small": 42, "big": 2**80, "frac": Fraction(2**90, 3), "ok": True})
    assert doc["small"] == 42
    assert doc["big"] == str(2**80)
    assert doc["frac"] == {"num": str(2**90), "den": "3"}
    assert doc["ok"] is True


def test_render_json_key_order():
    env = ReportEnvelope("cmd", {"a": 1}, None, 0, "0.1.0", 1.5, {"x": 1})
    doc = json.loads(render_json(env))
    assert list(doc.keys()) == ["command", "params", "field", "seed", "version",
                                "timing_ms", "result"]


def test_render_csv_uses_lf_and_dot_decimal():
    env = ReportEnvelope("cmd", {}, None, 0, "0.1.0", 1.0,
                         {"alpha": 0.5, "count": 3})
    text = render_csv(env)
    assert text == "alpha,count\n0.5,3\n"


def test_count_ap_cli_example(capsys):
    code, out = run_cli(capsys, "count-ap", "--p", "5", "--k", "3",
                        "--gen", "full-nonzero")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "count-ap"
    assert doc["result"]["count"] == 512
    assert doc["result"]["inequality_holds"] is True
    assert doc["field"] == {"p": 5, "n": 1, "q": 5, "modulus": None, "generator": 2}


def test_count_ap_cli_k_too_large_usage_error(capsys):
    code = main(["count-ap", "--p", "5", "--k", "5", "--gen", "full-nonzero"])
    err = capsys.readouterr().err
    assert code == 2
    assert "k" in err and "5" in err


def test_verify_cli_orthogonality(capsys):
    code, out = run_cli(capsys, "verify", "--suite", "orthogonality", "--p", "7")
    assert code == 0
    assert json.loads(out)["result"]["passed"] is True


def test_large_count_serialized_as_string(capsys):
    code, out = run_cli(capsys, "count-ap", "--p", "101", "--k", "6",
                        "--gen", "full-nonzero")
    assert code == 0
    doc = json.loads(out)
    count = doc["result"]["count"]
    assert isinstance(count, str)  # exceeds 2^53
    assert int(count) > 2**53
    main_term = doc["result"]["main_term"]
    assert isinstance(main_term["num"], str)
    # |count - main| <= error bound, checked from the serialized strings
    num, den = int(main_term["num"]), int(main_term["den"])
    err_sq = doc["result"]["error_bound_sq"]
    assert (int(count) * den - num) ** 2 <= int(err_sq["num"]) * den**2


def test_gen_set_product_search_pipeline(tmp_path, capsys):
    a_path = str(tmp_path / "a.set")
    b_path = str(tmp_path / "b.set")
    assert main(["gen-set", "--p", "67", "--gen", "random", "--density", "0.6",
                 "--seed", "5", "--out", a_path]) == 0
    assert main(["gen-set", "--p", "67", "--gen", "random", "--density", "0.6",
                 "--seed", "6", "--out", b_path]) == 0
    prod_path = str(tmp_path / "prod.set")
    assert main(["product", "--p", "67", "--set-a", a_path, "--set-b", b_path,
                 "--out", prod_path]) == 0
    code, out = run_cli(capsys, "search-ap", "--p", "67", "--set-a", prod_path,
                        "--k", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["found"] is True
    w = doc["result"]["witness"]
    assert len(w["terms"]) == 3


def test_search_longest_mode(capsys):
    code, out = run_cli(capsys, "search-gp", "--p", "7", "--gen", "qr")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["longest"] == 3


def test_cli_roundtrip_reproduction(capsys):
    args = ["count-gp", "--p", "7", "--k", "3", "--h", "1", "--gen", "full-nonzero"]
    code, out1 = run_cli(capsys, *args)
    assert code == 0
    doc1 = json.loads(out1)
    # rebuild the invocation from the params echo alone
    p = doc1["params"]
    args2 = ["count-gp", "--p", str(p["p"]), "--n", str(p["n"]),
             "--k", str(p["k"]), "--h", str(p["h"]), "--gen", p["gen"],
             "--seed", str(p["seed"])]
    code, out2 = run_cli(capsys, *args2)
    doc2 = json.loads(out2)
    assert doc1["result"] == doc2["result"]


def test_csv_sweep_has_header_and_rows(capsys):
    code, out = run_cli(capsys, "sweep", "--p", "31", "--kind", "ap",
                        "--densities", "0.4,0.9", "--trials", "3",
                        "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("density,trials,success_fraction")
    assert len(lines) == 3


def test_unwritable_out_is_io_error(tmp_path, capsys):
    target = str(tmp_path / "nope" / "deep" / "x.json")
    code = main(["field-info", "--p", "7", "--out", target])
    assert code == 1
    assert "cannot write" in capsys.readouterr().err


def test_field_info(capsys):
    code, out = run_cli(capsys, "field-info", "--p", "3", "--n", "2")
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["q"] == 9
    assert doc["result"]["generator"] == 4
    assert doc["result"]["order_factorization"] == {"2": 3}


def test_qr_experiment_cli(capsys):
    code, out = run_cli(capsys, "qr-experiment", "--primes", "7,11,17")
    assert code == 0
    rows = json.loads(out)["result"]["rows"]
    assert [r["p"] for r in rows] == [7, 11, 17]


def test_qr_experiment_cli_violation_exit_code(capsys):
    # p = 13 violates the sqrt(p) sanity bound (4-term progression in QR(13))
    code, out = run_cli(capsys, "qr-experiment", "--primes", "13")
    assert code == 1
    doc = json.loads(out)
    assert doc["result"]["passed"] is False
    assert "QR(13)" in doc["result"]["violation"]


def test_workers_env_default(capsys, monkeypatch):
    monkeypatch.setenv("PROGSET_WORKERS", "2")
    code, out = run_cli(capsys, "sweep", "--p", "31", "--kind", "ap",
                        "--densities", "0.5", "--trials", "2", "--seed", "1")
    assert code == 0
    assert json.loads(out)["result"]["rows"][0]["trials"] == 2


def test_max_q_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("PROGSET_MAX_Q", "64")
    code = main(["field-info", "--p", "101"])
    assert code == 2
    assert "exceeds" in capsys.readouterr().err
