import json
import re
import subprocess
import sys

import jsonschema
import pytest

from moonshine import modular
from moonshine.cli import run, run_all

REPORT_SCHEMA = {
    "type": "object",
    "required": ["identity", "window", "status", "first_mismatch", "checked", "elapsed_ms"],
    "properties": {
        "identity": {"type": "string"},
        "window": {"type": "string"},
        "status": {"enum": ["verified", "failed", "rejected"]},
        "first_mismatch": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["at", "lhs", "rhs"],
                    "properties": {
                        "at": {"type": "array", "items": {"type": "integer"}},
                        "lhs": {"type": "string"},
                        "rhs": {"type": "string"},
                    },
                },
            ]
        },
        "checked": {"type": "integer"},
        "elapsed_ms": {"type": "integer"},
    },
}


def call(capsys, *args):
    code = run(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_golden_j(capsys):
    code, out, _ = call(capsys, "expand", "--series", "j", "--order", "3")
    assert code == 0
    assert out == "q^-1 + 744 + 196884*q + 21493760*q^2 + O(q^3)\n"


@pytest.mark.parametrize(
    "series,expected",
    [
        ("j744", "q^-1 + 196884*q + O(q^2)"),
        ("e4", "1 + 240*q + 2160*q^2 + O(q^3)"),
        ("delta", "q - 24*q^2 + 252*q^3 + O(q^4)"),
        ("eta^3", "q^(1/8) * (1 - 3*q + 5*q^3 + O(q^4))"),
        ("eta^-1", "q^(-1/24) * (1 + q + 2*q^2 + 3*q^3 + O(q^4))"),
    ],
)
def test_expand_series(capsys, series, expected):
    order = {"j744": 2, "e4": 3}.get(series, 4)
    code, out, _ = call(capsys, "expand", "--series", series, "--order", str(order))
    assert code == 0 and out.strip() == expected


def test_expand_default_order(capsys):
    code, out, _ = call(capsys, "expand", "--series", "e4")
    assert out.strip().endswith("O(q^20)")


def test_expand_hauptmodul_json(capsys):
    code, out, _ = call(capsys, "expand", "--series", "t2B", "--order", "3", "--format", "json")
    d = json.loads(out)
    assert code == 0
    assert d["class_label"] == "2B" and "c is even" in d["group_description"]
    assert d["valuation"] == -1 and d["coefficients"] == [1, 0, 276, -2048]


def test_expand_density(capsys):
    code, out, _ = call(capsys, "expand", "--series", "eta^3", "--order", "100", "--report", "density",
                        "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["nonzero_count"] == 14 and d["in_dyson_list"]
    code, out, err = call(capsys, "expand", "--series", "eta^5", "--order", "10", "--report", "density")
    assert code == 0 and "not in the list" in err


def test_verify_c4_json(capsys):
    code, out, _ = call(capsys, "verify", "--identity", "c4-relation", "--format", "json")
    d = json.loads(out)
    jsonschema.validate(d, REPORT_SCHEMA)
    assert code == 0 and d["status"] == "verified"


@pytest.mark.parametrize(
    "args",
    [
        ["verify", "--identity", "knz", "--p-order", "0"],
        ["verify", "--identity", "triple-product", "--order", "50", "--z-range", "3"],
        ["verify", "--identity", "c4-relation", "--order", "5"],
        ["verify", "--identity", "nope"],
        ["expand", "--series", "j", "--order", "0"],
        ["expand", "--series", "zeta"],
        ["expand", "--series", "j", "--report", "density"],
        ["cm163", "--digits", "14"],
        ["cm163", "--series-order", "1"],
        ["numerology", "--check", "unknown"],
        ["frobnicate"],
        ["verify", "--bogus-flag"],
        [],
    ],
)
def test_usage_errors_exit_2(capsys, args):
    code, out, err = call(capsys, *args)
    assert code == 2
    assert out == ""
    assert err


def test_verify_defaults(capsys):
    code, out, _ = call(capsys, "verify", "--identity", "knz", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["checked"] == 81 and d["window"] == "p^-1..p^7 x q^-1..q^7"
    code, out, _ = call(capsys, "verify", "--identity", "triple-product", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["checked"] == 50 * 17


def test_verify_windows(capsys):
    code, out, _ = call(capsys, "verify", "--identity", "knz", "--p-order", "4", "--q-order", "5")
    assert code == 0 and "p^-1..p^3 x q^-1..q^4" in out


def test_cm163_output(capsys):
    code, out, _ = call(capsys, "cm163")
    assert code == 0
    assert "exp(pi*sqrt(163)) = 262537412640768743.99999999999925" in out
    assert "+ 262537412640768000 = 0e-35" in out
    code, out, _ = call(capsys, "cm163", "--digits", "40", "--format", "json")
    d = json.loads(out)
    assert d["exp_pi_sqrt163"].startswith("262537412640768743.99999999999925")
    assert d["status"] == "verified"
    for r in d["reports"]:
        jsonschema.validate(r, REPORT_SCHEMA)


@pytest.mark.parametrize("check", ["monster-order", "ogg-primes", "mckay", "dynkin-monster", "dynkin-baby",
                                   "dynkin-fi24", "binary-dims", "fold-e7", "fold-e6"])
def test_numerology_checks(capsys, check):
    code, out, _ = call(capsys, "numerology", "--check", check, "--format", "json")
    jsonschema.validate(json.loads(out), REPORT_SCHEMA)
    assert code == 0


def _strip_timing(text):
    return re.sub(r'"elapsed_ms": \d+', '"elapsed_ms": 0', re.sub(r"\d+ ms\)", "0 ms)", text))


def _numbers(text):
    return sorted(re.findall(r"-?\d+", _strip_timing(text)))


@pytest.mark.parametrize(
    "args",
    [
        ["verify", "--identity", "knz"],
        ["numerology", "--check", "mckay"],
        ["expand", "--series", "t2A", "--order", "6"],
    ],
)
def test_text_and_json_agree_and_are_deterministic(capsys, args):
    _, text1, _ = call(capsys, *args)
    _, text2, _ = call(capsys, *args)
    _, js, _ = call(capsys, *args, "--format", "json")
    assert _strip_timing(text1) == _strip_timing(text2)
    d = json.loads(js)
    if "text" in d:
        assert d["text"] in text1
    else:
        assert str(d["checked"]) in _numbers(text1)


def test_all(capsys):
    code = run_all("json")
    out, _ = capsys.readouterr()
    d = json.loads(out)
    jsonschema.validate(d, REPORT_SCHEMA)
    assert code == 0 and d["status"] == "verified"
    assert d["checked"] > 10**4
    assert d["checked"] == sum(r["checked"] for r in d["reports"])
    for r in d["reports"]:
        jsonschema.validate(r, REPORT_SCHEMA)


def test_all_text(capsys):
    code, out, _ = call(capsys, "all")
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("all [")


def test_all_with_corrupted_delta(capsys, monkeypatch):
    real = modular.delta_series

    def corrupt(order):
        d = real(order)
        return d.with_coefficient(3, d[3] + 1) if order > 3 else d

    monkeypatch.setattr(modular, "delta_series", corrupt)
    code = run_all("json")
    d = json.loads(capsys.readouterr().out)
    jsonschema.validate(d, REPORT_SCHEMA)
    assert code == 1
    assert d["status"] == "failed"
    assert d["first_mismatch"] is not None
    assert "first failure in" in d["window"]


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "moonshine", "expand", "--series", "j", "--order", "3"],
                       capture_output=True, text=True)
    assert p.returncode == 0
    assert p.stdout == "q^-1 + 744 + 196884*q + 21493760*q^2 + O(q^3)\n"
