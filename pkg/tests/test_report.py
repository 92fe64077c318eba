import json

import numpy as np

from commdiag.report import STATUS_CHECK_FAILED, STATUS_ERROR, STATUS_OK, VerificationReport, render, render_json


def make_report():
    r = VerificationReport("simdiag", ["simdiag", "a", "b"], {"rtol": 1e-10})
    r.inputs["A"] = "0" * 64
    r.add_residual("residual_a", 0.5e-10, 1e-10)
    r.spectra["diag_a"] = np.array([2 + 0j, complex(0.0, -1.0)])
    r.details["used_shortcut"] = np.bool_(True)
    r.details["sizes"] = [1, 1]
    return r


def test_settle():
    r = make_report()
    assert r.settle() == STATUS_OK
    r.add_residual("residual_b", 1.0, 1e-10)
    assert r.settle() == STATUS_CHECK_FAILED
    r.fail(STATUS_ERROR, "boom")
    assert r.settle() == STATUS_ERROR


def test_json_is_valid_sorted_and_full_precision():
    r = make_report()
    r.settle()
    text = render(r, "json")
    data = json.loads(text)
    assert list(data) == sorted(data)
    assert data["spectra"]["diag_a"] == [[2.0, 0.0], [0.0, -1.0]]
    assert data["details"]["used_shortcut"] is True
    assert "5.0000000000000002e-11" in text
    assert render(r, "json") == text


def test_json_non_finite_values():
    assert render_json({"x": float("nan"), "y": float("-inf")}) == '{\n  "x": "nan",\n  "y": "-inf"\n}'
    assert render_json([]) == "[]"
    assert render_json({"e": None}) == '{\n  "e": null\n}'


def test_text_render():
    r = make_report()
    r.add_residual("bad", 2.0, 1.0)
    r.settle()
    text = render(r, "text")
    assert "status:  check_failed" in text
    assert "residual bad: 2.000e+00 (limit 1.000e+00) FAIL" in text
    assert "diag_a: [2, 0-1i]" in text
