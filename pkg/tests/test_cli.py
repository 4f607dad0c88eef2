import csv
import io
import json

import pytest

from aloffwallach.cli import EXIT_INPUT, EXIT_OK, EXIT_VERIFY, main
from aloffwallach.report import dumps, loads
from aloffwallach.verification import CHECKS, VerifyConfig, run_checks
from aloffwallach import pinching


def _run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


def test_report_w11():
    code, text = _run(["report", "--p", "1", "--q", "1", "--oracle-budget", "2000"])
    assert code == EXIT_OK
    doc = loads(text)
    assert doc["curvature"]["lambda_bar"] == "2/37"
    assert doc["curvature"]["k_min"] == pytest.approx(2 / 37, abs=1e-10)
    assert doc["curvature"]["k_max"] == pytest.approx(29 / 8, abs=1e-10)
    assert doc["injectivity"]["lower"] == pytest.approx(4.6516e-5, rel=1e-4)


def test_report_round_trip():
    _, text = _run(["report", "--p", "1", "--q", "2", "--oracle-budget", "0"])
    assert dumps(loads(text)) == text
    assert list(loads(text)) == ["version", "index", "volume", "curvature", "injectivity", "provenance"]


def test_report_w12_volume():
    _, text = _run(["report", "--p", "1", "--q", "2", "--no-curvature"])
    vol = loads(text)["volume"]["exact"]
    assert vol == pytest.approx(3**0.5 * 3.141592653589793**4 / (4 * 2**0.5 * 7**0.5), rel=1e-11)


def test_report_degenerate():
    code, text = _run(["report", "--p", "1", "--q", "-1", "--oracle-budget", "0"])
    assert code == EXIT_INPUT
    doc = loads(text)
    assert doc["curvature"]["status"] == "refused"
    assert doc["volume"]["exact"] > 0


def test_bad_arguments_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["report", "--p", "x", "--q", "1"])
    assert exc.value.code == EXIT_INPUT
    assert _run(["family", "--n-max", "0"])[0] == EXIT_INPUT


def test_family_csv(tmp_path):
    path = tmp_path / "fam.csv"
    assert _run(["family", "--n-max", "20", "--csv", str(path)])[0] == EXIT_OK
    rows = list(csv.DictReader(path.open(encoding="utf-8")))
    assert len(rows) == 20
    assert rows[0]["lambda_bar_printed"].startswith("0.0610875")
    assert rows[0]["C_n_exact"] == "215/56"
    for r in rows:
        assert float(r["lambda_hat"]) < 2 / 37 < float(r["lambda_bar"])
    C = [float(r["C_n"]) for r in rows]
    assert all(a > b > 3.625 for a, b in zip(C, C[1:]))


def _tampered(idx):
    co = pinching.coefficients(idx)
    a = (co.a[0], co.a[1] + 1, co.a[2])
    return pinching.PinchCoefficients(co.p, co.q, a, co.b, co.c, co.d, co.xi, co.xi_unit)


def test_tamper_hook_isolates_failures():
    names = ["kmax_gates", "volume_sandwich", "bi_invariant"]
    clean = {r.name: r.passed for r in run_checks(VerifyConfig(), names)}
    bad = {r.name: r.passed for r in run_checks(VerifyConfig(coefficients_fn=_tampered), names)}
    assert clean == {n: True for n in names}
    assert bad == {"kmax_gates": False, "volume_sandwich": True, "bi_invariant": True}


def test_verify_deterministic(monkeypatch):
    fast = {k: CHECKS[k] for k in ("volume_sandwich", "bi_invariant", "kmax_gates")}
    monkeypatch.setattr("aloffwallach.verification.CHECKS", fast)
    a = _run(["verify", "--seed", "42"])
    b = _run(["verify", "--seed", "42"])
    assert a == b and a[0] == EXIT_OK
    assert json.loads(a[1])["passed"]


def test_verify_failure_exit_code(monkeypatch):
    only = {"lambda_bar_dual": CHECKS["lambda_bar_dual"]}
    monkeypatch.setattr("aloffwallach.verification.CHECKS", only)
    code, text = _run(["verify"])
    assert code == EXIT_VERIFY
    assert not json.loads(text)["passed"]
