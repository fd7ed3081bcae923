import csv
import io
import json

import numpy as np
import pytest

from hbloch import ConfigParse, HBlochError, evaluate, norm
from hbloch import cli
from hbloch.report import (CrossCheckRow, ExperimentConfig, ReportRow, fmt, parse_config, parse_function,
                           render_rows, run_experiment, verify_lemma1)


def test_fmt_is_17_significant_digits():
    assert fmt(0.1) == "0.10000000000000001"
    assert fmt(1.0) == "1"
    assert fmt(2.0 ** -60) == "8.6736173798840355e-19"


def test_parse_config_roundtrip():
    cfg = parse_config("""
        # comment
        symbols = identity; dilation s=0.9
        symbol = blaschke zeros=[0.3, -0.5i]
        alpha = 0.5, 1
        estimators = E1, E2
        ladder_N = 512
        radial_levels = 30
        format = json
    """)
    assert cfg.symbols == ("identity", "dilation s=0.9", "blaschke zeros=[0.3, -0.5i]")
    assert cfg.alpha_values == (0.5, 1.0) and cfg.estimators == ("E1", "E2")
    assert cfg.ladder_N == 512 and cfg.scheme.radial_levels == 30 and cfg.format == "json"


@pytest.mark.parametrize("text", [
    "alpha = 1",
    "symbol = identity",
    "symbol = identity\nalpha = 1\nestimators = E9",
    "symbol = identity\nalpha = x",
    "symbol = identity\nalpha = 1\nladder_N = 8",
    "symbol = identity\nalpha = 1\nbogus = 3",
    "symbol = identity\nalpha = 1\nradial_levels = 0",
    "just a line",
])
def test_parse_config_errors(text):
    with pytest.raises(ConfigParse):
        parse_config(text)


def test_parse_function(rng):
    z = np.array([0.3 + 0.1j, -0.5j])
    f = parse_function("znbar n=5")
    assert np.allclose(evaluate(f, z), z ** 5 + np.conj(z) ** 5)
    f = parse_function("identity ^ 3 + conj(poly coeffs=[0, 2])")
    assert np.allclose(evaluate(f, z), z ** 3 + 2 * np.conj(z))
    f = parse_function("conj(automorphism a=0.5)")
    assert np.allclose(evaluate(f, z), np.conj((0.5 - z) / (1 - 0.5 * z)))
    assert norm(parse_function("identity + conj(identity)"), 1.0) == pytest.approx(2.0)
    for bad in ["znbar n=0", "", "identity + conj(identity"]:
        with pytest.raises(ConfigParse):
            parse_function(bad)


def test_report_row_rejects_bad_values():
    with pytest.raises(HBlochError):
        ReportRow("s", 1.0, "E1", -1, -0.5)
    with pytest.raises(HBlochError):
        ReportRow("s", 1.0, "E1", -1, float("nan"))


def test_render_sorted_and_column_order():
    rows = [ReportRow("b", 1.0, "E2", 3.0, 0.5), ReportRow("a", 2.0, "E1", -1.0, 1.0, "summary"),
            ReportRow("a", 1.0, "E1", 0.5, 0.25), ReportRow("a", 1.0, "E1", -1.0, 0.25, "summary")]
    text = render_rows(rows)
    table = list(csv.reader(io.StringIO(text)))
    assert table[0] == ["symbol_id", "alpha", "estimator", "index", "value", "flags"]
    assert [r[:4] for r in table[1:]] == [["a", "1", "E1", "-1"], ["a", "1", "E1", "0.5"],
                                         ["a", "2", "E1", "-1"], ["b", "1", "E2", "3"]]
    doc = json.loads(render_rows(rows, "json", {"version": "x"}))
    assert doc["metadata"] == {"version": "x"} and len(doc["rows"]) == 4


def test_run_experiment_identity_e1():
    cfg = ExperimentConfig(("identity",), (1.0,), ("E1",))
    text, summary = run_experiment(cfg, write=False)
    assert len(summary) == 1 and summary[0].value == pytest.approx(1.0, abs=1e-3)
    assert text.count("\n") == 1 + 20 + 1


def test_run_experiment_deterministic(tmp_path):
    cfg = ExperimentConfig(("dilation s=0.9", "automorphism a=0.5"), (1.0,),
                           ("E1", "E2", "bounded_sup", "margin"), output_path=str(tmp_path / "r.csv"))
    a, _ = run_experiment(cfg)
    b, _ = run_experiment(cfg)
    assert a == b == (tmp_path / "r.csv").read_text()


def test_every_summary_reproducible_from_library():
    from hbloch import RatioField, essnorm_boundary, make_symbol
    _, summary = run_experiment(ExperimentConfig(("automorphism a=0.5",), (1.0,), ("E2",)), write=False)
    direct = essnorm_boundary(RatioField(make_symbol("automorphism", a=0.5), 1.0)).value
    assert summary[0].value == direct


def test_verify_lemma1_small():
    rows, band, ok = verify_lemma1(20, (0.5, 2.0))
    assert ok and len(rows) == 40
    one = [r for r in rows if r.n == 1]
    assert all(r.r_closed == 0.0 and r.max_closed == 1.0 for r in one)
    assert all(err <= 1e-2 for _, _, err in band.values())
    with pytest.raises(Exception):
        verify_lemma1(1, (1.0,))


def test_cli_exit_codes(tmp_path, capsys):
    assert cli.main(["norm", "znbar n=2", "--alpha", "1"]) == 0
    assert "norm=1.53960071783900" in capsys.readouterr().out
    assert cli.main(["essnorm", "poly coeffs=[0, 2]"]) == 3
    assert "SelfMapViolation" in capsys.readouterr().err
    assert cli.main(["essnorm", "dilation s=2"]) == 3
    assert "SelfMapViolation" in capsys.readouterr().err
    assert cli.main(["essnorm", "dilation s=zzz"]) == 2
    assert cli.main(["run", str(tmp_path / "missing.cfg")]) == 5
    bad = tmp_path / "bad.cfg"
    bad.write_text("symbol = identity\nalpha = 0\n")
    assert cli.main(["run", str(bad)]) == 2
    out = tmp_path / "no" / "such" / "dir.csv"
    good = tmp_path / "good.cfg"
    good.write_text(f"symbol = identity\nalpha = 1\nestimators = E1\noutput = {out}\n")
    assert cli.main(["run", str(good)]) == 5


def test_cli_run_and_essnorm_output(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("symbol = identity\nalpha = 1\nestimators = E1\nformat = json\n")
    assert cli.main(["run", str(cfg), "--output", str(tmp_path / "o.json")]) == 0
    doc = json.loads((tmp_path / "o.json").read_text())
    assert doc["metadata"]["config"]["symbols"] == ["identity"]
    capsys.readouterr()
    assert cli.main(["essnorm", "identity", "--estimators", "E1,E2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[1:] == ["identity,1,E1,-1,1,summary", "identity,1,E2,-1,1,summary"]


def test_cli_bounded_and_divergence(capsys):
    assert cli.main(["bounded", "automorphism a=0.5", "--ladder-N", "64"]) == 0
    assert "bounded=True" in capsys.readouterr().out


def test_cli_cross_check_failure_exit(monkeypatch, capsys):
    row = CrossCheckRow("x", 1.0, 1.0, 0.5, 1.0, 0.5, 0.0, False)
    monkeypatch.setattr(cli, "cross_check", lambda *a, **k: [row])
    assert cli.main(["cross-check"]) == 4
    assert "FAIL x" in capsys.readouterr().err
    assert cli.main(["cross-check", "--suite", "nope"]) == 2


def test_cli_verify_lemma1(capsys):
    assert cli.main(["verify-lemma1", "--n-max", "30", "--alphas", "1,3"]) == 0
    assert capsys.readouterr().out.strip().endswith("PASS")
