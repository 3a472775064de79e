import json
import subprocess
import sys

import numpy as np
import pytest

from dqc1lab.cli import main

KNOWN_DISCREPANT_CHECKS = {
    "ghz-lambda5-closed-form",
    "activation-identity-closed-form",
    "discord-positive-range",
}


@pytest.fixture(scope="module")
def reproduce_json():
    import io
    from contextlib import redirect_stdout

    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["reproduce", "--json"])
    return code, json.loads(buf.getvalue())


def test_reproduce_json_is_single_document(reproduce_json):
    code, payload = reproduce_json
    assert set(payload) == {"all_passed", "closed_form_tolerance", "checks"}
    assert isinstance(payload["checks"], list)


def test_reproduce_fails_only_on_documented_discrepancies(reproduce_json):
    code, payload = reproduce_json
    failed = {c["name"] for c in payload["checks"] if not c["passed"]}
    assert failed == KNOWN_DISCREPANT_CHECKS
    assert code == 1
    assert payload["all_passed"] is False
    for c in payload["checks"]:
        if c["name"] in KNOWN_DISCREPANT_CHECKS:
            assert c["note"]  # each discrepancy carries its explanation


def test_reproduce_table_mode(capsys):
    code = main(["reproduce"])
    out = capsys.readouterr().out
    assert code == 1
    assert "PASS  pt-spectrum-family" in out
    assert "FAIL  ghz-lambda5-closed-form" in out
    assert "checks passed" in out


def test_reproduce_perturbation_hook_breaks_more_checks(capsys):
    code = main(["reproduce", "--perturb", "1e-3", "--json"])
    payload = json.loads(capsys.readouterr().out)
    failed = {c["name"] for c in payload["checks"] if not c["passed"]}
    assert code == 1
    assert "pt-spectrum-family" in failed
    assert len(failed) > len(KNOWN_DISCREPANT_CHECKS)


def test_sweep_mult_negativity(capsys):
    code = main(["sweep", "--quantity", "mult-negativity",
                 "--start", "0", "--end", "1", "--steps", "101"])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "alpha,quantity,value,closed_form,abs_error"
    assert len(lines) == 102
    last = lines[-1].split(",")
    assert float(last[0]) == 1.0
    assert float(last[2]) == pytest.approx(1.25, abs=1e-12)
    assert float(last[4]) < 1e-9


def test_sweep_is_byte_stable(capsys):
    args = ["sweep", "--quantity", "pt-spectrum-min", "--steps", "11"]
    main(args)
    first = capsys.readouterr().out
    main(args)
    second = capsys.readouterr().out
    assert first == second
    assert "\r" not in first


def test_sweep_writes_file(tmp_path, capsys):
    out_file = tmp_path / "sweep.csv"
    code = main(["sweep", "--quantity", "separability", "--steps", "5",
                 "--out", str(out_file)])
    assert code == 0
    assert capsys.readouterr().out == ""
    rows = out_file.read_text().strip().split("\n")
    assert rows[0] == "alpha,quantity,value,closed_form,abs_error"
    values = [float(r.split(",")[2]) for r in rows[1:]]
    assert values == [1.0, 1.0, 1.0, 0.0, 0.0]


def test_sweep_register_discord_matches_its_closed_form(capsys):
    code = main(["sweep", "--quantity", "discord-register", "--start", "0",
                 "--end", "1", "--steps", "5"])
    out = capsys.readouterr().out
    assert code == 0
    for row in out.strip().split("\n")[1:]:
        assert float(row.split(",")[4]) < 1e-6  # abs_error column


def test_sweep_discord_at_zero(capsys):
    code = main(["sweep", "--quantity", "discord", "--start", "0",
                 "--end", "0", "--steps", "2"])
    out = capsys.readouterr().out
    assert code == 0
    rows = out.strip().split("\n")[1:]
    assert len(rows) == 2
    assert all(abs(float(r.split(",")[2])) < 1e-9 for r in rows)


def test_sweep_activated_negativity_exposes_closed_form_gap(capsys):
    code = main(["sweep", "--quantity", "activated-negativity",
                 "--start", "0", "--end", "1", "--steps", "11"])
    out = capsys.readouterr().out
    assert code == 0
    row = out.strip().split("\n")[9].split(",")  # alpha = 0.8
    assert float(row[0]) == pytest.approx(0.8)
    assert float(row[2]) == pytest.approx(1.8, abs=1e-9)   # computed
    assert float(row[3]) == pytest.approx(1.3, abs=1e-12)  # published form
    assert float(row[4]) == pytest.approx(0.5, abs=1e-9)


def test_sweep_seventeen_significant_digits(capsys):
    main(["sweep", "--quantity", "pt-spectrum-min", "--start", "0",
          "--end", "1", "--steps", "3"])
    out = capsys.readouterr().out
    middle = out.strip().split("\n")[2]
    assert middle.split(",")[0] == "0.5"
    third = float(out.strip().split("\n")[1].split(",")[2])
    assert third == pytest.approx(0.125, abs=1e-15)


def test_sweep_rejects_unknown_quantity(capsys):
    code = main(["sweep", "--quantity", "frobnication"])
    assert code == 2
    assert "unknown quantity" in capsys.readouterr().err


def test_sweep_rejects_bad_range(capsys):
    assert main(["sweep", "--quantity", "discord", "--start", "0.9",
                 "--end", "0.1"]) == 2
    assert main(["sweep", "--quantity", "discord", "--steps", "1"]) == 2


def test_trace_estimate_exact_values(capsys):
    code = main(["trace-estimate", "--n", "2", "--alpha", "1", "--shots",
                 "100000", "--seed", "3", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["exact_x"] == pytest.approx(0.5, abs=1e-15)
    assert payload["exact_y"] == 0.0
    assert payload["implied_trace_re"] == pytest.approx(0.5, abs=1e-15)
    assert abs(payload["sampled_x"] - 0.5) <= 6 * payload["std_error"]


def test_trace_estimate_refuses_implied_value_at_zero(capsys):
    code = main(["trace-estimate", "--n", "2", "--alpha", "0", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["exact_x"] == 0.0
    assert payload["implied_trace_re"] is None
    assert payload["implied_trace_note"] == "unestimable at alpha=0"


def test_trace_estimate_text_mode(capsys):
    code = main(["trace-estimate", "--n", "3", "--alpha", "0.5", "--seed", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "exact   <X>=0.25" in out
    assert "implied normalized trace (exact):   0.5" in out

    main(["trace-estimate", "--n", "2", "--alpha", "0"])
    assert "unestimable at alpha=0" in capsys.readouterr().out


def test_trace_estimate_rejects_bad_register(capsys):
    assert main(["trace-estimate", "--n", "7", "--alpha", "0.5"]) == 2
    assert main(["trace-estimate", "--n", "2", "--alpha", "1.5"]) == 2


def test_separability_command(capsys):
    code = main(["separability", "--alpha", "0.4", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["status"] == "FullySeparable"
    assert payload["certificate"]["ghz_part_verdict"]["status"] == "FullySeparable"

    code = main(["separability", "--alpha", "0.9"])
    out = capsys.readouterr().out
    assert code == 0
    assert "NptEntangled" in out
    assert "-0.1" in out


def test_activate_command(capsys):
    code = main(["activate", "--alpha", "0.5", "--strategies", "3",
                 "--seed", "5", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert len(payload["results"]) == 3
    assert payload["results"][0]["label"] == "identity"
    assert payload["results"][0]["multiplicative_negativity"] == pytest.approx(1.5)
    assert payload["min"] > 1.0


def test_console_script_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "dqc1lab.cli", "sweep", "--quantity",
         "mult-negativity", "--steps", "3"],
        capture_output=True, text=True, check=True)
    assert out.stdout.startswith("alpha,quantity,value")
