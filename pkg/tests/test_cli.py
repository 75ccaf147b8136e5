import csv
import io
import json
import os
import subprocess
import sys

import pytest

from ergoalg.cli import EXIT_BUDGET, EXIT_DOMAIN, EXIT_PARSE, main, run
from ergoalg.config import RunConfig

FIX = os.path.join(os.path.dirname(__file__), "fixtures")


def fx(name):
    return os.path.join(FIX, name)


def call(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


# ---------------------------------------------------------------------------
# documented examples


def test_entropy_csv(capsys):
    status, out, _ = call(capsys, "entropy", "--system", fx("odometer2.json"),
                          "--algebra", fx("halves.json"))
    assert status == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["quantity", "value", "cells"]
    assert rows[1][0] == "H(A/C)" and rows[1][1].startswith("0.69314718055994")
    assert float(rows[2][1]) == 0


def test_tower_json(capsys):
    status, out, _ = call(capsys, "tower", "--system", fx("odometer2.json"), "-n", "2",
                          "--eps", "1/10")
    assert status == 0
    data = json.loads(out)
    assert data["residual"] == "0/1" and data["height"] == 2


def test_cycle_approx_json(capsys):
    status, out, _ = call(capsys, "cycle-approx", "--system", fx("odometer2.json"), "-N", "4")
    assert status == 0
    data = json.loads(out)
    assert data["bound"] == "1/2" and data["true-rho"] == "1/4"


# ---------------------------------------------------------------------------
# every subcommand


def test_witness(capsys):
    status, out, _ = call(capsys, "witness", "--system", fx("odometer2.json"), "-n", "2",
                          "--eps", "0")
    data = json.loads(out)
    assert status == 0 and data["overlap"] == "0/1" and data["imbalance"] == "0/1"


def test_conjugate_exact_and_approximate(capsys):
    status, out, _ = call(capsys, "conjugate", "--system", fx("rotation-half.json"),
                          "--system-2", fx("rotation-half.json"),
                          "--event", fx("first-quarter.json"),
                          "--event-2", fx("third-quarter.json"))
    data = json.loads(out)
    assert status == 0 and data["mode"] == "exact"
    status, out, _ = call(capsys, "conjugate", "--system", fx("odometer2.json"),
                          "--system-2", fx("odometer3.json"), "--eps", "1/2")
    data = json.loads(out)
    assert status == 0 and data["N"] == 16
    assert data["mode"] == "approximate"


def test_h_seq_csv(capsys):
    status, out, _ = call(capsys, "h-seq", "--system", fx("bernoulli-half.json"),
                          "--algebra", fx("bernoulli-generator.json"), "-n", "3")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert status == 0
    assert [r["k"] for r in rows] == ["1", "2", "3"]
    assert [r["exact_cell_count"] for r in rows] == ["2", "4", "8"]
    assert all(r["conditional"].startswith("0.69314718055994") for r in rows)


def test_distance_modes(capsys):
    status, out, _ = call(capsys, "distance", "--system", fx("odometer2.json"),
                          "--system-2", fx("rotation-half.json"))
    data = json.loads(out)
    assert status == 0 and data["exact"] is True and data["lo"] == "1/2"
    status, out, _ = call(capsys, "distance", "--partition", fx("halves-partition.json"),
                          "--partition-2", fx("quarter-partition.json"))
    data = json.loads(out)
    assert data["type-distance"] == "1/4" and data["realized"]["distance"] == "1/4"


def test_independent_modes(capsys):
    status, out, _ = call(capsys, "independent", "--event", fx("first-half.json"),
                          "--algebra", fx("halves.json"))
    assert status == 0 and json.loads(out)["independent"] is False
    status, out, _ = call(capsys, "independent", "--system", fx("bernoulli-half.json"),
                          "--algebra", fx("bernoulli-generator.json"), "-n", "4")
    assert json.loads(out)["transformally-independent"] is True


def test_decompose_table(capsys):
    status, out, _ = call(capsys, "decompose", "--system", fx("glued.json"), "--format", "table")
    assert status == 0
    assert "z1" in out and "z2" in out and "1/3" in out and "2/3" in out


def test_product(capsys):
    status, out, _ = call(capsys, "product", "--system", fx("odometer2.json"),
                          "--system-2", fx("bernoulli-half.json"))
    assert status == 0 and json.loads(out)["aperiodic"] is True


def test_cb(capsys):
    status, out, _ = call(capsys, "cb", "--event", fx("first-half.json"),
                          "--algebra", fx("quarters.json"))
    data = json.loads(out)
    assert status == 0 and len(data["atoms"]) == 2


def test_output_is_deterministic(capsys):
    args = ("tower", "--system", fx("bernoulli-half.json"), "-n", "2", "--eps", "1/4")
    first = call(capsys, *args)
    assert first == call(capsys, *args)


def test_json_output_round_trips(capsys):
    from ergoalg import serialize as ser
    _, out, _ = call(capsys, "tower", "--system", fx("odometer2.json"), "-n", "3",
                     "--eps", "1/4")
    t = ser.load_tower(json.loads(out))
    assert ser.load_tower(json.loads(ser.to_json(ser.dump_tower(t)))) == t


# ---------------------------------------------------------------------------
# exit statuses


def test_missing_file(capsys):
    status, _, err = call(capsys, "tower", "--system", fx("nope.json"), "-n", "2",
                          "--eps", "1/4")
    assert status == EXIT_PARSE and "parse error" in err


@pytest.mark.parametrize("content", [
    "{broken", '{"teleport": {}}', '{"odometer": {"base": "two"}}',
    '{"iet": {"pieces": [["0.5", "1/1", "0/1"]]}}',
])
def test_malformed_system(capsys, tmp_path, content):
    path = tmp_path / "system.json"
    path.write_text(content)
    status, _, err = call(capsys, "tower", "--system", str(path), "-n", "2", "--eps", "1/4")
    assert status == EXIT_PARSE, err


def test_missing_parameter(capsys):
    status, _, err = call(capsys, "tower", "--system", fx("odometer2.json"), "-n", "2")
    assert status == EXIT_PARSE and "--eps" in err


def test_bad_eps_is_rejected_by_the_parser(capsys):
    with pytest.raises(SystemExit) as info:
        main(["tower", "--system", fx("odometer2.json"), "-n", "2", "--eps", "0.25"])
    assert info.value.code == 2


@pytest.mark.parametrize("argv", [
    ["tower", "--system", fx("rotation-half.json"), "-n", "3", "--eps", "1/4"],
    ["witness", "--system", fx("bernoulli-half.json"), "-n", "1", "--eps", "0"],
    ["cycle-approx", "--system", fx("odometer2.json"), "-N", "1"],
    ["conjugate", "--system", fx("rotation-half.json"), "--system-2", fx("glued.json")],
])
def test_domain_errors(capsys, argv):
    status, _, err = call(capsys, *argv)
    assert status == EXIT_DOMAIN, err


def test_budget_exceeded(capsys):
    status, _, err = call(capsys, "tower", "--system", fx("odometer2.json"), "-n", "3",
                          "--eps", "1/1000000000")
    assert status == EXIT_BUDGET and "budget" in err


def test_depth_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("ERGOALG_DEPTH_BUDGET", "not-a-number")
    status, _, _ = call(capsys, "tower", "--system", fx("odometer2.json"), "-n", "2",
                        "--eps", "1/4")
    assert status == EXIT_PARSE
    monkeypatch.setenv("ERGOALG_DEPTH_BUDGET", "2")
    # narrowing the distance of two odometers to 1/1000 needs more than two digits
    status, _, err = call(capsys, "distance", "--system", fx("odometer2.json"),
                          "--system-2", fx("odometer3.json"), "--eps", "1/1000")
    assert status == EXIT_BUDGET, err


def test_run_reports_status_without_exiting():
    status, text = run(RunConfig(command="decompose"), {"system": {"rotation": "1/2"}})
    assert status == 0 and "2" in text
    status, text = run(RunConfig(command="decompose"), {})
    assert status == EXIT_PARSE


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ergoalg.cli", "decompose", "--system", fx("glued.json"),
         "--format", "csv"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "part,measure"
