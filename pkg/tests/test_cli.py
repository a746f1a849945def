import json
import subprocess
import sys

import pytest

from hamperc.harness.cli import EXIT_CONFIG, EXIT_IO, EXIT_OK, EXIT_RESOURCE, run
from hamperc.harness.config import SEED_ENV
from hamperc.harness.records import ResultRecord, SummaryRow, read_rows


def test_sweep_writes_records_summary_and_metadata(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv(SEED_ENV, raising=False)
    out = tmp_path / "sweep.csv"
    code = run(["sweep", "--d", "2", "--n", "20", "--t-grid=-1:1:1", "--reps", "5", "--seed", "7",
                "--out", str(out), "--summary-out", str(tmp_path / "summary.csv")])
    assert code == EXIT_OK
    recs = read_rows(out)
    assert len(recs) == 15 and {r.t for r in recs} == {-1.0, 0.0, 1.0}
    assert all(r.wall_time is None for r in recs)
    meta = json.loads((tmp_path / "sweep.csv.meta.json").read_text())
    assert meta["status"] == "complete" and meta["master_seed"] == 7 and meta["seed_source"] == "cli"
    assert len(read_rows(tmp_path / "summary.csv", cls=SummaryRow)) == 3
    printed = capsys.readouterr().out.splitlines()
    assert printed[0].startswith("grid_index") and len(printed) == 4


def test_env_seed_is_echoed(tmp_path, monkeypatch):
    monkeypatch.setenv(SEED_ENV, "4242")
    out = tmp_path / "p.jsonl"
    assert run(["poisson", "--n", "15", "--reps", "3", "--format", "jsonl", "--out", str(out)]) == EXIT_OK
    meta = json.loads((tmp_path / "p.jsonl.meta.json").read_text())
    assert meta["master_seed"] == 4242 and meta["seed_source"] == f"env:{SEED_ENV}"
    first = json.loads(out.read_text().splitlines()[0])
    assert first["kind"] == "poisson-check" and first["is_connected"] is None


def test_same_seed_same_bytes_across_workers(tmp_path):
    blobs = []
    for workers in (1, 4):
        out = tmp_path / f"h{workers}.csv"
        assert run(["hyperplanes", "--n", "16", "--t", "0,1", "--reps", "10", "--seed", "3",
                    "--workers", str(workers), "--out", str(out)]) == EXIT_OK
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1]


@pytest.mark.parametrize("argv", [
    ["sweep", "--d", "1", "--n", "10", "--lambda", "2"],
    ["sweep", "--d", "1", "--n", "10", "--p", "0.5", "--timing"],
    ["explore", "--n", "12", "--reps", "2", "--alpha", "0.1"],
    ["oracle", "--d", "1", "--n", "4", "--p", "0.2,0.8", "--reps", "50"],
    ["poisson", "--n", "10", "--mu-rule", "exact", "--reps", "4"],
])
def test_subcommands_succeed(argv, capsys):
    assert run(argv) == EXIT_OK
    assert capsys.readouterr().out.strip()


def test_predict_prints_closed_forms(capsys):
    assert run(["predict", "--d", "2", "--n", "100", "--t", "0"]) == EXIT_OK
    row = json.loads(capsys.readouterr().out)
    assert row["predicted_connectivity"] == pytest.approx(0.36787944117144233)
    assert row["p"] == pytest.approx(0.046517, abs=1e-6)
    assert len(row["factorial_moment_bounds"]) == 3
    assert row["alpha"] == pytest.approx(0.2679, abs=1e-4)


@pytest.mark.parametrize("argv", [
    ["sweep", "--reps", "0"],
    ["sweep", "--t-grid", "1:0:1"],
    ["sweep", "--d", "1", "--n", "3", "--t", "9"],
    ["hyperplanes", "--d", "1"],
    ["sweep", "--workers", "0"],
])
def test_config_errors(argv, capsys):
    assert run(argv) == EXIT_CONFIG
    assert "configuration error" in capsys.readouterr().err


def test_argparse_rejects_conflicting_grids():
    with pytest.raises(SystemExit) as exc:
        run(["sweep", "--t", "0", "--p", "0.5"])
    assert exc.value.code == 2


def test_resource_guard_exit_code(tmp_path):
    out = tmp_path / "r.csv"
    code = run(["sweep", "--d", "2,3", "--n", "10,40", "--reps", "2", "--max-vertices", "1000", "--out", str(out)])
    assert code == EXIT_RESOURCE
    recs = read_rows(out, cls=ResultRecord)
    assert len(recs) == 4 and sum(r.error is not None for r in recs) == 2


def test_io_error_exit_code(tmp_path, capsys):
    code = run(["sweep", "--n", "10", "--reps", "2", "--out", str(tmp_path / "no" / "such" / "dir.csv")])
    assert code == EXIT_IO
    assert "I/O error" in capsys.readouterr().err


def test_console_entry_points():
    res = subprocess.run([sys.executable, "-m", "hamperc", "predict", "--d", "1", "--n", "101", "--lambda", "2"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["p"] == pytest.approx(0.02)
    res = subprocess.run([sys.executable, "-m", "hamperc", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip()


def test_io_failure_mid_run_marks_partial_output(tmp_path, monkeypatch):
    import hamperc.harness.cli as cli

    real = cli.write_rows
    calls = {"n": 0}

    def flaky(fh, rows, *args, **kwargs):
        calls["n"] += 1
        if calls["n"] == 4:
            raise OSError(28, "No space left on device")
        return real(fh, rows, *args, **kwargs)

    monkeypatch.setattr(cli, "write_rows", flaky)
    out = tmp_path / "partial.csv"
    assert run(["sweep", "--n", "10", "--reps", "5", "--out", str(out)]) == EXIT_IO
    meta = json.loads((tmp_path / "partial.csv.meta.json").read_text())
    assert meta["status"].startswith("partial")
    assert len(read_rows(out)) == 2
