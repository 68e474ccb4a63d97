import csv
import runpy
import sys
from pathlib import Path

SCRIPT = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"


def test_kernel_benchmark_runs(tmp_path, monkeypatch, capsys):
    out = tmp_path / "bench.csv"
    monkeypatch.setattr(sys, "argv", [str(SCRIPT), "--sizes", "50", "200", "--repeats", "1", "--csv", str(out)])
    runpy.run_path(str(SCRIPT), run_name="__main__")
    rows = list(csv.DictReader(out.open()))
    assert [r["n"] for r in rows] == ["50", "200"]
    assert all(float(r["python_s"]) > 0 for r in rows)
    assert "n=50" in capsys.readouterr().out
