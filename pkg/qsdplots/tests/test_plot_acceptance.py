"""End-to-end check: CSVs produced by the qsdbounds CLI render to valid SVG.

Exercises the real file interface between the two packages: the generating
tool writes the CSVs, this package validates and draws them.
"""

import subprocess
import sys


def run_generator(*argv):
    return subprocess.run(
        [sys.executable, "-m", "qsdbounds.cli", *argv],
        capture_output=True, text=True, check=False,
    )


def run_plot(*argv):
    return subprocess.run(
        [sys.executable, "-m", "qsdplots.cli", *argv],
        capture_output=True, text=True, check=False,
    )


def test_plot_from_generated_csvs(tmp_path):
    f1 = tmp_path / "f1.csv"
    proc = run_generator(
        "experiment", "fig1", "--panel", "mixed", "--ranks", "3,3",
        "--n", "20", "--seed", "7", "--out", str(f1),
    )
    assert proc.returncode == 0, proc.stderr

    f2 = tmp_path / "f2.csv"
    proc = run_generator(
        "experiment", "fig2", "--grid", "0.05,0.2", "--restarts", "2",
        "--max-iter", "200", "--seed", "5", "--out", str(f2),
    )
    assert proc.returncode == 0, proc.stderr

    svg1 = tmp_path / "fig1.svg"
    proc = run_plot("fig1", "--in", str(f1), "--out", str(svg1))
    assert proc.returncode == 0, proc.stderr
    text = svg1.read_text()
    assert 'id="reference-curve"' in text
    assert 'id="class-rank-3"' in text

    svg2 = tmp_path / "fig2.svg"
    proc = run_plot("fig2", "--in", str(f2), "--rc", "0.073", "--out", str(svg2))
    assert proc.returncode == 0, proc.stderr
    text = svg2.read_text()
    assert 'id="gap-points"' in text
    assert 'id="threshold-marker"' in text
