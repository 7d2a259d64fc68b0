import csv
import io
import json

import pytest

from mifdo.harness import (
    ConfigError,
    ExperimentConfig,
    build_tasks,
    config_from_mapping,
    derive_seed,
    emit_report,
    execute,
    expand,
    get_problem,
    load_config,
    render_csv,
)
from mifdo.harness.cli import main
from mifdo.harness.report import CSV_COLUMNS, TRACE_COLUMNS, render_markdown, render_trace

SMALL = dict(iters=15, pop=6)


def small(**kw):
    return config_from_mapping({**SMALL, **kw})


# -- config -------------------------------------------------------------------


def test_empty_config_defaults(tmp_path):
    f = tmp_path / "c.json"
    f.write_text("")
    cfg = load_config(f)
    assert (cfg.population, cfg.iterations, cfg.dimension, cfg.runs) == (30, 500, 10, 30)
    assert cfg.lam == 0.1 and cfg.alpha == 0.05


def test_config_file_values(tmp_path):
    f = tmp_path / "c.json"
    f.write_text(json.dumps({"algo": "fdo,mifdo", "problem": ["tf1", "tf2"], "runs": 4}))
    cfg = load_config(f)
    assert cfg.algorithms == ("fdo", "mifdo") and cfg.problems == ("tf1", "tf2") and cfg.runs == 4


def test_runs_zero_names_key(tmp_path):
    f = tmp_path / "c.json"
    f.write_text('{"runs": 0}')
    with pytest.raises(ConfigError, match="runs") as exc:
        load_config(f)
    assert exc.value.key == "runs"


def test_unknown_problem_lists_valid_names():
    with pytest.raises(ConfigError) as exc:
        config_from_mapping({"problem": "tf99"})
    assert exc.value.key == "problem"
    assert "tf1" in str(exc.value) and "cec10" in str(exc.value)


@pytest.mark.parametrize("data, key", [({"algo": "pso"}, "algo"), ({"pop": -3}, "population"),
                                       ({"bogus": 1}, "bogus"), ({"format": "xml"}, "format")])
def test_invalid_keys_named(data, key):
    with pytest.raises(ConfigError) as exc:
        config_from_mapping(data)
    assert exc.value.key == key


def test_expand_suites():
    assert len(expand(["classical"])) == 19
    assert len(expand(["cec2019"])) == 10
    assert expand(["tf1", "classical"])[0] == "tf1"
    assert len(expand(["tf1", "classical"])) == 19


def test_dimension_applies_to_scalable_only():
    assert get_problem("tf1", 30).dimension == 30
    assert get_problem("tf19", 30).dimension == 10
    assert get_problem("cec01", 30).dimension == 9


# -- seeding ------------------------------------------------------------------


def test_derive_seed_stable_and_distinct():
    a = derive_seed(0, "mifdo", "tf1", 0)
    assert a == derive_seed(0, "mifdo", "tf1", 0)
    seeds = {derive_seed(0, al, p, r) for al in ("fdo", "mifdo") for p in ("tf1", "tf2") for r in range(50)}
    assert len(seeds) == 200
    assert derive_seed(5, "mifdo", "tf1", 0) == a ^ 5


def test_build_tasks_count():
    cfg = small(algo="fdo,mifdo", problem="tf1,tf2,tf3", runs=30)
    assert len(build_tasks(cfg)) == 180


# -- execution ----------------------------------------------------------------


def test_execute_counts_rows():
    report = execute(small(algo="fdo,mifdo", problem="tf1,tf2,tf3", runs=3))
    assert len(report.cells) == 6
    assert all(len(c.batch.final_bests) == 3 for c in report.cells)
    assert report.comparison is not None and report.comparison.reference == "mifdo"
    assert sum(report.comparison.tally("fdo")) == 3


def test_execute_success_threshold():
    report = execute(small(problem="tf1", runs=2))
    s = report.cell("mifdo", "tf1").summary
    assert s.n_success + s.n_failure == 2


def test_execute_deterministic_csv():
    cfg = small(algo="fdo,mifdo", problem="tf1,tf9", runs=2, timing=False)
    assert render_csv(execute(cfg)) == render_csv(execute(cfg))


def test_execute_jobs_schedule_independent():
    cfg = small(algo="mifdo", problem="tf1,tf10", runs=3, timing=False)
    par = config_from_mapping({"jobs": 3}, cfg)
    assert render_csv(execute(cfg)) == render_csv(execute(par))


def test_failed_cell_reported_as_na(monkeypatch):
    import mifdo.harness.runner as runner

    real = runner.get_problem

    def flaky(name, dim=None, shift_seed=2019):
        if name == "tf2":
            raise RuntimeError("boom")
        return real(name, dim, shift_seed)

    monkeypatch.setattr(runner, "get_problem", flaky)
    rep = runner.execute(small(problem="tf1,tf2", runs=2))
    assert rep.cell("mifdo", "tf2").summary is None
    assert "RuntimeError: boom" in rep.cell("mifdo", "tf2").errors[0]
    rows = list(csv.DictReader(io.StringIO(render_csv(rep))))
    assert rows[1]["mean"] == "NA"
    assert rows[0]["mean"] != "NA"


# -- reports ------------------------------------------------------------------


def test_csv_header_and_single_row(tmp_path):
    rep = execute(small(problem="tf1", runs=2))
    out = emit_report(rep, tmp_path / "r.csv", "csv")
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 2


def test_no_timing_marks_runtime_na():
    rep = execute(small(problem="tf1", runs=2, timing=False))
    row = next(csv.DictReader(io.StringIO(render_csv(rep))))
    assert row["avg_runtime_s"] == "NA"


def test_markdown_report_and_wilcoxon_companion(tmp_path):
    rep = execute(small(algo="fdo,mifdo", problem="tf1,tf2", runs=3, timing=False))
    md = render_markdown(rep)
    assert "tf1" in md and "+/=/-" in md
    out = emit_report(rep, tmp_path / "r.csv", "csv")
    wil = (tmp_path / "r_wilcoxon.csv").read_text().splitlines()
    assert out.exists() and len(wil) == 1 + 2 + 1


def test_trace_rows_match_iterations(tmp_path):
    rep = execute(small(problem="tf1", runs=1))
    tr = rep.cell("mifdo", "tf1").best_trace
    text = render_trace(tr)
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == TRACE_COLUMNS
    assert len(rows) - 1 == 15
    emit_report(rep, tmp_path / "r.csv", "csv", trace_dir=tmp_path / "traces")
    assert len(list((tmp_path / "traces").iterdir())) == 1


def test_unwritable_path_names_path(tmp_path):
    rep = execute(small(problem="tf1", runs=1))
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(OSError, match="file"):
        emit_report(rep, blocker / "r.csv", "csv")


# -- CLI ----------------------------------------------------------------------


def test_cli_bench_classical_rows(tmp_path):
    out = tmp_path / "r.csv"
    code = main(["bench", "--suite", "classical", "--algo", "mifdo", "--seed", "7", "--runs", "2",
                 "--iters", "5", "--pop", "5", "--out", str(out)])
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 19
    assert [r["problem"] for r in rows] == expand(["classical"])


def test_cli_run_defaults(tmp_path, capsys):
    out = tmp_path / "t.csv"
    assert main(["run", "--problem", "tf1", "--algo", "mifdo", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "population:  30" in text and "/500" in text
    assert len(out.read_text().splitlines()) == 1 + 500


def test_cli_compare_prints_tally(tmp_path, capsys):
    out = tmp_path / "r.md"
    code = main(["compare", "--algo", "fdo,mifdo", "--problem", "tf1,tf10", "--runs", "4",
                 "--iters", "10", "--pop", "5", "--format", "markdown", "--out", str(out)])
    assert code == 0
    assert "+/=/-" in capsys.readouterr().out
    assert out.exists()


def test_cli_compare_needs_two_algorithms(capsys):
    assert main(["compare", "--algo", "mifdo", "--problem", "tf1", "--runs", "2"]) == 2


@pytest.mark.parametrize("argv", [["bench", "--runs", "0"], ["bench", "--problem", "tf99"],
                                  ["run", "--problem", "nope"], ["frobnicate"]])
def test_cli_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_cli_config_file_overridden_by_flags(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"problem": "tf2", "runs": 2, "iters": 5, "pop": 4}))
    out = tmp_path / "r.csv"
    assert main(["bench", "--config", str(cfg), "--problem", "tf3", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert [r["problem"] for r in rows] == ["tf3"]


def test_cli_list(capsys):
    assert main(["list"]) == 0
    text = capsys.readouterr().out
    assert "cec10" in text and "tsp5" in text
