from sqlalchemy import func, select

from convex_radon.cli.main import EXIT_INVALID, EXIT_OK, EXIT_VIOLATED, main
from convex_radon.core.errors import ConvexRadonError, DroppedSubspace
from convex_radon.db.session import make_engine, make_session_factory
from convex_radon.harness import registry
from convex_radon.models.run import ExperimentRun, ReportRecord, RunStatus

SUITE = """
name = "tiny"
seed = 7
samples = 2000
suite = [
  "constants",
  "quotient_holder: K=ball(3), L=ball(3), k=1, net_size=2",
  "main_proj: K=cube(3), L=cube(3), p=1, net_size=2",
]
"""


def _config(tmp_path, text: str = SUITE):
    path = tmp_path / "run.toml"
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_list_commands(capsys):
    assert main(["list-checkers"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "quotient_main" in out and "brunn_suite" in out
    assert main(["list-bodies"]) == EXIT_OK
    assert "@vol=" in capsys.readouterr().out


def test_run_writes_a_csv_report(tmp_path):
    out = tmp_path / "out" / "tiny.csv"
    assert main(["run", _config(tmp_path), "--out", str(out)]) == EXIT_OK
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("check_id,body_k,body_l")
    assert len(lines) == 1 + 5 + 1 + 2
    assert lines[6].startswith("quotient_holder[1]:quotient-holder,ball(3,1),ball(3,1)")


def test_identical_runs_give_identical_bytes(tmp_path):
    config = _config(tmp_path)
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["run", config, "--format", "json", "--out", str(first)]) == EXIT_OK
    assert main(["run", config, "--format", "json", "--out", str(second), "--workers", "3"]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()


def test_run_prints_to_stdout_without_output(tmp_path, capsys):
    assert main(["run", _config(tmp_path), "--seed", "3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("check_id,")
    assert out.rstrip().endswith(",3")


def test_invalid_inputs_exit_with_two(tmp_path):
    assert main(["run", str(tmp_path / "missing.toml")]) == EXIT_INVALID
    bad = 'suite = ["quotient_holder: K=ball(3), L=ball(3), k=3"]\n'
    assert main(["run", _config(tmp_path, bad)]) == EXIT_INVALID
    missing_k = 'suite = ["quotient_holder: K=ball(3), L=ball(3)"]\n'
    assert main(["run", _config(tmp_path, missing_k), "--samples", "100"]) == EXIT_INVALID


def test_violations_exit_with_one(tmp_path):
    text = 'seed = 1\nsamples = 500\nsuite = ["arb_ovr: K=ball(3), L=ball(3), k=1, net_size=1, c_budget=0.5"]\n'
    out = tmp_path / "violated.csv"
    assert main(["run", _config(tmp_path, text), "--out", str(out)]) == EXIT_VIOLATED
    assert ",violated," in out.read_text(encoding="utf-8")


def test_run_is_stored_when_a_database_is_given(tmp_path):
    url = f"sqlite:///{tmp_path / 'runs.db'}"
    assert main(["run", _config(tmp_path), "--db", url, "--out", str(tmp_path / "r.csv")]) == EXIT_OK
    with make_session_factory(make_engine(url))() as db:
        run = db.scalars(select(ExperimentRun)).one()
        assert run.status == RunStatus.FINISHED.value
        assert run.suite_name == "tiny"
        assert run.seed == 7
        assert db.scalar(select(func.count()).select_from(ReportRecord)) == 8


def test_a_fully_dropped_net_exits_with_two(tmp_path, monkeypatch):
    def every_element_dropped(spec, ctx):
        raise DroppedSubspace("every net element was dropped")

    monkeypatch.setitem(registry.REGISTRY, "constants", every_element_dropped)
    text = 'seed = 1\nsuite = ["constants"]\n'
    assert main(["run", _config(tmp_path, text), "--out", str(tmp_path / "dropped.csv")]) == EXIT_INVALID
    assert issubclass(DroppedSubspace, ConvexRadonError)
