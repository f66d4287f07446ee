"""Tests for the freezeca command line."""
from src.ca import Configuration
from src.ca.formats import load_configuration, load_pattern, load_rule
from src.cli import OK, run
from src.utils import parse_report
from src.zoo import rules


def test_classify_freezing(tmp_path, capsys):
    assert run(["classify", "freezing", "-r", "ulam", "--output-dir", str(tmp_path)]) == OK
    out = capsys.readouterr().out
    assert "verb: classify freezing" in out
    assert "freezing: yes" in out
    assert "order: 1 0" in out


def test_classify_reports_a_cycle(tmp_path, capsys):
    assert run(["classify", "freezing", "-r", "shift", "--output-dir", str(tmp_path)]) == OK
    assert "freezing: no" in capsys.readouterr().out


def test_simulate_writes_the_final_configuration(tmp_path):
    code = run(["simulate", "-r", "identity", "--state", "1", "--steps", "0", "--output-dir", str(tmp_path)])
    assert code == OK
    final = load_configuration(tmp_path / "simulate.cfg", rules.identity().alphabet)
    assert final == Configuration.uniform(1, 1)


def test_usage_errors():
    assert run(["no-such-verb"]) == 2
    assert run(["predict", "-r", "max", "--engine", "stream"]) == 2
    assert run(["zoo", "emit"]) == 2


def test_runtime_errors_exit_with_one(tmp_path):
    missing = tmp_path / "missing.cfg"
    assert run(["simulate", "-r", "ulam", "-c", str(missing), "--output-dir", str(tmp_path)]) == 1
    assert run(["classify", "freezing", "-r", "no-such-rule"]) == 1


def test_reports_are_deterministic(tmp_path):
    reports = []
    for name in ("a.txt", "b.txt"):
        path = tmp_path / name
        argv = ["classify", "changes", "-r", "max2", "--seed", "5", "--samples", "4", "--horizon", "8",
                "--output-dir", str(tmp_path), "--report", str(path)]
        assert run(argv) == OK
        reports.append(path.read_text())
    assert reports[0] == reports[1]
    fields = parse_report(reports[0])
    assert fields["seed"] == "5"
    assert int(fields["max_changes"]) <= 1


def test_experiment_file(tmp_path):
    experiment = tmp_path / "freezing.exp"
    experiment.write_text("verb: classify freezing\nseed: 3\noutput_dir: out\nrule: max2\n")
    report = tmp_path / "report.txt"
    assert run(["--experiment", str(experiment), "--report", str(report)]) == OK
    fields = parse_report(report.read_text())
    assert fields["verb"] == "classify freezing"
    assert fields["seed"] == "3"
    assert fields["freezing"] == "yes"


def test_predict_engines_agree(tmp_path):
    states = []
    for engine in ("naive", "search"):
        report = tmp_path / f"{engine}.txt"
        argv = ["predict", "-r", "max2", "--t", "4", "--engine", engine, "--k", "1", "--seed", "2",
                "--output-dir", str(tmp_path), "--report", str(report)]
        assert run(argv) == OK
        states.append(parse_report(report.read_text())["state"])
    assert states[0] == states[1]


def test_compile_emits_rule_and_input(tmp_path):
    assert run(["compile", "minsky", "bounce", "--chis", "1", "--output-dir", str(tmp_path)]) == OK
    compiled = load_rule(tmp_path / "bounce.rule")
    assert compiled.size == 37
    pattern, _ = load_pattern(tmp_path / "bounce_input.pat", compiled.alphabet)
    assert pattern.radius == 3


def test_verify_minsky(tmp_path, capsys):
    assert run(["verify", "minsky", "--output-dir", str(tmp_path)]) == OK
    out = capsys.readouterr().out
    assert "passed: yes" in out
    assert "halts: yes" in out


def test_verify_fooling(tmp_path, capsys):
    assert run(["verify", "fooling", "--output-dir", str(tmp_path)]) == OK
    out = capsys.readouterr().out
    assert "size: 8" in out
    assert "lower_bound_bits: 3" in out


def test_szone_verify(tmp_path, capsys):
    assert run(["szone", "verify", "--n", "3", "--t", "2", "--output-dir", str(tmp_path)]) == OK
    assert "passed: yes" in capsys.readouterr().out


def test_commcc_curve(tmp_path):
    curve = tmp_path / "curve.csv"
    argv = ["commcc", "-r", "max2", "--n", "2", "4", "--k", "1", "--transcripts",
            "--csv", str(curve), "--output-dir", str(tmp_path)]
    assert run(argv) == OK
    assert curve.read_text().splitlines()[0].startswith("n,trivial_bits")
    assert (tmp_path / "diffreport_n4.transcript").exists()


def test_zoo_emit(tmp_path):
    assert run(["zoo", "emit", "max2", "--output-dir", str(tmp_path)]) == OK
    assert load_rule(tmp_path / "max2.rule").same_rule(rules.max_rule(two_way=True))
