"""CLI loading, reports, determinism, and diagnostics."""

import csv
import io
import json

import pytest

from fjqn.cli import CliError, RunConfig, load_network, main, run

GOOD_NETWORK = {
    "nodes": [
        {"id": 1, "label": "intake", "distribution": {"family": "exponential", "mean": 10.0}},
        {"id": 2, "label": "left", "distribution": {"family": "uniform", "low": 1.0, "high": 3.0}},
        {"id": 3, "label": "right", "distribution": {"family": "erlang", "shape": 2, "mean": 4.0}},
        {"id": 4, "label": "merge", "distribution": {"family": "deterministic", "value": 2.0}},
    ],
    "arcs": [[1, 2], [1, 3], [2, 4], [3, 4]],
    "arrival_node": 1,
}


def write_network(tmp_path, doc, name="net.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestLoadNetwork:
    def test_reserved_name(self):
        model, mapping = load_network("paper-fig3")
        assert model.n == 6
        assert mapping == {i: i for i in range(1, 7)}

    def test_file_round_trip(self, tmp_path):
        model, mapping = load_network(write_network(tmp_path, GOOD_NETWORK))
        assert model.n == 4
        assert model.arrival_node == 1
        assert model.network.node(3).timing.family == "erlang"

    def test_renumbering_and_arrival_remap(self, tmp_path):
        doc = {
            "nodes": [
                {"id": 1, "label": "late", "distribution": {"family": "deterministic", "value": 1.0}},
                {"id": 2, "label": "early", "distribution": {"family": "deterministic", "value": 2.0}},
            ],
            "arcs": [[2, 1]],
            "arrival_node": 2,
        }
        model, mapping = load_network(write_network(tmp_path, doc))
        assert mapping == {2: 1, 1: 2}
        assert model.arrival_node == 1
        assert model.network.node(1).label == "early"

    def test_missing_file(self):
        with pytest.raises(CliError, match="cannot read"):
            load_network("/no/such/file.json")

    def test_bad_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{nope")
        with pytest.raises(CliError, match="not valid JSON"):
            load_network(str(path))

    def test_unknown_family_names_field(self, tmp_path):
        doc = {"nodes": [{"id": 1, "distribution": {"family": "zipf", "mean": 2}}], "arcs": []}
        with pytest.raises(CliError, match="zipf"):
            load_network(write_network(tmp_path, doc))

    def test_missing_distribution_field(self, tmp_path):
        doc = {"nodes": [{"id": 1, "distribution": {"family": "uniform", "low": 1}}], "arcs": []}
        with pytest.raises(CliError, match="high"):
            load_network(write_network(tmp_path, doc))

    def test_cycle_diagnostic_names_cycle(self, tmp_path):
        doc = {
            "nodes": [
                {"id": 1, "distribution": {"family": "deterministic", "value": 1}},
                {"id": 2, "distribution": {"family": "deterministic", "value": 1}},
            ],
            "arcs": [[1, 2], [2, 1]],
        }
        with pytest.raises(CliError, match="cycle"):
            load_network(write_network(tmp_path, doc))

    def test_bad_arc_shape(self, tmp_path):
        doc = {"nodes": GOOD_NETWORK["nodes"], "arcs": [[1, 2, 3]]}
        with pytest.raises(CliError, match=r"arcs\[0\]"):
            load_network(write_network(tmp_path, doc))

    def test_unknown_arrival_node(self, tmp_path):
        doc = dict(GOOD_NETWORK, arrival_node=99)
        with pytest.raises(CliError, match="99"):
            load_network(write_network(tmp_path, doc))


class TestAnalyticMode:
    def test_builtin_report_values(self, capsys):
        code, out, err = run_cli(["--network", "paper-fig3", "--mode", "analytic"], capsys)
        assert code == 0 and err == ""
        doc = json.loads(out)
        assert doc["R"] == 0.6
        assert doc["attack_cycle_time"] == 10.0
        assert doc["recovery_cycle_time"] == 6.0
        assert doc["cycle_time"] == 10.0
        assert doc["bottleneck_ranking"] == [5, 2, 3, 4, 6]
        assert doc["warnings"] == []
        assert "renumbering" not in doc
        assert [n["id"] for n in doc["nodes"]] == [1, 2, 3, 4, 5, 6]

    def test_renumbering_echoed(self, tmp_path, capsys):
        doc = {
            "nodes": [
                {"id": 1, "distribution": {"family": "deterministic", "value": 1.0}},
                {"id": 2, "distribution": {"family": "deterministic", "value": 2.0}},
            ],
            "arcs": [[2, 1]],
        }
        path = write_network(tmp_path, doc)
        code, out, _ = run_cli(["--network", path], capsys)
        assert code == 0
        assert json.loads(out)["renumbering"] == {"1": 2, "2": 1}

    def test_deterministic_output(self, capsys):
        _, first, _ = run_cli(["--network", "paper-fig3"], capsys)
        _, second, _ = run_cli(["--network", "paper-fig3"], capsys)
        assert first == second


class TestSimulateMode:
    ARGS = ["--network", "paper-fig3", "--mode", "simulate",
            "--steps", "2000", "--replications", "3", "--seed", "7"]

    def test_report_fields(self, capsys):
        code, out, _ = run_cli(self.ARGS, capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["steps"] == 2000 and doc["replications"] == 3
        assert len(doc["per_replication"]) == 3
        assert doc["gamma_stderr"] >= 0.0
        assert abs(doc["gamma_hat"] - 10.0) < 1.0  # full network paces at max mean
        assert doc["norm_samples"][-1][0] == 2000
        norms = [v for _, v in doc["norm_samples"]]
        assert norms == sorted(norms)

    def test_max_traffic_targets_recovery_time(self, capsys):
        code, out, _ = run_cli(self.ARGS + ["--max-traffic"], capsys)
        doc = json.loads(out)
        assert doc["max_traffic"] is True
        assert abs(doc["gamma_hat"] - 6.0) < 0.6
        # analytic block still reports the unmodified model
        assert doc["attack_cycle_time"] == 10.0 and doc["R"] == 0.6

    def test_byte_identical_reruns(self, capsys):
        _, first, _ = run_cli(self.ARGS, capsys)
        _, second, _ = run_cli(self.ARGS, capsys)
        assert first == second

    def test_seed_changes_output(self, capsys):
        _, first, _ = run_cli(self.ARGS, capsys)
        _, other, _ = run_cli(self.ARGS[:-1] + ["8"], capsys)
        assert json.loads(first)["gamma_hat"] != json.loads(other)["gamma_hat"]

    def test_csv_shape(self, capsys):
        code, out, _ = run_cli(self.ARGS + ["--format", "csv"], capsys)
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0][0] == "record"
        kinds = [r[0] for r in rows[1:]]
        assert kinds == ["replication"] * 3 + ["summary"]
        gammas = [float(r[2]) for r in rows[1:4]]
        assert len(gammas) == 3


class TestVerifyMode:
    def test_verify_passes_on_builtin(self, capsys):
        code, out, _ = run_cli(["--network", "paper-fig3", "--mode", "verify"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["ok"] is True
        names = {c["name"] for c in doc["checks"]}
        assert names == {"oracle-equivalence", "tandem-bound"}
        assert all(c["failed"] == 0 for c in doc["checks"])

    def test_verify_csv(self, capsys):
        code, out, _ = run_cli(["--network", "paper-fig3", "--mode", "verify",
                                "--format", "csv"], capsys)
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["record", "check", "passed", "failed", "ok"]
        assert rows[-1][0] == "summary"


class TestErrorsAndPlumbing:
    def test_missing_file_exits_2(self, capsys):
        code, out, err = run_cli(["--network", "/absent.json"], capsys)
        assert code == 2 and out == ""
        assert "cannot read" in err

    def test_bad_steps_exits_2(self, capsys):
        code, _, err = run_cli(["--network", "paper-fig3", "--steps", "0"], capsys)
        assert code == 2
        assert "--steps" in err

    def test_bad_mode_rejected_by_parser(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--network", "paper-fig3", "--mode", "dance"])
        assert exc.value.code == 2

    def test_output_file(self, tmp_path, capsys):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(["--network", "paper-fig3", "--output", str(target)], capsys)
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["R"] == 0.6

    def test_run_config_api(self):
        config = RunConfig(network="paper-fig3", output="/dev/null")
        assert run(config) == 0

    def test_custom_file_end_to_end(self, tmp_path, capsys):
        path = write_network(tmp_path, GOOD_NETWORK)
        code, out, _ = run_cli(["--network", path, "--mode", "simulate",
                                "--steps", "500", "--replications", "2"], capsys)
        assert code == 0
        doc = json.loads(out)
        # slowest stage has mean 10, so the network paces there
        assert abs(doc["gamma_hat"] - 10.0) < 2.0
        # nodes 2 and 4 tie at mean 2, so id order breaks the tie
        assert doc["bottleneck_ranking"] == [3, 2, 4]
