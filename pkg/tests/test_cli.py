"""Tests for the command-line interface."""

import io
import json

from memetic_pso_sat.cli import EXIT_ERROR, EXIT_SATISFIED, EXIT_UNSATISFIED, main
from memetic_pso_sat.config import SolverConfig

FAST_FLAGS = ["--pop", "4", "--pool", "8", "--max-iters", "3"]


def write_cnf(tmp_path, name: str, text: str):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestSolveCommand:
    """Test the solve subcommand."""

    def test_example_file(self, example_cnf_file, capsys) -> None:
        assert main(["solve", str(example_cnf_file)]) == EXIT_SATISFIED
        out = capsys.readouterr().out
        assert "Status: satisfied" in out
        assert out.rstrip().splitlines()[-1].startswith("v ")
        assert out.rstrip().endswith(" 0")

    def test_generated_instance_from_stdin(self, capsys, monkeypatch) -> None:
        assert main(["gen", "--vars", "36", "--clauses", "12", "--seed", "1"]) == 0
        instance = capsys.readouterr().out
        assert instance.startswith("c random 3-SAT")

        monkeypatch.setattr("sys.stdin", io.StringIO(instance))
        assert main(["solve", "--format", "json"]) == EXIT_SATISFIED
        data = json.loads(capsys.readouterr().out)
        assert data["status"] == "satisfied"
        assert len(data["best_assignment"]) == 36

    def test_budget_exhausted_exit_code(self, tmp_path, capsys) -> None:
        path = write_cnf(tmp_path, "contradiction.cnf", "p cnf 1 2\n1 0\n-1 0\n")
        assert main(["solve", str(path), "--format", "json", *FAST_FLAGS]) == EXIT_UNSATISFIED
        data = json.loads(capsys.readouterr().out)
        assert data["status"] == "budget_exhausted"
        assert data["false_clause_count"] == 1

    def test_malformed_file(self, tmp_path, capsys) -> None:
        path = write_cnf(tmp_path, "bad.cnf", "p cnf 2 1\n1 x 0\n")
        assert main(["solve", str(path)]) == EXIT_ERROR
        assert "Error: line 2: invalid literal" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys) -> None:
        assert main(["solve", str(tmp_path / "absent.cnf")]) == EXIT_ERROR
        assert "CNF file not found" in capsys.readouterr().err

    def test_unknown_flag(self, example_cnf_file) -> None:
        assert main(["solve", str(example_cnf_file), "--bogus"]) == EXIT_ERROR

    def test_invalid_flag_value(self, example_cnf_file, capsys) -> None:
        assert main(["solve", str(example_cnf_file), "--vmax", "0"]) == EXIT_ERROR
        assert "v_max must be positive" in capsys.readouterr().err

    def test_trace_file(self, tmp_path, capsys) -> None:
        cnf = write_cnf(tmp_path, "contradiction.cnf", "p cnf 1 2\n1 0\n-1 0\n")
        trace = tmp_path / "trace.csv"
        main(["solve", str(cnf), "--format", "json", "--trace", str(trace), *FAST_FLAGS])
        data = json.loads(capsys.readouterr().out)

        rows = trace.read_text(encoding="utf-8").splitlines()
        assert rows[0] == "iteration,gbest_fitness"
        assert len(rows) - 1 == data["iterations_used"] + 1
        fitnesses = [int(row.split(",")[1]) for row in rows[1:]]
        assert fitnesses == sorted(fitnesses)

    def test_config_file_and_flag_precedence(self, tmp_path, example_cnf_file, capsys) -> None:
        config_path = tmp_path / "solver.yaml"
        SolverConfig(random_seed=5, population_size=10, seed_pool_size=50).to_yaml_file(config_path)

        assert main(["solve", str(example_cnf_file), "--config", str(config_path), "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out)["seed"] == 5

        args = ["solve", str(example_cnf_file), "--config", str(config_path), "--seed", "9", "--format", "json"]
        assert main(args) == 0
        assert json.loads(capsys.readouterr().out)["seed"] == 9

    def test_population_above_default_pool(self, example_cnf_file) -> None:
        assert main(["solve", str(example_cnf_file), "--pop", "1200", "--max-iters", "1"]) == EXIT_SATISFIED


class TestOtherCommands:
    """Test bench, gen, oracle and create-example."""

    def test_bench_json(self, example_cnf_file, capsys) -> None:
        args = ["bench", str(example_cnf_file), "--runs", "2", "--format", "json", "--seed", "7", *FAST_FLAGS]
        assert main(args) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["base_seed"] == 7
        runs = data["instances"][0]["runs"]
        assert [run["seed"] for run in runs] == [7, 8]

    def test_bench_output_and_traces(self, tmp_path, example_cnf_file) -> None:
        report = tmp_path / "out" / "report.csv"
        traces = tmp_path / "traces"
        args = ["bench", str(example_cnf_file), "--runs", "2", "--format", "csv", "-o", str(report)]
        assert main([*args, "--trace", str(traces), *FAST_FLAGS]) == 0
        assert report.read_text(encoding="utf-8").startswith("instance,")
        assert sorted(path.name for path in traces.iterdir()) == ["000-example.run0.csv", "000-example.run1.csv"]

    def test_bench_same_file_names_keep_separate_traces(self, tmp_path, capsys) -> None:
        for directory in ("a", "b"):
            (tmp_path / directory).mkdir()
            write_cnf(tmp_path / directory, "x.cnf", "p cnf 1 2\n1 0\n-1 0\n")
        traces = tmp_path / "traces"
        args = ["bench", str(tmp_path / "a"), str(tmp_path / "b"), "--runs", "1", "--format", "json"]
        assert main([*args, "--trace", str(traces), *FAST_FLAGS]) == 0

        names = [item["name"] for item in json.loads(capsys.readouterr().out)["instances"]]
        assert names == [str(tmp_path / "a" / "x.cnf"), str(tmp_path / "b" / "x.cnf")]
        assert sorted(path.name for path in traces.iterdir()) == ["000-x.run0.csv", "001-x.run0.csv"]

    def test_bench_invalid_runs(self, example_cnf_file) -> None:
        assert main(["bench", str(example_cnf_file), "--runs", "0"]) == EXIT_ERROR

    def test_gen_to_file(self, tmp_path) -> None:
        path = tmp_path / "uf.cnf"
        assert main(["gen", "--vars", "20", "--clauses", "91", "--seed", "3", "-o", str(path)]) == 0
        assert "p cnf 20 91" in path.read_text(encoding="utf-8")

    def test_gen_invalid(self, capsys) -> None:
        assert main(["gen", "--vars", "2", "--clauses", "1"]) == EXIT_ERROR
        assert "at least 3 variables" in capsys.readouterr().err

    def test_oracle(self, example_cnf_file, capsys) -> None:
        assert main(["oracle", str(example_cnf_file)]) == EXIT_SATISFIED
        out = capsys.readouterr().out
        assert "Max satisfiable clauses: 4/4" in out
        assert "Witness: 0000" in out

    def test_oracle_unsatisfiable(self, tmp_path) -> None:
        path = write_cnf(tmp_path, "contradiction.cnf", "p cnf 1 2\n1 0\n-1 0\n")
        assert main(["oracle", str(path)]) == EXIT_UNSATISFIED

    def test_oracle_refuses_large_formula(self, tmp_path, capsys) -> None:
        path = write_cnf(tmp_path, "big.cnf", "p cnf 25 1\n1 -25 0\n")
        assert main(["oracle", str(path)]) == EXIT_ERROR
        assert "limited to 24 variables" in capsys.readouterr().err

    def test_create_example(self, tmp_path) -> None:
        path = tmp_path / "solver.yaml"
        assert main(["create-example", "-o", str(path)]) == 0
        assert SolverConfig.from_yaml_file(path) == SolverConfig()
        assert main(["create-example", "-o", str(path)]) == EXIT_ERROR
        assert main(["create-example", "-o", str(path), "--force"]) == 0

    def test_no_command(self, capsys) -> None:
        assert main([]) == EXIT_ERROR
        assert "usage" in capsys.readouterr().err
