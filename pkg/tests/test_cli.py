from __future__ import annotations

import io
import json

import pytest

from app import main as cli_main
from app.lib.cnf import read_dimacs
from app.main import EXIT_DATA, EXIT_EXHAUSTED, EXIT_FALSE, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, run
from tests.formulas import CYCLE_EXITS_ROWS, TRIANGLE


def _dimacs(rows) -> str:
    num_vars = max(abs(value) for row in rows for value in row)
    body = "".join(" ".join(str(value) for value in row) + " 0\n" for row in rows)
    return f"p cnf {num_vars} {len(rows)}\n{body}"


@pytest.fixture
def cli(tmp_path):
    missing = str(tmp_path / "missing.yaml")

    def _run(*argv: str, stdin: str = TRIANGLE):
        out, err = io.StringIO(), io.StringIO()
        command, rest = argv[0], list(argv[1:])
        code = run([command, "--config", missing, *rest], io.StringIO(stdin), out, err)
        return code, out.getvalue(), err.getvalue()

    return _run


def test_classify_human(cli):
    code, out, _ = cli("classify")
    assert code == EXIT_OK
    assert out == "consistent, acyclic\n"


def test_classify_json(cli):
    code, out, _ = cli("classify", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["regime"] == "consistent_no_implied"
    assert data["cyclic"] == "acyclic"
    assert data["variables"] == 3
    assert data["clash_var"] is None


def test_classify_dot(cli):
    code, out, _ = cli("classify", "--format", "dot")
    assert code == EXIT_OK
    assert out.startswith("digraph")


def test_redundant_names_the_witness(cli):
    code, out, _ = cli("redundant")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "redundant (clause 2)"


def test_redundant_json(cli):
    code, out, _ = cli("redundant", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["per_clause"] == {"1": "irredundant", "2": "redundant", "3": "irredundant"}


def test_ies_size_prints_half_units(cli):
    code, out, _ = cli("ies-size")
    assert code == EXIT_OK
    assert out == "4/2\n"


def test_membership_questions(cli):
    assert cli("in-ies", "--clause", "1", "--all")[:2] == (EXIT_OK, "yes\n")
    assert cli("in-ies", "--clause", "2", "--some")[:2] == (EXIT_FALSE, "no\n")
    assert cli("in-ies", "--clause", "2", "--all")[:2] == (EXIT_FALSE, "no\n")


def test_membership_of_unknown_clause(cli):
    code, _, err = cli("in-ies", "--clause", "9", "--some")
    assert code == EXIT_USAGE
    assert err.startswith("error:")


def test_prune_emits_the_ies(cli):
    code, out, _ = cli("prune")
    assert code == EXIT_OK
    pruned = read_dimacs(out).formula
    assert pruned == read_dimacs(TRIANGLE).formula.subset({1, 3})


def test_map_goes_to_stderr(cli):
    code, out, err = cli("classify", "--map")
    assert code == EXIT_OK
    assert out == "consistent, acyclic\n"
    assert err.splitlines() == ["line 2 -> clause 1", "line 3 -> clause 3", "line 4 -> clause 2"]


def test_parse_warnings_go_to_stderr(cli):
    code, _, err = cli("classify", stdin="p cnf 2 2\n-1 2 0\n2 -1 0\n")
    assert code == EXIT_OK
    assert "warning: duplicate clause on line 3 merged into clause 1" in err.splitlines()


def test_parse_error_exit_code(cli):
    code, out, err = cli("classify", stdin="p cnf 2 1\n1 x 0\n")
    assert code == EXIT_DATA
    assert out == ""
    assert err.startswith("parse error: line 2")


def test_usage_errors(cli):
    assert cli("redundant", "--format", "dot")[0] == EXIT_USAGE
    assert cli("in-ies", "--clause", "1")[0] == EXIT_USAGE
    assert run([], io.StringIO(""), io.StringIO(), io.StringIO()) == EXIT_USAGE


def test_horn_flag_needs_horn_input(cli):
    code, _, err = cli("classify", "--horn", stdin="p cnf 2 1\n1 2 0\n")
    assert code == EXIT_USAGE
    assert "--horn" in err


def test_search_report_on_a_cycle(cli):
    code, out, _ = cli("ies", stdin=_dimacs(CYCLE_EXITS_ROWS))
    assert code == EXIT_OK
    assert "min size: 8/2" in out.splitlines()
    assert "exact search: used" in out.splitlines()


def test_exhausted_search_exit_code(cli):
    code, out, _ = cli("ies", "--max-clauses", "1", stdin=_dimacs(CYCLE_EXITS_ROWS))
    assert code == EXIT_EXHAUSTED
    assert "min size: needs_search" in out.splitlines()


def test_unique_only_rejects_several_ies(cli):
    code, _, err = cli("ies", "--unique-only", stdin=_dimacs(CYCLE_EXITS_ROWS))
    assert code == EXIT_FALSE
    assert "more than one" in err


def test_oracle_enumerates(cli):
    code, out, _ = cli("oracle", "enumerate", stdin=_dimacs(CYCLE_EXITS_ROWS))
    assert code == EXIT_OK
    assert out.splitlines() == ["ies: 2 4 5 6 7", "ies: 3 4 5 6 7", "ies: 1 3 6 7"]


def test_oracle_equivalence(cli, tmp_path):
    other = tmp_path / "other.cnf"
    other.write_text("p cnf 3 2\n-1 2 0\n-2 3 0\n", encoding="utf-8")
    code, out, _ = cli("oracle", "equivalent", "--other", str(other))
    assert (code, out) == (EXIT_OK, "yes\n")
    assert cli("oracle", "in-some")[0] == EXIT_USAGE


def test_gen_writes_sidecar_and_dimacs(cli):
    code, out, _ = cli("gen", "presence-3sat", "--seed", "5")
    assert code == EXIT_OK
    first, rest = out.split("\n", 1)
    assert first.startswith("c sidecar ")
    sidecar = json.loads(first[len("c sidecar ") :])
    assert sidecar["reduction"] == "presence-3sat"
    formula = read_dimacs(rest).formula
    assert formula.clause(sidecar["focus"]).to_ints() == (-sidecar["gadget"]["l1"], sidecar["gadget"]["l2"])


def test_gen_json_and_sidecar_file(cli, tmp_path):
    code, out, _ = cli("gen", "horn-vertex-cover", "--format", "json", "--seed", "2")
    assert code == EXIT_OK
    assert json.loads(out)["reduction"] == "horn-vertex-cover"

    target = tmp_path / "sidecar.json"
    code, out, _ = cli("gen", "size-strongly-connected", "--sidecar", str(target), "--nodes", "3")
    assert code == EXIT_OK
    assert out.startswith("p cnf")
    assert json.loads(target.read_text(encoding="utf-8"))["k"] % 2 == 0


def test_config_file_sets_the_search_cap(cli, tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text("search:\n  max_clauses: 1\n", encoding="utf-8")
    out, err = io.StringIO(), io.StringIO()
    code = run(["ies", "--config", str(config)], io.StringIO(_dimacs(CYCLE_EXITS_ROWS)), out, err)
    assert code == EXIT_EXHAUSTED


def test_invalid_config_is_a_usage_error(tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text("logging:\n  level: LOUD\n", encoding="utf-8")
    err = io.StringIO()
    code = run(["classify", "--config", str(config)], io.StringIO(TRIANGLE), io.StringIO(), err)
    assert code == EXIT_USAGE
    assert "invalid config" in err.getvalue()


def test_verbose_logging_carries_event_fields(cli):
    code, _, err = cli("classify", "-vv")
    assert code == EXIT_OK
    lines = err.splitlines()
    assert "INFO clausetrim.cli cli.run clauses=3 command=classify variables=3" in lines
    assert any(line.startswith("DEBUG clausetrim.cli cli.config") and "origin=cli" in line for line in lines)


def test_internal_errors_do_not_read_as_a_false_answer(cli, monkeypatch):
    def broken(*args, **kwargs):
        raise cli_main.ClauseTrimError("truth tables reject the subset [1]")

    monkeypatch.setattr(cli_main, "classify", broken)
    code, out, err = cli("classify")
    assert code == EXIT_INTERNAL
    assert code != EXIT_FALSE
    assert out == ""
    assert "error: truth tables reject the subset [1]" in err.splitlines()
