import json
import subprocess
import sys
from pathlib import Path

import pytest

from sur.cli import run
from sur.core import enumerate_k_bicolorings

GOLDEN = Path(__file__).parent / "golden"

RECORD_FIELDS = {"command", "params", "outputs", "wall_time", "seed"}


def invoke(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def record(capsys, *argv):
    code, out, _ = invoke(capsys, *argv)
    rec = json.loads(out)
    assert set(rec) == RECORD_FIELDS
    return code, rec


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


class TestExamples:
    def test_star(self, capsys):
        code, rec = record(capsys, "construct", "--method", "star", "--n", "6")
        assert code == 0
        fam = rec["outputs"]["family"]
        assert fam["size"] == 5 and all(len(s) == 2 for s in fam["sets"])
        assert rec["outputs"]["certificate"]["valid"]

    def test_verify_uncovered(self, capsys, files):
        fam = files("f.json", json.dumps({"n": 4, "sets": [[1, 2]]}))
        bic = files("b.txt", "4\n+-+-\n++--\n")
        code, rec = record(capsys, "verify", "--family", fam, "--bicolorings", bic, "--delta", "0")
        assert code == 1
        cert = rec["outputs"]["certificate"]
        assert not cert["valid"]
        assert cert["uncovered"] == ["++--"]

    def test_bounds(self, capsys):
        code, rec = record(capsys, "bounds", "--n", "6", "--k", "3", "--r", "2")
        assert code == 0
        out = rec["outputs"]
        assert (out["a"], out["v"], out["combined_lower"]) == (12, 9, 2)
        assert out["lovasz_stein_upper"] == pytest.approx(5.8075, abs=1e-3)
        assert out["double_counting"] is True

    def test_bounds_infeasible(self, capsys):
        code, rec = record(capsys, "bounds", "--n", "6", "--k", "1", "--r", "4")
        assert code == 0
        assert rec["outputs"]["combined_lower"] == "INFEASIBLE"


class TestExitCodes:
    def test_unknown_subcommand(self, capsys):
        code, out, err = invoke(capsys, "frobnicate")
        assert code == 2 and out == "" and "usage" in err

    def test_unknown_method(self, capsys):
        assert invoke(capsys, "construct", "--method", "magic", "--n", "4")[0] == 2

    def test_missing_flag(self, capsys):
        code, _, err = invoke(capsys, "construct", "--method", "greedy-cover", "--n", "6")
        assert code == 2 and "--k" in err

    def test_precondition_is_domain_error(self, capsys):
        code, _, err = invoke(capsys, "construct", "--method", "dyadic", "--n", "6")
        assert code == 1 and "PreconditionError" in err

    def test_infeasible_is_domain_error(self, capsys):
        assert invoke(capsys, "construct", "--method", "greedy-cover", "--n", "6", "--k", "1", "--r", "4")[0] == 1

    def test_missing_file(self, capsys, tmp_path):
        code = invoke(capsys, "verify", "--family", str(tmp_path / "none"), "--bicolorings", str(tmp_path / "b"))[0]
        assert code == 1


CONSTRUCTIONS = [
    ["--method", "star", "--n", "5"],
    ["--method", "dyadic", "--n", "8"],
    ["--method", "window", "--n", "8"],
    ["--method", "edge-cover", "--n", "7"],
    ["--method", "greedy-cover", "--n", "7", "--k", "3", "--r", "4"],
    ["--method", "lift", "--n", "8", "--k", "3", "--r", "4"],
    ["--method", "sampled", "--n", "8", "--k", "4", "--r", "2", "--alpha", "0.5", "--seed", "3"],
]


def universe_for(args, files):
    opts = dict(zip(args[::2], args[1::2]))
    n = int(opts["--n"])
    method = opts["--method"]
    if method in ("star", "dyadic"):
        from sur.core import enumerate_nontrivial_bicolorings

        bic = enumerate_nontrivial_bicolorings(n)
    elif method == "window":
        bic = enumerate_k_bicolorings(n, n // 2)
    elif method == "edge-cover":
        bic = enumerate_k_bicolorings(n, 1)
    else:
        bic = enumerate_k_bicolorings(n, int(opts["--k"]))
    return files("u.txt", bic.to_text())


class TestRoundTrip:
    @pytest.mark.parametrize("args", CONSTRUCTIONS, ids=lambda a: a[1])
    def test_construct_then_verify(self, capsys, files, tmp_path, args):
        out = str(tmp_path / "fam.json")
        assert run(["construct", *args, "--out", out]) == 0
        code, rec = record(capsys, "verify", "--family", out, "--bicolorings", universe_for(args, files))
        assert code == 0 and rec["outputs"]["certificate"]["valid"]

    def test_hitting(self, capsys, files, tmp_path):
        bic = files("b.txt", "6\n++-+--\n-+-+-+\n+-----\n")
        out = str(tmp_path / "fam.json")
        assert run(["construct", "--method", "hitting", "--bicolorings", bic, "--out", out]) == 0
        assert record(capsys, "verify", "--family", out, "--bicolorings", bic)[0] == 0

    def test_biased_with_floor_delta(self, capsys, files, tmp_path):
        from sur.randomized import random_bounded_family

        bic = files("b.txt", random_bounded_family(40, 20, 4, seed=1).to_text())
        out = str(tmp_path / "fam.json")
        assert run(["construct", "--method", "biased", "--r", "8", "--d", "4", "--seed", "7", "--bicolorings", bic, "--out", out]) == 0
        rec = json.loads(Path(out).read_text())
        delta = rec["outputs"]["certificate"]["delta"]
        assert delta == 8  # floor(e*sqrt(8) + 4*8/40)
        assert record(capsys, "verify", "--family", out, "--bicolorings", bic, "--delta", str(delta))[0] == 0


class TestDeterminism:
    @pytest.mark.parametrize(
        "args",
        [
            ["construct", "--method", "sampled", "--n", "8", "--k", "4", "--r", "2", "--alpha", "0.5", "--seed", "11"],
            ["solve-exact", "--n", "5"],
        ],
    )
    def test_outputs_identical(self, capsys, args):
        first = record(capsys, *args)[1]
        second = record(capsys, *args)[1]
        assert json.dumps(first["outputs"]) == json.dumps(second["outputs"])
        assert first["seed"] == second["seed"]

    def test_seed_recorded(self, capsys):
        rec = record(capsys, "construct", "--method", "sampled", "--n", "6", "--k", "3", "--r", "2", "--alpha", "0.5", "--seed", "4")[1]
        assert rec["seed"] == 4 and rec["params"]["seed"] == 4
        assert rec["outputs"]["trace"]["seed"] == 4


GOLDEN_CASES = {
    "star6": ["construct", "--method", "star", "--n", "6"],
    "bounds632": ["bounds", "--n", "6", "--k", "3", "--r", "2"],
    "solve4": ["solve-exact", "--n", "4"],
    "table": ["table", "--n-min", "3", "--n-max", "5"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(capsys, name):
    rec = record(capsys, *GOLDEN_CASES[name])[1]
    del rec["wall_time"]
    rec["outputs"].pop("nodes", None)
    expected = json.loads((GOLDEN / f"{name}.json").read_text())
    assert rec == expected


def test_text_format(capsys):
    code, out, _ = invoke(capsys, "construct", "--method", "star", "--n", "4", "--format", "text")
    assert code == 0
    assert "command: construct" in out
    assert "  {1,2}" in out


def test_table_text(capsys):
    code, out, _ = invoke(capsys, "table", "--n-min", "3", "--n-max", "4", "--format", "text")
    assert code == 0
    assert out.splitlines()[0].split()[:4] == ["n", "k", "r", "gamma"]


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "sur.cli", "bounds", "--n", "6", "--k", "3", "--r", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["outputs"]["a"] == 12
