import json
import subprocess
import sys

import pytest

from alcove_walks.cli import main
from alcove_walks.grid import DEFAULT_GRID, GridSpec, parse_grid, run_grid
from alcove_walks.errors import PreconditionError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def count_args(**kw):
    args = ["count"]
    for key, value in kw.items():
        args += [f"--{key.replace('_', '-')}", str(value)]
    return args


def test_count_all_methods(capsys):
    code, out, _ = run(
        capsys, *count_args(family="ctilde", n=1, m=3, steps="coord", eta=1, **{"lambda": 1}, k=2)
    )
    doc = json.loads(out)
    assert code == 0
    assert doc["results"] == {"reflection": "1", "dp": "1", "closed": "1"}
    assert doc["agree"] is True
    assert doc["eta"] == ["1"] and doc["m"] == "3"


def test_count_circle(capsys):
    code, out, _ = run(
        capsys, *count_args(family="circle", n=2, m=4, steps="forward", eta="1,0", **{"lambda": "2,1"}, k=2)
    )
    assert code == 0
    assert set(json.loads(out)["results"].values()) == {"1"}


def test_count_k0(capsys):
    code, out, _ = run(
        capsys, *count_args(family="btilde", n=2, m="5/2", steps="diag", eta="2,1", **{"lambda": "2,1"}, k=0)
    )
    assert code == 0
    assert set(json.loads(out)["results"].values()) == {"1"}


def test_count_round_trip(capsys):
    argv = count_args(family="dtilde", n=2, m=2, steps="coord", eta="1,0", **{"lambda": "1,0"}, k=6)
    _, out, _ = run(capsys, *argv)
    doc = json.loads(out)
    again = count_args(
        family=doc["family"],
        n=doc["n"],
        m=doc["m"],
        steps=doc["steps"],
        eta=",".join(doc["eta"]),
        **{"lambda": ",".join(doc["lambda"])},
        k=doc["k"],
    )
    _, out2, _ = run(capsys, *again)
    assert out2 == out
    assert doc["results"]["reflection"] == "16"


def test_count_unavailable_closed(capsys):
    code, out, _ = run(
        capsys,
        *count_args(family="btilde", n=2, m="5/2", steps="coord", eta="2,1", **{"lambda": "2,1"}, k=4),
    )
    doc = json.loads(out)
    assert code == 0 and doc["results"]["closed"] == "unavailable"
    assert doc["results"]["reflection"] == doc["results"]["dp"]


def test_count_single_method_and_zero_step(capsys):
    code, out, _ = run(
        capsys,
        *count_args(family="atilde", n=2, m=3, steps="coord", eta="1,0", **{"lambda": "1,0"}, k=2, method="dp"),
        "--zero-step",
    )
    doc = json.loads(out)
    assert code == 0 and list(doc["results"]) == ["dp"] and doc["zero_step"] is True


@pytest.mark.parametrize(
    "argv",
    [
        count_args(family="ctilde", n=2, m=3, steps="forward", eta="2,1", **{"lambda": "2,1"}, k=2),
        count_args(family="ctilde", n=2, m=3, steps="coord", eta="3,1", **{"lambda": "2,1"}, k=2),
        count_args(family="ctilde", n=2, steps="coord", eta="2,1", **{"lambda": "2,1"}, k=2),
        count_args(family="ctilde", n=2, m=3, steps="coord", eta="2", **{"lambda": "2,1"}, k=2),
    ],
)
def test_count_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["count", "--family", "e8", "--n", "1"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["count", *count_args(family="ctilde", n=1, m="1/3", steps="coord", eta=1, **{"lambda": 1}, k=1)[1:]])
    assert info.value.code == 2


def test_ruin_csv(capsys):
    code, out, _ = run(capsys, "ruin", "--N", "3", "--eta", "1", "--kmax", "3")
    assert code == 0
    head, tail = out.split("\n\n")
    rows = head.splitlines()
    assert rows[0] == "k,probability"
    assert rows[3] == "3,0.125"
    assert tail.splitlines()[0] == "lambda,probability"
    probs = [float(r.split(",")[1]) for r in rows[1:]] + [float(r.split(",")[1]) for r in tail.splitlines()[1:]]
    assert sum(probs) <= 1 + 1e-12


def test_ruin_json(capsys):
    code, out, _ = run(capsys, "ruin", "--N", "2", "--eta", "1", "--kmax", "1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["first_passage"][0] == {"k": 1, "probability": 0.5}
    assert "survival" in doc


def test_ruin_bad_eta(capsys):
    code, _, _ = run(capsys, "ruin", "--N", "3", "--eta", "3", "--kmax", "2")
    assert code == 2


def test_verify_empty_grid(tmp_path, capsys):
    grid = tmp_path / "empty.grid"
    grid.write_text("# nothing\n")
    code, out, _ = run(capsys, "verify", str(grid))
    assert code == 0 and "0 instances" in out


def test_verify_missing_grid(capsys):
    code, _, err = run(capsys, "verify", "/nonexistent/grid")
    assert code == 2 and "cannot read" in err


def test_verify_negative_control(tmp_path, capsys):
    grid = tmp_path / "bad.grid"
    grid.write_text("families = dtilde\nn = 2\nm = 2\nk = 0..4\nsteps = coord\ndtilde_fourth_constant = 2\n")
    code, out, _ = run(capsys, "verify", str(grid), "--failures-only")
    assert code == 3
    assert out.splitlines()[0].startswith("FAIL dtilde n=2 m=2")


def test_verify_small_grid_passes(tmp_path, capsys):
    grid = tmp_path / "small.grid"
    grid.write_text("families = ctilde, atilde, circle, atilde-hyperplane\nn = 1..2\nm = 2..3\nk = 0..4\n")
    code, out, _ = run(capsys, "verify", str(grid), "--jobs", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1].endswith("0 failed")
    assert all(line.startswith("PASS") for line in lines[:-1])


def test_verify_bad_grid_syntax(tmp_path, capsys):
    grid = tmp_path / "bad.grid"
    grid.write_text("families = ctilde\nsteps = hop\n")
    code, _, _ = run(capsys, "verify", str(grid))
    assert code == 2


def test_grid_parsing():
    spec = parse_grid("families = ctilde, circle  # comment\nn = 1..2, 4\nm = 2..3, 5/2\nk = 0..3\n")
    assert spec.families == ("ctilde", "circle")
    assert spec.n == (1, 2, 4)
    assert [str(m) for m in spec.m] == ["2", "5/2", "3"]
    assert spec.kmax == 3
    with pytest.raises(PreconditionError):
        parse_grid("mystery = 1\n")
    assert DEFAULT_GRID.kmax == 10


def test_grid_order_is_deterministic():
    spec = GridSpec(families=("btilde", "ctilde"), n=(1, 2), m=(2,), k=(0, 1, 2), steps=("diag",))
    serial = [o.line() for o in run_grid(spec)]
    parallel = [o.line() for o in run_grid(spec, jobs=2)]
    assert serial == parallel


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "alcove_walks", "ruin", "--N", "3", "--eta", "1", "--kmax", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "3,0.125" in proc.stdout
