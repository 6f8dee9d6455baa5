import json
import subprocess
import sys

import pytest

from periodic_kl.cli import main
from periodic_kl.laurent import LaurentPoly


def run_cli(args, tmp_path=None, name="out"):
    """Run main() capturing the output file; returns (exit_code, bytes)."""
    path = None
    if tmp_path is not None:
        path = tmp_path / name
        args = list(args) + ["-o", str(path)]
    code = main(list(args))
    data = path.read_bytes() if path is not None else b""
    return code, data


BASE_A1 = ["--type", "A", "--rank", "1", "--l", "3"]


def test_blocks_json(tmp_path):
    code, data = run_cli(["blocks", *BASE_A1], tmp_path)
    assert code == 0
    payload = json.loads(data)
    assert len(payload["blocks"]) == 4
    regular = [b for b in payload["blocks"] if b["regular"]]
    assert len(regular) == 2
    walls = sorted(tuple(b["walls"]) for b in payload["blocks"] if not b["regular"])
    assert walls == [("s0",), ("s1",)]


def test_blocks_formats(tmp_path):
    code, text = run_cli(["blocks", *BASE_A1, "--format", "text"], tmp_path, "t.txt")
    assert code == 0 and len(text.splitlines()) == 4
    code, csv_data = run_cli(["blocks", *BASE_A1, "--format", "csv"], tmp_path, "t.csv")
    assert code == 0
    assert csv_data.splitlines()[0] == b"representative,walls,regular,stabilizer_generators"


def test_determinism_byte_identical(tmp_path):
    args = ["table", "p", *BASE_A1, "--height", "2"]
    _, first = run_cli(args, tmp_path, "a.json")
    _, second = run_cli(args, tmp_path, "b.json")
    assert first == second
    args2 = ["blocks", *BASE_A1]
    _, b1 = run_cli(args2, tmp_path, "c.json")
    _, b2 = run_cli(args2, tmp_path, "d.json")
    assert b1 == b2


def test_table_json_round_trip(tmp_path, a1):
    code, data = run_cli(["table", "p", *BASE_A1, "--height", "2"], tmp_path)
    assert code == 0
    payload = json.loads(data)
    W, M = a1.group, a1.module
    assert payload["omitted_entries_are"] == "zero"
    seen = set()
    for entry in payload["entries"]:
        y = W.parse_element(entry["y"])
        x = W.parse_element(entry["x"])
        poly = LaurentPoly.from_json(entry["polynomial"])
        assert M.p_polynomial(y, x) == poly
        seen.add((entry["y"], entry["x"]))
    # everything not listed is zero
    for xs in payload["elements"]:
        for ys in payload["elements"]:
            if (ys, xs) not in seen:
                assert M.p_polynomial(W.parse_element(ys), W.parse_element(xs)).is_zero()


def test_mult_diagonal(tmp_path):
    code, data = run_cli(
        ["mult", "simple-in-verma", *BASE_A1, "--x", "t(0)*w[]", "--y", "t(0)*w[]", "--format", "text"],
        tmp_path,
        "m.txt",
    )
    assert code == 0
    assert data.strip() == b"1"


def test_mult_truncation(tmp_path):
    code, data = run_cli(
        ["mult", "verma-in-projective", *BASE_A1, "--x", "t(0)*w[]", "--y", "t(0)*w[]", "--nu", "2"],
        tmp_path,
    )
    assert code == 0
    assert json.loads(data)["value"] == {"0": 1}
    code, data = run_cli(
        ["mult", "verma-in-projective", *BASE_A1, "--x", "t(0)*w[]", "--y", "t(0)*w[]", "--nu", "-4"],
        tmp_path,
    )
    assert code == 0
    assert json.loads(data)["value"] == {}


def test_hecke_subcommands(tmp_path):
    code, data = run_cli(["hecke", "kl", *BASE_A1, "--x", "t(0)*w[1]"], tmp_path)
    assert code == 0
    payload = json.loads(data)
    assert payload["terms"] == [
        {"element": "t(0)*w[]", "polynomial": {"1": 1}},
        {"element": "t(0)*w[1]", "polynomial": {"0": 1}},
    ]
    code, data = run_cli(["hecke", "mul", *BASE_A1, "--x", "t(0)*w[1]", "--y", "t(0)*w[1]"], tmp_path)
    assert code == 0
    payload = json.loads(data)
    assert {"element": "t(0)*w[]", "polynomial": {"0": 1}} in payload["terms"]
    code, data = run_cli(["hecke", "bar", *BASE_A1, "--x", "t(0)*w[1]"], tmp_path)
    assert code == 0


def test_orders_hasse(tmp_path):
    code, data = run_cli(["orders", "hasse", *BASE_A1, "--height", "1", "--coset", "0"], tmp_path)
    assert code == 0
    payload = json.loads(data)
    assert payload["edges"] == [["t(0)*w[1]", "t(0)*w[]"]]


def test_selfcheck_passes(tmp_path):
    code, data = run_cli(["selfcheck", *BASE_A1, "--height", "2", "--format", "text"], tmp_path, "s.txt")
    assert code == 0
    assert all(line.startswith(b"ok") for line in data.splitlines())


def test_usage_errors():
    assert main(["blocks", "--type", "Z", "--rank", "1", "--l", "3"]) == 2
    assert main(["blocks", "--type", "A", "--rank", "1", "--l", "4"]) == 2
    assert main(["mult", "verma-in-projective", *BASE_A1, "--x", "t(0)*w[]", "--y", "t(0)*w[]"]) == 2
    assert main(["mult", "simple-in-verma", *BASE_A1, "--x", "nonsense", "--y", "t(0)*w[]"]) == 2
    assert main(["table", "p", *BASE_A1, "--height", "-1"]) == 2
    assert main(["blocks", *BASE_A1, "--jobs", "0"]) == 2


def test_force_for_warnings(tmp_path):
    # l = 15 is admissible but not a prime power: requires --force
    args = ["blocks", "--type", "A", "--rank", "1", "--l", "15"]
    assert main(args + ["-o", str(tmp_path / "x.json")]) == 2
    assert main(args + ["--force", "-o", str(tmp_path / "y.json")]) == 0


def test_resource_exit_code(monkeypatch, tmp_path):
    from periodic_kl import periodic
    from periodic_kl.hecke import ResourceError

    def boom(self, window):
        raise ResourceError("synthetic")

    monkeypatch.setattr(periodic.PeriodicModule, "inversion_report", boom)
    code = main(["selfcheck", *BASE_A1, "--height", "1", "-o", str(tmp_path / "z.json")])
    assert code == 3


def test_internal_failure_exit_code(monkeypatch, tmp_path):
    from periodic_kl import periodic

    def bad(self, window):
        return [(None, None, None)]

    monkeypatch.setattr(periodic.PeriodicModule, "inversion_report", bad)
    code = main(["selfcheck", *BASE_A1, "--height", "1", "-o", str(tmp_path / "z.json")])
    assert code == 4


def test_cache_round_trip(tmp_path):
    cache = tmp_path / "cache"
    args = ["table", "p", *BASE_A1, "--height", "2", "--cache-dir", str(cache)]
    _, first = run_cli(args, tmp_path, "a.json")
    files = list(cache.iterdir())
    assert len(files) == 1 and files[0].name.startswith("classes-A1-l3-v")
    _, second = run_cli(args, tmp_path, "b.json")
    assert first == second


def test_console_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "periodic_kl.cli", "blocks", *BASE_A1],
        capture_output=True,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["l"] == 3
