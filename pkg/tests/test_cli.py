from __future__ import annotations

import json

import pytest

from ksrgroups import cli
from ksrgroups.character import make_character
from ksrgroups.rgroup import compute_rgroup
from ksrgroups.root_datum import build_root_datum, build_root_system


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_a1_half(capsys):
    code, out, _ = run(capsys, "compute", "--type", "A", "--rank", "1", "--lattice", "sc",
                       "--char", "1/2")
    assert code == 0 and "| R | Z/2 |" in out


def test_compute_g2_trivial_json(capsys):
    code, out, _ = run(capsys, "compute", "--type", "G", "--rank", "2", "--char", "1/5,2/5",
                       "--format", "json")
    assert code == 0 and json.loads(out)["R_structure"] == []


def test_compute_trivial_character(capsys):
    code, out, _ = run(capsys, "compute", "--type", "A2", "--char", "0,0", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["R_structure"] == [] and doc["W_circ_order"] == doc["W_chi_order"] == 6


def test_compute_is_thin_adapter(capsys):
    _, out, _ = run(capsys, "compute", "--type", "D4", "--char", "0,1/2,0,0", "--format", "json")
    d4 = build_root_datum(build_root_system("D4"))
    direct = compute_rgroup(d4, make_character(d4, "0,1/2,0,0"))
    assert out == cli.render_result(direct, "json") + "\n"


def test_compute_q_file_and_lattice_file(capsys, tmp_path):
    qf = tmp_path / "q.json"
    qf.write_text('{"all": false}')
    code, out, _ = run(capsys, "compute", "--type", "A1", "--char", "1/2", "--q", str(qf),
                       "--format", "json")
    assert code == 0 and json.loads(out)["R_structure"] == []
    lf = tmp_path / "lat.json"
    lf.write_text('{"generators": [[1, 0, 1], [0, 1, 0], [0, 0, 2]]}')
    code, out, _ = run(capsys, "compute", "--type", "A3", "--lattice", str(lf),
                       "--char", "1/2,0,1/2", "--format", "json")
    assert code == 0 and json.loads(out)["datum"] == "A3-int"
    lf.write_text('{"generators": [[1, 0, 0], [0, 2, 0], [0, 0, 1]]}')
    code, _, err = run(capsys, "compute", "--type", "A3", "--lattice", str(lf))
    assert code == 2 and "root lattice" in err


@pytest.mark.parametrize("argv", [
    ["compute", "--type", "Q", "--rank", "2"],
    ["compute", "--type", "A1", "--char", "1/2,1"],
    ["compute", "--type", "A1", "--char", "x"],
    ["compute", "--type", "A1", "--lattice", "nope"],
    ["compute", "--type", "A1", "--q", "/nonexistent.json"],
    ["verify", "transfer", "no-such-entry"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["compute", "--format", "xml"])
    assert exc.value.code == 2


def test_classify_examples(capsys):
    code, out, _ = run(capsys, "classify", "--type", "A", "--rank", "2",
                       "--max-denominator", "6", "--format", "json")
    assert code == 0 and json.loads(out)["attained"] == {"A2": ["Z/3"]}
    code, out, _ = run(capsys, "classify", "--type", "D4", "--max-denominator", "4",
                       "--format", "json")
    assert "Z/2 x Z/2" in json.loads(out)["attained"]["D4"]
    for t in ("B3", "E6", "F4"):
        code, out, _ = run(capsys, "classify", "--type", t, "--max-denominator", "1",
                           "--format", "json")
        assert code == 0 and json.loads(out)["attained"] == {t: []}


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "restriction", "gl2-sl2")
    assert code == 0 and "1 → 1 → Z/2 → Z/2 → 1" in out
    code, out, _ = run(capsys, "verify", "transfer", "sl1D-in-sl2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert [2] in [r["quotient"] for r in doc["reports"]]
    code, out, _ = run(capsys, "verify", "transfer", "identity-A2", "--max-denominator", "3")
    assert code == 0 and "overall: pass" in out


def test_verify_failure_exits_1(capsys, tmp_path, monkeypatch):
    from ksrgroups import rgroup
    real = rgroup.verify_restriction_sequence

    def broken(*a, **k):
        rep = real(*a, **k)
        return type(rep)(rep.character, rep.restricted, rep.r_chi, rep.r_flat, rep.hat,
                         rep.checks + (("forced", False, ""),))

    monkeypatch.setattr(cli, "verify_restriction_sequence", broken)
    code, out, _ = run(capsys, "verify", "restriction", "gl2-sl2")
    assert code == 1 and "FAIL" in out


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle", "--types", "A2,B2", "--max-denominator", "3")
    assert code == 0 and "mismatches: 0" in out
    code, out, _ = run(capsys, "oracle", "--types", "A1", "--max-denominator", "2",
                       "--format", "json")
    lines = [json.loads(s) for s in out.splitlines()]
    assert lines and all(r["agree"] for r in lines)


def test_atlas_deterministic_and_jobs_independent(capsys):
    _, a, _ = run(capsys, "atlas", "--sweep", "A1:4,B2:3", "--all-lattices")
    _, b, _ = run(capsys, "atlas", "--sweep", "A1:4,B2:3", "--all-lattices", "--jobs", "2")
    assert a == b and a.startswith("# R-group atlas")


def test_cache_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("RGROUP_CACHE_DIR", str(tmp_path))
    argv = ["compute", "--type", "A3", "--char", "1/2,0,1/2"]
    _, first, _ = run(capsys, *argv)
    assert len(list(tmp_path.iterdir())) == 1
    monkeypatch.setattr(cli, "compute_rgroup", None)  # a cache hit never recomputes
    code, second, _ = run(capsys, *argv)
    assert code == 0 and first == second
