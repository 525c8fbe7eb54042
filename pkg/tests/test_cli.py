import json

import pytest

from symlim.cli import run
from symlim.engine import system_to_json
from symlim.glpoly import gl_system
from symlim.partitions import Partition
from symlim.symfunc import SymFunc
from symlim.symring import TruncatedSymElem

P = Partition


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestLr:
    def test_text(self, capsys):
        code, out, _ = invoke(capsys, "lr", "1", "1")
        assert code == 0
        assert out == "s[2] + s[1,1]\n"

    def test_json_roundtrips(self, capsys):
        code, out, _ = invoke(capsys, "lr", "2,1", "2,1", "--format", "json")
        assert code == 0
        parsed = SymFunc.from_json(json.loads(out))
        assert parsed.terms[P((3, 2, 1))] == 2

    def test_unit(self, capsys):
        code, out, _ = invoke(capsys, "lr", "0", "3,1")
        assert code == 0 and out == "s[3,1]\n"

    def test_bad_partition_is_usage_error(self, capsys):
        code, _, err = invoke(capsys, "lr", "1,2", "1")
        assert code == 2 and "error" in err


class TestKostka:
    def test_example(self, capsys):
        code, out, _ = invoke(capsys, "kostka", "2,1", "1,1,1")
        assert code == 0 and out == "2\n"

    def test_zero(self, capsys):
        code, out, _ = invoke(capsys, "kostka", "1,1", "2")
        assert code == 0 and out == "0\n"


class TestTruncate:
    def test_kills_tall_label(self, tmp_path, capsys):
        path = tmp_path / "elem.json"
        elem = TruncatedSymElem(2, "schur", {P((1, 1)): 1})
        path.write_text(json.dumps(elem.to_json()))
        code, out, _ = invoke(capsys, "truncate", "--n", "1", str(path))
        assert code == 0 and out == "0\n"

    def test_symfunc_input(self, tmp_path, capsys):
        path = tmp_path / "f.json"
        f = SymFunc("schur", {P((2, 1)): 2, P((1, 1, 1)): 1})
        path.write_text(json.dumps(f.to_json()))
        code, out, _ = invoke(capsys, "truncate", "--n", "2", str(path), "--format", "json")
        assert code == 0
        assert TruncatedSymElem.from_json(json.loads(out)) == f.truncate_to(2)

    def test_cannot_grow(self, tmp_path, capsys):
        path = tmp_path / "elem.json"
        path.write_text(json.dumps(TruncatedSymElem.zero(1).to_json()))
        code, _, err = invoke(capsys, "truncate", "--n", "3", str(path))
        assert code == 1 and "error" in err

    def test_malformed_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        code, _, err = invoke(capsys, "truncate", "--n", "1", str(path))
        assert code == 2 and err.count("\n") == 1


class TestLift:
    def test_reconstructs(self, tmp_path, capsys):
        f = SymFunc("schur", {P((2, 1)): 1})
        prefix = [f.truncate_to(n).to_json() for n in range(5)]
        path = tmp_path / "seq.json"
        path.write_text(json.dumps({"prefix": prefix}))
        code, out, _ = invoke(capsys, "lift", "--bound", "3", "--provider", str(path),
                              "--format", "json")
        assert code == 0
        assert SymFunc.from_json(json.loads(out)) == f

    def test_short_prefix(self, tmp_path, capsys):
        path = tmp_path / "seq.json"
        path.write_text(json.dumps({"prefix": []}))
        code, _, err = invoke(capsys, "lift", "--bound", "2", "--provider", str(path))
        assert code == 1 and "error" in err

    def test_incompatible_prefix(self, tmp_path, capsys):
        prefix = [TruncatedSymElem.zero(0).to_json(),
                  TruncatedSymElem(1, "schur", {P((1,)): 1}).to_json(),
                  TruncatedSymElem.zero(2).to_json()]
        path = tmp_path / "seq.json"
        path.write_text(json.dumps({"prefix": prefix}))
        code, _, err = invoke(capsys, "lift", "--bound", "1", "--provider", str(path))
        assert code == 1 and "incompatible" in err


class TestLimitSimples:
    def test_text_table(self, capsys):
        code, out, _ = invoke(capsys, "limit-simples", "--level", "1", "--horizon", "3")
        assert code == 0
        assert out.splitlines() == ["0", "1", "2", "3"]

    def test_json(self, capsys):
        code, out, _ = invoke(capsys, "limit-simples", "--level", "2", "--horizon", "4",
                              "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["anchor_index"] == 2
        assert [2, 2] in data["labels"]

    def test_unknown_system(self, capsys):
        code, _, err = invoke(capsys, "limit-simples", "--system", "nope",
                              "--level", "1", "--horizon", "3")
        assert code == 1 and "error" in err


class TestCheckSystem:
    def test_gl_window(self, tmp_path, capsys):
        path = tmp_path / "system.json"
        path.write_text(json.dumps(system_to_json(gl_system(6), 2, 6)))
        code, out, _ = invoke(capsys, "check-system", str(path), "--kmax", "2",
                              "--horizon", "6", "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert [level["n_injective"] for level in report["levels"]] == [0, 1, 2]

    def test_text_format(self, tmp_path, capsys):
        path = tmp_path / "system.json"
        path.write_text(json.dumps(system_to_json(gl_system(4), 1, 4)))
        code, out, _ = invoke(capsys, "check-system", str(path), "--kmax", "1",
                              "--horizon", "4")
        assert code == 0 and "condition2=ok N=1" in out


class TestCharacter:
    def test_finite_floor(self, tmp_path, capsys):
        path = tmp_path / "obj.json"
        path.write_text(json.dumps({"n": 3, "mult": [{"partition": [2, 1], "m": 3}]}))
        code, out, _ = invoke(capsys, "character", str(path))
        assert code == 0 and out == "3*s[2,1]\n"

    def test_infinite_floor(self, tmp_path, capsys):
        path = tmp_path / "obj.json"
        path.write_text(json.dumps({"mult": [{"partition": [2, 2], "m": 1}]}))
        code, out, _ = invoke(capsys, "character", str(path), "--format", "json")
        assert code == 0
        assert SymFunc.from_json(json.loads(out)) == SymFunc("schur", {P((2, 2)): 1})


class TestVerifySquare:
    def test_finite_passes(self, tmp_path, capsys):
        path = tmp_path / "obj.json"
        path.write_text(json.dumps({"n": 3, "mult": [{"partition": [2, 1], "m": 2},
                                                     {"partition": [1, 1, 1], "m": 1}]}))
        code, out, _ = invoke(capsys, "verify-square", str(path))
        assert code == 0 and out == "PASS\n"

    def test_infty_needs_n(self, tmp_path, capsys):
        path = tmp_path / "obj.json"
        path.write_text(json.dumps({"mult": [{"partition": [2], "m": 1}]}))
        code, _, err = invoke(capsys, "verify-square", str(path))
        assert code == 2 and "required" in err

    def test_infty_with_n(self, tmp_path, capsys):
        path = tmp_path / "obj.json"
        path.write_text(json.dumps({"mult": [{"partition": [3, 1], "m": 2}]}))
        code, out, _ = invoke(capsys, "verify-square", str(path), "--n", "2",
                              "--format", "json")
        assert code == 0 and json.loads(out) == {"pass": True}


class TestDeterminism:
    def test_byte_identical_runs(self, capsys):
        runs = []
        for _ in range(2):
            code, out, _ = invoke(capsys, "lr", "3,2", "2,1", "--format", "json")
            assert code == 0
            runs.append(out)
        assert runs[0] == runs[1]

    def test_usage_error_exit_code(self, capsys):
        assert invoke(capsys, "lr", "1")[0] == 2
        assert invoke(capsys, "no-such-command")[0] == 2
