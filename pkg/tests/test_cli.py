"""Driver behavior: exit codes, text output, JSON stability, and the
frozen report schema."""

import json
import subprocess
import sys
from importlib import resources

import pytest

from chowkit.cli import Report, main, parse_g_spec


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- a small validator for the draft-07 subset the schema uses --

def _resolve(schema, ref):
    node = schema
    for part in ref.lstrip("#/").split("/"):
        node = node[part]
    return node


def _check(schema, node, value, path="$"):
    if "$ref" in node:
        return _check(schema, _resolve(schema, node["$ref"]), value, path)
    if "oneOf" in node:
        hits = 0
        for option in node["oneOf"]:
            try:
                _check(schema, option, value, path)
                hits += 1
            except AssertionError:
                pass
        assert hits == 1, f"{path}: matched {hits} oneOf branches"
        return
    if "enum" in node:
        assert value in node["enum"], f"{path}: {value!r} not in enum"
        return
    kind = node.get("type")
    if kind == "object":
        assert isinstance(value, dict), f"{path}: expected object"
        for key in node.get("required", ()):
            assert key in value, f"{path}: missing {key}"
        props = node.get("properties", {})
        if node.get("additionalProperties") is False:
            extras = set(value) - set(props)
            assert not extras, f"{path}: unexpected keys {extras}"
        for key, sub in props.items():
            if key in value:
                _check(schema, sub, value[key], f"{path}.{key}")
    elif kind == "array":
        assert isinstance(value, list), f"{path}: expected array"
        for i, item in enumerate(value):
            _check(schema, node["items"], item, f"{path}[{i}]")
    elif kind == "string":
        assert isinstance(value, str), f"{path}: expected string"
    elif kind == "integer":
        assert isinstance(value, int) and not isinstance(value, bool), \
            f"{path}: expected integer"
        if "minimum" in node:
            assert value >= node["minimum"], f"{path}: below minimum"
    elif kind == "boolean":
        assert isinstance(value, bool), f"{path}: expected boolean"
    elif kind == "null":
        assert value is None, f"{path}: expected null"
    else:
        raise AssertionError(f"{path}: unhandled schema node {node}")


@pytest.fixture(scope="module")
def schema():
    text = (resources.files("chowkit") / "report-schema.json").read_text()
    return json.loads(text)


def validate_report(schema, text):
    _check(schema, schema, json.loads(text))


class TestGSpec:
    def test_forms(self):
        assert parse_g_spec("symbolic") is None
        assert parse_g_spec("4") == [4]
        assert parse_g_spec("0,2,2,1") == [0, 2, 1]
        assert parse_g_spec("3..6") == [3, 4, 5, 6]
        assert parse_g_spec("0,10..12") == [0, 10, 11, 12]

    def test_rejects(self):
        for bad in ("-1", "5..3", "", "1,,2", "x"):
            with pytest.raises(ValueError):
                parse_g_spec(bad)


class TestVerifyCommand:
    def test_symbolic_all(self, capsys):
        code, out, err = run(capsys, "verify", "--g", "symbolic",
                             "--lemma", "all")
        assert code == 0
        lines = out.splitlines()
        assert sum(1 for l in lines if " pass " in l) == 9
        assert sum(1 for l in lines if l.startswith("chain ")) == 6
        assert lines[-1] == "overall: PASS"

    def test_single_lemma_sampled(self, capsys):
        code, out, _ = run(capsys, "verify", "--g", "0..3",
                           "--lemma", "REL-21-NODE")
        assert code == 0
        assert out.count("REL-21-NODE") == 4
        assert "chain" not in out

    def test_unknown_lemma_exits_2(self, capsys):
        code, out, err = run(capsys, "verify", "--lemma", "REL-NOPE")
        assert code == 2
        assert "unknown lemma" in err
        assert out == ""

    def test_bad_g_exits_2(self, capsys):
        code, _, err = run(capsys, "verify", "--g", "-2")
        assert code == 2
        assert "bad --g" in err

    def test_mismatch_exits_1(self, capsys, monkeypatch):
        import chowkit.verify as verify_mod
        from chowkit.verify import LemmaId
        broken = dict(verify_mod.EXPECTED)
        broken[LemmaId.REL_21_TRIPLE] = "zeta_p"
        monkeypatch.setattr(verify_mod, "EXPECTED", broken)
        code, out, _ = run(capsys, "verify", "--lemma", "REL-21-TRIPLE")
        assert code == 1
        assert "FAIL" in out

    def test_json_report(self, capsys, schema):
        code, out, _ = run(capsys, "verify", "--g", "symbolic",
                           "--format", "json")
        assert code == 0
        validate_report(schema, out)
        payload = json.loads(out)
        assert list(payload) == ["tool-version", "mode", "g-values",
                                 "verdicts", "chain", "strata",
                                 "determinant", "overall-pass"]
        assert payload["mode"] == "symbolic"
        assert len(payload["verdicts"]) == 9
        assert payload["chain"]["tt-class"] == \
            "-zeta_p - g*z - a1 + 3*a2p"
        assert payload["overall-pass"] is True

    def test_json_byte_stable_and_round_trip(self, capsys):
        _, first, _ = run(capsys, "verify", "--g", "0,4",
                          "--lemma", "REL-3-TT", "--format", "json")
        _, second, _ = run(capsys, "verify", "--g", "0,4",
                           "--lemma", "REL-3-TT", "--format", "json")
        assert first == second
        report = Report.from_json(first)
        assert report.to_json() + "\n" == first
        assert Report.from_json(report.to_json()) == report
        assert report.mode == "sampled"
        assert report.g_values == [0, 4]
        assert report.chain is None


class TestStrataCommand:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "strata", "--g", "4")
        assert code == 0
        assert "total: 18" in out
        assert "D7 (2,1): H(3;2;(2,1)) x H(3;1;(2,1)) [trivial]" in out

    def test_oracle(self, capsys):
        code, out, _ = run(capsys, "strata", "--g", "3", "--oracle")
        assert code == 0
        assert "oracle: agrees" in out

    def test_oracle_guard_exits_2(self, capsys):
        code, _, err = run(capsys, "strata", "--g", "31", "--oracle")
        assert code == 2
        assert "capped" in err

    def test_negative_genus_exits_2(self, capsys):
        code, _, err = run(capsys, "strata", "--g", "-1")
        assert code == 2

    def test_json(self, capsys, schema):
        code, out, _ = run(capsys, "strata", "--g", "0",
                           "--format", "json")
        assert code == 0
        validate_report(schema, out)
        payload = json.loads(out)
        block = payload["strata"]
        assert block["genus"] == 0
        assert block["count"] == 2
        assert block["oracle-checked"] is False
        assert block["oracle-agrees"] is None
        assert block["strata"][0]["display"] == \
            "D2 (3): H(3;0;(3)) x H(3;0;(3)) [Z2]"


class TestDetCommand:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "det")
        assert code == 0
        assert "determinant in basis (zeta_p, z, a1, a2p): " \
               "-72*g**2-108*g-36" in out
        assert "no roots at integers g >= 0" in out
        assert "certified rank: 4" in out

    def test_json(self, capsys, schema):
        code, out, _ = run(capsys, "det", "--format", "json")
        assert code == 0
        validate_report(schema, out)
        payload = json.loads(out)
        d = payload["determinant"]
        assert d["poly"] == "-72*g**2-108*g-36"
        assert d["nonneg-integer-roots"] == []
        assert d["rank"] == 4


class TestJetCommand:
    def test_off_directrix(self, capsys):
        code, out, _ = run(capsys, "jet", "--m", "2", "--n", "4")
        assert code == 0
        assert "matrix 6x16, rank 6" in out
        assert "inside the globally generated locus" in out

    def test_on_directrix_boundary(self, capsys):
        code, out, _ = run(capsys, "jet", "--m", "2", "--n", "4",
                           "--p-directrix", "--q-directrix")
        assert code == 0
        assert "rank 5" in out

    def test_on_directrix_interior(self, capsys):
        code, out, _ = run(capsys, "jet", "--m", "3", "--n", "3",
                           "--p-directrix", "--q-directrix")
        assert code == 0
        assert "rank 6" in out

    def test_values_only(self, capsys):
        code, out, _ = run(capsys, "jet", "--m", "2", "--n", "4",
                           "--rows", "1p1q")
        assert code == 0
        assert "rank 2" in out

    def test_outside_locus(self, capsys):
        code, out, _ = run(capsys, "jet", "--m", "1", "--n", "5")
        assert code == 0
        assert "outside the globally generated locus" in out

    def test_malformed_rows_exits_2(self, capsys):
        for bad in ("bogus", "3p", "p3q", "0p3q", "3.5p2q"):
            code, _, err = run(capsys, "jet", "--m", "2", "--n", "4",
                               "--rows", bad)
            assert code == 2, bad

    def test_unnormalized_splitting_exits_2(self, capsys):
        code, _, err = run(capsys, "jet", "--m", "4", "--n", "2")
        assert code == 2


class TestParser:
    def test_usage_error_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--format", "yaml"])
        assert exc.value.code == 2

    def test_missing_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_module_entry_point(self):
        out = subprocess.run(
            [sys.executable, "-m", "chowkit", "--version"],
            capture_output=True, text=True)
        assert out.returncode == 0
        assert out.stdout.strip().startswith("chowkit ")
