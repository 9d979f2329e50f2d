import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from semikit.cli import CATALOG_SCHEMA, main
from semikit.specfile import SpecParseError, parse_spec

SPECS = Path(__file__).resolve().parent.parent / "specs"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, text, name="spec.json"):
    p = tmp_path / name
    p.write_text(text)
    return p


@pytest.mark.parametrize("spec, order", [("d60", 60), ("g189", 189), ("g42", 42), ("g42_product", 42), ("gd15", 30), ("q12_words", 12)])
def test_build_orders(capsys, spec, order):
    code, out, _ = run(capsys, "build", SPECS / f"{spec}.json", "--json")
    assert code == 0
    assert json.loads(out)["order"] == order


def test_build_text_summary(capsys):
    code, out, _ = run(capsys, "build", SPECS / "d12.json")
    assert code == 0
    assert "order:      12" in out and "label:      D12" in out


def test_decompose_external_d60(capsys):
    code, out, _ = run(capsys, "decompose", SPECS / "d60.json", "--external")
    assert code == 0
    assert set(out.split("\n")) - {""} == {
        "Z30 x| Z2", "Z6 x| D10", "Z10 x| D6", "Z15 x| Z2^2", "Z3 x| D20", "Z5 x| D12", "D30 x| Z2", "D30 x Z2",
    }


@pytest.mark.parametrize("spec", ["d60", "z7", "q8", "s4", "g24"])
@pytest.mark.parametrize("mode", ["--internal", "--external"])
def test_decompose_json_schema_and_determinism(capsys, spec, mode):
    code, first, _ = run(capsys, "decompose", SPECS / f"{spec}.json", mode, "--json")
    assert code == 0
    doc = json.loads(first)
    jsonschema.validate(doc, CATALOG_SCHEMA)
    _, second, _ = run(capsys, "decompose", SPECS / f"{spec}.json", mode, "--json")
    assert first == second


def test_decompose_trivial_records_flagged(capsys):
    _, out, _ = run(capsys, "decompose", SPECS / "z7.json", "--internal", "--json")
    records = json.loads(out)["records"]
    assert len(records) == 2 and all(r.get("trivial") for r in records)
    _, out, _ = run(capsys, "decompose", SPECS / "q8.json", "--internal", "--json")
    assert all(r.get("trivial") for r in json.loads(out)["records"])


def test_decompose_generators_are_cycles(capsys):
    _, out, _ = run(capsys, "decompose", SPECS / "s4.json", "--json")
    gens = [g for r in json.loads(out)["records"] for g in r["normal"]["generators"]]
    assert gens and all(g.startswith("(") for g in gens)


@pytest.mark.parametrize("spec, degree", [("d12", 5), ("d24", 7), ("z30", 10), ("q8", 8)])
def test_mu(capsys, spec, degree):
    code, out, _ = run(capsys, "mu", SPECS / f"{spec}.json", "--json", "--witness")
    assert code == 0
    doc = json.loads(out)
    assert doc["degree"] == degree
    assert doc["witness"]


def test_mu_witness_text(capsys):
    _, out, _ = run(capsys, "mu", SPECS / "d12.json", "--witness")
    assert out.splitlines() == ["mu = 5 (formula)", "  (1,2)(3,4,5)", "  (4,5)"]


def test_iso(capsys):
    code, out, _ = run(capsys, "iso", SPECS / "g42.json", SPECS / "g42_product.json")
    assert code == 0 and out.startswith("isomorphic")
    code, out, _ = run(capsys, "iso", SPECS / "gd15.json", SPECS / "g30_perm.json")
    assert out.startswith("isomorphic")
    code, out, _ = run(capsys, "iso", SPECS / "d12.json", SPECS / "z30.json")
    assert code == 0 and out.strip() == "non-isomorphic (separated by order)"


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "props")
    assert code == 0 and "3/3 checks passed" in out
    code, out, _ = run(capsys, "verify", "dihedral", "--max-n", "8")
    assert code == 0 and "6/6 checks passed" in out
    code, out, _ = run(capsys, "verify", "mu", "--max-n", "10")
    assert code == 0 and "8/8 checks passed" in out


def test_verify_reports_failures(capsys, monkeypatch):
    import semikit.verify as V

    def broken(max_n=None):
        yield V.Check("always fails", False, "counterexample n=3")

    monkeypatch.setitem(V.SUITES, "props", broken)
    code, out, _ = run(capsys, "verify", "props")
    assert code == 1
    assert "FAIL  always fails  counterexample n=3" in out


def test_exit_code_parse_error(capsys, tmp_path):
    p = write(tmp_path, '{"specver": 1,\n "group": {"cylic": 7}}')
    code, _, err = run(capsys, "build", p)
    assert code == 2
    assert "line 2, column 11" in err
    p = write(tmp_path, '{"specver": 1,\n  "group": ')
    code, _, err = run(capsys, "build", p)
    assert code == 2 and "line 2" in err
    code, _, _ = run(capsys, "build", tmp_path / "missing.json")
    assert code == 2


def test_exit_code_validation_error(capsys, tmp_path):
    p = write(tmp_path, json.dumps({"specver": 1, "group": {"semidirect": {"base": {"cyclic": 7}, "ext": {"cyclic": 2}, "twist": [3]}}}))
    code, _, err = run(capsys, "build", p)
    assert code == 3 and "not a homomorphism" in err
    p = write(tmp_path, json.dumps({"specver": 1, "group": {"semidirect": {"base": {"cyclic": 6}, "ext": {"cyclic": 2}, "twist": [["g1^2"]]}}}))
    code, _, err = run(capsys, "build", p)
    assert code == 3


def test_exit_code_limit(capsys, tmp_path):
    p = write(tmp_path, json.dumps({"specver": 1, "group": {"dihedral": 40}}))
    code, _, err = run(capsys, "decompose", p, "--limit", "50")
    assert code == 4 and "limit" in err
    code, _, _ = run(capsys, "mu", write(tmp_path, json.dumps({"specver": 1, "group": {"symmetric": 6}}), "s6.json"))
    assert code == 4


def test_env_limit(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SEMIKIT_LIMIT", "10")
    code, _, _ = run(capsys, "decompose", SPECS / "d12.json")
    assert code == 4


def test_word_twist_parsing():
    built = parse_spec(json.dumps({"specver": 1, "group": {"semidirect": {"base": {"direct": [{"cyclic": 3}, {"cyclic": 5}]}, "ext": {"cyclic": 2}, "twist": [["g1^-1", "g2 g2 g2 g2"]]}}}))
    assert built.group.order == 30
    with pytest.raises(SpecParseError):
        parse_spec('{"specver": 2, "group": {"cyclic": 3}}')
    with pytest.raises(SpecParseError):
        parse_spec('{"specver": 1, "group": {"cyclic": 0}}')


def test_console_script_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "semikit.cli", "mu", str(SPECS / "d24.json")], capture_output=True, text=True, check=False
    )
    assert out.returncode == 0
    assert out.stdout.strip() == "mu = 7 (formula)"
