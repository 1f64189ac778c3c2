import json
import subprocess
import sys
from pathlib import Path

from smc_kit import cli
from smc_kit.cli import (
    load_workspace,
    main,
    parse_workspace,
    serialize_workspace,
)

ROOT = Path(__file__).resolve().parent.parent
A2_WS = str(ROOT / "fixtures" / "a2.json")
TC_WS = str(ROOT / "fixtures" / "two_cycle.json")


def test_fixture_workspaces_parse():
    for path in (A2_WS, TC_WS):
        ws = load_workspace(path)
        assert ws.smcs
        for name, spec in ws.recollements.items():
            assert spec.validated


def test_round_trip_preserves_commands():
    doc = json.loads(Path(TC_WS).read_text())
    doc["commands"] = [["validate", "standard"], ["glue", "R", "xstd", "ystd"]]
    ws = parse_workspace(doc)
    assert serialize_workspace(ws)["commands"] == doc["commands"]


def test_round_trip():
    ws = load_workspace(TC_WS)
    doc = serialize_workspace(ws)
    ws2 = parse_workspace(doc)
    assert set(ws2.smcs) == set(ws.smcs)
    assert set(ws2.complexes) == set(ws.complexes)
    for name in ws.complexes:
        _, c1 = ws.complexes[name]
        _, c2 = ws2.complexes[name]
        assert c1.terms == c2.terms and c1.diffs == c2.diffs
    # serialize is stable
    assert serialize_workspace(ws2) == doc


def test_validate_command_exit_codes(capsys):
    assert main(["validate", TC_WS, "standard"]) == 0
    out = capsys.readouterr().out
    assert "pass" in out
    assert main(["validate", TC_WS, "naive_lower"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out
    assert main(["validate", TC_WS, "naive_upper"]) == 1


def test_validate_json_output(capsys):
    assert main(["--json", "validate", TC_WS, "standard"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["report"]["passed"] is True


def test_unknown_names_exit_2(capsys):
    assert main(["validate", TC_WS, "nosuch"]) == 2
    assert main(["glue", TC_WS, "nosuch", "xstd", "ystd"]) == 2


def test_malformed_differential_names_degree(tmp_path, capsys):
    doc = json.loads(Path(TC_WS).read_text())
    # beta then alpha*beta composes to a nonzero path, so d^2 != 0
    doc["complexes"]["bad"] = {
        "algebra": "A",
        "terms": {"0": ["2"], "1": ["1"], "2": ["2"]},
        "diffs": {"0": [["beta"]], "1": [["alpha"]]},
    }
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    assert main(["validate", str(p), "standard"]) == 2
    err = capsys.readouterr().err
    assert "d^2" in err and "degree" in err


def test_glue_command(capsys):
    assert main(["glue", A2_WS, "R", "xstd", "ystd"]) == 0
    out = capsys.readouterr().out
    assert "validation: pass" in out
    assert "iso to dual route: True" in out
    assert main(["--json", "glue", A2_WS, "R", "xstd", "ystd", "--dual"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["route"] == "dual"
    assert payload["validation"]["passed"] is True
    assert payload["iso_to_other_route"] is True


def test_mutate_command(capsys):
    assert main(["--json", "mutate", A2_WS, "glued_order", "0", "left"]) == 0
    payload = json.loads(capsys.readouterr().out)
    # {S2, S1} mutates to {S2[1], P1}: second object becomes the projective stalk
    terms = payload["objects"][1]["terms"]
    assert terms == {"0": ["1"]}


def test_mutate_force_required(tmp_path, capsys):
    doc = json.loads(Path(A2_WS).read_text())
    # S1 (+) S1[-1] as one explicit complex: it has a degree-one
    # self-extension, so mutation at it must be refused without force
    doc["complexes"] = {
        "nonrigid_obj": {
            "algebra": "A",
            "terms": {"-1": ["2"], "0": ["1", "2"], "1": ["1"]},
            "diffs": {"-1": [["a"], ["0"]], "0": [["0", "a"]]},
        }
    }
    doc["smcs"]["nonrigid"] = {"algebra": "A", "objects": ["nonrigid_obj"]}
    p = tmp_path / "ws.json"
    p.write_text(json.dumps(doc))
    assert main(["mutate", str(p), "nonrigid", "0", "left"]) == 1
    assert "force" in capsys.readouterr().err
    assert main(["mutate", str(p), "nonrigid", "0", "left", "--force"]) == 0


def test_order_command(capsys):
    assert main(["order", A2_WS, "standard", "glued_order"]) == 0
    out = capsys.readouterr().out
    assert "standard = glued_order" in out


def test_truncate_command(capsys):
    assert main(["--json", "truncate", TC_WS, "standard", "S1res"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["threshold"] == 1
    # S1res is the resolved simple: already in the aisle, nothing stripped
    assert payload["strip_log"] == []


def test_hom_command(capsys):
    assert main(["--json", "hom", TC_WS, "A", "simple:2", "proj:1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dims"].get("0") == 1


def test_degenerate_workspace_glue_passthrough(tmp_path, capsys):
    doc = json.loads(Path(A2_WS).read_text())
    doc["recollements"]["full"] = {"algebra": "A", "idempotents": ["1", "2"]}
    doc["smcs"]["xempty"] = {"algebra": "full.x", "objects": []}
    doc["smcs"]["yall"] = {"algebra": "full.y", "objects": ["simple:1", "simple:2"]}
    p = tmp_path / "deg.json"
    p.write_text(json.dumps(doc))
    assert main(["--json", "glue", str(p), "full", "xempty", "yall"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["objects"]) == 2
    assert payload["validation"]["passed"] is True


def test_paper_examples_command(capsys):
    assert main(["paper-examples"]) == 0
    out = capsys.readouterr().out
    assert "all checks passed" in out


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "smc_kit.cli", "--help"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "glue" in res.stdout
