import json
import subprocess
import sys

import pytest

from compo_mbt.cli import main, parse_trace
from compo_mbt.errors import CompoMbtError
from compo_mbt.modelio import parse


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_trace():
    assert parse_trace("") == ()
    assert parse_trace("safe.obs.delta") == ("safe", "obs", "delta")
    with pytest.raises(CompoMbtError):
        parse_trace("a..b")


def test_validate(capsys, tmp_path):
    assert run(capsys, "validate", "parking.mbt")[0] == 0
    bad = tmp_path / "bad.mbt"
    bad.write_text("lts M { inputs; outputs; initial 0; 0 -> 1 : tau; 1 -> 0 : tau; }")
    code, out, _ = run(capsys, "validate", str(bad), "--json")
    assert code == 1
    assert json.loads(out)["models"]["M"] == ["τ-cycle {0,1}"]


def test_check_mutual_original(capsys):
    code, out, _ = run(capsys, "check-mutual", "parking.mbt::Sensor", "parking.mbt::Autopark", "--json")
    assert code == 1
    data = json.loads(out)
    assert data["status"] == "violated"
    assert data["verdicts"][1]["label"] == "safe"


def test_check_mutual_adapted(capsys):
    code, out, _ = run(capsys, "check-mutual", "parking_adapted.mbt::Sensor", "parking_adapted.mbt::Autopark")
    assert code == 0 and "mutually accepting" in out


def test_check_accepts_all_lists_beep(capsys):
    code, out, _ = run(capsys, "check-accepts", "parking.mbt::Autopark", "parking.mbt::Sensor", "--all")
    assert code == 1
    assert "safe.obs @ (B, 3): beep" in out


def test_utraces_empty_trace(capsys):
    assert run(capsys, "utraces", "composed.mbt::Sys", "--trace", "")[0] == 0
    assert run(capsys, "utraces", "sensor.mbt", "--trace", "off.obs")[0] == 1


def test_check_uioco(capsys):
    code, out, _ = run(capsys, "check-uioco", "--impl", "parking.mbt::SensorImpl", "--spec", "parking.mbt::Sensor")
    assert code == 0
    code, out, _ = run(capsys, "check-uioco", "--impl", "composed.mbt::SysImpl", "--spec",
                       "composed.mbt::SysAdapted", "--json")
    assert code == 1
    assert json.loads(out)["offending"] == "park"


def test_diagnose(capsys):
    code, out, _ = run(capsys, "diagnose", "--left", "parking_adapted.mbt::Sensor",
                       "--right", "parking_adapted.mbt::Autopark", "--trace", "safe.obs.beep",
                       "--offending", "park", "--impl-left", "parking.mbt::SensorImpl",
                       "--impl-right", "parking.mbt::AutoparkImpl", "--json")
    assert code == 0
    assert json.loads(out)["attributed"] == [
        {"component": "Autopark", "projected_trace": ["safe", "beep"], "verdict": "confirmed-counterexample"}]


def test_compose_output_file(capsys, tmp_path):
    target = tmp_path / "sys.mbt"
    assert run(capsys, "compose", "parking.mbt::Sensor", "parking.mbt::Autopark", "-o", str(target))[0] == 0
    (m,) = parse(target.read_text())
    assert len(m.states) == 9


def test_export_dot(capsys):
    code, out, _ = run(capsys, "export-dot", "parking.mbt::Sensor", "--overlay", "parking.mbt::SensorImpl")
    assert code == 0 and out.count("style=dashed") == 3


def test_errors_exit_2(capsys):
    code, _, err = run(capsys, "check-mutual", "parking.mbt::Sensor", "parking.mbt::Sensor")
    assert code == 2 and "error:" in err
    assert run(capsys, "utraces", "sensor.mbt", "--trace", "park")[0] == 2
    assert run(capsys, "check-uioco", "--impl", "parking.mbt::Sensor", "--spec", "parking.mbt::Sensor")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2


def test_json_deterministic(capsys):
    argv = ["fuzz", "commutativity", "--count", "5", "--seed", "3", "--json"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0
    assert json.loads(first[1])["passed"] == 5


def test_fuzz_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("COMPO_MBT_SEED", "42")
    code, out, _ = run(capsys, "fuzz", "det-vs-brute", "--count", "3", "--depth", "3", "--json")
    assert code == 0 and json.loads(out)["seed"] == 42


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "compo_mbt", "check-mutual", "parking_adapted.mbt::Sensor",
                           "parking_adapted.mbt::Autopark"], capture_output=True, text=True)
    assert proc.returncode == 0
