"""Expected verdicts for the bundled parking-system models.

The manifest lists checks and the fields their results must show; a result
matches when every expected field agrees (``trace_length`` compares the
length of the witness trace).  State names of compositions use ``p|q`` with
the sensor state first, so a drawn state ``B3`` is ``3|B`` here.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from functools import reduce
from importlib import resources

from .acceptance import check_mutual
from .composition import compose
from .diagnosis import diagnose
from .modelio import load_ref
from .uioco import check_uioco


def load_manifest() -> list:
    text = resources.files("compo_mbt").joinpath("models", "manifest.json").read_text(encoding="utf-8")
    return json.loads(text)["entries"]


@dataclass
class CheckResult:
    entry: str
    check: str
    expected: dict
    actual: dict
    mismatches: list

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _composed(refs):
    return reduce(compose, [load_ref(r) for r in refs])


def evaluate(check: dict) -> dict:
    kind = check["check"]
    if kind == "uioco":
        return check_uioco(_composed(check["impl"]), _composed(check["spec"])).to_json()
    if kind == "mutual":
        fwd, bwd = check_mutual(load_ref(check["left"]), load_ref(check["right"]))
        if fwd.holds and bwd.holds:
            return {"status": "holds", "verdicts": [fwd.to_json(), bwd.to_json()]}
        first = fwd if not fwd.holds else bwd
        return first.to_json() | {"verdicts": [fwd.to_json(), bwd.to_json()]}
    if kind == "compose":
        m = _composed(check["models"])
        return {"states": sorted(m.states), "inputs": sorted(m.inputs), "outputs": sorted(m.outputs)}
    if kind == "diagnose":
        rep = diagnose(load_ref(check["left"]), load_ref(check["right"]), check["trace"], check["offending"],
                       load_ref(check["impl_left"]), load_ref(check["impl_right"]))
        return rep.to_json()
    raise ValueError(f"unknown manifest check {kind!r}")


def compare(expected: dict, actual: dict) -> list:
    problems = []
    for key, want in expected.items():
        if key == "trace_length":
            got = len(actual.get("trace", ()))
        else:
            got = actual.get(key)
        if key in ("states", "inputs", "outputs"):
            want, got = sorted(want), sorted(got or [])
        if got != want:
            problems.append(f"{key}: expected {want!r}, got {got!r}")
    return problems


def run_manifest(entries=None):
    """Evaluate all entries; returns ``(results, seconds)``."""
    entries = entries if entries is not None else load_manifest()
    start = time.perf_counter()
    results = []
    for entry in entries:
        for check in entry["checks"]:
            actual = evaluate(check)
            results.append(CheckResult(entry["id"], check["check"], check["expect"], actual,
                                       compare(check["expect"], actual)))
    return results, time.perf_counter() - start
