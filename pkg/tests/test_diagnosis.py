import pytest
from hypothesis import given, settings, strategies as st

from compo_mbt.diagnosis import CONFIRMED, INCONCLUSIVE, diagnose, project, projection_alphabet
from compo_mbt.errors import NotACounterexample, NotAUtrace, NotComposable
from compo_mbt.harness import GenConfig, brute_after, brute_outs, gen_composable_pair, run_property
from compo_mbt.lts import DELTA

from conftest import make


@pytest.fixture
def park_case(parking, adapted):
    return dict(s=adapted["Sensor"], e=adapted["Autopark"], i_s=parking["SensorImpl"],
                i_e=parking["AutoparkImpl"])


def test_project_examples(autopark, sensor):
    sigma = ("safe", "obs", "beep", "park")
    assert project(sigma, projection_alphabet(autopark)) == ("safe", "beep", "park")
    assert project(sigma, projection_alphabet(autopark) | projection_alphabet(sensor)) == sigma
    assert project(("safe", DELTA, "obs"), projection_alphabet(sensor)) == ("safe", DELTA, "obs")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.data())
def test_projection_splits_uniquely(seed, data):
    s, e = gen_composable_pair(GenConfig(seed=seed))
    alphabet = sorted((s.labels | e.labels) | {DELTA})
    sigma = tuple(data.draw(st.lists(st.sampled_from(alphabet), max_size=8)))
    ps, pe = project(sigma, projection_alphabet(s)), project(sigma, projection_alphabet(e))
    # every label of sigma is kept by at least one side, in order
    for a in set(sigma):
        assert sigma.count(a) == max(ps.count(a), pe.count(a))
        if a in s.labels and a in e.labels or a == DELTA:
            assert ps.count(a) == pe.count(a) == sigma.count(a)


def test_diagnose_park(park_case):
    rep = diagnose(park_case["s"], park_case["e"], ["safe", "obs", "beep"], "park",
                   park_case["i_s"], park_case["i_e"])
    assert rep.method == "unique-output-owner"
    assert len(rep.attributed) == 1
    a = rep.attributed[0]
    assert (a.component, a.projected_trace, a.verdict) == ("Autopark", ("safe", "beep"), CONFIRMED)


def test_diagnose_spec_only_is_inconclusive(park_case):
    rep = diagnose(park_case["s"], park_case["e"], ["safe", "obs", "beep"], "park")
    assert [(a.component, a.verdict) for a in rep.attributed] == [("Autopark", INCONCLUSIVE)]


def test_diagnose_sensor_owned_output():
    s = make([("0", "x", "1")], [], ["x"], name="S")
    e = make([("0", "y", "0")], [], ["y"], name="E")
    i_s = make([("0", "x", "1"), ("1", "x", "1")], [], ["x"], name="S")
    rep = diagnose(s, e, ["x"], "x", i_s, e)
    assert [a.component for a in rep.attributed] == ["S"]
    assert rep.attributed[0].confirmed


# delta cases on small hand-built components

def _delta_models():
    s = make([("s0", "a", "s1"), ("s1", "x", "s2")], ["a"], ["x"], "s0", name="S")
    i_s = make([("s0", "a", "s1"), ("s1", "a", "s1"), ("s2", "a", "s2")], ["a"], ["x"], "s0", name="S")
    e = make([("e0", "y", "e1"), ("e0", "w", "e2")], [], ["w", "y"], "e0", name="E")
    e_busy = make([("e0", "y", "e1"), ("e1", "z", "e1"), ("e0", "w", "e2")], [], ["w", "y", "z"],
                  "e0", name="E")
    return s, i_s, e, e_busy


def _replay_candidates(parts, sigma):
    """Components whose spec forbids quiescence after their projection, by path exploration."""
    found = set()
    for spec in parts:
        proj = project(sigma, spec.labels | {DELTA})
        if DELTA not in brute_outs(spec, brute_after(spec, proj)):
            found.add(spec.name)
    return found


def test_delta_single_candidate():
    s, i_s, e, _ = _delta_models()
    sigma = ["a", "y"]
    rep = diagnose(s, e, sigma, DELTA, i_s, e)
    assert rep.method == "quiescence-replay"
    assert {a.component for a in rep.attributed} == _replay_candidates([s, e], sigma) == {"S"}
    assert rep.attributed[0].projected_trace == ("a",)
    assert rep.attributed[0].confirmed


def test_delta_two_candidates_spec_only():
    s, _, _, e_busy = _delta_models()
    sigma = ["a", "y"]
    rep = diagnose(s, e_busy, sigma, DELTA)
    assert {a.component for a in rep.attributed} == _replay_candidates([s, e_busy], sigma) == {"S", "E"}
    assert all(a.verdict == INCONCLUSIVE for a in rep.attributed)


def test_delta_both_confirmed_with_quiet_impls():
    s, i_s, e, e_busy = _delta_models()
    # E's spec demands z after y, its implementation (e) stays silent
    i_e = make(e.transitions, [], ["w", "y", "z"], "e0", name="E")
    rep = diagnose(s, e_busy, ["a", "y"], DELTA, i_s, i_e)
    assert [(a.component, a.verdict) for a in rep.attributed] == [("S", CONFIRMED), ("E", CONFIRMED)]


def test_delta_requires_quiet_composed_impl():
    s, i_s, _, e_busy = _delta_models()
    with pytest.raises(NotACounterexample):
        diagnose(s, e_busy, ["a", "y"], DELTA, i_s, e_busy)


def test_diagnose_errors(park_case, sensor):
    s, e = park_case["s"], park_case["e"]
    with pytest.raises(NotComposable):
        diagnose(sensor, sensor, [], "safe")
    with pytest.raises(NotAUtrace):
        diagnose(s, e, ["park"], "stop")
    with pytest.raises(NotACounterexample):
        diagnose(s, e, [], "safe")
    with pytest.raises(NotACounterexample):
        diagnose(s, e, [], "obs")
    with pytest.raises(NotACounterexample):
        diagnose(s, e, ["safe", "obs", "beep"], "off", park_case["i_s"], park_case["i_e"])


def test_report_json(park_case):
    rep = diagnose(park_case["s"], park_case["e"], ["safe", "obs", "beep"], "park",
                   park_case["i_s"], park_case["i_e"])
    assert rep.to_json() == {
        "system_trace": ["safe", "obs", "beep"], "offending": "park", "method": "unique-output-owner",
        "attributed": [{"component": "Autopark", "projected_trace": ["safe", "beep"], "verdict": CONFIRMED}],
    }


def test_soundness_property_small():
    rep = run_property("diagnosis-soundness", GenConfig(seed=11), 20)
    assert rep.ok and rep.passed == 20


def test_delta_single_impl_clears_busy_component():
    s, _, _, e_busy = _delta_models()
    busy_s = make(s.transitions | {("s1", "a", "s1"), ("s2", "a", "s2")}, ["a"], ["x"], "s0", name="S")
    rep = diagnose(s, e_busy, ["a", "y"], DELTA, i_s=busy_s)
    assert [(a.component, a.verdict) for a in rep.attributed] == [("E", INCONCLUSIVE)]
