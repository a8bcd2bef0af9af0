import re

import pytest
from hypothesis import given, settings, strategies as st

from compo_mbt.composition import compose
from compo_mbt.errors import AlphabetMismatch, CompoMbtError, InvalidModel, ParseError
from compo_mbt.harness import GenConfig, gen_lts
from compo_mbt.modelio import BUNDLED, bundled_text, export_dot, load_bundled, load_ref, parse, serialize

SMALL = """
# comment line
lts M {
  inputs a;
  outputs x, y;   # trailing comment
  initial 0;
  0 -> 1 : ?a;
  1 -> 0 : !x;
  1 -> 2 : tau;
}
"""


def test_parse_sensor():
    (m,) = parse(bundled_text("sensor.mbt"))
    assert m.name == "Sensor"
    assert m.inputs == {"obs", "off"} and m.outputs == {"safe", "beep"}
    assert len(m.states) == 3 and len(m.transitions) == 5


def test_empty_file():
    assert parse("") == []
    assert parse("  # nothing\n\n") == []


def test_parse_small():
    (m,) = parse(SMALL)
    assert m.transitions == {("0", "a", "1"), ("1", "x", "0"), ("1", "tau", "2")}
    assert m.outputs == {"x", "y"} and m.states == {"0", "1", "2"}


def test_empty_alphabets():
    (m,) = parse("lts E { inputs; outputs; initial s; }")
    assert m.inputs == m.outputs == frozenset() and m.states == {"s"}


def test_kind_mismatch():
    text = "lts M {\n  inputs a;\n  outputs safe;\n  initial 1;\n  1 -> 2 : ?safe;\n}\n"
    with pytest.raises(ParseError, match="kind mismatch for label safe") as info:
        parse(text)
    assert (info.value.line, info.value.column) == (5, 12)


def test_undeclared_label():
    with pytest.raises(ParseError, match="undeclared label b"):
        parse("lts M { inputs a; outputs; initial 0; 0 -> 0 : ?b; }")


@pytest.mark.parametrize("word", ["tau", "delta"])
def test_reserved_labels_rejected(word):
    with pytest.raises(ParseError, match="reserved"):
        parse(f"lts M {{ inputs {word}; outputs; initial 0; }}")
    with pytest.raises(ParseError, match="reserved"):
        parse(f"lts M {{ inputs; outputs {word}; initial 0; }}")


def test_delta_not_an_edge_keyword():
    with pytest.raises(ParseError):
        parse("lts M { inputs; outputs; initial 0; 0 -> 0 : delta; }")


def test_syntax_error_position_and_expected():
    with pytest.raises(ParseError) as info:
        parse("lts M {\n  inputs a\n  outputs x;\n")
    err = info.value
    assert (err.line, err.column) == (3, 3)
    assert "';'" in err.expected or "','" in err.expected


def test_duplicate_block_and_both_kinds():
    with pytest.raises(ParseError, match="duplicate block"):
        parse("lts M { inputs; outputs; initial 0; }\nlts M { inputs; outputs; initial 0; }")
    with pytest.raises(ParseError, match="both input and output"):
        parse("lts M { inputs a; outputs a; initial 0; }")


def test_semantic_errors_delegate_to_validate():
    with pytest.raises(InvalidModel, match="τ-cycle"):
        parse("lts M { inputs; outputs; initial 0; 0 -> 1 : tau; 1 -> 0 : tau; }")
    (m,) = parse("lts M { inputs; outputs; initial 0; 0 -> 0 : tau; }", check=False)
    assert m.transitions == {("0", "tau", "0")}


@pytest.mark.parametrize("filename", BUNDLED)
def test_round_trip_bundled(filename):
    text = serialize(parse(bundled_text(filename)))
    assert serialize(parse(text)) == text
    assert parse(text) == parse(bundled_text(filename))


def test_serialize_canonical_order():
    # edges sorted by (source, label, target)
    (m,) = parse(SMALL)
    assert serialize(m) == (
        "lts M {\n  inputs a;\n  outputs x, y;\n  initial 0;\n"
        "  0 -> 1 : ?a;\n  1 -> 2 : tau;\n  1 -> 0 : !x;\n}\n")


def test_serialize_composed_name():
    models = load_bundled("parking.mbt")
    text = serialize(compose(models["Sensor"], models["Autopark"]))
    assert text.startswith("lts Sensor__Autopark {")
    assert parse(text)[0].states == compose(models["Sensor"], models["Autopark"]).states


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32))
def test_round_trip_generated(seed):
    m = gen_lts(GenConfig(seed=seed), name="G")
    assert parse(serialize(m)) == [m]


def test_dot_overlay_dashed_edges(parking):
    dot = export_dot(parking["Sensor"], parking["SensorImpl"])
    assert dot.count("style=dashed") == 3
    assert dot.count("doublecircle") == 1
    assert '"1" -> "1" [label="!safe"];' in dot


def test_dot_composed_adapted_has_nine_nodes(composed):
    dot = export_dot(composed["SysAdapted"])
    nodes = re.findall(r'^  "[^"]+" \[shape=', dot, flags=re.M)
    assert len(nodes) == 9


def test_dot_tau_label():
    (m,) = parse(SMALL)
    assert 'label="τ"' in export_dot(m)


def test_dot_overlay_alphabet_mismatch(parking):
    with pytest.raises(AlphabetMismatch):
        export_dot(parking["Sensor"], parking["Autopark"])


def test_load_ref(tmp_path):
    assert load_ref("parking.mbt::Autopark").name == "Autopark"
    assert load_ref("sensor.mbt").name == "Sensor"
    with pytest.raises(CompoMbtError, match="select one"):
        load_ref("parking.mbt")
    with pytest.raises(CompoMbtError, match="no block named"):
        load_ref("parking.mbt::Nope")
    path = tmp_path / "one.mbt"
    path.write_text(SMALL)
    assert load_ref(str(path)).name == "M"
    with pytest.raises(CompoMbtError, match="cannot read"):
        load_ref(str(tmp_path / "missing.mbt"))


def test_manifest_shape():
    from compo_mbt.regression import load_manifest
    entries = load_manifest()
    assert [e["id"] for e in entries] == ["1a", "1b", "1c", "1d", "1e", "1f", "1g", "1h"]
    for entry in entries:
        for check in entry["checks"]:
            for key in ("impl", "spec", "models"):
                for ref in check.get(key, []):
                    load_ref(ref)
