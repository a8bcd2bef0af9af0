"""The ``.mbt`` text format, DOT export and model references.

Grammar::

    file  := block*
    block := "lts" NAME "{" "inputs" names ";" "outputs" names ";"
             "initial" STATE ";" edge* "}"
    names := [ LABEL { "," LABEL } ]
    edge  := STATE "->" STATE ":" ("?" | "!") LABEL ";"
           | STATE "->" STATE ":" "tau" ";"

``#`` starts a comment that runs to the end of the line.  The state set of
a block is its initial state plus every edge endpoint.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import AlphabetMismatch, CompoMbtError, InvalidModel, ParseError
from .lts import RESERVED, TAU, Lts, validate

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<arrow>->) | (?P<punct>[{};:,?!])
  | (?P<word>[A-Za-z0-9_.|()]+)
""", re.VERBOSE)
_LABEL = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_STATE = re.compile(r"[A-Za-z0-9_.|()]+\Z")


@dataclass(frozen=True)
class Token:
    kind: str  # "word", "sym" or "eof"
    text: str
    line: int
    column: int


def tokenize(text: str) -> list:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("arrow", "punct"):
            tokens.append(Token("sym", m.group(), line, pos - line_start + 1))
        elif kind == "word":
            tokens.append(Token("word", m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, message, expected=(), tok=None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.column, expected)

    def describe(self, tok):
        return "end of input" if tok.kind == "eof" else repr(tok.text)

    def expect_sym(self, sym):
        tok = self.tok
        if tok.kind != "sym" or tok.text != sym:
            self.fail(f"unexpected {self.describe(tok)}", [repr(sym)])
        self.pos += 1
        return tok

    def expect_word(self, what, keyword=None):
        tok = self.tok
        if tok.kind != "word" or (keyword is not None and tok.text != keyword):
            self.fail(f"unexpected {self.describe(tok)}", [repr(keyword) if keyword else what])
        self.pos += 1
        return tok

    def label(self):
        tok = self.expect_word("LABEL")
        if not _LABEL.match(tok.text):
            self.fail(f"malformed label {tok.text!r}", ["LABEL"], tok)
        return tok

    def names(self, section):
        found = []
        if self.tok.kind == "sym" and self.tok.text == ";":
            self.pos += 1
            return found
        while True:
            tok = self.label()
            if tok.text in RESERVED:
                self.fail(f"reserved label {tok.text!r} in {section}", ["LABEL"], tok)
            if tok.text in [t.text for t in found]:
                self.fail(f"duplicate label {tok.text!r} in {section}", ["LABEL"], tok)
            found.append(tok)
            if self.tok.kind == "sym" and self.tok.text == ",":
                self.pos += 1
                continue
            self.expect_sym(";")
            return found

    def block(self):
        self.expect_word("'lts'", "lts")
        name = self.expect_word("NAME")
        if not _LABEL.match(name.text):
            self.fail(f"malformed block name {name.text!r}", ["NAME"], name)
        self.expect_sym("{")
        self.expect_word("'inputs'", "inputs")
        inputs = self.names("inputs")
        self.expect_word("'outputs'", "outputs")
        outputs = self.names("outputs")
        in_names = {t.text for t in inputs}
        for t in outputs:
            if t.text in in_names:
                self.fail(f"label {t.text!r} declared as both input and output", ["LABEL"], t)
        out_names = {t.text for t in outputs}
        self.expect_word("'initial'", "initial")
        initial = self.expect_word("STATE").text
        self.expect_sym(";")
        edges = []
        while not (self.tok.kind == "sym" and self.tok.text == "}"):
            if self.tok.kind != "word":
                self.fail(f"unexpected {self.describe(self.tok)}", ["STATE", "'}'"])
            src = self.expect_word("STATE").text
            self.expect_sym("->")
            dst = self.expect_word("STATE").text
            self.expect_sym(":")
            tok = self.tok
            if tok.kind == "word" and tok.text == TAU:
                self.pos += 1
                label = TAU
            elif tok.kind == "sym" and tok.text in "?!":
                self.pos += 1
                ltok = self.label()
                label = ltok.text
                if label in RESERVED:
                    self.fail(f"reserved label {label!r} used with a kind marker", ["LABEL"], ltok)
                declared = "?" if label in in_names else "!" if label in out_names else None
                if declared is None:
                    self.fail(f"undeclared label {label}", ["LABEL"], ltok)
                if declared != tok.text:
                    self.fail(f"kind mismatch for label {label}", [declared + label], tok)
            else:
                self.fail(f"unexpected {self.describe(tok)}", ["'?'", "'!'", "'tau'"])
            self.expect_sym(";")
            edges.append((src, label, dst))
        self.expect_sym("}")
        m = Lts.build(edges, in_names, out_names, initial, name=name.text)
        return name, m

    def file(self):
        models = []
        names = set()
        while self.tok.kind != "eof":
            name_tok, m = self.block()
            if m.name in names:
                self.fail(f"duplicate block name {m.name!r}", ["NAME"], name_tok)
            names.add(m.name)
            models.append(m)
        return models


def parse(text: str, check: bool = True) -> list:
    """Parse a model file into a list of named :class:`Lts`.

    With ``check`` every block must also pass :func:`validate`, otherwise
    :class:`InvalidModel` is raised.
    """
    models = _Parser(text).file()
    if check:
        for m in models:
            problems = validate(m)
            if problems:
                raise InvalidModel(problems, m.name)
    return models


def _names(labels) -> str:
    return ", ".join(sorted(labels))


def serialize_one(m: Lts, name: str | None = None) -> str:
    name = re.sub(r"\W", "_", name or m.name or "M")
    if not _LABEL.match(name):
        name = "M_" + name
    for q in m.states:
        if not _STATE.match(q):
            raise ValueError(f"state {q!r} cannot be written in the model format")
    kind = {a: "?" for a in m.inputs} | {a: "!" for a in m.outputs}
    lines = [f"lts {name} {{"]
    lines.append(f"  inputs {_names(m.inputs)};".replace(" ;", ";"))
    lines.append(f"  outputs {_names(m.outputs)};".replace(" ;", ";"))
    lines.append(f"  initial {m.initial};")
    for src, label, dst in sorted(m.transitions):
        lab = TAU if label == TAU else kind[label] + label
        lines.append(f"  {src} -> {dst} : {lab};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize(models) -> str:
    """Canonical text: labels and edges sorted lexicographically, blocks separated by a blank line."""
    if isinstance(models, Lts):
        models = [models]
    return "\n".join(serialize_one(m) for m in models)


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot_label(m: Lts, label: str) -> str:
    if label == TAU:
        return "τ"
    return ("?" if label in m.inputs else "!") + label


def export_dot(m: Lts, overlay: Lts | None = None) -> str:
    """DOT text: edges of ``m`` solid, edges present only in ``overlay`` dashed."""
    if overlay is not None and (overlay.inputs != m.inputs or overlay.outputs != m.outputs):
        raise AlphabetMismatch("overlay must have the same inputs and outputs as the model")
    states = set(m.states) | (set(overlay.states) if overlay is not None else set())
    out = [f"digraph {_dot_quote(m.name or 'lts')} {{", "  rankdir=LR;"]
    for q in sorted(states):
        shape = "doublecircle" if q == m.initial else "circle"
        out.append(f"  {_dot_quote(q)} [shape={shape}];")
    base = set(m.transitions)
    for src, label, dst in sorted(base):
        out.append(f"  {_dot_quote(src)} -> {_dot_quote(dst)} [label={_dot_quote(_dot_label(m, label))}];")
    if overlay is not None:
        for src, label, dst in sorted(set(overlay.transitions) - base):
            out.append(f"  {_dot_quote(src)} -> {_dot_quote(dst)} "
                       f"[label={_dot_quote(_dot_label(m, label))}, style=dashed, color=blue];")
    out.append("}")
    return "\n".join(out) + "\n"


BUNDLED = ("sensor.mbt", "parking.mbt", "parking_adapted.mbt", "composed.mbt")


def bundled_text(filename: str) -> str:
    return resources.files("compo_mbt").joinpath("models", filename).read_text(encoding="utf-8")


def load_bundled(filename: str) -> dict:
    return {m.name: m for m in parse(bundled_text(filename))}


def read_file(path) -> str:
    p = Path(path)
    if not p.exists() and Path(path).name == str(path) and str(path) in BUNDLED:
        return bundled_text(str(path))
    return p.read_text(encoding="utf-8")


def load_ref(ref: str, check: bool = True) -> Lts:
    """Resolve ``FILE::NAME`` (or ``FILE`` for a single-block file).

    A bare file name that does not exist on disk falls back to the bundled
    models, so ``parking.mbt::Sensor`` works from any directory.
    """
    path, sep, name = ref.partition("::")
    try:
        text = read_file(path)
    except OSError as exc:
        raise CompoMbtError(f"cannot read {path}: {exc.strerror or exc}") from exc
    models = parse(text, check=check)
    if sep:
        for m in models:
            if m.name == name:
                return m
        raise CompoMbtError(f"no block named {name!r} in {path} (have: {', '.join(m.name for m in models)})")
    if len(models) != 1:
        raise CompoMbtError(f"{path} has {len(models)} blocks; select one with {path}::NAME")
    return models[0]
