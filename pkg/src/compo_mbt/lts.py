"""Labelled transition systems and their observable semantics.

States are opaque strings.  The internal action and quiescence are the
reserved tokens ``tau`` and ``delta``; neither may appear in a user alphabet.
Traces are tuples of label names, where ``delta`` stands for an observed
absence of outputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import EmptySet, UnknownLabel

TAU = "tau"
DELTA = "delta"
RESERVED = frozenset({TAU, DELTA})

Trace = tuple  # tuple[str, ...]


@dataclass(frozen=True)
class Label:
    name: str
    kind: str  # "input" | "output" | "internal" | "quiescence"


@dataclass(frozen=True)
class Lts:
    """A finite LTS ``(states, inputs, outputs, transitions, initial)``.

    Construction never validates; call :func:`validate` for that.  ``name``
    is carried for reporting only and does not take part in equality.
    """

    states: frozenset
    inputs: frozenset
    outputs: frozenset
    transitions: frozenset
    initial: str
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "inputs", frozenset(self.inputs))
        object.__setattr__(self, "outputs", frozenset(self.outputs))
        object.__setattr__(self, "transitions", frozenset(tuple(t) for t in self.transitions))

    @classmethod
    def build(cls, transitions, inputs, outputs, initial, states=(), name=""):
        """Build a model whose state set is ``states`` plus every endpoint and the initial state."""
        transitions = [tuple(t) for t in transitions]
        all_states = set(states) | {initial}
        for src, _, dst in transitions:
            all_states.update((src, dst))
        return cls(all_states, inputs, outputs, transitions, initial, name)

    @property
    def labels(self) -> frozenset:
        return self.inputs | self.outputs

    @cached_property
    def succ(self) -> dict:
        """``succ[state][label]`` is the frozenset of direct successors."""
        table: dict = {}
        for src, label, dst in self.transitions:
            table.setdefault(src, {}).setdefault(label, set()).add(dst)
        return {q: {a: frozenset(ts) for a, ts in row.items()} for q, row in table.items()}

    def step(self, q, label) -> frozenset:
        return self.succ.get(q, {}).get(label, frozenset())

    def enabled(self, q) -> frozenset:
        """Labels (including ``tau``) with an outgoing transition from ``q``."""
        return frozenset(self.succ.get(q, {}))

    @cached_property
    def _closures(self) -> dict:
        return {}

    def closure_of(self, q) -> frozenset:
        cache = self._closures
        if q not in cache:
            seen = {q}
            stack = [q]
            while stack:
                p = stack.pop()
                for r in self.step(p, TAU):
                    if r not in seen:
                        seen.add(r)
                        stack.append(r)
            cache[q] = frozenset(seen)
        return cache[q]

    def with_name(self, name: str) -> "Lts":
        return Lts(self.states, self.inputs, self.outputs, self.transitions, self.initial, name)

    def reachable(self) -> "Lts":
        """The sub-model reachable from the initial state."""
        seen = {self.initial}
        stack = [self.initial]
        while stack:
            p = stack.pop()
            for targets in self.succ.get(p, {}).values():
                for r in targets:
                    if r not in seen:
                        seen.add(r)
                        stack.append(r)
        kept = [t for t in self.transitions if t[0] in seen]
        return Lts(seen, self.inputs, self.outputs, kept, self.initial, self.name)

    def __repr__(self):
        nm = f" {self.name!r}" if self.name else ""
        return (f"<Lts{nm} |Q|={len(self.states)} I={sorted(self.inputs)} "
                f"U={sorted(self.outputs)} |T|={len(self.transitions)}>")


def label_kind(m: Lts, name: str) -> str:
    if name == TAU:
        return "internal"
    if name == DELTA:
        return "quiescence"
    if name in m.inputs:
        return "input"
    if name in m.outputs:
        return "output"
    raise UnknownLabel(f"label {name!r} is not in the alphabet")


def _tau_cycles(m: Lts) -> list:
    """Strongly connected components of the tau-graph that contain a cycle (Tarjan)."""
    graph = {q: sorted(m.step(q, TAU)) for q in m.states}
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    counter = [0]
    found = []

    def visit(v):
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack.add(v)
        for w in graph.get(v, ()):
            if w not in index:
                visit(w)
                low[v] = min(low[v], low[w])
            elif w in on_stack:
                low[v] = min(low[v], index[w])
        if low[v] == index[v]:
            comp = []
            while True:
                w = stack.pop()
                on_stack.discard(w)
                comp.append(w)
                if w == v:
                    break
            if len(comp) > 1 or v in graph.get(v, ()):
                found.append(sorted(comp))

    for v in sorted(graph):
        if v not in index:
            visit(v)
    return found


def _fmt(items) -> str:
    return "{" + ",".join(sorted(map(str, items))) + "}"


def validate(m) -> list:
    """Return every violated well-formedness rule as a message; empty means valid."""
    problems = []
    for alpha_name, alpha in (("inputs", m.inputs), ("outputs", m.outputs)):
        for a in sorted(alpha):
            if not isinstance(a, str) or not a:
                problems.append(f"empty label name in {alpha_name}")
            elif a in RESERVED:
                problems.append(f"reserved token {a!r} used as a label in {alpha_name}")
    overlap = m.inputs & m.outputs
    if overlap:
        problems.append(f"alphabets overlap on {_fmt(overlap)}")
    if not m.states:
        problems.append("state set is empty")
    if m.initial not in m.states:
        problems.append(f"initial state {m.initial!r} is not a state")
    allowed = m.inputs | m.outputs | {TAU}
    for src, label, dst in sorted(m.transitions):
        if src not in m.states:
            problems.append(f"transition ({src}, {label}, {dst}) has unknown source {src!r}")
        if dst not in m.states:
            problems.append(f"transition ({src}, {label}, {dst}) has unknown target {dst!r}")
        if label not in allowed:
            problems.append(f"transition ({src}, {label}, {dst}) uses undeclared label {label!r}")
    for comp in _tau_cycles(m):
        problems.append(f"τ-cycle {_fmt(comp)}")
    return problems


def closure(m: Lts, states: Iterable) -> frozenset:
    """Epsilon-closure: everything reachable through internal steps only."""
    out: set = set()
    for q in states:
        out |= m.closure_of(q)
    return frozenset(out)


def quiescent(m: Lts, q) -> bool:
    """``q`` enables neither an output nor the internal action."""
    row = m.succ.get(q, {})
    return TAU not in row and not any(a in m.outputs for a in row)


def _check_trace(m: Lts, sigma) -> None:
    allowed = m.labels | {DELTA}
    for a in sigma:
        if a not in allowed:
            raise UnknownLabel(f"label {a!r} is not in the alphabet {_fmt(m.labels)}")


def step_set(m: Lts, states: frozenset, label: str) -> frozenset:
    """One observable step from an epsilon-closed set; the result is epsilon-closed."""
    if label == DELTA:
        return frozenset(q for q in states if quiescent(m, q))
    nxt: set = set()
    for q in states:
        nxt |= m.step(q, label)
    return closure(m, nxt)


def after(m: Lts, start: Iterable, sigma=()) -> frozenset:
    """States reachable from ``start`` by the weak trace ``sigma``; empty if not executable."""
    sigma = tuple(sigma)
    _check_trace(m, sigma)
    current = closure(m, start)
    for a in sigma:
        if not current:
            break
        current = step_set(m, current, a)
    return current


def outs(m: Lts, states: Iterable) -> frozenset:
    """Strongly enabled outputs of any member, plus ``delta`` if any member is quiescent."""
    result: set = set()
    for q in states:
        row = m.succ.get(q, {})
        result.update(a for a in row if a in m.outputs)
        if quiescent(m, q):
            result.add(DELTA)
    return frozenset(result)


def weak_inputs(m: Lts, q) -> frozenset:
    """Inputs ``a`` with ``q =a=>``."""
    found: set = set()
    for p in m.closure_of(q):
        found.update(a for a in m.succ.get(p, {}) if a in m.inputs)
    return frozenset(found)


def ins(m: Lts, states: Iterable) -> frozenset:
    """Inputs weakly enabled in every member of a non-empty set."""
    states = list(states)
    if not states:
        raise EmptySet("ins is undefined on the empty set")
    result = set(m.inputs)
    for q in states:
        result &= weak_inputs(m, q)
    return frozenset(result)
