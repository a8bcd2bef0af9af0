"""Suspension automata, utraces membership and the uioco check.

Counterexamples are shortest and, among equally short ones, lexicographically
smallest when traces are compared label by label as strings (``delta``
sorts as the string ``"delta"``).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import AlphabetMismatch, NotInputEnabled
from .lts import Lts, _check_trace, closure, ins, outs, step_set, weak_inputs


def input_enabled(m: Lts) -> bool:
    return all(m.inputs <= weak_inputs(m, q) for q in m.states)


def suspension_moves(m: Lts, macro: frozenset) -> dict:
    """Labelled successors of one macro-state of the deterministic suspension automaton.

    Inputs are gated: an input edge exists only if every member weakly
    enables it.  Outputs and ``delta`` follow the out-set of the members.
    """
    moves = {}
    for a in ins(m, macro):
        moves[a] = step_set(m, macro, a)
    for x in outs(m, macro):
        moves[x] = step_set(m, macro, x)
    return moves


@dataclass(frozen=True)
class DetSuspension:
    """Determinised suspension automaton; its language is ``Utraces(model)``."""

    model: Lts
    initial: frozenset
    states: frozenset
    edges: dict = field(compare=False)
    universal_inputs: dict = field(compare=False)
    out_sets: dict = field(compare=False)

    def successor(self, macro, label):
        return self.edges.get(macro, {}).get(label)

    def accepts(self, sigma) -> bool:
        current = self.initial
        for a in sigma:
            current = self.successor(current, a)
            if current is None:
                return False
        return True


def det_suspension(m: Lts) -> DetSuspension:
    start = closure(m, [m.initial])
    edges = {}
    universal = {}
    out_sets = {}
    queue = deque([start])
    seen = {start}
    while queue:
        macro = queue.popleft()
        universal[macro] = ins(m, macro)
        out_sets[macro] = outs(m, macro)
        moves = suspension_moves(m, macro)
        edges[macro] = moves
        for nxt in moves.values():
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return DetSuspension(m, start, frozenset(seen), edges, universal, out_sets)


def utraces_contains(m: Lts, sigma) -> bool:
    sigma = tuple(sigma)
    _check_trace(m, sigma)
    current = closure(m, [m.initial])
    for a in sigma:
        moves = suspension_moves(m, current)
        if a not in moves:
            return False
        current = moves[a]
    return True


@dataclass(frozen=True)
class UiocoVerdict:
    status: str  # "pass" | "fail"
    trace: tuple = ()
    offending: str | None = None
    impl_outs: frozenset = frozenset()
    spec_outs: frozenset = frozenset()

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        data = {"status": self.status}
        if not self.passed:
            data.update(trace=list(self.trace), offending=self.offending,
                        impl_outs=sorted(self.impl_outs), spec_outs=sorted(self.spec_outs))
        return data


def check_alphabets(i: Lts, s: Lts) -> None:
    if i.inputs != s.inputs or i.outputs != s.outputs:
        raise AlphabetMismatch(
            f"implementation alphabet I={sorted(i.inputs)} U={sorted(i.outputs)} differs from "
            f"specification I={sorted(s.inputs)} U={sorted(s.outputs)}")


def check_uioco(i: Lts, s: Lts) -> UiocoVerdict:
    """Decide ``i uioco s`` by BFS over spec macro-states paired with implementation state sets."""
    check_alphabets(i, s)
    if not input_enabled(i):
        raise NotInputEnabled(f"implementation {i.name or '<unnamed>'} is not input-enabled")
    start = (closure(s, [s.initial]), closure(i, [i.initial]))
    queue = deque([(start, ())])
    seen = {start}
    while queue:
        (spec_set, impl_set), trace = queue.popleft()
        spec_o = outs(s, spec_set)
        impl_o = outs(i, impl_set)
        bad = impl_o - spec_o
        if bad:
            return UiocoVerdict("fail", trace, min(bad), impl_o, spec_o)
        moves = suspension_moves(s, spec_set)
        for a in sorted(moves):
            nxt_impl = step_set(i, impl_set, a)
            if not nxt_impl:
                continue
            nxt = (moves[a], nxt_impl)
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, trace + (a,)))
    return UiocoVerdict("pass")
