"""The accepts and mutually-accepts relations between composable specifications.

``s`` accepts ``e`` when, at every state pair reachable by a utrace of
``s || e``, every output of ``e``'s state that ``s`` listens to is weakly
enabled as an input in ``s``'s state.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace

from .composition import product
from .lts import closure, outs, weak_inputs
from .uioco import suspension_moves


@dataclass(frozen=True)
class AcceptanceVerdict:
    """Outcome of one direction.

    On violation ``pair`` is ``(left state, right state)`` in the argument
    order of the call that produced the verdict and ``direction`` names the
    refusing side (``"left"`` or ``"right"``).
    """

    status: str  # "holds" | "violated"
    trace: tuple = ()
    pair: tuple | None = None
    label: str | None = None
    direction: str | None = None

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    def swapped(self) -> "AcceptanceVerdict":
        if self.holds:
            return self
        flip = {"left": "right", "right": "left"}
        return replace(self, pair=self.pair[::-1], direction=flip[self.direction])

    def to_json(self) -> dict:
        data = {"status": self.status}
        if not self.holds:
            data.update(trace=list(self.trace), pair=list(self.pair), label=self.label,
                        direction=self.direction)
        return data


def refused_outputs(s, e, p, q) -> frozenset:
    """Labels of ``out(q) & I_s`` missing from ``in(p) & U_e``."""
    offered = outs(e, [q]) & s.inputs
    taken = weak_inputs(s, p) & e.outputs
    return offered - taken


def check_accepts(s, e) -> AcceptanceVerdict:
    """Decide ``s accepts e``; on violation return the shortest witness.

    Walks the deterministic suspension automaton of ``s || e`` breadth-first
    with labels in lexicographic order and checks every individual pair in
    each reached macro-state.
    """
    sys, pairs = product(s, e)
    start = closure(sys, [sys.initial])
    queue = deque([(start, ())])
    seen = {start}
    while queue:
        macro, trace = queue.popleft()
        for name in sorted(macro, key=lambda nm: pairs[nm]):
            p, q = pairs[name]
            bad = refused_outputs(s, e, p, q)
            if bad:
                return AcceptanceVerdict("violated", trace, (p, q), min(bad), "left")
        moves = suspension_moves(sys, macro)
        for a in sorted(moves):
            nxt = moves[a]
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, trace + (a,)))
    return AcceptanceVerdict("holds")


def check_mutual(s, e):
    """Both directions: ``(s accepts e, e accepts s)``, pairs ordered ``(s state, e state)``."""
    return check_accepts(s, e), check_accepts(e, s).swapped()


def mutually_accepting(s, e) -> bool:
    a, b = check_mutual(s, e)
    return a.holds and b.holds


def all_violations(s, e) -> list:
    """Every refused ``(pair, label)`` of direction ``s accepts e`` with the shortest trace reaching it.

    Sorted by trace length, then trace, then pair and label.  Useful when
    repairing specifications: each entry marks a place where an input has
    to be added to ``s``.
    """
    sys, pairs = product(s, e)
    start = closure(sys, [sys.initial])
    queue = deque([(start, ())])
    seen = {start}
    found = {}
    while queue:
        macro, trace = queue.popleft()
        for name in macro:
            p, q = pairs[name]
            for label in refused_outputs(s, e, p, q):
                found.setdefault(((p, q), label), trace)
        moves = suspension_moves(sys, macro)
        for a in sorted(moves):
            nxt = moves[a]
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, trace + (a,)))
    result = [AcceptanceVerdict("violated", tr, pair, label, "left")
              for (pair, label), tr in found.items()]
    result.sort(key=lambda v: (len(v.trace), v.trace, v.pair, v.label))
    return result
