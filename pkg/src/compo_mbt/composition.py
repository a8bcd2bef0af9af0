"""Parallel composition, output renaming and isomorphism."""

from __future__ import annotations

from collections import deque

from .errors import LabelClash, ModelTooLarge, NotComposable, UnknownLabel
from .lts import RESERVED, TAU, Lts, quiescent

PAIR_SEP = "|"


def composable(s: Lts, e: Lts) -> bool:
    return not (s.outputs & e.outputs)


def _require_composable(s: Lts, e: Lts) -> None:
    clash = s.outputs & e.outputs
    if clash:
        raise NotComposable(f"output sets overlap on {{{','.join(sorted(clash))}}}")


def composed_alphabet(s: Lts, e: Lts):
    inputs = (s.inputs - e.outputs) | (e.inputs - s.outputs)
    return frozenset(inputs), s.outputs | e.outputs


def product(s: Lts, e: Lts):
    """Reachable part of ``s || e`` together with the map from composed state to ``(p, q)``.

    Shared labels synchronise; everything else, ``tau`` included, interleaves.
    """
    _require_composable(s, e)
    shared = s.labels & e.labels
    pairs_to_name: dict = {}
    used: set = set()

    def name_of(pair):
        if pair not in pairs_to_name:
            p, q = pair
            nm = f"{p}{PAIR_SEP}{q}"
            if nm in used:
                nm = f"({p}){PAIR_SEP}({q})"
            used.add(nm)
            pairs_to_name[pair] = nm
        return pairs_to_name[pair]

    start = (s.initial, e.initial)
    name_of(start)
    seen = {start}
    queue = deque([start])
    transitions = []
    while queue:
        p, q = queue.popleft()
        moves = []
        for label, targets in s.succ.get(p, {}).items():
            if label == TAU or label not in shared:
                moves.extend((label, (p2, q)) for p2 in targets)
            else:
                for q2 in e.step(q, label):
                    moves.extend((label, (p2, q2)) for p2 in targets)
        for label, targets in e.succ.get(q, {}).items():
            if label == TAU or label not in shared:
                moves.extend((label, (p, q2)) for q2 in targets)
        for label, nxt in sorted(moves):
            transitions.append((name_of((p, q)), label, name_of(nxt)))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    inputs, outputs = composed_alphabet(s, e)
    name = f"{s.name}||{e.name}" if s.name and e.name else ""
    m = Lts.build(transitions, inputs, outputs, name_of(start), name=name)
    pairs = {nm: pair for pair, nm in pairs_to_name.items()}
    return m, pairs


def compose(s: Lts, e: Lts) -> Lts:
    """Reachable part of the parallel composition; state ``p|q`` pairs ``p`` of ``s`` with ``q`` of ``e``."""
    return product(s, e)[0]


def rename_output(m: Lts, old: str, new: str) -> Lts:
    if old not in m.outputs:
        raise UnknownLabel(f"{old!r} is not an output")
    if new in m.labels or new in RESERVED or not new:
        raise LabelClash(f"cannot rename {old!r} to {new!r}: name already in use or reserved")
    transitions = [(p, new if a == old else a, q) for p, a, q in m.transitions]
    outputs = (m.outputs - {old}) | {new}
    return Lts(m.states, m.inputs, outputs, transitions, m.initial, m.name)


def _refine(models):
    """Colour refinement over the disjoint union; returns one colour map per model."""
    colours = []
    for m in models:
        colours.append({q: (q == m.initial, quiescent(m, q)) for q in m.states})
    n_classes = None
    while True:
        signatures = []
        for m, col in zip(models, colours):
            sig = {}
            for q in m.states:
                edges = sorted((a, repr(col[r])) for a, ts in m.succ.get(q, {}).items() for r in ts)
                sig[q] = (repr(col[q]), tuple(edges))
            signatures.append(sig)
        palette = {v: i for i, v in enumerate(sorted({v for sig in signatures for v in sig.values()}))}
        colours = [{q: palette[v] for q, v in sig.items()} for sig in signatures]
        if len(palette) == n_classes:
            return colours
        n_classes = len(palette)


def isomorphic(a: Lts, b: Lts, limit: int = 64) -> bool:
    """Exact isomorphism of the reachable parts, respecting labels and initial states.

    Edges are compared over inputs, outputs and ``tau``; quiescence is derived
    from them but is still required to agree on every matched pair.
    """
    if a.inputs != b.inputs or a.outputs != b.outputs:
        return False
    a, b = a.reachable(), b.reachable()
    if len(a.states) != len(b.states) or len(a.transitions) != len(b.transitions):
        return False
    if len(a.states) > limit:
        raise ModelTooLarge(f"isomorphism check limited to {limit} states, got {len(a.states)}")
    col_a, col_b = _refine([a, b])
    if sorted(col_a.values()) != sorted(col_b.values()):
        return False

    # BFS order from the initial state keeps the partial map connected.
    order = []
    seen = {a.initial}
    queue = deque([a.initial])
    while queue:
        p = queue.popleft()
        order.append(p)
        for label in sorted(a.succ.get(p, {})):
            for r in sorted(a.step(p, label)):
                if r not in seen:
                    seen.add(r)
                    queue.append(r)

    by_colour: dict = {}
    for q in sorted(b.states):
        by_colour.setdefault(col_b[q], []).append(q)
    edges_b = set(b.transitions)
    fwd: dict = {}
    used: set = set()

    def consistent(p, q):
        if quiescent(a, p) != quiescent(b, q):
            return False
        for label, targets in a.succ.get(p, {}).items():
            for r in targets:
                if r in fwd and (q, label, fwd[r]) not in edges_b:
                    return False
        for p0, q0 in fwd.items():
            for label in a.enabled(p0):
                if p in a.step(p0, label) and (q0, label, q) not in edges_b:
                    return False
        return True

    def search(i):
        if i == len(order):
            return {(fwd[p], l, fwd[r]) for p, l, r in a.transitions} == edges_b
        p = order[i]
        candidates = [b.initial] if p == a.initial else by_colour.get(col_a[p], [])
        for q in candidates:
            if q in used or (q == b.initial) != (p == a.initial):
                continue
            if not consistent(p, q):
                continue
            fwd[p] = q
            used.add(q)
            if search(i + 1):
                return True
            del fwd[p]
            used.discard(q)
        return False

    return search(0)
