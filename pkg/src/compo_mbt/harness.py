"""Random models, brute-force oracles and executable composition properties.

Every sample derives its own seed from ``(cfg.seed, index)``, so a report is
reproducible and independent of evaluation order.  The brute-force oracles
at the top of this module explore individual paths of the raw transition
relation and deliberately share no code with the library semantics.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field, replace
from itertools import product as cartesian

from .acceptance import check_mutual
from .composition import compose, isomorphic
from .diagnosis import diagnose, is_counterexample, project, projection_alphabet
from .errors import CompoMbtError, DepthTooLarge, UnknownProperty
from .lts import DELTA, TAU, Lts, closure, step_set, validate, weak_inputs
from .modelio import serialize
from .uioco import check_uioco, det_suspension, suspension_moves, utraces_contains

MAX_BRUTE_DEPTH = 6
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_states: int = 6
    input_count: int = 3
    output_count: int = 3
    edge_density: float = 0.3
    tau_density: float = 0.1
    shared_label_fraction: float = 0.5

    def __post_init__(self):
        for name in ("edge_density", "tau_density", "shared_label_fraction"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        for name in ("max_states", "input_count", "output_count"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.max_states < 1:
            raise ValueError("max_states must be at least 1")


def sample_seed(seed: int, index: int) -> int:
    return (seed * 0x9E3779B97F4A7C15 + index * 0xBF58476D1CE4E5B9 + 1) & _MASK64


def sample_config(cfg: GenConfig, index: int) -> GenConfig:
    return replace(cfg, seed=sample_seed(cfg.seed, index))


# --------------------------------------------------------------------------
# generators

def gen_lts(cfg: GenConfig, inputs=None, outputs=None, rng=None, name="") -> Lts:
    """Random valid model; tau-edges only go to a higher state index and unreachable states are pruned.

    Each ``(state, label)`` pair gets an edge to a uniformly chosen target with
    probability ``edge_density``; each state gets a tau-edge to a higher state
    with probability ``tau_density``.
    """
    rng = rng or random.Random(cfg.seed)
    inputs = sorted(inputs) if inputs is not None else [f"i{j}" for j in range(cfg.input_count)]
    outputs = sorted(outputs) if outputs is not None else [f"o{j}" for j in range(cfg.output_count)]
    n = rng.randint(1, cfg.max_states)
    states = [str(k) for k in range(n)]
    transitions = []
    for k, q in enumerate(states):
        for a in inputs + outputs:
            if rng.random() < cfg.edge_density:
                transitions.append((q, a, rng.choice(states)))
        if k + 1 < n and rng.random() < cfg.tau_density:
            transitions.append((q, TAU, states[rng.randrange(k + 1, n)]))
    m = Lts.build(transitions, inputs, outputs, "0", states=states, name=name)
    return m.reachable()


def gen_composable_family(cfg: GenConfig, n: int, rng=None, names=None) -> list:
    """``n`` pairwise composable models whose inputs partly listen to each other's outputs.

    Each input slot is, with probability ``shared_label_fraction``, an output
    of another member; otherwise it is an external input, drawn from a
    pool shared by all members a quarter of the time.
    """
    rng = rng or random.Random(cfg.seed)
    names = names or [chr(ord("s") + k) if k < 3 else f"m{k}" for k in range(n)]
    outputs = [[f"{names[k]}o{j}" for j in range(cfg.output_count)] for k in range(n)]
    models = []
    for k in range(n):
        foreign = [x for j, outs_j in enumerate(outputs) if j != k for x in outs_j]
        chosen = []
        for j in range(cfg.input_count):
            r = rng.random()
            pool = [x for x in foreign if x not in chosen]
            if r < cfg.shared_label_fraction and pool:
                chosen.append(rng.choice(pool))
            elif rng.random() < 0.25 and f"x{j}" not in chosen:
                chosen.append(f"x{j}")
            else:
                chosen.append(f"{names[k]}i{j}")
        models.append(gen_lts(cfg, chosen, outputs[k], rng=rng, name=names[k]))
    return models


def gen_composable_pair(cfg: GenConfig, rng=None):
    s, e = gen_composable_family(cfg, 2, rng=rng, names=["s", "e"])
    return s, e


def gen_input_completion(m: Lts, cfg: GenConfig, policy: str = "mixed", rng=None) -> Lts:
    """Add, for every state and input it does not weakly enable, a self-loop or a jump.

    ``policy`` is ``"self-loop"``, ``"jump"`` or ``"mixed"`` (coin flip per
    missing input).  The result is input-enabled.
    """
    rng = rng or random.Random(cfg.seed)
    states = sorted(m.states)
    added = []
    for q in states:
        missing = sorted(m.inputs - weak_inputs(m, q))
        for a in missing:
            loop = policy == "self-loop" or (policy == "mixed" and rng.random() < 0.5)
            added.append((q, a, q if loop else rng.choice(states)))
    return Lts(m.states, m.inputs, m.outputs, set(m.transitions) | set(added), m.initial, m.name)


def mutate_outputs(m: Lts, rng, p_add: float = 0.3, p_remove: float = 0.2) -> Lts:
    """Possibly add one random output edge and possibly drop one; inputs untouched."""
    transitions = set(m.transitions)
    states = sorted(m.states)
    if m.outputs and rng.random() < p_add:
        transitions.add((rng.choice(states), rng.choice(sorted(m.outputs)), rng.choice(states)))
    out_edges = sorted(t for t in transitions if t[1] in m.outputs)
    if out_edges and rng.random() < p_remove:
        transitions.discard(rng.choice(out_edges))
    return Lts(m.states, m.inputs, m.outputs, transitions, m.initial, m.name)


def repair_mutual(s: Lts, e: Lts, rng, max_rounds: int = 200):
    """Add input edges where acceptance is refused until ``s`` and ``e`` mutually accept."""
    for _ in range(max_rounds):
        fwd, bwd = check_mutual(s, e)
        if fwd.holds and bwd.holds:
            return s, e
        if not fwd.holds:
            p, _ = fwd.pair
            s = _add_input(s, p, fwd.label, rng)
        else:
            _, q = bwd.pair
            e = _add_input(e, q, bwd.label, rng)
    raise RuntimeError("repair did not converge")


def _add_input(m: Lts, q, label, rng) -> Lts:
    target = q if rng.random() < 0.5 else rng.choice(sorted(m.states))
    return Lts(m.states, m.inputs, m.outputs, set(m.transitions) | {(q, label, target)}, m.initial, m.name)


def gen_mutual_pair(cfg: GenConfig, rng=None):
    rng = rng or random.Random(cfg.seed)
    s, e = gen_composable_pair(cfg, rng=rng)
    return repair_mutual(s, e, rng)


# --------------------------------------------------------------------------
# brute-force oracles

def _raw_succ(m: Lts) -> dict:
    table: dict = {}
    for src, label, dst in m.transitions:
        table.setdefault(src, []).append((label, dst))
    return table


def _raw_quiescent(m: Lts, succ, q) -> bool:
    return all(label != TAU and label not in m.outputs for label, _ in succ.get(q, ()))


def _raw_can(m: Lts, succ, q, a) -> bool:
    """``q =a=>`` by explicit search over tau-paths."""
    stack, seen = [q], {q}
    while stack:
        p = stack.pop()
        for label, r in succ.get(p, ()):
            if label == a:
                return True
            if label == TAU and r not in seen:
                seen.add(r)
                stack.append(r)
    return False


def brute_reach(m: Lts, depth: int) -> dict:
    """Map every executable suspension trace up to ``depth`` to the states it reaches.

    Explores each path of the raw transition relation, with ``delta`` as a
    self-loop on quiescent states.
    """
    succ = _raw_succ(m)
    reach: dict = {}
    stack = [(m.initial, ())]
    visited = set()
    while stack:
        q, sigma = stack.pop()
        if (q, sigma) in visited:
            continue
        visited.add((q, sigma))
        reach.setdefault(sigma, set()).add(q)
        for label, r in succ.get(q, ()):
            if label == TAU:
                stack.append((r, sigma))
            elif len(sigma) < depth:
                stack.append((r, sigma + (label,)))
        if len(sigma) < depth and _raw_quiescent(m, succ, q):
            stack.append((q, sigma + (DELTA,)))
    return {k: frozenset(v) for k, v in reach.items()}


def brute_after(m: Lts, sigma) -> frozenset:
    """States reached by one given trace, by path exploration."""
    succ = _raw_succ(m)
    sigma = tuple(sigma)
    stack = [(m.initial, 0)]
    visited = set()
    found = set()
    while stack:
        q, k = stack.pop()
        if (q, k) in visited:
            continue
        visited.add((q, k))
        if k == len(sigma):
            found.add(q)
        for label, r in succ.get(q, ()):
            if label == TAU:
                stack.append((r, k))
            elif k < len(sigma) and label == sigma[k]:
                stack.append((r, k + 1))
        if k < len(sigma) and sigma[k] == DELTA and _raw_quiescent(m, succ, q):
            stack.append((q, k + 1))
    return frozenset(found)


def brute_outs(m: Lts, states) -> frozenset:
    succ = _raw_succ(m)
    result = set()
    for q in states:
        result.update(label for label, _ in succ.get(q, ()) if label in m.outputs)
        if _raw_quiescent(m, succ, q):
            result.add(DELTA)
    return frozenset(result)


def brute_utraces(m: Lts, depth: int) -> set:
    """All utraces of length at most ``depth``, by literal evaluation of the definition."""
    if depth > MAX_BRUTE_DEPTH:
        raise DepthTooLarge(f"brute-force depth is limited to {MAX_BRUTE_DEPTH}, got {depth}")
    succ = _raw_succ(m)
    reach = brute_reach(m, depth)
    result = set()
    for sigma in reach:
        ok = True
        for k, a in enumerate(sigma):
            if a in m.inputs and not all(_raw_can(m, succ, p, a) for p in reach[sigma[:k]]):
                ok = False
                break
        if ok:
            result.add(sigma)
    return result


def brute_min_witness(i: Lts, s: Lts, depth: int):
    """Shortest (then lexicographically least) uioco witness up to ``depth``, or None."""
    for sigma in sorted(brute_utraces(s, depth), key=lambda t: (len(t), t)):
        bad = brute_outs(i, brute_after(i, sigma)) - brute_outs(s, brute_after(s, sigma))
        if bad:
            return sigma, min(bad)
    return None


def brute_accepts(s: Lts, e: Lts, depth: int) -> bool:
    """``s accepts e`` over utraces of ``s || e`` up to ``depth``, evaluated pair by pair."""
    sys = compose(s, e)
    succ_s = _raw_succ(s)
    reach = brute_reach(sys, depth)
    for sigma in brute_utraces(sys, depth):
        for name in reach[sigma]:
            p, q = _split_pair(sys, s, e, name)
            offered = brute_outs(e, [q]) & s.inputs
            taken = {a for a in s.inputs if _raw_can(s, succ_s, p, a)} & e.outputs
            if not offered <= taken:
                return False
    return True


def _split_pair(sys, s, e, name):
    for k in range(len(name)):
        if name[k] == "|" and name[:k] in s.states and name[k + 1:] in e.states:
            return name[:k], name[k + 1:]
    raise ValueError(f"cannot split composed state {name!r}")


def enumerate_traces(alphabet, depth: int, keep):
    """Depth-first walk of ``alphabet**<=depth`` that descends only below traces for which ``keep`` holds.

    Yields every visited trace, so the boundary (first failing extension) is
    included.
    """
    alphabet = sorted(alphabet)
    stack = [()]
    while stack:
        sigma = stack.pop()
        yield sigma
        if len(sigma) < depth and keep(sigma):
            stack.extend(sigma + (a,) for a in reversed(alphabet))


# --------------------------------------------------------------------------
# shrinking

def _variants(m: Lts):
    for t in sorted(m.transitions):
        yield Lts(m.states, m.inputs, m.outputs, m.transitions - {t}, m.initial, m.name)
    for q in sorted(m.states - {m.initial}):
        kept = [t for t in m.transitions if q not in (t[0], t[2])]
        yield Lts(m.states - {q}, m.inputs, m.outputs, kept, m.initial, m.name)


def shrink(models, still_fails, max_steps: int = 500):
    """Greedy edge/state deletion keeping ``still_fails`` true and every model valid."""
    models = list(models)
    steps = 0
    progress = True
    while progress and steps < max_steps:
        progress = False
        for k in range(len(models)):
            for cand in _variants(models[k]):
                steps += 1
                trial = models[:k] + [cand.reachable()] + models[k + 1:]
                if validate(trial[k]):
                    continue
                try:
                    failing = still_fails(*trial)
                except CompoMbtError:
                    failing = False
                if failing:
                    models = trial
                    progress = True
                    break
            if progress:
                break
    return models


# --------------------------------------------------------------------------
# properties

@dataclass
class PropertyFailure:
    index: int
    seed: int
    message: str
    models: str  # serialized, after shrinking


@dataclass
class PropertyReport:
    name: str
    seed: int
    count: int
    passed: int = 0
    attempts: int = 0
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return asdict(self) | {"ok": self.ok}

    def summary(self) -> str:
        line = (f"{self.name}: {self.passed}/{self.count} passed, {len(self.failures)} failed "
                f"({self.attempts} samples drawn)")
        for key, val in sorted(self.notes.items()):
            line += f"\n  {key}: {val}"
        for f in self.failures[:5]:
            line += f"\n  FAIL sample {f.index} (seed {f.seed}): {f.message}\n" + \
                "\n".join("    " + ln for ln in f.models.splitlines())
        return line


def _fail(report, index, seed, message, models, predicate):
    small = shrink(models, predicate)
    named = [m.with_name(m.name or f"m{k}") for k, m in enumerate(small)]
    report.failures.append(PropertyFailure(index, seed, message, serialize(named)))


def _prop_commutativity(cfg, rng):
    s, e = gen_composable_pair(cfg, rng=rng)

    def bad(s, e):
        return not isomorphic(compose(s, e), compose(e, s))

    return [s, e], bad, "compose(s,e) not isomorphic to compose(e,s)"


def _prop_associativity(cfg, rng):
    cfg = replace(cfg, max_states=min(cfg.max_states, 4))
    s, e, t = gen_composable_family(cfg, 3, rng=rng)

    def bad(s, e, t):
        left = compose(compose(s, e), t)
        right = compose(s, compose(e, t))
        return left != right or not isomorphic(left, right)

    return [s, e, t], bad, "(s||e)||t differs from s||(e||t)"


class _UtraceWalker:
    """Incremental utraces membership: one macro-state per trace, ``None`` once it left."""

    def __init__(self, m):
        self.m = m
        self.start = closure(m, [m.initial])
        self.cache = {}

    def step(self, macro, label):
        if macro is None:
            return None
        if macro not in self.cache:
            self.cache[macro] = suspension_moves(self.m, macro)
        if label not in self.m.labels and label != DELTA:
            return macro  # not in this component's projection alphabet
        return self.cache[macro].get(label)


def _utraces_projection_mismatch(s, e, depth):
    """First trace up to ``depth`` on which composed and projected utraces membership differ."""
    sys = compose(s, e)
    walkers = [_UtraceWalker(sys), _UtraceWalker(s), _UtraceWalker(e)]
    alphabet = sorted(sys.labels | {DELTA})
    stack = [((), tuple(w.start for w in walkers))]
    while stack:
        sigma, (m_sys, m_s, m_e) = stack.pop()
        lhs = m_sys is not None
        rhs = m_s is not None and m_e is not None
        if lhs != rhs:
            return sigma
        # both sides are prefix-closed, so nothing below a doubly-false trace can differ
        if len(sigma) < depth and (lhs or rhs):
            for a in reversed(alphabet):
                stack.append((sigma + (a,), (walkers[0].step(m_sys, a), walkers[1].step(m_s, a),
                                             walkers[2].step(m_e, a))))
    return None


def _state_projection_mismatch(s, e, depth, only_utraces):
    """First trace on which ``after`` in ``s || e`` differs from the product of projected ``after`` sets.

    With ``only_utraces`` the traces are restricted to utraces of ``s || e``.
    """
    sys = compose(s, e)
    gate = _UtraceWalker(sys)
    alphabet = sorted(sys.labels | {DELTA})

    def move(m, states, a):
        if a != DELTA and a not in m.labels:
            return states
        return step_set(m, states, a) if states else states

    start = (closure(sys, [sys.initial]), closure(s, [s.initial]), closure(e, [e.initial]), gate.start)
    stack = [((), start)]
    while stack:
        sigma, (lhs, ps, qs, macro) = stack.pop()
        if only_utraces and macro is None:
            continue
        rhs = frozenset(f"{p}|{q}" for p, q in cartesian(sorted(ps), sorted(qs)))
        if lhs != rhs:
            return sigma
        if len(sigma) < depth and (lhs or rhs):
            for a in reversed(alphabet):
                stack.append((sigma + (a,), (move(sys, lhs, a), move(s, ps, a), move(e, qs, a),
                                             gate.step(macro, a) if only_utraces else None)))
    return None


def _prop_utraces_projection(cfg, rng, depth):
    s, e = gen_mutual_pair(cfg, rng=rng)

    def bad(s, e):
        fwd, bwd = check_mutual(s, e)
        return fwd.holds and bwd.holds and _utraces_projection_mismatch(s, e, depth) is not None

    return [s, e], bad, "utraces of s||e differ from the projected component utraces"


def _prop_trace_projection(cfg, rng, depth):
    s, e = gen_mutual_pair(cfg, rng=rng)
    i_s = gen_input_completion(s, cfg, rng=rng)
    i_e = gen_input_completion(e, cfg, rng=rng)

    def bad(s, e, i_s, i_e):
        fwd, bwd = check_mutual(s, e)
        if fwd.holds and bwd.holds and _state_projection_mismatch(s, e, depth, True) is not None:
            return True
        return _state_projection_mismatch(i_s, i_e, depth, False) is not None

    return [s, e, i_s, i_e], bad, "composed reachable states differ from projected component states"


def _impl_candidate(spec, cfg, rng):
    return mutate_outputs(gen_input_completion(spec, cfg, rng=rng), rng)


def _prop_det_vs_brute(cfg, rng, depth):
    m = gen_lts(cfg, rng=rng)

    def bad(m):
        truth = brute_utraces(m, depth)
        det = det_suspension(m)
        for sigma in enumerate_traces(m.labels | {DELTA}, depth, lambda t: t in truth):
            expected = sigma in truth
            if utraces_contains(m, sigma) != expected or det.accepts(sigma) != expected:
                return True
        return False

    return [m], bad, "utraces_contains disagrees with brute_utraces"


PROPERTIES = ("commutativity", "associativity", "utraces-projection", "trace-projection",
              "compositionality", "diagnosis-soundness", "det-vs-brute")


def run_property(name: str, cfg: GenConfig, count: int, depth: int = 5,
                 max_attempts: int | None = None) -> PropertyReport:
    """Evaluate one named property on ``count`` samples.

    For the filtered properties (compositionality, diagnosis-soundness)
    ``count`` is the number of samples satisfying the hypothesis; drawing
    stops after ``max_attempts`` candidates (default ``50 * count``).
    """
    if name not in PROPERTIES:
        raise UnknownProperty(f"unknown property {name!r}; choose from {', '.join(PROPERTIES)}")
    report = PropertyReport(name, cfg.seed, count)
    if name == "compositionality":
        return _run_compositionality(report, cfg, count, max_attempts or 50 * count)
    if name == "diagnosis-soundness":
        return _run_diagnosis(report, cfg, count, max_attempts or 50 * count)
    makers = {
        "commutativity": lambda c, r: _prop_commutativity(c, r),
        "associativity": lambda c, r: _prop_associativity(c, r),
        "utraces-projection": lambda c, r: _prop_utraces_projection(c, r, depth),
        "trace-projection": lambda c, r: _prop_trace_projection(c, r, depth),
        "det-vs-brute": lambda c, r: _prop_det_vs_brute(c, r, depth),
    }
    for index in range(count):
        sub = sample_config(cfg, index)
        models, bad, message = makers[name](sub, random.Random(sub.seed))
        report.attempts += 1
        if bad(*models):
            _fail(report, index, sub.seed, message, models, bad)
        else:
            report.passed += 1
    return report


def _mutual_quadruple(sub):
    rng = random.Random(sub.seed)
    s, e = gen_mutual_pair(sub, rng=rng)
    return s, e, _impl_candidate(s, sub, rng), _impl_candidate(e, sub, rng)


def _run_compositionality(report, cfg, count, max_attempts):
    converse = []
    index = 0
    while report.passed + len(report.failures) < count and index < max_attempts:
        sub = sample_config(cfg, index)
        s, e, i_s, i_e = _mutual_quadruple(sub)
        report.attempts += 1
        ok_s = check_uioco(i_s, s).passed
        ok_e = check_uioco(i_e, e).passed
        whole = check_uioco(compose(i_s, i_e), compose(s, e))
        if ok_s and ok_e:
            if whole.passed:
                report.passed += 1
            else:
                def bad(s, e, i_s, i_e):
                    return (all(v.holds for v in check_mutual(s, e)) and check_uioco(i_s, s).passed
                            and check_uioco(i_e, e).passed
                            and not check_uioco(compose(i_s, i_e), compose(s, e)).passed)
                _fail(report, index, sub.seed,
                      f"composed uioco fails at {'.'.join(whole.trace)} / {whole.offending}",
                      [s, e, i_s, i_e], bad)
        elif whole.passed:
            converse.append(index)
        index += 1
    report.notes["converse_counterexamples"] = len(converse)
    if converse:
        report.notes["converse_example_samples"] = converse[:5]
    if report.passed + len(report.failures) < count:
        report.notes["shortfall"] = count - report.passed - len(report.failures)
    return report


def diagnosis_outcome(s, e, i_s, i_e, verdict):
    """Check one diagnosis against the oracle; returns ``(ok, is_delta, message)``."""
    rep = diagnose(s, e, verdict.trace, verdict.offending, i_s, i_e)
    if verdict.offending != DELTA:
        if len(rep.attributed) != 1 or not rep.attributed[0].confirmed:
            return False, False, f"no confirmed attribution for {verdict.offending}"
        return True, False, ""
    faulty = set()
    for spec, impl, side in ((s, i_s, "left"), (e, i_e, "right")):
        proj = project(verdict.trace, projection_alphabet(spec))
        if is_counterexample(impl, spec, proj, DELTA):
            faulty.add(spec.name or side)
    names = {a.component for a in rep.attributed}
    if not names or not (names & faulty):
        return False, True, f"delta candidates {sorted(names)} miss faulty {sorted(faulty)}"
    return True, True, ""


def _run_diagnosis(report, cfg, count, max_attempts):
    index = 0
    deltas = 0
    while report.passed + len(report.failures) < count and index < max_attempts:
        sub = sample_config(cfg, index)
        s, e, i_s, i_e = _mutual_quadruple(sub)
        # bias toward failures: inject an extra output edge into one implementation
        rng = random.Random(sub.seed ^ 0x5EED)
        if rng.random() < 0.5:
            i_s = mutate_outputs(i_s, rng, p_add=0.8, p_remove=0.3)
        else:
            i_e = mutate_outputs(i_e, rng, p_add=0.8, p_remove=0.3)
        report.attempts += 1
        index += 1
        verdict = check_uioco(compose(i_s, i_e), compose(s, e))
        if verdict.passed:
            continue
        ok, is_delta, message = diagnosis_outcome(s, e, i_s, i_e, verdict)
        deltas += is_delta
        if ok:
            report.passed += 1
        else:
            def bad(s, e, i_s, i_e):
                if not all(v.holds for v in check_mutual(s, e)):
                    return False
                v = check_uioco(compose(i_s, i_e), compose(s, e))
                return not v.passed and not diagnosis_outcome(s, e, i_s, i_e, v)[0]
            _fail(report, index - 1, sub.seed, message, [s, e, i_s, i_e], bad)
    report.notes["delta_cases"] = deltas
    if report.passed + len(report.failures) < count:
        report.notes["shortfall"] = count - report.passed - len(report.failures)
    return report


def run_witness_minimality(cfg: GenConfig, count: int, max_attempts: int | None = None) -> PropertyReport:
    """On ``count`` failing uioco instances, compare the BFS witness with brute-force enumeration.

    Witnesses longer than :data:`MAX_BRUTE_DEPTH` are confirmed by the
    oracle finding nothing up to that depth.
    """
    report = PropertyReport("witness-minimality", cfg.seed, count)
    max_attempts = max_attempts or 50 * count
    longest = 0
    index = 0
    while report.passed + len(report.failures) < count and index < max_attempts:
        sub = sample_config(cfg, index)
        rng = random.Random(sub.seed)
        spec = gen_lts(sub, rng=rng, name="s")
        impl = mutate_outputs(gen_input_completion(spec, sub, rng=rng), rng, p_add=0.8).with_name("i")
        report.attempts += 1
        index += 1
        verdict = check_uioco(impl, spec)
        if verdict.passed:
            continue
        n = len(verdict.trace)
        longest = max(longest, n)
        brute = brute_min_witness(impl, spec, min(n, MAX_BRUTE_DEPTH))
        expected = (verdict.trace, verdict.offending) if n <= MAX_BRUTE_DEPTH else None
        if brute == expected:
            report.passed += 1
        else:
            def bad(impl, spec):
                v = check_uioco(impl, spec)
                if v.passed or len(v.trace) > MAX_BRUTE_DEPTH:
                    return False
                return brute_min_witness(impl, spec, len(v.trace)) != (v.trace, v.offending)
            _fail(report, index - 1, sub.seed,
                  f"BFS witness {'.'.join(verdict.trace)}/{verdict.offending}, brute force {brute}",
                  [impl, spec], bad)
    report.notes["longest_witness"] = longest
    if report.passed + len(report.failures) < count:
        report.notes["shortfall"] = count - report.passed - len(report.failures)
    return report
