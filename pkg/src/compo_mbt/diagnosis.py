"""Attribute a system-level uioco failure to a component by trace projection."""

from __future__ import annotations

from dataclasses import dataclass

from .composition import compose, _require_composable
from .errors import NotACounterexample, NotAUtrace
from .lts import DELTA, Lts, after, outs
from .uioco import utraces_contains

CONFIRMED = "confirmed-counterexample"
INCONCLUSIVE = "inconclusive"


def project(sigma, alphabet) -> tuple:
    """Keep the labels of ``sigma`` that lie in ``alphabet``, in order."""
    alphabet = set(alphabet)
    return tuple(a for a in sigma if a in alphabet)


def projection_alphabet(m: Lts) -> frozenset:
    return m.labels | {DELTA}


@dataclass(frozen=True)
class Attribution:
    component: str
    projected_trace: tuple
    verdict: str  # CONFIRMED | INCONCLUSIVE

    @property
    def confirmed(self) -> bool:
        return self.verdict == CONFIRMED


@dataclass(frozen=True)
class DiagnosisReport:
    system_trace: tuple
    offending: str
    attributed: tuple  # of Attribution
    method: str  # "unique-output-owner" | "quiescence-replay"

    def to_json(self) -> dict:
        return {
            "system_trace": list(self.system_trace),
            "offending": self.offending,
            "method": self.method,
            "attributed": [
                {"component": a.component, "projected_trace": list(a.projected_trace), "verdict": a.verdict}
                for a in self.attributed
            ],
        }


def is_counterexample(impl: Lts, spec: Lts, sigma, label) -> bool:
    """``sigma`` is a utrace of ``spec`` and ``label`` is an impl output there that ``spec`` forbids."""
    if not utraces_contains(spec, sigma):
        return False
    impl_o = outs(impl, after(impl, [impl.initial], sigma))
    spec_o = outs(spec, after(spec, [spec.initial], sigma))
    return label in impl_o and label not in spec_o


def diagnose(s: Lts, e: Lts, sigma, offending: str, i_s: Lts | None = None,
             i_e: Lts | None = None) -> DiagnosisReport:
    """Project a counterexample of ``i_s || i_e uioco s || e`` onto the components.

    A non-``delta`` offending output has exactly one owner.  For ``delta``
    every component whose specification forbids quiescence after its
    projection is a candidate; a supplied implementation that is not
    quiescent there clears its component.  Without implementations the
    attributions stay inconclusive.
    """
    _require_composable(s, e)
    sigma = tuple(sigma)
    sys = compose(s, e)
    if not utraces_contains(sys, sigma):
        raise NotAUtrace(f"{'.'.join(sigma) or 'ε'} is not a utrace of the composed specification")
    if offending != DELTA and offending not in sys.outputs:
        raise NotACounterexample(f"{offending!r} is not an output of the composed system")
    if offending in outs(sys, after(sys, [sys.initial], sigma)):
        raise NotACounterexample(f"the composed specification allows {offending!r} after the trace")
    if i_s is not None and i_e is not None:
        impl = compose(i_s, i_e)
        if offending not in outs(impl, after(impl, [impl.initial], sigma)):
            raise NotACounterexample(f"the composed implementation cannot produce {offending!r} after the trace")

    parts = [(s, i_s, "left"), (e, i_e, "right")]
    attributed = []
    if offending != DELTA:
        method = "unique-output-owner"
        for spec, impl, side in parts:
            if offending in spec.outputs:
                attributed.append(_attribute(spec, impl, side, sigma, offending))
    else:
        method = "quiescence-replay"
        for spec, impl, side in parts:
            proj = project(sigma, projection_alphabet(spec))
            if DELTA in outs(spec, after(spec, [spec.initial], proj)):
                continue
            if impl is not None and DELTA not in outs(impl, after(impl, [impl.initial], proj)):
                continue
            attributed.append(_attribute(spec, impl, side, sigma, offending))
    return DiagnosisReport(sigma, offending, tuple(attributed), method)


def _attribute(spec, impl, side, sigma, offending) -> Attribution:
    proj = project(sigma, projection_alphabet(spec))
    verdict = INCONCLUSIVE
    if impl is not None and is_counterexample(impl, spec, proj, offending):
        verdict = CONFIRMED
    return Attribution(spec.name or side, proj, verdict)
