"""Command-line workbench.

Exit codes: 0 pass/holds/valid, 1 fail/violated, 2 usage, parse or
precondition error.  Models are referenced as ``FILE::NAME``; bare names of
the bundled files (``parking.mbt`` etc.) resolve to the packaged copies.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from . import harness
from .acceptance import all_violations, check_accepts, check_mutual
from .composition import compose
from .diagnosis import diagnose
from .errors import CompoMbtError
from .lts import validate
from .modelio import export_dot, load_ref, parse, read_file, serialize
from .uioco import check_uioco, utraces_contains

SEED_ENV = "COMPO_MBT_SEED"


def parse_trace(text: str) -> tuple:
    if text.strip() == "":
        return ()
    parts = tuple(p.strip() for p in text.split("."))
    if any(not p for p in parts):
        raise CompoMbtError(f"malformed trace {text!r}: empty label between dots")
    return parts


def _show_trace(trace) -> str:
    return ".".join(trace) if trace else "ε"


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def cmd_validate(args) -> int:
    models = parse(read_file(args.file), check=False)
    report = {m.name: validate(m) for m in models}
    lines = []
    for name, problems in report.items():
        lines.append(f"{name}: valid" if not problems else f"{name}: INVALID")
        lines.extend(f"  - {p}" for p in problems)
    ok = not any(report.values())
    _emit(args, {"status": "valid" if ok else "invalid", "models": report},
          "\n".join(lines) if lines else "no models")
    return 0 if ok else 1


def cmd_compose(args) -> int:
    m = compose(load_ref(args.left), load_ref(args.right))
    text = serialize(m)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit(args, {"status": "ok", "output": args.output, "states": len(m.states)},
              f"wrote {m.name or 'composition'} ({len(m.states)} states) to {args.output}")
    elif args.json:
        print(json.dumps({"status": "ok", "model": text}, sort_keys=True))
    else:
        sys.stdout.write(text)
    return 0


def cmd_check_uioco(args) -> int:
    v = check_uioco(load_ref(args.impl), load_ref(args.spec))
    if v.passed:
        text = "pass: implementation is uioco-correct"
    else:
        text = (f"fail: after {_show_trace(v.trace)} the implementation can produce {v.offending}\n"
                f"  implementation outputs: {{{', '.join(sorted(v.impl_outs))}}}\n"
                f"  specification allows:   {{{', '.join(sorted(v.spec_outs))}}}")
    _emit(args, v.to_json(), text)
    return 0 if v.passed else 1


def _acceptance_text(v, left, right) -> str:
    if v.holds:
        return "holds"
    refuser, emitter = (left, right) if v.direction == "left" else (right, left)
    return (f"violated: after {_show_trace(v.trace)} at pair ({v.pair[0]}, {v.pair[1]}) "
            f"{emitter} can output {v.label} but {refuser} does not accept it")


def cmd_check_accepts(args) -> int:
    s, e = load_ref(args.left), load_ref(args.right)
    v = check_accepts(s, e)
    ls, le = s.name or "left", e.name or "right"
    if args.all:
        found = all_violations(s, e)
        data = {"status": v.status, "violations": [w.to_json() for w in found]}
        text = "\n".join([_acceptance_text(v, ls, le)] +
                         [f"  {_show_trace(w.trace)} @ ({w.pair[0]}, {w.pair[1]}): {w.label}" for w in found])
        _emit(args, data, text)
    else:
        _emit(args, v.to_json(), f"{ls} accepts {le}: {_acceptance_text(v, ls, le)}")
    return 0 if v.holds else 1


def cmd_check_mutual(args) -> int:
    s, e = load_ref(args.left), load_ref(args.right)
    fwd, bwd = check_mutual(s, e)
    ls, le = s.name or "left", e.name or "right"
    ok = fwd.holds and bwd.holds
    text = "\n".join([
        f"{ls} accepts {le}: {_acceptance_text(fwd, ls, le)}",
        f"{le} accepts {ls}: {_acceptance_text(bwd, ls, le)}",
        "mutually accepting" if ok else "NOT mutually accepting",
    ])
    data = {"status": "holds" if ok else "violated", "verdicts": [fwd.to_json(), bwd.to_json()]}
    _emit(args, data, text)
    return 0 if ok else 1


def cmd_utraces(args) -> int:
    m = load_ref(args.ref)
    sigma = parse_trace(args.trace)
    inside = utraces_contains(m, sigma)
    text = f"{_show_trace(sigma)} is {'' if inside else 'not '}a utrace"
    _emit(args, {"status": "member" if inside else "non-member", "trace": list(sigma)}, text)
    return 0 if inside else 1


def cmd_diagnose(args) -> int:
    s, e = load_ref(args.left), load_ref(args.right)
    i_s = load_ref(args.impl_left) if args.impl_left else None
    i_e = load_ref(args.impl_right) if args.impl_right else None
    rep = diagnose(s, e, parse_trace(args.trace), args.offending, i_s, i_e)
    lines = [f"system trace {_show_trace(rep.system_trace)}, offending {rep.offending} ({rep.method})"]
    for a in rep.attributed:
        lines.append(f"  {a.component}: projected trace {_show_trace(a.projected_trace)} -> {a.verdict}")
    if not rep.attributed:
        lines.append("  no component attributed")
    _emit(args, rep.to_json(), "\n".join(lines))
    return 0


def cmd_export_dot(args) -> int:
    m = load_ref(args.ref)
    overlay = load_ref(args.overlay) if args.overlay else None
    text = export_dot(m, overlay)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_fuzz(args) -> int:
    cfg = harness.GenConfig(seed=args.seed)
    if args.max_states is not None:
        cfg = replace(cfg, max_states=args.max_states)
    rep = harness.run_property(args.property, cfg, args.count, depth=args.depth)
    _emit(args, rep.to_json(), rep.summary())
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a machine-readable JSON object")

    p = argparse.ArgumentParser(prog="compo-mbt", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("validate", parents=[common], help="check every block of a model file")
    c.add_argument("file")
    c.set_defaults(func=cmd_validate)

    c = sub.add_parser("compose", parents=[common], help="parallel composition of two models")
    c.add_argument("left")
    c.add_argument("right")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_compose)

    c = sub.add_parser("check-uioco", parents=[common], help="decide impl uioco spec")
    c.add_argument("--impl", required=True)
    c.add_argument("--spec", required=True)
    c.set_defaults(func=cmd_check_uioco)

    c = sub.add_parser("check-accepts", parents=[common], help="decide LEFT accepts RIGHT")
    c.add_argument("left")
    c.add_argument("right")
    c.add_argument("--all", action="store_true", help="list every refused pair and label")
    c.set_defaults(func=cmd_check_accepts)

    c = sub.add_parser("check-mutual", parents=[common], help="decide mutual acceptance")
    c.add_argument("left")
    c.add_argument("right")
    c.set_defaults(func=cmd_check_mutual)

    c = sub.add_parser("utraces", parents=[common], help="utraces membership of a trace")
    c.add_argument("ref")
    c.add_argument("--trace", required=True, help='dot-separated labels, e.g. "a.b.delta"')
    c.set_defaults(func=cmd_utraces)

    c = sub.add_parser("diagnose", parents=[common], help="attribute a system counterexample")
    c.add_argument("--left", required=True)
    c.add_argument("--right", required=True)
    c.add_argument("--trace", required=True)
    c.add_argument("--offending", required=True)
    c.add_argument("--impl-left")
    c.add_argument("--impl-right")
    c.set_defaults(func=cmd_diagnose)

    c = sub.add_parser("export-dot", parents=[common], help="Graphviz rendering")
    c.add_argument("ref")
    c.add_argument("--overlay", help="model whose extra edges are drawn dashed")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_export_dot)

    c = sub.add_parser("fuzz", parents=[common], help="run a randomized property")
    c.add_argument("property", choices=harness.PROPERTIES)
    c.add_argument("--seed", type=int, default=int(os.environ.get(SEED_ENV, "0")))
    c.add_argument("--count", type=int, default=100)
    c.add_argument("--depth", type=int, default=5)
    c.add_argument("--max-states", type=int)
    c.set_defaults(func=cmd_fuzz)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CompoMbtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
