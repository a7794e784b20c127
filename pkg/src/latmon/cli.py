"""Command-line entry point.

Exit codes: 0 when every check passes or the answer is a correct negative,
1 when an identity that should hold is violated, 2 for usage, parse or
validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .corpus import default_corpus, enumerate_posets, named_instances
from .dot import RELATIONS, emit_dot
from .errors import BudgetExceeded, KindMismatch, ParseError, SourceTargetMismatch
from .latfile import emit_lat, load_lat
from .monads import DEFAULT_BUDGET, DEFAULT_SAMPLES, DEFAULT_SEED, MONADS, monad_named
from . import reports

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path: str):
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"{path}: no such file")
    try:
        return load_lat(p)
    except (ParseError, KindMismatch) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _monad(args):
    return monad_named(args.monad)


def cmd_validate(args):
    lf = _load(args.file)
    return reports.validate_report(lf.name, lf.carrier, lf.kind)


def cmd_apply(args):
    lf = _load(args.file)
    if args.iterate < 1:
        raise UsageError("--iterate must be at least 1")
    return reports.apply_report(_monad(args), lf.name, lf.carrier, args.iterate, args.budget)


def cmd_laws(args):
    lf = _load(args.file)
    return reports.laws_report(_monad(args), lf.name, lf.carrier, args.budget, args.samples, args.seed)


def cmd_lax(args):
    lf = _load(args.file)
    return reports.lax_report(_monad(args), lf.name, lf.carrier)


def cmd_tower(args):
    lf = _load(args.file)
    return reports.tower_report(_monad(args), lf.name, lf.carrier)


def cmd_fakir(args):
    lf = _load(args.file)
    return reports.fakir_json(_monad(args), lf.name, lf.carrier)


def cmd_stone(args):
    lf = _load(args.file)
    return reports.stone_json(_monad(args), lf.name, lf.carrier)


def cmd_projective(args):
    lf = _load(args.file)
    return reports.projective_json(_monad(args), lf.name, lf.carrier)


def cmd_corpus(args):
    if args.max_size < 1:
        raise UsageError("--max-size must be at least 1")
    entries = [e for n in range(1, min(args.max_size, 5) + 1) for e in enumerate_posets(n)]
    if args.max_size >= 6:
        entries += [e for e in default_corpus("lattice", args.max_size) if e.size >= 6]
    entries += [e for e in named_instances() if e.size <= args.max_size]
    written = []
    if args.emit:
        out = Path(args.emit)
        out.mkdir(parents=True, exist_ok=True)
        for e in entries:
            fname = "".join(ch if ch.isalnum() or ch in "._-" else "_" for ch in e.name) + ".lat"
            (out / fname).write_text(emit_lat(e.name, e.carrier), encoding="utf-8")
            written.append(fname)
    out = reports.base("corpus", f"max-size {args.max_size}")
    out.update(verdict="pass", entries=[{"name": e.name, "size": e.size, "provenance": e.provenance}
                                        for e in entries], written=written)
    return out


def cmd_dot(args):
    lf = _load(args.file)
    try:
        text = emit_dot(lf.carrier, args.relation, lf.name)
    except SourceTargetMismatch as exc:
        raise UsageError(str(exc)) from None
    out = reports.base("dot", lf.name)
    out.update(verdict="pass", relation=args.relation, dot=text)
    return out


def cmd_suite(args):
    from .suite import run_suite

    return run_suite()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="latmon", description="Downset and ideal monads on finite lattices.")
    p.add_argument("--json", action="store_true", help="print a machine-readable report")
    p.add_argument("--timings", action="store_true", help="add elapsed seconds to the report")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, monad=False, file=True, help=None):
        sp = sub.add_parser(name, help=help)
        if monad:
            sp.add_argument("--monad", required=True, choices=sorted(MONADS))
        if file:
            sp.add_argument("file")
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.add_argument("--timings", action="store_true", default=argparse.SUPPRESS)
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, help="parse and validate a .lat file")
    sp = add("apply", cmd_apply, monad=True, help="compute T^k X")
    sp.add_argument("--iterate", type=int, default=1)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp = add("laws", cmd_laws, monad=True, help="check unit and associativity laws")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    sp.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    add("lax", cmd_lax, monad=True, help="lax idempotency and the adjunction chain")
    add("tower", cmd_tower, monad=True, help="algebra, coalgebra, T1-algebra and the equivalence")
    add("fakir", cmd_fakir, monad=True, help="the Fakir approximation")
    add("stone", cmd_stone, monad=True, help="generators of TX and the round-trip")
    add("projective", cmd_projective, monad=True, help="coalgebra, retraction and lifting checks")
    sp = add("corpus", cmd_corpus, file=False, help="list or emit the corpus")
    sp.add_argument("--max-size", type=int, default=5)
    sp.add_argument("--emit", metavar="DIR")
    sp = add("dot", cmd_dot, help="Graphviz output")
    sp.add_argument("--relation", choices=RELATIONS, default="order")
    add("suite", cmd_suite, file=False, help="run every acceptance check over the corpus")
    return p


def render_text(report: dict) -> str:
    if report.get("command") == "dot":
        return report["dot"].rstrip("\n")
    lines = [f"{report['command']} {report.get('object', '')}".rstrip()]
    if "monad" in report:
        lines[0] += f" [{report['monad']}]"
    lines.append(f"verdict: {report['verdict']}")
    for key, value in report.items():
        if key in ("schema", "command", "object", "monad", "verdict", "checks", "criteria", "levels"):
            continue
        lines.append(f"{key}: {value}")
    for lv in report.get("levels", []):
        lines.append(f"T^{lv['k']}X: {lv['size']} elements")
        lines.append("  elements: " + " ".join(lv["elements"]))
        lines.append("  covers: " + " ".join(f"{a}<{b}" for a, b in lv["covers"]))
    for c in report.get("checks", []):
        mark = "ok  " if c["holds"] else "FAIL"
        lines.append(f"  {mark} {c['name']}" + (f"  (at {c['witness']})" if c["witness"] else ""))
    for c in report.get("criteria", []):
        mark = "PASS" if c["passed"] else "FAIL"
        lines.append(f"  criterion {c['criterion']}: {mark} {c['title']}"
                     + (f" ({len(c['violations'])} violations)" if c["violations"] else ""))
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        report = args.func(args)
    except UsageError as exc:
        print(f"latmon: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SourceTargetMismatch, BudgetExceeded, ValueError) as exc:
        print(f"latmon: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timings:
        report["timings"] = {"seconds": round(time.perf_counter() - start, 3)}
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(render_text(report))
    return EXIT_VIOLATION if report["verdict"] == "violation" else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
