"""Command-line front end: solve, table, verify, classify."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from typing import Optional, Sequence

from slownim import exact32
from slownim.closed_forms import DomainError
from slownim.engine import ResourceError, Tables, best_move, classify_game, sg_value
from slownim.rules import Family, GameSpec, Position, ShapeError, Version
from slownim.verify import SUITE_NAMES, run_suite

FAMILIES = [f.value for f in Family]


def _pile_list(text: str) -> list[int]:
    try:
        piles = [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")
    if any(p < 0 for p in piles):
        raise argparse.ArgumentTypeError("pile sizes must be non-negative")
    return piles


def _spec(args) -> GameSpec:
    return GameSpec(Family(args.family), args.n, args.k)


def _add_game_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, required=True, help="number of piles (excluding x0)")
    p.add_argument("--k", type=int, default=1, help="move width (ignored for classic/exco)")


def cmd_solve(args, out) -> int:
    spec = _spec(args)
    pos = Position(args.pos, args.x0)
    spec.check(pos)
    versions = [Version.NORMAL, Version.MISERE] if args.version == "both" else [Version(args.version)]
    for v in versions:
        label = "g" if v is Version.NORMAL else "g-"
        print(f"{label} = {sg_value(spec, pos, v)}", file=out)
        if args.best_move:
            q = best_move(spec, pos, v)
            print(f"best move: {q if q is not None else 'none (P-position)'}", file=out)
    return 0


def _table_rows(spec: GameSpec, cap: int, versions: list[Version], labels: bool):
    t = Tables(spec, cap)
    show_tags = labels and spec.family is Family.SLOW_EXACT and (spec.n, spec.k) == (3, 2)
    for pos in t.positions():
        row = {}
        if spec.has_distinguished:
            row["x0"] = pos.distinguished
        row["pos"] = list(pos.piles)
        if Version.NORMAL in versions:
            row["g"] = t.normal[pos]
        if Version.MISERE in versions:
            row["g_misere"] = t.misere[pos]
        if labels:
            row["label"] = t.cls(pos).label
        if show_tags:
            for v, key in ((Version.NORMAL, "tag"), (Version.MISERE, "tag_misere")):
                if v in versions:
                    tag = exact32.exact32_classify(pos, v).tag
                    row[key] = tag.value if tag else ""
        yield row


def render_table(spec: GameSpec, cap: int, versions: list[Version], fmt: str,
                 labels: bool = False) -> str:
    rows = list(_table_rows(spec, cap, versions, labels))
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    buf = io.StringIO()
    fields = list(rows[0].keys())
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for row in rows:
        w.writerow([",".join(map(str, row[f])) if f == "pos" else row[f] for f in fields])
    return buf.getvalue()


def cmd_table(args, out) -> int:
    spec = _spec(args)
    if args.cap < 0:
        raise DomainError("cap must be non-negative")
    versions = [Version(v) for v in args.versions.split(",")]
    text = render_table(spec, args.cap, versions, args.format, args.labels)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def cmd_verify(args, out) -> int:
    names = SUITE_NAMES if args.suite == "all" else [args.suite]
    ok = True
    payload = []
    for name in names:
        start = time.perf_counter()
        res = run_suite(name, cap=args.cap, n=args.n, k=args.k)
        ok = ok and res.passed
        print(f"[{name}] {time.perf_counter() - start:.2f}s", file=sys.stderr)
        if args.json:
            payload.append({
                "suite": name,
                "passed": res.passed,
                "reports": [_report_json(r) for r in res.reports],
            })
        else:
            print(f"== {name}: {'PASS' if res.passed else 'FAIL'}", file=out)
            for line in res.lines():
                print(f"  {line}", file=out)
    if args.json:
        print(json.dumps(payload, indent=1), file=out)
    return 0 if ok else 1


def _report_json(r):
    if hasattr(r, "to_dict"):
        return r.to_dict()
    if hasattr(r, "claim_id"):
        return {"claim": r.claim_id, "passed": r.passed, "witness": r.witness}
    return {"summary": r.summary(), "passed": r.passed}


def cmd_classify(args, out) -> int:
    spec = _spec(args)
    r = classify_game(spec, args.cap)
    print(f"{spec} cap={args.cap}", file=out)
    for name, value in r.flags().items():
        line = f"{name}={str(value).lower()}"
        if not value and name in r.violations:
            bad = r.violations[name]
            line += f"  witness {bad[0]} ({len(bad)} in box)"
        print(line, file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slownim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="SG value of one position")
    _add_game_args(p)
    p.add_argument("--pos", type=_pile_list, required=True, help="comma-separated piles")
    p.add_argument("--x0", type=int, default=None, help="distinguished pile (exco only)")
    p.add_argument("--version", choices=["normal", "misere", "both"], default="normal")
    p.add_argument("--best-move", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("table", help="dump the SG table of a box")
    _add_game_args(p)
    p.add_argument("--cap", type=int, required=True)
    p.add_argument("--versions", default="normal,misere",
                   choices=["normal", "misere", "normal,misere"])
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--labels", action="store_true",
                   help="add class label (and set tags for slow-exact n=3 k=2)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="check closed forms against the solver")
    p.add_argument("suite", choices=SUITE_NAMES + ["all"])
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="tame/pet/domestic/miserable flags of a game")
    _add_game_args(p)
    p.add_argument("--cap", type=int, required=True)
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (DomainError, ShapeError, ResourceError, ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
