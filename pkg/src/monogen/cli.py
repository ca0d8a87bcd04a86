"""Command-line front end.

Exit codes: 0 on success (an "Unknown" verdict is a success), 2 on invalid
input, 3 when a resource cap is exceeded, 1 when a census cross-check
fails. ``MONOGEN_MAX_X`` caps every scan bound.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import cubic, density, eisenstein, quadforms
from .arith import require_prime
from .errors import CapExceeded, InvalidInput, MonogenError

EXIT_USAGE = 2
EXIT_CAP = 3


def _max_x() -> int | None:
    raw = os.environ.get("MONOGEN_MAX_X")
    if not raw:
        return None
    try:
        return int(float(raw))
    except ValueError:
        raise InvalidInput(f"MONOGEN_MAX_X={raw!r} is not a number") from None


def _cap(name: str, value: int) -> None:
    limit = _max_x()
    if limit is not None and value > limit:
        raise CapExceeded(f"{name}={value} exceeds MONOGEN_MAX_X={limit}")


def _result(command: str, record: dict, rows: list[dict] | None = None) -> tuple[dict, list[dict]]:
    out = {"schema": "1", "command": command, **record}
    return out, rows if rows is not None else [_flat(record)]


def _flat(record: dict) -> dict:
    row = {}
    for k, v in record.items():
        if isinstance(v, dict):
            for k2, v2 in v.items():
                row[f"{k}.{k2}"] = v2
        elif isinstance(v, list):
            row[k] = " ".join(map(str, v))
        else:
            row[k] = v
    return row


def cmd_classify(args) -> tuple[dict, list[dict]]:
    if (args.p is None) == (args.m is None):
        raise InvalidInput("give exactly one of --p or --m")
    if args.p is not None:
        v = cubic.classify_cbrt_p(args.p, args.bound)
        return _result("classify", v.to_record("p"))
    f = cubic.classify_pure_cubic_field(args.m)
    v = cubic.classify_general_pure_cubic(args.m, args.bound)
    rec = v.to_record("m")
    rec["field"] = {
        "h": f.h,
        "k": f.k,
        "case": f.case.value,
        "sign": f.sign,
        "disc": f.disc,
        "basis_denominator": f.basis_denominator,
        "basis": f.describe_basis(),
    }
    return _result("classify", rec)


def cmd_certificate(args) -> tuple[dict, list[dict]]:
    require_prime(args.p)
    require_prime(args.q, "q")
    cert = eisenstein.monogenic_certificate(args.p, args.q)
    rec = {"p": args.p, "q": args.q, "residue": eisenstein.wieferich_test(args.p, args.q)}
    if cert is None:
        rec["status"] = "inconclusive"
    else:
        rec["status"] = "certified"
        rec["certificate"] = cert.to_record()
    return _result("certificate", rec)


def cmd_scan(args) -> tuple[dict, list[dict]]:
    _cap("qmax", args.qmax)
    hits = eisenstein.wieferich_scan(args.base, args.qmax)
    rows = [{"base": h.base, "q": h.q, "residue": h.residue} for h in hits]
    return _result("scan", {"base": args.base, "qmax": args.qmax, "hits": rows}, rows)


def cmd_density(args) -> tuple[dict, list[dict]]:
    _cap("x", args.x)
    spec = density.PredicateSpec.parse(args.spec)
    parts = args.partitions or density.default_workers()
    rep = density.run_density(spec, args.x, parts, args.workers)
    rec = rep.to_record()
    rec.pop("schema")
    row = dict(zip(density.CSV_COLUMNS, rep.csv_row()))
    return _result("density", rec, [row])


def cmd_forms(args) -> tuple[dict, list[dict]]:
    forms = quadforms.reduced_forms_of_disc(args.disc)
    rows = [{"D": args.disc, "a": f.a, "b": f.b, "c": f.c} for f in forms]
    rec = {"disc": args.disc, "class_number": len(forms), "forms": [{"a": f.a, "b": f.b, "c": f.c} for f in forms]}
    return _result("forms", rec, rows)


def cmd_thue(args) -> tuple[dict, list[dict]]:
    out = cubic.thue_search(args.p, args.bound)
    rec = {"p": args.p, "bound": args.bound, "status": out.status.value}
    if out.x is not None:
        rec["x"], rec["y"] = out.x, out.y
    if out.obstruction is not None:
        rec["obstruction"] = out.obstruction
    return _result("thue", rec)


def cmd_census(args) -> tuple[dict, list[dict]]:
    _cap("x", args.x)
    c = density.verdict_census(args.x, args.bound)
    rec = c.to_record()
    rec.pop("schema")
    rows = [
        {"residue_mod_9": r, **{v.value: cnt[v] for v in cubic.Verdict}} for r, cnt in sorted(c.by_residue.items())
    ]
    return _result("census", rec, rows)


def cmd_trichotomy(args) -> tuple[dict, list[dict]]:
    _cap("x", args.x)
    t = density.trichotomy_census(args.x)
    rec = t.to_record()
    rec.pop("schema")
    return _result("trichotomy", rec)


def render(record: dict, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record, indent=2, sort_keys=True) + "\n"
    if not rows:
        header = [k for k in record if k not in ("schema", "command")]
        rows = []
    else:
        header = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    cells = [header] + [[str(r[h]) for h in header] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "table"], default="json")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="monogen", description="Monogenicity of t^q - p: verdicts, certificates, scans.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="verdict for Q(p^(1/3)) or Q(m^(1/3))")
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--bound", type=int, default=cubic.DEFAULT_THUE_BOUND)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("certificate", parents=[common], help="Eisenstein certificate for t^q - p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("scan", parents=[common], help="Wieferich primes q <= qmax for a base")
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--qmax", type=int, required=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("density", parents=[common], help="empirical density of a predicate over primes <= x")
    p.add_argument("--spec", required=True, help="e.g. WIEFERICH_NEQ1(3), RESIDUE_CLASS(1,9), SPLIT_K9")
    p.add_argument("--x", type=lambda s: int(float(s)), required=True)
    p.add_argument("--partitions", type=int, default=None, help="default: number of CPUs")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("forms", parents=[common], help="reduced forms of a negative discriminant")
    p.add_argument("--disc", type=int, required=True)
    p.set_defaults(func=cmd_forms)

    p = sub.add_parser("thue", parents=[common], help="bounded search for p x^3 + y^3 = 9")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--bound", type=int, default=cubic.DEFAULT_THUE_BOUND)
    p.set_defaults(func=cmd_thue)

    p = sub.add_parser("census", parents=[common], help="verdicts for every prime <= x")
    p.add_argument("--x", type=lambda s: int(float(s)), required=True)
    p.add_argument("--bound", type=int, default=cubic.DEFAULT_THUE_BOUND)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("trichotomy", parents=[common], help="t^3 - 3 root counts vs. disc -243 classes")
    p.add_argument("--x", type=lambda s: int(float(s)), required=True)
    p.set_defaults(func=cmd_trichotomy)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        record, rows = args.func(args)
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except InvalidInput as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except MonogenError as e:
        print(f"failure: {e}", file=sys.stderr)
        return 1
    text = render(record, rows, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
