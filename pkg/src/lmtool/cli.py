"""Command line front end.

Verbs:
  invariant  p_D for one or more specs (per weight when several given)
  chern      second invariant n with its embedding shift
  relative   p_12 for an ordered pair of specs, checked against n_1 + n_2
  dual       fit of Hom(M, A) compared against n
  verify     the full verification suite (defaults to the whole catalog)
  catalog    list the built-in specs

Exit codes: 0 success, 1 an identity verdict failed, 2 usage or parse
error, 3 a sequence did not stabilize (raise --kmax).  Reports go to
stdout (or --out); diagnostics go to stderr.  Output is deterministic:
timing appears only under --timing.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .catalog import catalog, catalog_get, catalog_names
from .invariants import (
    DEFAULT_WEIGHTS,
    W11,
    NonPolynomialError,
    NotStabilizedError,
    Report,
    chern_number,
    dual_check,
    full_report,
    hilbert_seq,
    lm_invariant,
    relative_invariant,
    report_csv,
    report_text,
    weight_independence,
)
from .subspace import SpecError, parse_spec
from .weyl import Weight

_VERBS = ("invariant", "chern", "relative", "dual", "verify", "catalog")


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lmtool",
        description="Exact invariants of ideals of the first Weyl algebra.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in _VERBS:
        p = sub.add_parser(verb)
        if verb != "catalog":
            p.add_argument(
                "--spec",
                action="append",
                default=[],
                metavar="PATH|NAME",
                help="spec JSON file or built-in name; repeatable",
            )
            p.add_argument("--weights", default=None, metavar="W1,W2[;W1,W2...]")
            p.add_argument("--kmax", type=int, default=12)
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("--out", default=None, metavar="PATH")
        p.add_argument("--timing", action="store_true",
                       help="include elapsed_ms in json/text output")
    return parser


def _parse_weights(raw: str) -> tuple[Weight, ...]:
    parts = [p for p in raw.split(";") if p.strip()]
    if not parts:
        raise ValueError("empty weight list")
    return tuple(Weight.parse(p) for p in parts)


def _load_spec(token: str):
    path = Path(token)
    if path.exists():
        try:
            return parse_spec(path.read_text())
        except (SpecError, OSError, UnicodeDecodeError) as exc:
            raise SpecError(f"{token}: {exc}") from exc
    if token in catalog_names():
        return catalog_get(token)
    raise SpecError(f"{token}: no such file and no built-in spec of that name")


class _Usage(Exception):
    pass


def _invariant_reports(specs, weights, kmax) -> list[Report]:
    reports = []
    for spec in specs:
        if len(weights) == 1:
            res = lm_invariant(spec, weights[0], kmax)
            dims = hilbert_seq((spec, spec), weights[0], 0, kmax)
            reports.append(Report(
                name=spec.name, kmax=kmax, weight=weights[0],
                hilbert_D=dims.values,
                p_by_weight=((weights[0], res.p_values),),
                p_D=res.value, warnings=spec.warnings,
            ))
        else:
            res = weight_independence(spec, weights, kmax)
            reports.append(Report(
                name=spec.name, kmax=kmax, weight=weights[0], weights=weights,
                p_by_weight=res.p_sequences,
                p_D=res.values[0][1],
                verdicts={"weights": res.ok}, warnings=spec.warnings,
            ))
    return reports


def _chern_reports(specs, kmax) -> list[Report]:
    reports = []
    for spec in specs:
        res = chern_number(spec, kmax)
        reports.append(Report(
            name=spec.name, kmax=kmax,
            hilbert_M=res.sequence.values,
            shift_a=res.shift, n=res.n, warnings=spec.warnings,
        ))
    return reports


def _relative_report(src, dst, kmax) -> Report:
    res = relative_invariant(src, dst, kmax)
    return Report(
        name=f"{src.name}->{dst.name}", kmax=kmax,
        hilbert_hom=res.sequence.values,
        shift_a=res.shift, p_12=res.p_12, n_pair=(res.n_1, res.n_2),
        verdicts={"relative": res.ok},
        warnings=src.warnings + dst.warnings,
    )


def _dual_reports(specs, kmax) -> list[Report]:
    reports = []
    for spec in specs:
        res = dual_check(spec, kmax)
        reports.append(Report(
            name=spec.name, kmax=kmax,
            hilbert_dual=res.sequence.values,
            shift_a=res.shift, n=res.n, dual_constant=res.constant,
            verdicts={"dual": res.ok}, warnings=spec.warnings,
        ))
    return reports


def _render(reports: list[Report], fmt: str, timing: bool) -> str:
    if fmt == "json":
        if len(reports) == 1:
            return json.dumps(reports[0].to_dict(timing=timing), indent=2) + "\n"
        return json.dumps([r.to_dict(timing=timing) for r in reports], indent=2) + "\n"
    if fmt == "csv":
        if len(reports) == 1:
            return report_csv(reports[0])
        blocks = [f"# spec: {r.name}\n" + report_csv(r) for r in reports]
        return "\n".join(blocks)
    chunks = []
    for r in reports:
        text = report_text(r)
        if timing:
            text += f"elapsed_ms: {round(r.elapsed_ms, 3)}\n"
        chunks.append(text)
    return "\n".join(chunks)


def _render_catalog(fmt: str) -> str:
    entries = [spec.describe() for spec in catalog()]
    if fmt == "json":
        return json.dumps(entries, indent=2) + "\n"
    if fmt == "csv":
        lines = ["name,kind,num_functionals,conductor"]
        for e in entries:
            lines.append(f"{e['name']},{e['kind']},{e['num_functionals']},\"{e['conductor']}\"")
        return "\n".join(lines) + "\n"
    lines = []
    for e in entries:
        extra = f" gaps={e['gaps']}" if "gaps" in e else f" points={e['points']}"
        lines.append(f"{e['name']}: {e['kind']}{extra} conductor={e['conductor']}")
    return "\n".join(lines) + "\n"


def _emit(payload: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(payload)
    else:
        Path(out).write_text(payload)


def run(argv: Sequence[str]) -> int:
    try:
        args = _parser().parse_args(list(argv))
    except SystemExit as exc:  # argparse reports usage errors itself
        code = exc.code
        return code if isinstance(code, int) else 2

    try:
        if args.verb == "catalog":
            try:
                _emit(_render_catalog(args.format), args.out)
            except OSError as exc:
                print(f"lmtool: error: cannot write output: {exc}", file=sys.stderr)
                return 2
            return 0

        if args.kmax < 4:
            raise _Usage("--kmax must be at least 4")
        weights = _parse_weights(args.weights) if args.weights else None
        specs = [_load_spec(token) for token in args.spec]

        if args.verb == "invariant":
            if not specs:
                raise _Usage("invariant needs at least one --spec")
            reports = _invariant_reports(specs, weights or (W11,), args.kmax)
        elif args.verb == "chern":
            if not specs:
                raise _Usage("chern needs at least one --spec")
            if weights and weights != (W11,):
                raise _Usage("chern is pinned to weight 1,1")
            reports = _chern_reports(specs, args.kmax)
        elif args.verb == "relative":
            if len(specs) != 2:
                raise _Usage("relative needs exactly two --spec arguments")
            if weights and weights != (W11,):
                raise _Usage("relative is pinned to weight 1,1")
            reports = [_relative_report(specs[0], specs[1], args.kmax)]
        elif args.verb == "dual":
            if not specs:
                raise _Usage("dual needs at least one --spec")
            if weights and weights != (W11,):
                raise _Usage("dual is pinned to weight 1,1")
            reports = _dual_reports(specs, args.kmax)
        else:  # verify
            if weights is not None and len(weights) < 2:
                raise _Usage("verify needs at least two weights")
            targets = specs or list(catalog())
            reports = [
                full_report(spec, args.kmax, weights or DEFAULT_WEIGHTS)
                for spec in targets
            ]
    except (_Usage, SpecError, ValueError) as exc:
        print(f"lmtool: error: {exc}", file=sys.stderr)
        return 2
    except (NotStabilizedError, NonPolynomialError) as exc:
        print(f"lmtool: not stabilized: {exc}", file=sys.stderr)
        print("lmtool: raise --kmax and rerun", file=sys.stderr)
        return 3

    try:
        _emit(_render(reports, args.format, args.timing), args.out)
    except OSError as exc:
        print(f"lmtool: error: cannot write output: {exc}", file=sys.stderr)
        return 2

    failed = [r for r in reports if not r.ok]
    for r in failed:
        bad = [k for k, v in r.verdicts.items() if not v]
        print(f"lmtool: verdict failure for {r.name}: {', '.join(bad)}", file=sys.stderr)
        for label in ("hilbert_M", "hilbert_D", "hilbert_dual", "hilbert_hom"):
            seq = getattr(r, label)
            if seq is not None:
                print(f"lmtool:   {label} = {list(seq)}", file=sys.stderr)
        if r.p_by_weight is not None:
            for w, p in r.p_by_weight:
                print(f"lmtool:   p{w} = {list(p)}", file=sys.stderr)
    return 1 if failed else 0


def main(argv: Sequence[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
