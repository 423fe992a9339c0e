"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 depth
limit reached before the exploration closed.  Output is deterministic:
identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional, Sequence

from .algebra import Algebra, AlgebraSpec, build_algebra
from .errors import (
    IncompleteExplorationError,
    SpecError,
    TaumutError,
)
from .grothendieck import duality_report, grothendieck_data
from .linalg import QQ, Field, PrimeField
from .modules import IsoRegistry, in_fac
from .nakayama import count_value, format_count_table
from .presets import PRESET_HELP, preset_spec
from .quotient import central_ideal, verify_ejr
from .smc import check_label_coincidence, check_smc_axioms, smc_of_vertex
from .tautilt import (
    ExchangeQuiver,
    SupportPair,
    _dim_string,
    explore,
    export_dot,
    export_records,
    restrict_quiver,
    semibrick_ids_of,
)


def _field_from_text(text: str) -> Field:
    low = text.strip().lower()
    if low in ("q", "qq"):
        return QQ
    if low.startswith("fp:"):
        try:
            return PrimeField(int(low[3:]))
        except (ValueError, TaumutError):
            raise SpecError(f"bad prime in field spec {text!r}") from None
    raise SpecError(f"unknown field {text!r}; use q or fp:<p>")


def _resolve_field(explicit: Optional[str]) -> Field:
    if explicit is not None:
        return _field_from_text(explicit)
    env = os.environ.get("TAUMUT_FIELD")
    if env:
        return _field_from_text(env)
    return QQ


def _load_algebra(args) -> Algebra:
    field = _resolve_field(args.field)
    if args.preset and args.algebra:
        raise SpecError("give either --preset or --algebra, not both")
    if args.preset:
        from .presets import build_preset

        return build_preset(args.preset, field)
    if args.algebra:
        try:
            spec = AlgebraSpec.load(args.algebra)
        except (OSError, ValueError, KeyError) as exc:
            raise SpecError(f"cannot read algebra file: {exc}") from None
        if args.field is not None or os.environ.get("TAUMUT_FIELD"):
            spec = spec.with_field(field)
        return build_algebra(spec, label=os.path.basename(args.algebra))
    raise SpecError("an algebra source is required: --preset or --algebra")


def _write(path: Optional[str], text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _pair_line(reg: IsoRegistry, pair: SupportPair) -> str:
    dims = ",".join(_dim_string(reg.module(i).dims) for i in pair.summand_ids)
    supp = ",".join(
        reg.algebra.quiver.vertices[v] for v in pair.support_complement
    )
    out = dims if dims else "0"
    if supp:
        out += f" | {supp}"
    return out


def _explore(args) -> ExchangeQuiver:
    algebra = _load_algebra(args)
    return explore(IsoRegistry(algebra), args.max_depth)


def _status(quiver: ExchangeQuiver) -> str:
    state = "complete" if quiver.complete else (
        f"incomplete (max depth {quiver.max_depth})"
    )
    return f"{quiver.n_vertices} vertices, {quiver.n_arrows} arrows, {state}"


def cmd_explore(args) -> int:
    quiver = _explore(args)
    if args.dot:
        _write(args.dot, export_dot(quiver))
    if args.out:
        if args.format == "dot":
            _write(args.out, export_dot(quiver))
        else:
            _write(
                args.out,
                json.dumps(export_records(quiver), indent=2, sort_keys=True)
                + "\n",
            )
    print(_status(quiver))
    return 0 if quiver.complete else 3


def cmd_semibricks(args) -> int:
    quiver = _explore(args)
    reg = quiver.registry
    for i, pair in enumerate(quiver.pairs):
        sb = sorted(
            _dim_string(reg.module(t).dims) for t in semibrick_ids_of(pair)
        )
        print(f"vertex {i + 1:02d}: pair {_pair_line(reg, pair)} ; semibrick "
              + (",".join(sb) if sb else "-"))
    print(_status(quiver))
    return 0 if quiver.complete else 3


def cmd_smc(args) -> int:
    quiver = _explore(args)
    if not quiver.complete:
        print(_status(quiver))
        return 3
    reg = quiver.registry
    for i, pair in enumerate(quiver.pairs):
        x = smc_of_vertex(pair)
        d0 = ",".join(
            sorted(_dim_string(reg.module(s).dims) for s in x.degree0)
        )
        d1 = ",".join(
            sorted(_dim_string(reg.module(s).dims) for s in x.degree_minus1)
        )
        print(f"vertex {i + 1:02d}: degree0 {d0 or '-'} | shifted {d1 or '-'}")
    print(_status(quiver))
    return 0


def cmd_gvectors(args) -> int:
    quiver = _explore(args)
    if not quiver.complete:
        print(_status(quiver))
        return 3
    failures = 0
    records = []
    for i, pair in enumerate(quiver.pairs):
        data = grothendieck_data(pair)
        report = duality_report(pair)
        if not report["ok"]:
            failures += 1
        records.append(
            {
                "vertex": i,
                "g": [list(r) for r in data.g],
                "c": [list(r) for r in data.c],
                "d": list(data.d),
                "d_prime": list(data.d_prime),
                "det_g": report["det_g"],
                "det_c": report["det_c"],
                "ok": report["ok"],
            }
        )
        print(
            f"vertex {i + 1:02d}: det g {report['det_g']:+d}, det c "
            f"{report['det_c']:+d}, duality "
            + ("ok" if report["ok"] else "FAIL")
        )
    if args.out:
        _write(
            args.out, json.dumps(records, indent=2, sort_keys=True) + "\n"
        )
    print(_status(quiver))
    return 1 if failures else 0


def cmd_count(args) -> int:
    if args.kind not in ("linear", "cyclic"):
        raise SpecError("count needs --kind linear or cyclic")
    table = format_count_table(args.kind, args.n, args.l)
    print(table)
    letter = "a" if args.kind == "linear" else "b"
    value = count_value(args.kind, args.n, args.l)
    print(f"{letter}({args.n},{args.l}) = {value}")
    if args.out:
        payload = {
            "kind": args.kind,
            "values": [
                {"n": n, "l": l, "value": count_value(args.kind, n, l)}
                for l in range(1, args.l + 1)
                for n in range(1, args.n + 1)
            ],
        }
        _write(args.out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0


def _verify_quiver(quiver: ExchangeQuiver) -> List[str]:
    """Invariant suite for a completely explored quiver; returns failure
    descriptions."""
    reg = quiver.registry
    n = quiver.algebra.n_vertices
    failures: List[str] = []
    out_deg = [0] * quiver.n_vertices
    in_deg = [0] * quiver.n_vertices
    for s, t, _ in quiver.arrows:
        out_deg[s] += 1
        in_deg[t] += 1
    seen_semibricks = {}
    for i, pair in enumerate(quiver.pairs):
        sb = tuple(sorted(semibrick_ids_of(pair)))
        if in_deg[i] + out_deg[i] != n:
            failures.append(f"degree law fails at vertex {i}")
        if out_deg[i] != len(sb):
            failures.append(f"out-degree != semibrick size at vertex {i}")
        if len(sb) > n:
            failures.append(f"semibrick larger than {n} at vertex {i}")
        if sb in seen_semibricks:
            failures.append(
                f"semibrick of vertex {i} repeats vertex {seen_semibricks[sb]}"
            )
        seen_semibricks[sb] = i
        report = check_smc_axioms(smc_of_vertex(pair, check=False))
        if not report.ok:
            failures.append(
                f"smc axioms fail at vertex {i}: {report.violations[0]}"
            )
        dual = duality_report(pair)
        if not dual["ok"]:
            failures.append(f"duality fails at vertex {i}")
    for s, t, lab in quiver.arrows:
        label = reg.module(lab)
        src_module = quiver.pairs[s].module()
        if not in_fac(label, src_module):
            failures.append(f"label on {s}->{t} is not a factor of the source")
        if any(
            reg.hom_dim(j, lab) != 0 for j in quiver.pairs[t].summand_ids
        ):
            failures.append(f"label on {s}->{t} receives Hom from the target")
    shape = getattr(quiver.algebra, "nakayama_shape", None)
    if shape is not None:
        expected = count_value(shape.kind, shape.n, shape.l)
        if quiver.n_vertices != expected:
            failures.append(
                f"vertex count {quiver.n_vertices} != recurrence {expected}"
            )
    coincidence = check_label_coincidence(quiver)
    if not coincidence["ok"]:
        failures.append(f"label coincidence failures: {coincidence['failures']}")
    return failures


def cmd_verify(args) -> int:
    quiver = _explore(args)
    if not quiver.complete:
        print(_status(quiver))
        print("verification needs a complete exploration")
        return 3
    failures = _verify_quiver(quiver)
    print(_status(quiver))
    for f in failures:
        print("FAIL:", f)
    print("verify:", "ok" if not failures else f"{len(failures)} failures")
    return 1 if failures else 0


def cmd_quotient(args) -> int:
    algebra = _load_algebra(args)
    if not args.generator:
        raise SpecError("quotient needs at least one --generator expression")
    ideal = central_ideal(algebra, args.generator)
    report = verify_ejr(ideal, args.max_depth)
    print(f"vertices: {report.n_vertices[0]} vs {report.n_vertices[1]}")
    print(f"arrows: {report.n_arrows[0]} vs {report.n_arrows[1]}")
    print(f"vertex bijection: {report.vertex_bijection}")
    print(f"arrows match: {report.arrows_match}")
    print(f"labels fixed: {report.labels_fixed}")
    print(f"semibricks match: {report.semibricks_match}")
    print("quotient comparison:", "ok" if report.ok else "FAIL")
    return 0 if report.ok else 1


def _parse_dims(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise SpecError(f"bad dimension vector {text!r}") from None


def cmd_restrict(args) -> int:
    quiver = _explore(args)
    if not quiver.complete:
        print(_status(quiver))
        return 3
    if not args.summand:
        raise SpecError("restrict needs at least one --summand dim vector")
    reg = quiver.registry
    summand_ids = sorted(
        {i for pair in quiver.pairs for i in pair.summand_ids}
    )
    u_modules = []
    for text in args.summand:
        dims = _parse_dims(text)
        matches = [i for i in summand_ids if reg.module(i).dims == dims]
        if len(matches) != 1:
            raise SpecError(
                f"dim vector {text} matches {len(matches)} explored summands"
            )
        u_modules.append(reg.module(matches[0]))
    restriction = restrict_quiver(quiver, u_modules)
    rep = restriction.report
    print(
        f"restriction: {rep['n_vertices']} vertices, {rep['n_arrows']} arrows"
    )
    for s, t, lab in restriction.arrows:
        print(
            f"  {s + 1:02d} -> {t + 1:02d} label "
            f"{_dim_string(reg.module(lab).dims)}"
        )
    if restriction.source_index >= 0:
        source = quiver.pairs[restriction.source_index]
        print("source (the completion):", _pair_line(reg, source))
    if restriction.sink_index >= 0:
        print(
            "sink:", _pair_line(reg, quiver.pairs[restriction.sink_index])
        )
    for v in rep["violations"]:
        print("FAIL:", v)
    print("restriction:", "ok" if restriction.ok else "FAIL")
    return 0 if restriction.ok else 1


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="taumut",
        description="support tau-tilting pairs, semibricks, and exchange "
        "quivers over bound quiver algebras",
        epilog="presets: "
        + "; ".join(f"{k} ({v})" for k, v in sorted(PRESET_HELP.items())),
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_algebra_options(p):
        p.add_argument("--preset", help="named preset algebra")
        p.add_argument("--algebra", help="algebra file (JSON)")
        p.add_argument(
            "--field",
            help="ground field: q or fp:<p> (overrides TAUMUT_FIELD)",
        )
        p.add_argument("--max-depth", type=int, default=None)

    for verb, fn in (
        ("explore", cmd_explore),
        ("semibricks", cmd_semibricks),
        ("smc", cmd_smc),
        ("gvectors", cmd_gvectors),
        ("verify", cmd_verify),
        ("quotient", cmd_quotient),
        ("restrict", cmd_restrict),
    ):
        p = sub.add_parser(verb)
        add_algebra_options(p)
        p.set_defaults(fn=fn)
        if verb == "explore":
            p.add_argument("--dot", help="write DOT to this path")
            p.add_argument("--out", help="write export to this path")
            p.add_argument(
                "--format", choices=("dot", "records"), default="records"
            )
        if verb == "gvectors":
            p.add_argument("--out", help="write matrices as JSON")
        if verb == "quotient":
            p.add_argument(
                "--generator",
                action="append",
                default=[],
                help="ideal generator expression, e.g. 'a1*a2'",
            )
        if verb == "restrict":
            p.add_argument(
                "--summand",
                action="append",
                default=[],
                help="dim vector of a summand to fix, e.g. '0,1,0'",
            )

    p = sub.add_parser("count")
    p.add_argument("--kind", required=True, choices=("linear", "cyclic"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--out", help="write the table as JSON")
    p.set_defaults(fn=cmd_count)

    return parser.parse_args(argv)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = parse_args(argv)
    try:
        return args.fn(args)
    except IncompleteExplorationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TaumutError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
