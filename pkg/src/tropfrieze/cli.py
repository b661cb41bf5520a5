"""Command line front end.

Every subcommand takes a spec path, or ``builtin:NAME`` for a built-in
example.  Exit status is 0 on success, 1 if any check FAILed, 2 on usage,
I/O, parse or validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path
from typing import Callable, Sequence

from . import example
from .abelian import format_element
from .catspec import (
    CategorySpec,
    SpecFormatError,
    SpecValidationError,
    candidate_exchange_pairs,
    emit_spec,
    load_spec,
    validate,
)
from .frieze import (
    DEFAULT_WORK_LIMIT,
    ClosureError,
    FriezeValues,
    NotCyclicWindowError,
    TheoremHypothesisError,
    WorkLimitError,
    check_frieze,
    cone_matrix,
    enumerate_admissible,
    frieze_from_phi,
    phi_admissible,
    propagate_window,
)
from .index import index_table
from .report import CheckItem, any_failed, summarize
from .theta import theta_from_spec, verify_dichotomy, verify_theorem_A

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
BUILTIN_PREFIX = "builtin:"


class UsageError(Exception):
    pass


def emit_dot(spec: CategorySpec) -> str:
    """Graphviz digraph of the off-diagonal Hom entries, in indecomposable order."""
    lines = ["digraph AR {"]
    for n in spec.indecs:
        lines.append(f'  "{n}";')
    for a in spec.indecs:
        for b in spec.indecs:
            dim = spec.hom_dim(a, b)
            if a != b and dim >= 1:
                label = f' [label="{dim}"]' if dim > 1 else ""
                lines.append(f'  "{a}" -> "{b}"{label};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_spec(ref: str, strict: bool = True) -> CategorySpec:
    if ref.startswith(BUILTIN_PREFIX):
        name = ref[len(BUILTIN_PREFIX):]
        try:
            return example.builtin(name)
        except KeyError as e:
            raise UsageError(e.args[0]) from None
    try:
        text = Path(ref).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read spec {ref}: {e.strerror or e}") from None
    return load_spec(text, strict=strict)


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _print_items(items: Sequence[CheckItem], as_json: bool, out) -> int:
    if as_json:
        payload = {"items": [{"name": it.name, "status": it.status, "detail": it.detail} for it in items],
                   "summary": summarize(items)}
        print(json.dumps(payload, indent=2), file=out)
    else:
        for it in items:
            print(it.line(), file=out)
        print(summarize(items), file=out)
    return EXIT_FAIL if any_failed(items) else EXIT_OK


def _table(rows: Sequence[tuple[str, str]], out) -> None:
    width = max((len(a) for a, _ in rows), default=0)
    for a, b in rows:
        print(f"{a:<{width}}  {b}", file=out)


# --- subcommands ------------------------------------------------------------

def cmd_validate(args, out) -> int:
    spec = read_spec(args.spec, strict=False)
    problems = validate(spec)
    if args.json:
        print(json.dumps({"valid": not problems,
                          "violations": [{"code": v.code, "message": v.message} for v in problems]},
                         indent=2), file=out)
    else:
        for v in problems:
            print(f"FAIL    {v}", file=out)
        print("valid" if not problems else f"{len(problems)} violation(s)", file=out)
    return EXIT_FAIL if problems else EXIT_OK


def cmd_index(args, out) -> int:
    spec = read_spec(args.spec)
    table = index_table(spec)
    if args.json:
        print(json.dumps(table.to_json(), indent=2), file=out)
    else:
        _table([(s, format_element(x)) for s, x in table.items()], out)
    return EXIT_OK


def cmd_theta(args, out) -> int:
    spec = read_spec(args.spec)
    theta = theta_from_spec(spec)
    if args.json:
        print(json.dumps(theta.to_json(), indent=2), file=out)
    else:
        _table([(f"theta({s})", format_element(c))
                for s, c in zip(spec.simple_basis, theta.hom.columns())], out)
    return EXIT_OK


def cmd_check_additivity(args, out) -> int:
    spec = read_spec(args.spec)
    table = index_table(spec)
    return _print_items(verify_theorem_A(spec, table, theta_from_spec(spec, table)), args.json, out)


def cmd_check_dichotomy(args, out) -> int:
    return _print_items(verify_dichotomy(read_spec(args.spec)), args.json, out)


def cmd_exchange_pairs(args, out) -> int:
    spec = read_spec(args.spec)
    declared = {(p.s0, p.s_top) for p in spec.exchange_pairs}
    pairs = candidate_exchange_pairs(spec)
    if args.json:
        print(json.dumps([{"s0": a, "s_top": b, "declared": (a, b) in declared} for a, b in pairs],
                         indent=2), file=out)
    else:
        _table([(f"({a}, {b})", "declared" if (a, b) in declared else "") for a, b in pairs], out)
        print(f"{len(pairs)} candidate pair(s), {len(declared)} declared", file=out)
    return EXIT_OK


def cmd_frieze_cone(args, out) -> int:
    spec = read_spec(args.spec)
    cone = cone_matrix(spec, theta_from_spec(spec))
    if args.json:
        print(json.dumps({"basis": list(cone.basis), "rows": cone.as_lists()}, indent=2), file=out)
    else:
        for simple, ineq in zip(spec.simple_basis, cone.inequalities()):
            print(f"{simple}: {ineq}", file=out)
    return EXIT_OK


def cmd_frieze(args, out) -> int:
    spec = read_spec(args.spec)
    table = index_table(spec)
    cone = cone_matrix(spec, theta_from_spec(spec, table))
    if len(args.phi) != len(spec.tilting):
        raise UsageError(f"--phi needs {len(spec.tilting)} values, got {len(args.phi)}")
    if not phi_admissible(cone, args.phi):
        print(f"warning: phi = {tuple(args.phi)} is outside the admissible cone", file=args.err)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        f = frieze_from_phi(spec, table, args.phi, cone)
    items = check_frieze(spec, f) if args.check else []
    if args.json:
        payload = {"values": f.to_json()}
        if args.check:
            payload["checks"] = [{"name": it.name, "status": it.status, **it.data} for it in items]
        print(json.dumps(payload, indent=2), file=out)
    else:
        _table([(s, str(f[s])) for s in spec.indecs], out)
        if args.check:
            for it in items:
                print(it.line(), file=out)
            print(summarize(items), file=out)
    return EXIT_FAIL if any_failed(items) else EXIT_OK


def cmd_check_frieze(args, out) -> int:
    spec = read_spec(args.spec)
    try:
        raw = json.loads(Path(args.values).read_text(encoding="utf-8"))
    except OSError as e:
        raise UsageError(f"cannot read values file {args.values}: {e.strerror or e}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"values file is not JSON: line {e.lineno}: {e.msg}") from None
    if not isinstance(raw, dict) or not all(isinstance(v, int) and not isinstance(v, bool)
                                            for v in raw.values()):
        raise UsageError("values file must map indecomposable names to integers")
    missing = [s for s in spec.indecs if s not in raw]
    if missing:
        raise UsageError(f"values file lacks {missing}")
    return _print_items(check_frieze(spec, FriezeValues({s: raw[s] for s in spec.indecs})), args.json, out)


def cmd_enumerate(args, out) -> int:
    spec = read_spec(args.spec)
    cone = cone_matrix(spec, theta_from_spec(spec))
    found = enumerate_admissible(cone, args.bound, work_limit=args.work_limit, threads=args.threads)
    shown = found if args.limit is None else found[:args.limit]
    if args.json:
        print(json.dumps({"count": len(found), "phis": [list(p) for p in shown]}), file=out)
    else:
        for p in shown:
            print(",".join(str(v) for v in p), file=out)
        print(f"{len(found)} admissible phi in [-{args.bound}, {args.bound}]^{len(cone.basis)}", file=out)
    return EXIT_OK


def cmd_propagate(args, out) -> int:
    spec = read_spec(args.spec)
    try:
        f = propagate_window(spec, args.seed, args.start)
    except ClosureError as e:
        if args.json:
            print(json.dumps({"closed": False, "position": e.position,
                              "seeded": e.seeded, "computed": e.computed}), file=out)
        else:
            print(f"FAIL    {e}", file=out)
        return EXIT_FAIL
    if args.json:
        print(json.dumps({"closed": True, "values": f.to_json()}, indent=2), file=out)
    else:
        _table([(s, str(f[s])) for s in spec.indecs], out)
        print("PASS    recursion closes after one revolution", file=out)
    return EXIT_OK


def cmd_dot(args, out) -> int:
    out.write(emit_dot(read_spec(args.spec)))
    return EXIT_OK


def full_report(spec: CategorySpec, out) -> int:
    """Run the whole verification pipeline on ``spec`` and print a summary."""
    status = EXIT_OK

    def section(title: str) -> None:
        print(f"== {title}", file=out)

    section("validate")
    problems = validate(spec)
    for v in problems:
        print(f"FAIL    {v}", file=out)
    print("valid" if not problems else f"{len(problems)} violation(s)", file=out)
    if problems:
        return EXIT_FAIL

    section("index")
    table = index_table(spec)
    _table([(s, format_element(x)) for s, x in table.items()], out)

    section("theta")
    theta = theta_from_spec(spec, table)
    _table([(f"theta({s})", format_element(c)) for s, c in zip(spec.simple_basis, theta.hom.columns())], out)

    section("additivity up to theta")
    items = verify_theorem_A(spec, table, theta)
    for it in items:
        print(it.line(), file=out)
    print(summarize(items), file=out)
    status = max(status, EXIT_FAIL if any_failed(items) else EXIT_OK)

    section("dichotomy")
    items = verify_dichotomy(spec)
    for it in items:
        print(it.line(), file=out)
    print(summarize(items), file=out)
    status = max(status, EXIT_FAIL if any_failed(items) else EXIT_OK)

    section("cone")
    cone = cone_matrix(spec, theta)
    for ineq in cone.inequalities():
        print(ineq, file=out)

    if spec.indecs == example.CYCLE:
        fx = example.builtin_fixtures()
        section(f"frieze for phi = {fx.reference_phi}")
        f = frieze_from_phi(spec, table, fx.reference_phi, cone)
        _table([(s, str(f[s])) for s in spec.indecs], out)
        items = check_frieze(spec, f)
        for it in items:
            print(it.line(), file=out)
        print(summarize(items), file=out)
        status = max(status, EXIT_FAIL if any_failed(items) else EXIT_OK)

    print("== overall: " + ("PASS" if status == EXIT_OK else "FAIL"), file=out)
    return status


def cmd_example(args, out) -> int:
    if args.name not in example.BUILTINS:
        raise UsageError(f"unknown example {args.name!r}; available: {sorted(example.BUILTINS)}")
    spec = example.builtin(args.name)
    if args.emit:
        try:
            Path(args.emit).write_text(emit_spec(spec), encoding="utf-8")
        except OSError as e:
            raise UsageError(f"cannot write {args.emit}: {e.strerror or e}") from None
    if args.report:
        return full_report(spec, out)
    if not args.emit:
        out.write(emit_spec(spec))
    return EXIT_OK


COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate,
    "index": cmd_index,
    "theta": cmd_theta,
    "check-additivity": cmd_check_additivity,
    "check-dichotomy": cmd_check_dichotomy,
    "exchange-pairs": cmd_exchange_pairs,
    "frieze-cone": cmd_frieze_cone,
    "frieze": cmd_frieze,
    "check-frieze": cmd_check_frieze,
    "enumerate": cmd_enumerate,
    "propagate": cmd_propagate,
    "dot": cmd_dot,
    "example": cmd_example,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tropfrieze", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def spec_cmd(name: str, help: str, json_flag: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("spec", help="spec file, or builtin:NAME")
        if json_flag:
            p.add_argument("--json", action="store_true", help="machine readable output")
        return p

    spec_cmd("validate", "check a spec's invariants")
    spec_cmd("index", "index of every indecomposable")
    spec_cmd("theta", "the error term on simple modules")
    spec_cmd("check-additivity", "alternating index sums against theta on labelled angles")
    spec_cmd("check-dichotomy", "one zero image class per exchange pair")
    spec_cmd("exchange-pairs", "candidate exchange pairs from the Hom table")
    spec_cmd("frieze-cone", "inequalities an admissible phi must satisfy")
    p = spec_cmd("frieze", "values of phi o index")
    p.add_argument("--phi", type=_ints, required=True, help="comma separated values on the tilting summands")
    p.add_argument("--check", action="store_true", help="also check every exchange relation")
    p = spec_cmd("check-frieze", "check exchange relations for given values")
    p.add_argument("--values", required=True, help="JSON file mapping names to integers")
    p = spec_cmd("enumerate", "admissible phi in a box")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--limit", type=int, default=None, help="print at most N vectors")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--work-limit", type=int, default=DEFAULT_WORK_LIMIT)
    p = spec_cmd("propagate", "solve the window recursion around the AR cycle")
    p.add_argument("--seed", type=_ints, required=True)
    p.add_argument("--start", required=True)
    spec_cmd("dot", "Graphviz rendering of the AR quiver", json_flag=False)
    p = sub.add_parser("example", help="built-in example specs")
    p.add_argument("name", help=f"one of {sorted(example.BUILTINS)}")
    p.add_argument("--emit", metavar="FILE", help="write the spec file")
    p.add_argument("--report", action="store_true", help="run the full verification pipeline")
    return parser


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    # "--phi -17,-8" would otherwise be read as two options
    out, it = [], iter(argv)
    for a in it:
        if a in ("--phi", "--seed"):
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_glue_negative_values(argv))
        args.err = err
        return COMMANDS[args.command](args, out)
    except UsageError as e:
        print(f"usage error: {e}", file=err)
    except SpecFormatError as e:
        print(f"spec parse error: {e}", file=err)
    except SpecValidationError as e:
        print(f"invalid spec: {e}", file=err)
    except (TheoremHypothesisError, NotCyclicWindowError, WorkLimitError) as e:
        print(f"refused: {e}", file=err)
    except (LookupError, ValueError) as e:
        print(f"error: {e}", file=err)
    except SystemExit as e:  # --help
        return EXIT_OK if not e.code else EXIT_USAGE
    return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
