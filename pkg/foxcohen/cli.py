import argparse
import csv
import io
import json
import logging
import sys

from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO

from pydantic import BaseModel
from tabulate import tabulate

from foxcohen.catalog import default_catalog, get_space
from foxcohen.cohen import CohenElement, CohenGroup
from foxcohen.exceptions import DomainError, FoxCohenException, SpaceModelError
from foxcohen.fox import phi_bruteforce, phi_closed, phi_recurrence
from foxcohen.homotopy import SpaceModel
from foxcohen.loader import load_space_file, serialize_space
from foxcohen.numtheory import commutes_by_degree, delta, stem_report
from foxcohen.torus import (
    SubsetOrder,
    TorusGroup,
    tau_kernel_multiplicities,
    tau_multiplicities,
)
from foxcohen.types import INFINITE, Order, Special
from foxcohen.utils import CONVENTION_NOTE
from foxcohen.verify import BLOCKS, CheckResult, CheckStatus, Verifier

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_INPUT = 3

CATALOG_PREFIX = "catalog:"
LITERAL_COMMANDS = ("group", "tau")


class RunReport(BaseModel):
    command: str
    inputs: Dict[str, str]
    outputs: List[str] = []
    checks: List[CheckResult] = []
    exit_code: int = EXIT_OK


Handler = Callable[[argparse.Namespace], RunReport]


def _report(args: argparse.Namespace, outputs: List[str], exit_code: int = EXIT_OK) -> RunReport:
    inputs = {k: str(v) for k, v in sorted(vars(args).items()) if k != "handler"}
    return RunReport(command=args.command, inputs=inputs, outputs=outputs, exit_code=exit_code)


def render(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Special):
        return value.value
    return str(value)


def render_table(headers: Sequence[str], rows: List[List[Any]], fmt: str) -> List[str]:
    """Rows as CSV (header row, comma separated) or as a markdown table."""
    cells = [[render(v) for v in row] for row in rows]
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(cells)
        return buffer.getvalue().splitlines()
    table = tabulate(cells, headers=list(headers), tablefmt="github", disable_numparse=True)
    return table.splitlines()


def parse_order(text: str) -> Order:
    message = f"order must be a positive integer or inf, got {text!r}"
    if text.strip().lower() in ("inf", "infinite"):
        return INFINITE
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(message) from e
    if value < 1:
        raise argparse.ArgumentTypeError(message)
    return value


def parse_literal(text: str) -> Dict[str, List[int]]:
    """JSON object mapping keys to integer coefficient arrays."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DomainError(f"element literal {text!r} is not JSON: {e.msg}") from e
    if not isinstance(raw, dict):
        raise DomainError(f"element literal {text!r} must be a JSON object")
    for key, coeffs in raw.items():
        if not isinstance(coeffs, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in coeffs
        ):
            raise DomainError(f"coefficients of {key!r} must be an array of integers")
    return raw


def resolve_space(source: str, validate: bool = True) -> SpaceModel:
    if source.startswith(CATALOG_PREFIX):
        return get_space(source[len(CATALOG_PREFIX) :])
    return load_space_file(source, validate)


def dump(element: Dict[str, List[int]]) -> str:
    return json.dumps(element, separators=(",", ":"))


# phi and tables


def cmd_phi(args: argparse.Namespace) -> RunReport:
    methods: Dict[str, Callable[[int, int], int]] = {
        "bruteforce": phi_bruteforce,
        "recurrence": phi_recurrence,
        "closed": phi_closed,
    }
    if args.method != "all":
        value = methods[args.method](args.l, args.k)
        return _report(args, [str(value), f"# {CONVENTION_NOTE}"])
    values = [(name, method(args.l, args.k)) for name, method in methods.items()]
    outputs = [f"{name}: {value}" for name, value in values]
    agree = len({value for _, value in values}) == 1
    outputs.append("AGREE" if agree else "DISAGREE")
    outputs.append(f"# {CONVENTION_NOTE}")
    return _report(args, outputs, EXIT_OK if agree else EXIT_CHECK_FAILED)


def cmd_phi_table(args: argparse.Namespace) -> RunReport:
    if args.max_k < 1:
        raise DomainError(f"max-k must be at least 1, got {args.max_k}")
    rows: List[List[Any]] = [
        [l, k, phi_recurrence(l, k)] for k in range(1, args.max_k + 1) for l in range(1, k + 1)
    ]
    outputs = [f"# {CONVENTION_NOTE}"] + render_table(["l", "k", "phi"], rows, args.format)
    return _report(args, outputs)


def cmd_delta(args: argparse.Namespace) -> RunReport:
    return _report(args, [str(delta(args.n, args.m).value)])


def cmd_commutes(args: argparse.Namespace) -> RunReport:
    return _report(args, [render(commutes_by_degree(args.n, args.m, args.order))])


def cmd_stems(args: argparse.Namespace) -> RunReport:
    if args.first < 1 or args.last < args.first:
        raise DomainError(f"stem range needs 1 <= first <= last, got {args.first}..{args.last}")
    headers = ["n", "delta_low", "delta_high", "j4nm1_abelian", "j4np1_abelian"]
    rows: List[List[Any]] = []
    for n in range(args.first, args.last + 1):
        report = stem_report(n)
        rows.append([getattr(report, h) for h in headers])
    return _report(args, render_table(headers, rows, args.format))


# group


def _cohen_element(group: CohenGroup, text: str) -> CohenElement:
    coords: Dict[int, List[int]] = {}
    for key, coeffs in parse_literal(text).items():
        if not key.isdigit():
            raise DomainError(f"degree key {key!r} is not a decimal integer")
        coords[int(key)] = coeffs
    return group.element(coords)


def cmd_group(args: argparse.Namespace) -> RunReport:
    group = CohenGroup(resolve_space(args.space), args.level)
    elements = [_cohen_element(group, text) for text in args.elements]
    arity = {"mul": 2, "comm": 2, "inv": 1, "order": 1, "pow": 1}
    if (needed := arity.get(args.operation, 0)) != len(elements):
        raise DomainError(
            f"group {args.operation} takes {needed} element literals, got {len(elements)}"
        )
    if args.operation == "mul":
        outputs = [dump(group.multiply(*elements).to_dict())]
    elif args.operation == "comm":
        outputs = [dump(group.commutator(*elements).to_dict())]
    elif args.operation == "inv":
        outputs = [dump(group.inverse(elements[0]).to_dict())]
    elif args.operation == "pow":
        outputs = [dump(group.power(elements[0], args.exponent).to_dict())]
    elif args.operation == "order":
        outputs = [render(group.order(elements[0], args.bound))]
    elif args.operation == "is-abelian":
        report = group.is_abelian()
        outputs = [render(report.abelian)]
        if report.witness is not None:
            a, b = report.witness
            outputs.append(f"witness {a[0]}:{a[1]} {b[0]}:{b[1]}")
    elif args.operation == "nilpotency":
        outputs = [render(group.nilpotency_probe(args.depth))]
    else:
        outputs = [group.enumerate_group(args.size_bound).json()]
    return _report(args, outputs)


# tau


def cmd_tau(args: argparse.Namespace) -> RunReport:
    if args.operation == "multiplicities":
        model = resolve_space(args.space) if args.space else None
        rows: List[List[Any]] = [
            [d, c, tau_kernel_multiplicities(args.n, model).get(d, 0)]
            for d, c in tau_multiplicities(args.n, model).items()
        ]
        return _report(args, render_table(["degree", "copies", "kernel"], rows, args.format))
    if not args.space or args.level is None:
        raise DomainError(f"tau {args.operation} needs --space and --level")
    group = TorusGroup(resolve_space(args.space), args.level, SubsetOrder(args.order))
    elements = [group.element(parse_literal(text)) for text in args.elements]
    if len(elements) != 2:
        raise DomainError(f"tau {args.operation} takes 2 element literals, got {len(elements)}")
    if args.operation == "mul":
        result = group.multiply(*elements)
    else:
        result = group.commutator(*elements)
    return _report(args, [dump(result.to_dict())])


# space


def cmd_space(args: argparse.Namespace) -> RunReport:
    if args.operation == "list":
        return _report(args, default_catalog().names())
    model = resolve_space(args.source, validate=False)
    if args.operation == "show":
        return _report(args, serialize_space(model).splitlines())
    if violations := model.validate():
        return _report(args, [str(v) for v in violations], EXIT_CHECK_FAILED)
    return _report(args, [f"{model.name}: valid"])


def cmd_verify(args: argparse.Namespace) -> RunReport:
    results = Verifier().run(args.only)
    rows: List[List[Any]] = [[r.block, r.name, r.status.value, r.detail] for r in results]
    failed = any(r.status is CheckStatus.FAIL for r in results)
    report = _report(
        args,
        render_table(["block", "check", "status", "detail"], rows, "md"),
        EXIT_CHECK_FAILED if failed else EXIT_OK,
    )
    report.checks = results
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="foxcohen",
        description="Fox function tables, commutativity criteria and Cohen group arithmetic.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    commands = parser.add_subparsers(dest="command", required=True)

    phi = commands.add_parser("phi", help="evaluate the Fox function")
    phi.add_argument("--l", type=int, required=True)
    phi.add_argument("--k", type=int, required=True)
    phi.add_argument(
        "--method", choices=["bruteforce", "recurrence", "closed", "all"], default="recurrence"
    )
    phi.set_defaults(handler=cmd_phi)

    table = commands.add_parser("phi-table", help="triangular table of phi(l, k)")
    table.add_argument("--max-k", type=int, required=True)
    table.add_argument("--format", choices=["csv", "md"], default="csv")
    table.set_defaults(handler=cmd_phi_table)

    delta_cmd = commands.add_parser("delta", help="the delta table entry")
    delta_cmd.add_argument("n", type=int)
    delta_cmd.add_argument("m", type=int)
    delta_cmd.set_defaults(handler=cmd_delta)

    commutes = commands.add_parser("commutes", help="commutativity by degree and bracket order")
    commutes.add_argument("n", type=int)
    commutes.add_argument("m", type=int)
    commutes.add_argument("order", type=parse_order)
    commutes.set_defaults(handler=cmd_commutes)

    stems = commands.add_parser("stems", help="abelianness of the 1- and 3-stem levels")
    stems.add_argument("first", type=int)
    stems.add_argument("last", type=int)
    stems.add_argument("--format", choices=["csv", "md"], default="md")
    stems.set_defaults(handler=cmd_stems)

    group = commands.add_parser("group", help="Cohen group arithmetic")
    group.add_argument(
        "operation",
        choices=["mul", "inv", "comm", "order", "pow", "is-abelian", "nilpotency", "enumerate"],
    )
    group.add_argument("elements", nargs="*", help='literals such as \'{"2":[1]}\'')
    group.add_argument("--space", required=True, help="FILE or catalog:NAME")
    group.add_argument("--level", type=int, required=True)
    group.add_argument("--exponent", type=int, default=1, help="for pow")
    group.add_argument("--bound", type=int, default=None, help="for order")
    group.add_argument("--depth", type=int, default=8, help="for nilpotency")
    group.add_argument("--size-bound", type=int, default=None, help="for enumerate")
    group.set_defaults(handler=cmd_group)

    tau = commands.add_parser("tau", help="class-2 torus group arithmetic")
    tau.add_argument("operation", choices=["mul", "comm", "multiplicities"])
    tau.add_argument("elements", nargs="*", help='literals such as \'{"1,2":[1]}\'')
    tau.add_argument("--space", default=None, help="FILE or catalog:NAME")
    tau.add_argument("--level", type=int, default=None)
    tau.add_argument("--n", type=int, default=8, help="tau_n for multiplicities")
    tau.add_argument("--order", choices=[o.value for o in SubsetOrder], default="colex")
    tau.add_argument("--format", choices=["csv", "md"], default="md")
    tau.set_defaults(handler=cmd_tau)

    space = commands.add_parser("space", help="inspect space models")
    space.add_argument("operation", choices=["validate", "show", "list"])
    space.add_argument("source", nargs="?", default="", help="FILE or catalog:NAME")
    space.set_defaults(handler=cmd_space)

    verify = commands.add_parser("verify", help="run the regression suite")
    verify.add_argument("--only", action="append", choices=list(BLOCKS), default=None)
    verify.set_defaults(handler=cmd_verify)
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s"
    )


def run(argv: Optional[Sequence[str]] = None) -> RunReport:
    parser = build_parser()
    # element literals may follow the options, where the operation word has
    # already closed the positional run
    args, extras = parser.parse_known_args(argv)
    if extras:
        if args.command not in LITERAL_COMMANDS or any(e.startswith("-") for e in extras):
            parser.error(f"unrecognized arguments: {' '.join(extras)}")
        args.elements = list(args.elements) + extras
    if args.command == "space" and args.operation != "list" and not args.source:
        parser.error("space validate and space show need a FILE or catalog:NAME")
    configure_logging(args.verbose)
    logging.getLogger("foxcohen").info("Running %s", args.command)
    handler: Handler = args.handler
    return handler(args)


def main(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """Entry point of the ``foxcohen`` command; returns the exit code."""
    out = stdout if stdout is not None else sys.stdout
    try:
        report = run(argv)
    except SpaceModelError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: cannot read {e.filename}: {e.strerror}", file=sys.stderr)
        return EXIT_INPUT
    except (FoxCohenException, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    for line in report.outputs:
        print(line, file=out)
    return report.exit_code
