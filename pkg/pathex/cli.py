"""
Command line front end. Results go to stdout; statistics and progress go to the
logger on stderr, so stdout is identical across runs with the same flags.

Exit status: 0 on success, 1 on domain, format, scale or budget errors, 2 on
verification findings, 64 on usage errors.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, NoReturn, Optional, Sequence

from . import factcheck
from .constructions import (
    conjecture_family,
    extremal_2p7,
    extremal_path_cliques,
    extremal_path_family,
    extremal_path_special,
    kopylov_A,
    kopylov_B,
)
from .core import dump_record, enable_pathex_debug_mode, init_pathex
from .detector import SearchBudget, free_check, longest_path
from .errors import CertificationError, DomainError, PathExError
from .formulas import (
    BRACKET_2P7_LABEL,
    LINEAR_2P7_LABEL,
    ForestMode,
    PathForest,
    TuranValue,
    ex_2p7,
    ex_connected_path,
    ex_forest,
    ex_forest_large_n,
    ex_kpl_large_n,
    ex_path,
)
from .graphcore import (
    Graph,
    GraphFormat,
    format_graphs,
    load_graphs,
    write_graph6,
)
from .oracle import (
    count_graphs_cycle_index,
    dump_witnesses,
    enumerate_nonisomorphic,
    oracle_ex,
)

logger = logging.getLogger("pathex.cli")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FINDING = 2
EXIT_USAGE = 64

HUMAN = "human"
JSON_LINES = "json-lines"

TWO_P7 = PathForest.of(7, 7)


class PathExArgumentParser(argparse.ArgumentParser):
    """
    Argument parser that exits with status 64 on usage errors.
    """

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _forest_arg(text: str) -> PathForest:
    try:
        return PathForest.parse(text)
    except DomainError as err:
        raise argparse.ArgumentTypeError(str(err)) from err


def _count_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from err
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {value}")
    return value


def _positive_arg(text: str) -> int:
    value = _count_arg(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _fact_arg(text: str) -> factcheck.FactId:
    name = f"fact{text}" if text.isdigit() else text
    try:
        return factcheck.FactId(name)
    except ValueError as err:
        choices = ", ".join(fact.value for fact in factcheck.FactId)
        raise argparse.ArgumentTypeError(
            f"unknown fact {text!r} (choose from {choices} or 1-7)"
        ) from err


def _add_format(parser: argparse.ArgumentParser, choices: Sequence[str]) -> None:
    parser.add_argument(
        "--format",
        choices=list(choices),
        default=choices[0],
        help=f"output format (default: {choices[0]})",
    )


#
# ex
#


def _value_record(n: int, forest: PathForest, value: TuranValue) -> dict:
    return {
        "n": n,
        "forest": list(forest.orders),
        "value": value.value,
        "argmax": value.argmax,
        "tie": value.tie,
        "winners": value.winners,
        "terms": {term.label: term.value for term in value.terms},
        "conjectural": value.conjectural,
        "valid": value.valid,
    }


def _evaluate(args: argparse.Namespace) -> TuranValue:
    n: int = args.n
    forest: PathForest = args.forest

    if args.connected:
        if forest.m != 1:
            raise DomainError("--connected takes a single path", "m = 1")
        return ex_connected_path(n, forest.orders[0])
    if args.large_n:
        if forest.m > 1 and len(set(forest.orders)) == 1:
            return ex_kpl_large_n(n, forest.m, forest.orders[0])
        return ex_forest_large_n(n, forest)
    if forest.m == 1:
        return ex_path(n, forest.orders[0])
    if forest == TWO_P7 and n >= 14 and args.mode == "auto":
        return ex_2p7(n)

    if args.mode == "auto":
        proven = forest.odd_count <= 1 and n >= forest.total
        mode = ForestMode.THEOREM7 if proven else ForestMode.CONJECTURE
    else:
        mode = ForestMode(args.mode)
    return ex_forest(n, forest, mode)


def _cmd_ex(args: argparse.Namespace) -> int:
    value = _evaluate(args)
    if args.format == JSON_LINES:
        print(dump_record(_value_record(args.n, args.forest, value)))
        return EXIT_OK

    notes = []
    if value.tie:
        notes.append(f"tie: {', '.join(value.winners)}")
    if value.conjectural:
        notes.append("conjectural")
    if value.valid is None:
        notes.append("valid for n sufficiently large")
    elif not value.valid:
        notes.append("below the proven range")
    suffix = f" ({'; '.join(notes)})" if notes else ""
    print(f"ex({args.n}, {args.forest}) = {value.value} [{value.argmax}]{suffix}")
    return EXIT_OK


#
# construct
#


def _require(value: Optional[object], flag: str, family: str) -> None:
    if value is None:
        raise DomainError(f"family {family} needs {flag}", flag)


def _build(args: argparse.Namespace) -> List[Graph]:
    family = args.family
    if family == "2p7":
        return extremal_2p7(args.n)
    if family == "conjecture":
        _require(args.forest, "--forest", family)
        return conjecture_family(args.n, args.forest)

    _require(args.k, "--k", family)
    if family == "path":
        if args.all:
            return extremal_path_family(args.n, args.k)
        return [extremal_path_cliques(args.n, args.k)]
    if family == "path-special":
        return [extremal_path_special(args.n, args.k, args.s)]
    if family == "kopylov-a":
        return [kopylov_A(args.n, args.k)]
    return [kopylov_B(args.n, args.k)]


def _render(graphs: Sequence[Graph], fmt: str) -> str:
    if fmt == JSON_LINES:
        lines = [
            dump_record(
                {"n": g.n, "edges": g.edge_count(), "graph6": write_graph6(g)}
            )
            for g in graphs
        ]
        return "\n".join(lines) + "\n"
    return format_graphs(graphs, GraphFormat(fmt))


def _cmd_construct(args: argparse.Namespace) -> int:
    graphs = _build(args)
    for graph in graphs:
        logger.info("constructed %s", graph)

    text = _render(graphs, args.format)
    if args.output:
        try:
            Path(args.output).write_text(text)
        except OSError as err:
            raise PathExError(f"unable to write {args.output}: {err}") from err
    else:
        sys.stdout.write(text)
    return EXIT_OK


#
# check
#


def _cmd_check(args: argparse.Namespace) -> int:
    if args.forest is None and not args.longest_path:
        raise DomainError("check needs --forest or --longest-path", "a query")
    fmt = GraphFormat(args.format_in) if args.format_in else None
    graphs = load_graphs(args.input, fmt)

    limits: Dict[str, float] = {}
    if args.node_limit is not None:
        limits["node_limit"] = args.node_limit
    if args.time_limit is not None:
        limits["time_limit"] = args.time_limit
    budget = SearchBudget(**limits)  # type: ignore[arg-type]

    for index, graph in enumerate(graphs):
        record: Dict[str, object] = {"index": index, "n": graph.n}
        if args.forest is not None:
            certificate = free_check(graph, args.forest, budget)
            certificate.verify(graph)
            logger.info("graph %d: %d search nodes", index, certificate.nodes)
            record.update(certificate.to_record())
        if args.longest_path:
            record["longest_path"] = longest_path(graph, budget)

        if args.format == JSON_LINES:
            if not args.witness:
                record.pop("witness", None)
            print(dump_record(record))
            continue

        if args.forest is not None:
            verdict = "free" if record["free"] else "contains"
            print(f"graph {index}: {verdict} {args.forest}")
            if args.witness and certificate.witness is not None:
                for line in certificate.witness.to_lines():
                    print(f"  {line}")
        if args.longest_path:
            print(f"graph {index}: longest path {record['longest_path']}")
    return EXIT_OK


#
# oracle
#


def _cmd_oracle(args: argparse.Namespace) -> int:
    result = oracle_ex(
        args.n,
        args.forest,
        allow_long=args.allow_long,
        workers=args.workers,
        connected=args.connected,
        collect_all=bool(args.dump_witnesses),
    )

    if args.dump_witnesses:
        lines = dump_witnesses(result)
        try:
            Path(args.dump_witnesses).write_text("\n".join(lines) + "\n")
        except OSError as err:
            raise PathExError(f"unable to write {args.dump_witnesses}: {err}") from err
        logger.info("wrote %d extremal classes", len(lines))

    if args.format == JSON_LINES:
        print(dump_record(result.to_record()))
    else:
        kind = "ex_conn" if result.connected else "ex"
        print(f"{kind}({result.n}, {result.forest}) = {result.value}")
        print(f"witness {write_graph6(result.witness)}")
    return EXIT_OK


#
# verify-facts
#


def _cmd_verify_facts(args: argparse.Namespace) -> int:
    facts = args.fact or None
    reports = factcheck.verify_all_facts(facts)

    for report in reports:
        if args.format == JSON_LINES:
            print(report.to_json())
            continue
        stated = "-" if report.stated_constant is None else report.stated_constant
        case = "-" if report.case_constant is None else report.case_constant
        print(
            f"{report.fact_id.value} {report.config}: "
            f"{report.verified_count}/{len(report.claims_checked)} claims verified, "
            f"bound {report.derived_bound} (stated {stated}, case {case}) "
            f"{report.status.value.upper()}"
        )

    passed = factcheck.all_passed(reports)
    if args.format == HUMAN:
        print("PASS" if passed else "FAIL")
    return EXIT_OK if passed else EXIT_FINDING


#
# table / count
#


def _cmd_table(args: argparse.Namespace) -> int:
    if args.to < args.from_:
        raise DomainError(f"empty range {args.from_}..{args.to}", "--from <= --to")

    for n in range(args.from_, args.to + 1):
        value = ex_2p7(n)
        terms = {term.label: term.value for term in value.terms}
        bracket = terms[BRACKET_2P7_LABEL]
        linear = terms[LINEAR_2P7_LABEL]
        if args.format == JSON_LINES:
            print(
                dump_record(
                    {
                        "n": n,
                        "bracket": bracket,
                        "linear": linear,
                        "max": value.value,
                        "argmax": value.argmax,
                        "tie": value.tie,
                    }
                )
            )
        else:
            argmax = "tie" if value.tie else value.argmax
            print(f"{n}\t{bracket}\t{linear}\t{value.value}\t{argmax}")
    return EXIT_OK


def _cmd_count(args: argparse.Namespace) -> int:
    enumerated = enumerate_nonisomorphic(args.n, workers=args.workers)
    expected = count_graphs_cycle_index(args.n)
    if args.format == JSON_LINES:
        record = {"n": args.n, "enumerated": enumerated, "cycle_index": expected}
        print(dump_record(record))
    else:
        print(f"{args.n} vertices: {enumerated} classes (cycle index {expected})")

    if enumerated != expected:
        raise CertificationError(
            f"enumerated {enumerated} classes on {args.n} vertices, expected {expected}"
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = PathExArgumentParser(
        prog="pathex", description="Turán numbers of linear forests"
    )
    parser.add_argument(
        "-v", "--verbose", action="count", help="enable verbose logging"
    )

    subparsers = parser.add_subparsers(dest="command")

    ex = subparsers.add_parser("ex", help="evaluate a Turán number formula")
    ex.add_argument("--n", type=_count_arg, required=True, help="vertex count")
    ex.add_argument(
        "--forest", type=_forest_arg, required=True, help="path orders k1,k2,..."
    )
    ex.add_argument(
        "--mode",
        choices=["auto", ForestMode.THEOREM7.value, ForestMode.CONJECTURE.value],
        default="auto",
        help="forest evaluator (default: proven one when it applies)",
    )
    ex.add_argument(
        "--connected", action="store_true", help="connected Turán number of a path"
    )
    ex.add_argument(
        "--large-n", action="store_true", help="value for n sufficiently large"
    )
    _add_format(ex, [HUMAN, JSON_LINES])

    construct = subparsers.add_parser("construct", help="build extremal graphs")
    construct.add_argument(
        "--family",
        choices=["2p7", "path", "path-special", "kopylov-a", "kopylov-b", "conjecture"],
        required=True,
    )
    construct.add_argument("--n", type=_count_arg, required=True, help="vertex count")
    construct.add_argument("--k", type=_positive_arg, help="path order")
    construct.add_argument(
        "--s", type=_count_arg, default=0, help="clique blocks merged into the join"
    )
    construct.add_argument("--forest", type=_forest_arg, help="path orders k1,k2,...")
    construct.add_argument(
        "--all", action="store_true", help="every member of the path families"
    )
    construct.add_argument("-o", "--output", help="write graphs to a file")
    _add_format(construct, ["graph6", "edge-list", "dot", JSON_LINES])

    check = subparsers.add_parser("check", help="test graphs for a linear forest")
    check.add_argument("--input", type=Path, required=True, help="graph file")
    check.add_argument(
        "--format-in",
        choices=[GraphFormat.GRAPH6.value, GraphFormat.EDGE_LIST.value],
        help="input format (default: from the file extension)",
    )
    check.add_argument("--forest", type=_forest_arg, help="path orders k1,k2,...")
    check.add_argument("--witness", action="store_true", help="print embedded paths")
    check.add_argument(
        "--longest-path", action="store_true", help="print the longest path order"
    )
    check.add_argument(
        "--node-limit", type=_positive_arg, default=None, help="search node budget"
    )
    check.add_argument(
        "--time-limit", type=float, default=None, help="search time budget (seconds)"
    )
    _add_format(check, [HUMAN, JSON_LINES])

    oracle = subparsers.add_parser("oracle", help="exact value by enumeration")
    oracle.add_argument("--n", type=_positive_arg, required=True, help="vertex count")
    oracle.add_argument(
        "--forest", type=_forest_arg, required=True, help="path orders k1,k2,..."
    )
    oracle.add_argument(
        "--allow-long", action="store_true", help="allow n = 10 (a long run)"
    )
    oracle.add_argument("--workers", type=_positive_arg, help="worker processes")
    oracle.add_argument(
        "--connected", action="store_true", help="maximize over connected graphs"
    )
    oracle.add_argument(
        "--dump-witnesses", help="write every extremal class as graph6 to a file"
    )
    _add_format(oracle, [HUMAN, JSON_LINES])

    verify = subparsers.add_parser(
        "verify-facts", help="replay the 2P7 case analysis"
    )
    verify.add_argument(
        "--fact",
        type=_fact_arg,
        action="append",
        help="fact number or rule name (repeatable, default: all)",
    )
    _add_format(verify, [HUMAN, JSON_LINES])

    table = subparsers.add_parser("table", help="tabulate ex(n, 2P7)")
    table.add_argument("--from", dest="from_", type=_count_arg, default=14)
    table.add_argument("--to", type=_count_arg, default=40)
    _add_format(table, [HUMAN, JSON_LINES])

    count = subparsers.add_parser("count", help="count graph isomorphism classes")
    count.add_argument("--n", type=_positive_arg, required=True, help="vertex count")
    count.add_argument("--workers", type=_positive_arg, help="worker processes")
    _add_format(count, [HUMAN, JSON_LINES])

    return parser


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "ex": _cmd_ex,
    "construct": _cmd_construct,
    "check": _cmd_check,
    "oracle": _cmd_oracle,
    "verify-facts": _cmd_verify_facts,
    "table": _cmd_table,
    "count": _cmd_count,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse ``argv`` and run one subcommand.

    :returns: the exit status
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else EXIT_USAGE

    if args.verbose:
        enable_pathex_debug_mode()

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    try:
        return COMMANDS[args.command](args)
    except CertificationError as err:
        logger.error("verification finding: %s", err)
        return EXIT_FINDING
    except PathExError as err:
        logger.error("%s", err)
        return EXIT_ERROR


def main() -> None:
    init_pathex()
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
