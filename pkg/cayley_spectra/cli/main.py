"""
Command-line front end for cayley-spectra.

Usage:
    cayley-spectra <verb> [ring ...] [--role R] [--format F] [--max N]
                   [--families LIST] [--seed N] [--max-factors N]
                   [--adjacency-max N]

Results go to stdout; logs go to stderr. Exit status is 0 on success, 1 on a
domain error, 2 on a verification or theorem mismatch (both sides printed)
and 64 on a usage error.
"""
import argparse
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, TypeVar

import pandas as pd
from loguru import logger
from pydantic import ValidationError

# Add parent directory to path to import shared module
sys.path.append(str(Path(__file__).parent.parent))
from classify.reports import (
    ClassificationReport,
    PairKind,
    crown_complement_report,
    multipartite_complement_report,
    pair_report,
    ring_pair_report,
    triple_report,
)
from ring_model.model import parse_ring_spec
from search.bundles import GraphBundle, build_bundle, minus_spectrum
from search.enumeration import SearchConfig, enumerate_specs
from search.lists import LIST_CHECKS, ListComparison, TableRow, reproduce_table, run_list_checks, table_csv
from search.pairs import PairRelation, find_pairs
from search.verification import VerificationConfig, run_verification
from shared.utils import CayleySpectraError, RingSpecError, VerificationMismatch, canonical_json
from spectra.spectrum import Role, Spectrum, energy, role_spectrum

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_MISMATCH = 2
EXIT_USAGE = 64

VERBS = ("spec", "energy", "pair", "pairs", "triple", "table", "table1", "lists", "verify", "bundle", "enumerate")
FORMATS = ("text", "json", "csv")
TABLE_MAX = 169


class UsageError(Exception):
    """Malformed command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cayley-spectra", description="Exact spectra of unitary Cayley graphs over finite commutative rings.")
    parser.add_argument("verb", choices=VERBS, help="Command to run")
    parser.add_argument("args", nargs="*", help="Ring specs, list names or a bundle recipe")
    parser.add_argument("--role", default=None, help="gr, grplus, grbar or grminus")
    parser.add_argument("--format", choices=FORMATS, default="text", help="Output format")
    parser.add_argument("--max", type=int, default=None, help="Vertex bound")
    parser.add_argument("--families", default=None, help="Comma-separated families, e.g. Field,ZModPk")
    parser.add_argument("--seed", type=int, default=0, help="Seed of randomized sweeps")
    parser.add_argument("--max-factors", type=int, default=None, help="Largest number of local factors")
    parser.add_argument("--ramanujan", action="store_true", help="pairs: keep only Ramanujan pairs")
    parser.add_argument("--adjacency-max", type=int, default=None, help="verify: largest |R| checked through adjacency matrices (default --max)")
    return parser


# Rendering
def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _csv(header: List[str], rows: List[List[Any]]) -> str:
    return pd.DataFrame(rows, columns=header).to_csv(index=False, lineterminator="\n")


def render_report(report: ClassificationReport, fmt: str) -> str:
    """Text, JSON or CSV view of a report; every verdict is printed with its witness."""
    if fmt == "json":
        return report.to_json()
    if fmt == "csv":
        rows = [[item.name, item.value, canonical_json(item.witness)] for item in [report.verdict] + report.predicates]
        return _csv(["predicate", "value", "witness"], rows)

    lines = [f"{report.kind} {report.subject}"]
    lines.append(f"  verdict {report.verdict.name}: {report.verdict.value}  {canonical_json(report.verdict.witness)}")
    for graph in report.graphs:
        lines.append(
            f"  {graph.label}: n={graph.n} degree={graph.degree} energy={graph.energy} "
            f"trace={graph.trace} connected={graph.connected} bipartite={graph.bipartite} "
            f"ramanujan={graph.ramanujan.ramanujan} {graph.spectrum}"
        )
    for item in report.predicates:
        lines.append(f"  {item.name}: {item.value}  {canonical_json(item.witness)}")
    for check in report.checks:
        lines.append(f"  check {check.tag}: predicted {check.predicted}, observed {check.observed}")
    if report.flags:
        lines.append(f"  flags: {', '.join(report.flags)}")
    return "\n".join(lines)


def render_table(rows: List[TableRow], fmt: str) -> str:
    if fmt == "csv":
        return table_csv(rows)
    if fmt == "json":
        return canonical_json([row.model_dump() for row in rows])
    header = f"{'graph':<14}{'v':>5}{'kappa':>7}{'kappabar':>10}{'energy':>8}  iso"
    body = [
        f"{row.label:<14}{row.v:>5}{row.kappa:>7}{row.kappabar:>10}{row.energy:>8}  {row.iso}".rstrip()
        for row in rows
    ]
    return "\n".join([header] + body)


def render_lists(results: List[ListComparison], fmt: str) -> str:
    if fmt == "json":
        return canonical_json([item.model_dump(mode="json") for item in results])
    if fmt == "csv":
        header = ["tag", "matches", "universe", "computed", "missing", "extra", "changed", "errata"]
        rows = [
            [item.tag, item.matches, item.universe, " ".join(item.computed), " ".join(item.missing),
             " ".join(item.extra), " ".join(item.changed), " ".join(item.errata)]
            for item in results
        ]
        return _csv(header, rows)
    lines = []
    for item in results:
        status = "matches" if item.matches else "differs (registered errata)"
        lines.append(f"{item.tag}: {status}, {len(item.computed)} of {item.universe} rings")
        for name, labels in (("missing", item.missing), ("extra", item.extra), ("changed", item.changed)):
            if labels:
                lines.append(f"  {name}: {', '.join(labels)}")
        if item.errata:
            lines.append(f"  errata: {', '.join(item.errata)}")
    return "\n".join(lines)


def render_bundle(bundle: GraphBundle, fmt: str) -> str:
    if fmt == "json":
        return bundle.to_json()
    if fmt == "csv":
        rows = [
            [member.label, member.spectrum.n, member.energy, member.trace, member.connected, member.bipartite,
             member.spectrum.to_text()]
            for member in bundle.members
        ]
        return _csv(["label", "n", "energy", "trace", "connected", "bipartite", "spectrum"], rows)
    lines = [f"bundle {bundle.name}: {len(bundle.members)} members on {bundle.n} vertices, equienergetic={bundle.equienergetic}"]
    for member in bundle.members:
        lines.append(f"  {member.label}: energy={member.energy} trace={member.trace} {member.spectrum.to_text()}")
    if bundle.duplicates:
        lines.append(f"  duplicates: {', '.join(bundle.duplicates)}")
    lines.append(f"  isospectral pairs: {bundle.isospectral_pairs or 'none'}")
    for check in bundle.checks:
        lines.append(f"  check {check.tag}: predicted {check.predicted}, observed {check.observed}")
    return "\n".join(lines)


# Verbs
T = TypeVar("T")


def _option(parse: Callable[[str], T], text: str) -> T:
    """Parse an option value; a bad value is a usage error."""
    try:
        return parse(text)
    except CayleySpectraError as e:
        raise UsageError(str(e))


def _config(model: Callable[..., T], settings: Dict[str, Any]) -> T:
    """Build a search or verification config from options; invalid bounds are usage errors."""
    try:
        return model(**settings)
    except ValidationError as e:
        problems = "; ".join(f"{'.'.join(str(part) for part in error['loc'])}: {error['msg']}" for error in e.errors())
        raise UsageError(f"invalid options: {problems}")


def _role(args: argparse.Namespace, default: Role) -> Role:
    return default if args.role is None else _option(Role.parse, args.role)


def _require(args: argparse.Namespace, count: int, what: str) -> None:
    if len(args.args) < count:
        raise UsageError(f"{args.verb} needs {what}")


def _spectrum(text: str, role: Role) -> Spectrum:
    spec = parse_ring_spec(text)
    return minus_spectrum(spec) if role is Role.GRMINUS else role_spectrum(spec, role)


def cmd_spec(args: argparse.Namespace) -> str:
    _require(args, 1, "a ring spec")
    role = _role(args, Role.GR)
    spectra = [(parse_ring_spec(text).label, _spectrum(text, role)) for text in args.args]
    if args.format == "json":
        payload = [{"label": label, "role": role.value, "spectrum": s.model_dump(mode="json")} for label, s in spectra]
        return canonical_json(payload[0] if len(payload) == 1 else payload)
    if args.format == "csv":
        rows = [[label, role.value, s.n, s.degree, s.to_text()] for label, s in spectra]
        return _csv(["label", "role", "n", "degree", "spectrum"], rows)
    if len(spectra) == 1:
        return spectra[0][1].to_text()
    return "\n".join(f"{label}: {s.to_text()}" for label, s in spectra)


def cmd_energy(args: argparse.Namespace) -> str:
    _require(args, 1, "a ring spec")
    role = _role(args, Role.GR)
    values = [(parse_ring_spec(text).label, energy(_spectrum(text, role))) for text in args.args]
    if args.format == "json":
        payload = [{"label": label, "role": role.value, "energy": value} for label, value in values]
        return canonical_json(payload[0] if len(payload) == 1 else payload)
    if args.format == "csv":
        return _csv(["label", "role", "energy"], [[label, role.value, value] for label, value in values])
    if len(values) == 1:
        return str(values[0][1])
    return "\n".join(f"{label}: {value}" for label, value in values)


def cmd_pair(args: argparse.Namespace) -> str:
    """pair RING [--role grplus|grbar], pair RING RING [--role], pair crown:<m>, pair multipartite:<m>."""
    _require(args, 1, "a ring spec")
    first = args.args[0]
    if first.startswith("crown:"):
        return render_report(crown_complement_report(_integer(first[len("crown:"):])), args.format)
    if first.startswith("multipartite:"):
        return render_report(multipartite_complement_report(_integer(first[len("multipartite:"):])), args.format)
    if len(args.args) >= 2:
        report = ring_pair_report(parse_ring_spec(first), parse_ring_spec(args.args[1]), _role(args, Role.GR))
        return render_report(report, args.format)
    kind = PairKind.SUM if args.role is None else _option(PairKind.parse, args.role)
    return render_report(pair_report(parse_ring_spec(first), kind), args.format)


def _search_config(args: argparse.Namespace, verb: str) -> SearchConfig:
    if args.max is None:
        raise UsageError(f"{verb} needs --max")
    settings = {"max_vertices": args.max}
    if args.families is not None:
        settings["families"] = args.families
    if args.max_factors is not None:
        settings["max_factors"] = args.max_factors
    return _config(SearchConfig, settings)


def cmd_pairs(args: argparse.Namespace) -> str:
    """pairs grplus|grbar|cross --max N [--ramanujan] [--role R for cross]."""
    _require(args, 1, "a relation (grplus, grbar or cross)")
    relation = _option(PairRelation.parse, args.args[0])
    reports = find_pairs(_search_config(args, "pairs"), relation, args.ramanujan, _role(args, Role.GR))
    if args.format == "json":
        return canonical_json([report.model_dump(mode="json") for report in reports])
    if args.format == "csv":
        rows = [
            [report.subject, " ".join(str(graph.energy) for graph in report.graphs),
             " ".join(graph.spectrum for graph in report.graphs)]
            for report in reports
        ]
        return _csv(["subject", "energies", "spectra"], rows)
    lines = [f"{len(reports)} {relation.value} pairs"]
    lines.extend(
        f"  {report.subject}: energy={report.graphs[0].energy} "
        + " vs ".join(graph.spectrum for graph in report.graphs)
        for report in reports
    )
    return "\n".join(lines)


def _integer(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise RingSpecError(f"expected an integer, got {text!r}")


def cmd_triple(args: argparse.Namespace) -> str:
    _require(args, 1, "a ring spec")
    return "\n".join(render_report(triple_report(parse_ring_spec(text)), args.format) for text in args.args)


def cmd_table(args: argparse.Namespace) -> str:
    return render_table(reproduce_table(args.max or TABLE_MAX), args.format)


def cmd_lists(args: argparse.Namespace) -> str:
    unknown = [name for name in args.args if name not in LIST_CHECKS]
    if unknown:
        raise UsageError(f"unknown list {', '.join(unknown)}; known: {', '.join(LIST_CHECKS)}")
    return render_lists(run_list_checks(args.args or None), args.format)


def cmd_verify(args: argparse.Namespace) -> str:
    settings = {"seed": args.seed}
    if args.max is not None:
        settings["max_vertices"] = args.max
    if args.families is not None:
        settings["families"] = args.families
    if args.max_factors is not None:
        settings["max_factors"] = args.max_factors
    if args.adjacency_max is not None:
        settings["adjacency_max"] = args.adjacency_max
    summary = run_verification(_config(VerificationConfig, settings))
    if args.format == "json":
        return summary.to_json()
    return (
        f"verified {summary.rings_checked} rings with |R| <= {summary.max_vertices} "
        f"({summary.adjacency_checked} through adjacency matrices, |R| <= {summary.adjacency_max}); "
        f"{summary.subsets_checked} random subsets, seed {summary.seed}"
    )


def cmd_bundle(args: argparse.Namespace) -> str:
    _require(args, 1, "a recipe")
    return render_bundle(build_bundle(" ".join(args.args)), args.format)


def cmd_enumerate(args: argparse.Namespace) -> str:
    specs = list(enumerate_specs(_search_config(args, "enumerate")))
    if args.format == "json":
        return canonical_json([spec.label for spec in specs])
    if args.format == "csv":
        return _csv(["label", "order", "s"], [[spec.label, spec.order, spec.s] for spec in specs])
    return "\n".join(spec.label for spec in specs)


COMMANDS = {
    "spec": cmd_spec,
    "energy": cmd_energy,
    "pair": cmd_pair,
    "pairs": cmd_pairs,
    "triple": cmd_triple,
    "table": cmd_table,
    "table1": cmd_table,
    "lists": cmd_lists,
    "verify": cmd_verify,
    "bundle": cmd_bundle,
    "enumerate": cmd_enumerate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command.

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:]

    Returns:
        int: Exit status
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK

    logger.info(f"cayley-spectra {args.verb} {' '.join(args.args)}")
    try:
        _emit(COMMANDS[args.verb](args))
    except UsageError as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"{parser.prog}: error: {e}\n")
        return EXIT_USAGE
    except VerificationMismatch as e:
        sides = e.sides()
        sys.stderr.write(f"mismatch: {e}\n")
        sys.stderr.write(f"  expected: {sides['expected']}\n")
        sys.stderr.write(f"  observed: {sides['observed']}\n")
        return EXIT_MISMATCH
    except (CayleySpectraError, ValidationError) as e:
        logger.error(f"{args.verb} failed: {e}")
        sys.stderr.write(f"error: {e}\n")
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
