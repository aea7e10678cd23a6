"""
uniwilf command line
Each subcommand is a thin adapter over one library capability. Reports go
to stdout (json, table or count); logs go to stderr.

Exit codes: 0 success, 1 domain error or malformed file, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from loguru import logger
from pydantic import BaseModel, ValidationError

from .classes import basis_of, enumerate_av, load_class, to_class_file
from .config import Settings, get_settings
from .errors import UniwilfError, UsageError
from .experiments import orbit_report, starting_classes
from .extensions import ConstraintForm, SearchOptions, extension_report, potential_extensions
from .pegs import grid_contains, grid_enumerate, grid_filled_contains, is_properly_pegged, parse_peg
from .perms import format_set, parse_permutation, parse_permutation_list
from .schemas import BasisReport, GridReport, OrbitReport, SearchReport, WedgeReport
from .search import options_from_report, resume, search
from .symmetry import FULL_GROUP, canonical_orbit_representative, orbit
from .wedge import LRWord, decode_word, encode_wedge, wedge_bijection
from .wilf import balance_report, is_uniquely_wilf, wilf_partition, wilf_sequence

FORMATS = ("json", "table", "count")


@dataclass
class Output:
    """What a subcommand produced, in each of the output formats"""
    model: BaseModel
    count: str
    table: List[str] = field(default_factory=list)

    def render(self, fmt: str) -> str:
        if fmt == "count":
            return self.count
        if fmt == "table":
            return "\n".join(self.table) if self.table else self.count
        return self.model.model_dump_json(indent=2)


def configure_logging(level: str) -> None:
    """Send logs to stderr only, at the given level."""
    logger.remove()
    logger.add(sys.stderr, level=level.upper())


# ==================== Argument helpers ====================

def _parse_targets(text: Optional[str]) -> Optional[Dict[int, int]]:
    if not text:
        return None
    targets = {}
    for part in text.split(","):
        try:
            k, t = part.split("=")
            targets[int(k)] = int(t)
        except ValueError as exc:
            raise UsageError(f"cannot read target {part!r}; expected k=t") from exc
    return targets


def _existing(text: str) -> Path:
    path = Path(text)
    if not path.is_file():
        raise UsageError(f"file {path} does not exist")
    return path


def _load_class(args, default_size: Optional[int]):
    if args.basis and args.class_file:
        raise UsageError("give either --basis or --class-file, not both")
    if args.class_file:
        return load_class(_existing(args.class_file))
    if args.basis is None:
        raise UsageError("a class is needed: give --basis or --class-file")
    size = args.max_size if args.max_size is not None else default_size
    if size is None:
        raise UsageError("--max-size is needed to enumerate a class from a basis")
    return enumerate_av(parse_permutation_list(args.basis), size)


def _option_overrides(args) -> Dict:
    """Search options given explicitly on the command line."""
    overrides = {}
    if getattr(args, "constraint_form", None):
        overrides["constraint_form"] = ConstraintForm.parse(args.constraint_form)
    if getattr(args, "no_symmetry_reduction", False):
        overrides["symmetry_reduction"] = False
    if getattr(args, "threads", None) is not None:
        overrides["threads"] = args.threads
    if getattr(args, "branch_cap", None) is not None:
        overrides["branch_cap"] = args.branch_cap
    if getattr(args, "filter_lower_levels", False):
        overrides["filter_lower_levels"] = True
    if getattr(args, "max_size", None) is not None:
        overrides["max_size"] = args.max_size
    return overrides


def _search_options(args, settings: Settings) -> SearchOptions:
    return SearchOptions.from_settings(settings, **_option_overrides(args))


# ==================== Subcommands ====================

def cmd_enumerate(args, settings: Settings) -> Output:
    size = args.max_size if args.max_size is not None else settings.default_max_size
    cls = enumerate_av(parse_permutation_list(args.basis), size)
    counts = cls.counts()
    table = [f"{k}\t{c}\t{' '.join(format_set(cls.level(k)))}" for k, c in enumerate(counts, start=1)]
    return Output(to_class_file(cls), " ".join(str(c) for c in counts), table)


def cmd_basis(args, settings: Settings) -> Output:
    cls = _load_class(args, settings.default_max_size)
    basis = format_set(basis_of(cls).patterns)
    return Output(BasisReport(max_size=cls.max_size, basis=basis), str(len(basis)), basis)


def cmd_wilf(args, settings: Settings) -> Output:
    cls = _load_class(args, args.horizon)
    horizon = args.horizon if args.horizon is not None else cls.max_size
    if args.k is not None:
        partition = wilf_partition(cls, args.k, horizon)
        table = [" ".join(format_set(block)) for block in partition.blocks]
        return Output(partition.to_model(), str(len(partition.blocks)), table)
    sequence = wilf_sequence(cls, horizon)
    verdict = is_uniquely_wilf(cls, horizon)
    text = " ".join(str(w) for w in sequence.values)
    return Output(sequence.to_model(verdict), text, [text, f"uniquely-Wilf: {verdict}"])


def cmd_balance(args, settings: Settings) -> Output:
    cls = _load_class(args, args.n)
    report = balance_report(cls, args.k, args.n)
    table = [f"{p}\t{c}" for p, c in sorted(report.counts.items())]
    return Output(report.to_model(), "1" if report.balanced else "0", table)


def cmd_extend(args, settings: Settings) -> Output:
    cls = _load_class(args, settings.default_max_size)
    opts = replace(
        _search_options(args, settings),
        require_monotone=args.require_monotone,
        targets=_parse_targets(args.targets),
    )
    vectors = potential_extensions(cls, opts)
    report = extension_report(cls, opts, vectors)
    table = [f"{v.orbit_size}\t{' '.join(format_set(v.members))}" for v in vectors]
    return Output(report, str(report.total), table)


def cmd_search(args, settings: Settings) -> Output:
    if args.resume:
        path = _existing(args.resume)
        report = SearchReport.model_validate(json.loads(path.read_text(encoding="utf-8")))
        # flags given now win over the options stored with the report
        resolution = resume(report, options_from_report(report, **_option_overrides(args)))
    else:
        if args.class_file is None:
            raise UsageError("search needs --class-file or --resume")
        resolution = search(load_class(_existing(args.class_file)), _search_options(args, settings))
    table = [f"{log.size}\t{log.extensions_found}\t{log.expanded}" for log in resolution.levels]
    return Output(resolution.to_model(), resolution.status.value, table + [resolution.status.value])


def cmd_grid(args, settings: Settings) -> Output:
    peg = parse_peg(args.peg)
    proper = is_properly_pegged(peg)
    if args.permutation:
        sigma = parse_permutation(args.permutation)
        member = grid_filled_contains(peg, sigma) if args.filled else grid_contains(peg, sigma)
        report = GridReport(peg=str(peg), filled=args.filled, properly_pegged=proper, permutation=str(sigma), member=member)
        return Output(report, "1" if member else "0", [str(member)])
    if args.size is None:
        raise UsageError("grid needs --permutation or --size")
    members = format_set(grid_enumerate(peg, args.size, args.filled))
    report = GridReport(peg=str(peg), filled=args.filled, properly_pegged=proper, size=args.size, members=members)
    return Output(report, str(len(members)), members)


def cmd_wedge(args, settings: Settings) -> Output:
    if args.encode:
        sigma = parse_permutation(args.encode)
        result = str(encode_wedge(sigma))
        report = WedgeReport(operation="encode", inputs={"permutation": str(sigma)}, result=result)
    elif args.decode is not None:
        result = str(decode_word(LRWord(args.decode)))
        report = WedgeReport(operation="decode", inputs={"word": args.decode}, result=result)
    elif args.bijection:
        if args.alpha is None or args.beta is None or args.word is None:
            raise UsageError("--bijection needs --alpha, --beta and --word")
        result = str(wedge_bijection(LRWord(args.alpha), LRWord(args.beta), LRWord(args.word)))
        report = WedgeReport(
            operation="bijection",
            inputs={"alpha": args.alpha, "beta": args.beta, "word": args.word},
            result=result,
        )
    else:
        raise UsageError("wedge needs one of --encode, --decode or --bijection")
    return Output(report, result, [result])


def cmd_orbit(args, settings: Settings) -> Output:
    if args.level3_size is not None:
        report = orbit_report(starting_classes(args.level3_size))
    elif args.set:
        reps, sizes = [], []
        for text in args.set:
            perms = parse_permutation_list(text)
            reps.append(format_set(canonical_orbit_representative(perms, FULL_GROUP)))
            sizes.append(len(orbit(perms, FULL_GROUP)))
        report = OrbitReport(group_size=len(FULL_GROUP), representatives=reps, orbit_sizes=sizes)
    else:
        raise UsageError("orbit needs --set or --level3-size")
    table = [f"{size}\t{' '.join(rep)}" for rep, size in zip(report.representatives, report.orbit_sizes)]
    return Output(report, str(len(report.representatives)), table)


COMMANDS = {
    "enumerate": cmd_enumerate,
    "basis": cmd_basis,
    "wilf": cmd_wilf,
    "balance": cmd_balance,
    "extend": cmd_extend,
    "search": cmd_search,
    "grid": cmd_grid,
    "wedge": cmd_wedge,
    "orbit": cmd_orbit,
}


# ==================== Parser ====================

def _add_class_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--basis", help="Comma-separated basis, e.g. 213,231,312")
    parser.add_argument("--class-file", help="Path to a class file (JSON)")
    parser.add_argument("--max-size", type=int, help="Horizon when enumerating from --basis")


def _add_search_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--constraint-form",
        choices=["difference", "restricted", "restricted-difference", "target"],
        help="Encoding of the balance constraints",
    )
    parser.add_argument("--no-symmetry-reduction", action="store_true", help="Report every extension, not orbit representatives")
    parser.add_argument("--filter-lower-levels", action="store_true", help="Solve size-n balance only, filter the rest afterwards")
    parser.add_argument("--threads", type=int, help="Worker threads for the search")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, help="Report format on stdout")
    common.add_argument("--log-level", help="Log level for stderr (DEBUG, INFO, ...)")

    parser = argparse.ArgumentParser(prog="uniwilf", description="Relative Wilf-equivalence experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="Enumerate Av(basis) level by level")
    p.add_argument("--basis", required=True, help="Comma-separated basis")
    p.add_argument("--max-size", type=int, help="Horizon N")

    p = sub.add_parser("basis", parents=[common], help="Basis of a finite class")
    _add_class_source(p)

    p = sub.add_parser("wilf", parents=[common], help="Wilf-sequence or Wilf partition through a horizon")
    _add_class_source(p)
    p.add_argument("--horizon", type=int, help="Horizon (default: class max size)")
    p.add_argument("--k", type=int, help="Partition C_k instead of the whole sequence")

    p = sub.add_parser("balance", parents=[common], help="Involvement counts and (k,n)-balance")
    _add_class_source(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("extend", parents=[common], help="Potential extensions to the next size")
    _add_class_source(p)
    _add_search_flags(p)
    p.add_argument("--require-monotone", action="store_true", help="Keep only extensions with both monotones")
    p.add_argument("--targets", help="Pinned common counts, e.g. 1=4,2=8")

    p = sub.add_parser("search", parents=[common], help="Bottom-up search for uniquely-Wilf classes")
    p.add_argument("--class-file", help="Starting class (JSON)")
    p.add_argument("--max-size", type=int, help="Search horizon")
    p.add_argument("--branch-cap", type=int, help="Maximum node expansions")
    p.add_argument("--resume", help="Continue from a budget-exhausted search report")
    _add_search_flags(p)

    p = sub.add_parser("grid", parents=[common], help="Membership in Grid / Grid^f of a peg permutation")
    p.add_argument("--peg", required=True, help='Peg permutation, e.g. "2- 3- 1."')
    p.add_argument("--permutation", help="Test this permutation")
    p.add_argument("--size", type=int, help="Enumerate members of this size")
    p.add_argument("--filled", action="store_true", help="Use Grid^f")

    p = sub.add_parser("wedge", parents=[common], help="LR-words of Av(213, 312)")
    p.add_argument("--encode", help="Permutation to encode")
    p.add_argument("--decode", help="LR-word to decode")
    p.add_argument("--bijection", action="store_true", help="Apply the wedge bijection")
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--word")

    p = sub.add_parser("orbit", parents=[common], help="Canonical representatives under the eight symmetries")
    p.add_argument("--set", action="append", help="Comma-separated set; repeatable")
    p.add_argument("--level3-size", type=int, help="Starting classes with |F_3| of this size")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    settings = get_settings()
    configure_logging(args.log_level or settings.log_level)
    fmt = args.format or settings.output_format
    if fmt not in FORMATS:
        logger.error(f"Unknown output format {fmt!r}")
        return 2
    logger.info(f"uniwilf {args.command}")

    try:
        output = COMMANDS[args.command](args, settings)
    except UsageError as exc:
        logger.error(f"Usage error: {exc}")
        return 2
    except (UniwilfError, ValidationError) as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        return 1
    except json.JSONDecodeError as exc:
        logger.error(f"Malformed JSON: {exc}")
        return 1

    print(output.render(fmt))
    return 0


if __name__ == "__main__":
    sys.exit(main())
