"""命令行入口: census / classify / quotient / verify / bounds / groups

Results go to stdout (or files); logs go to stderr. Exit codes: 0 success,
1 usage or input error, 2 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from contextlib import ExitStack, contextmanager
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence

from pydantic import ValidationError

from src.config import settings
from src.core.census import (
    CSV_HEADER,
    BoundParams,
    CensusRecord,
    bound_terms,
    classify,
    exact_census,
    hypothesis_flags,
    sampled_census,
    unlabelled_summary,
)
from src.core.census.records import format_fraction
from src.core.digraph import ConnectionSet, cayley
from src.core.errors import CapExceededError, VerificationFailure
from src.core.groups import catalog, make_group, quotient_group, regular_image, regular_representation, spec_order
from src.core.lemmalab import run_suites
from src.core.quotient import coset_partition, normal_quotient, odd_connection_set, odd_quotient
from src.schemas import RunConfig

logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so usage errors map to exit code 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ValueError(f"{self.prog}: {message}")


def _element_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated element indices, got {text!r}") from e


_CAP_FLAGS = {
    "exact_census_cap": ("--exact-cap", "Largest r for exact censuses and orbit reduction."),
    "unlabelled_census_cap": ("--unlabelled-cap", "Largest r for the unlabelled census."),
    "lemma_cap": ("--lemma-cap", "Largest r for partition-fixing checks."),
    "phi_census_cap": ("--phi-cap", "Largest r for the fixed-orbit subset counts."),
}


def _add_cap_flags(p: argparse.ArgumentParser) -> None:
    for dest, (flag, text) in _CAP_FLAGS.items():
        p.add_argument(flag, dest=dest, type=int, default=None, help=f"{text} (default: settings.{dest}).")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="cayley-census", description="Cayley digraph census and verification laboratory.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("census", help="Classify connection sets of one group.")
    p.add_argument("--group", required=True, help="Group spec, e.g. cyclic:6, dihedral:8, klein4.")
    p.add_argument("--mode", choices=["exact", "sampled", "unlabelled"], default="exact")
    p.add_argument("--reduce-by-aut", action="store_true", help="One representative per Aut(R)-orbit (exact mode).")
    p.add_argument("--seed", type=int, default=None, help="PCG64 seed (sampled mode).")
    p.add_argument("--samples", type=int, default=None, help="Number of samples (sampled mode).")
    p.add_argument("--workers", type=int, default=None, help="Worker processes (default: CENSUS_WORKERS).")
    p.add_argument("--checkpoint", default=None, help="Line-JSON checkpoint to resume from and append to.")
    p.add_argument("--out", default=None, help="Write the summary JSON here instead of stdout.")
    p.add_argument("--records", default=None, help="Stream per-subset records to this file.")
    p.add_argument("--format", choices=["csv", "json"], default="csv", help="Record stream format (default: csv).")
    _add_cap_flags(p)

    p = sub.add_parser("classify", help="Classify one connection set.")
    p.add_argument("--group", required=True)
    p.add_argument("--set", dest="set_hex", required=True, help="Connection set as little-endian hex.")
    p.add_argument("--flags", action="store_true", help="Also report the structural flags per maximal overgroup.")

    p = sub.add_parser("quotient", help="Odd or normal quotient of one Cayley digraph.")
    p.add_argument("--group", required=True)
    p.add_argument("--normal", type=_element_list, required=True, help="Normal subgroup, e.g. 0,3.")
    p.add_argument("--set", dest="set_hex", required=True)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--odd", dest="quotient", action="store_const", const="odd")
    which.add_argument("--normal-quotient", dest="quotient", action="store_const", const="normal")

    p = sub.add_parser("verify", help="Run verification suites.")
    p.add_argument("--suite", default="all", help="Suite name or 'all' (default).")
    _add_cap_flags(p)

    p = sub.add_parser("bounds", help="Evaluate a counting bound (log2).")
    p.add_argument("--kind", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=None)

    p = sub.add_parser("groups", help="Group catalog.")
    p.add_argument("action", choices=["list"])
    p.add_argument("--max-order", type=int, default=16)
    return parser


def parse_config(argv: Sequence[str]) -> RunConfig:
    args = vars(build_parser().parse_args(list(argv)))
    args.pop("action", None)
    if args.get("workers") is None:
        args["workers"] = settings.census_workers
    for dest in _CAP_FLAGS:
        if dest in args and args[dest] is None:
            args[dest] = getattr(settings, dest)
    return RunConfig(**{k: v for k, v in args.items() if v is not None})


# ----------------------------------------------------------------------
# handlers
# ----------------------------------------------------------------------
def _emit(text: str, config: RunConfig) -> None:
    if config.out is not None:
        config.out.parent.mkdir(parents=True, exist_ok=True)
        config.out.write_text(text + "\n", encoding="utf-8")
        logger.info(f"Summary written to {config.out}")
    else:
        sys.stdout.write(text + "\n")


def _dump(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def _record_sink(config: RunConfig, stack: ExitStack) -> Optional[Callable[[CensusRecord], None]]:
    if config.records is None:
        return None
    config.records.parent.mkdir(parents=True, exist_ok=True)
    handle = stack.enter_context(config.records.open("w", encoding="utf-8", newline=""))
    if config.format == "csv":
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        return lambda record: writer.writerow(record.csv_row())
    return lambda record: handle.write(json.dumps(record.to_json()) + "\n")


def _census(config: RunConfig) -> int:
    R = make_group(config.group)
    with ExitStack() as stack:
        sink = _record_sink(config, stack)
        if config.mode == "exact":
            summary = exact_census(R, config.reduce_by_aut, config.workers, config.checkpoint, sink)
        elif config.mode == "sampled":
            summary = sampled_census(R, config.samples, config.seed, config.workers, config.checkpoint, sink)
        else:
            summary = unlabelled_summary(R, config.workers)
    _emit(summary.to_json(), config)
    return 0


def _classify(config: RunConfig) -> int:
    R = make_group(config.group)
    S = ConnectionSet.from_hex(R.order, config.set_hex)
    reg = regular_representation(R)
    out: Dict[str, Any] = {"group_id": R.name, **classify(R, S, reg).to_json()}
    if config.flags:
        out["flags"] = hypothesis_flags(R, S, reg).model_dump()
    _emit(_dump(out), config)
    return 0


def _quotient(config: RunConfig) -> int:
    R = make_group(config.group)
    S = ConnectionSet.from_hex(R.order, config.set_hex)
    gamma = cayley(R, S)
    if config.quotient == "odd":
        partition = coset_partition(R, config.normal)
        quotient = odd_quotient(gamma, partition)
        quotient_grp, _ = quotient_group(R, config.normal)
        target = odd_connection_set(R, config.normal, S)
        if quotient != cayley(quotient_grp, target):
            raise VerificationFailure(f"odd quotient of {R.name} differs from the Cayley digraph of {target.to_hex()}")
        out = {"quotient": quotient.to_json(), "partition": partition.to_json(), "odd_connection_set": target.to_hex()}
    else:
        quotient, partition = normal_quotient(gamma, regular_representation(R), regular_image(R, config.normal))
        out = {"quotient": quotient.to_json(), "partition": partition.to_json()}
    _emit(_dump(out), config)
    return 0


def _verify(config: RunConfig) -> int:
    reports = run_suites(config.suite)
    _emit(_dump([r.model_dump() for r in reports]), config)
    failed = [r.name for r in reports if not r.passed]
    if failed:
        logger.error(f"Verification failed: {', '.join(failed)}")
        return 2
    return 0


def _bounds(config: RunConfig) -> int:
    extra = {k: v for k, v in (("n", config.n), ("b", config.b), ("epsilon", config.epsilon)) if v is not None}
    params = BoundParams(r=config.r, **extra)
    terms = bound_terms(config.kind, params)
    out = {
        "kind": config.kind,
        "params": params.model_dump(exclude_none=True),
        "exact_part": format_fraction(terms.exact),
        "inexact_part": terms.inexact,
        "log2_bound": terms.total,
    }
    _emit(_dump(out), config)
    return 0


def _groups(config: RunConfig) -> int:
    lines = ["kind,order,id"]
    lines += [f"{spec.display_kind},{spec_order(spec)},{spec.id}" for spec in catalog(config.max_order)]
    _emit("\n".join(lines), config)
    return 0


_HANDLERS: Dict[str, Callable[[RunConfig], int]] = {
    "census": _census,
    "classify": _classify,
    "quotient": _quotient,
    "verify": _verify,
    "bounds": _bounds,
    "groups": _groups,
}


@contextmanager
def _cap_overrides(config: RunConfig) -> Iterator[None]:
    """Apply the per-run caps to settings for the duration of one command."""
    saved = {dest: getattr(settings, dest) for dest in _CAP_FLAGS}
    try:
        for dest in _CAP_FLAGS:
            value = getattr(config, dest)
            if value is not None:
                setattr(settings, dest, value)
        yield
    finally:
        for dest, value in saved.items():
            setattr(settings, dest, value)


def run(argv: Sequence[str]) -> int:
    """Parse ``argv``, run one subcommand and return its exit code."""
    try:
        config = parse_config(argv)
        logger.debug(f"Run config: {config.model_dump_json()}")
        with _cap_overrides(config):
            return _HANDLERS[config.command](config)
    except VerificationFailure as e:
        print(f"verification failure: {e}", file=sys.stderr)
        return 2
    except ValidationError as e:
        message = "; ".join(err["msg"] for err in e.errors())
        print(f"error: {message}", file=sys.stderr)
        return 1
    except (ValueError, CapExceededError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
