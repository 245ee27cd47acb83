"""
Command-line surface of the RA loop workbench.

Every command prints line-oriented key=value reports on stdout; logs go to
stderr. Exit statuses: 0 pass, 1 property fail, 2 constraint, 3 parse,
4 falsification sentinel.
"""

import argparse
import asyncio
import enum
import logging
import sys
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Union

from sqlalchemy.exc import SQLAlchemyError

from algebra.group_presentation import GroupPresentation, verify_presentation
from algebra.loop_ring import ring_checks, validate_modulus
from algebra.ra_loop import RaLoopPresentation, moufang_check, structure_check
from classification.catalog import get_row, get_type, minimal_params
from classification.classify import Verdict, classify_finite
from classification.fingerprint import fingerprint
from classification.normalize import check_iso_map, normalize, target_of
from documents import build_from_spec, load_input, load_spec, parse_params, save_presentation
from errors import ConstraintError, DocumentParseError, WorkbenchError
from oracle.cayley import (
    CayleyTable,
    check_moufang_table,
    materialize,
    ra_structure_checks,
    table_invariants,
    validate_loop,
)
from oracle.isomorphism import iso_search
from oracle.table_io import save_table
from schemas import Fingerprint, PropertyCheck, RunReport, SpecDocument
from settings import WorkbenchSettings, get_settings

logger = logging.getLogger(__name__)


class ExitStatus(enum.IntEnum):
    PASS = 0
    PROPERTY_FAIL = 1
    CONSTRAINT = 2
    PARSE = 3
    SENTINEL = 4


def configure_logging(level: str) -> None:
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _check_line(check: PropertyCheck) -> str:
    line = f"{check.name}={'pass' if check.passed else 'fail'}"
    if check.witness:
        line += f" witness={','.join(check.witness)}"
    if not check.exhaustive:
        line += " sampled=yes"
    return line


def _record_checks(report: RunReport, checks: Sequence[PropertyCheck]) -> None:
    for check in checks:
        report.verdicts[check.name] = check.passed
        if check.witness:
            report.witnesses[check.name] = list(check.witness)
        report.lines.append(_check_line(check))
    if not all(check.passed for check in checks):
        report.exit_status = int(ExitStatus.PROPERTY_FAIL)


def _record_ring(report: RunReport, table: CayleyTable, modulus: int) -> None:
    alternative, associative, ra = ring_checks(table, validate_modulus(modulus))
    # associativity is reported, not required
    report.verdicts[associative.name] = associative.passed
    report.lines.append(f"associative={'yes' if associative.passed else 'no'}")
    _record_checks(report, [alternative, ra])


def _spec_from_args(args: argparse.Namespace, kinds: Sequence[str]) -> SpecDocument:
    """A spec from --spec FILE or from positional KIND ID name=value ...; missing parameters default to 1."""
    if args.spec:
        if args.target:
            raise ConstraintError("Give either --spec or a target, not both")
        doc = load_spec(args.spec)
    else:
        if len(args.target) < 2:
            raise DocumentParseError(f"Expected {'|'.join(kinds)} ID [name=value ...]")
        kind, ident, *pairs = args.target
        try:
            ident = int(ident)
        except ValueError:
            raise DocumentParseError(f"Invalid id {ident!r}")
        if kind not in ("row", "type"):
            raise DocumentParseError(f"Unknown kind {kind!r}; expected row or type")
        doc = SpecDocument(kind=kind, id=ident, params=parse_params(pairs))
    if doc.kind not in kinds:
        raise ConstraintError(f"Command takes a {' or '.join(kinds)} spec, got {doc.kind}")
    names = get_row(doc.id).param_names if doc.kind == "row" else get_type(doc.id).param_names
    params = minimal_params(names)
    params.update(doc.params)
    return SpecDocument(kind=doc.kind, id=doc.id, params=params)


def _as_table(subject: Union[CayleyTable, GroupPresentation, RaLoopPresentation]) -> CayleyTable:
    if isinstance(subject, CayleyTable):
        return subject
    if isinstance(subject, RaLoopPresentation):
        return materialize(subject)
    raise ConstraintError("Expected a Cayley table or a loop presentation")


def cmd_build(args: argparse.Namespace, settings: WorkbenchSettings, report: RunReport) -> None:
    doc = _spec_from_args(args, ("row", "type"))
    L = build_from_spec(doc)
    output = Path(args.output or f"{doc.kind}{doc.id}.json")
    save_presentation(L, output)
    report.lines.append(" ".join([f"{doc.kind}={doc.id}"] + [f"{k}={v}" for k, v in doc.params.items()]))
    report.lines.append(f"order={L.order}")
    report.lines.append(f"presentation={output}")
    if args.table:
        if not L.center.is_finite:
            raise ConstraintError("--table needs a finite center")
        table_path = output.with_suffix(".cayley")
        save_table(materialize(L), table_path)
        report.lines.append(f"table={table_path}")


def cmd_verify(args: argparse.Namespace, settings: WorkbenchSettings, report: RunReport) -> None:
    subject = load_input(args.path, validate=False)
    sampling = dict(seed=settings.seed, trials=settings.sample_trials)
    if isinstance(subject, CayleyTable):
        loop = validate_loop(subject)
        _record_checks(report, [loop])
        if not loop.passed:
            return
        _record_checks(report, check_moufang_table(subject))
        _record_ring(report, subject, settings.modulus)
        _record_checks(report, ra_structure_checks(subject))
    elif isinstance(subject, RaLoopPresentation):
        _record_checks(report, moufang_check(subject, settings.sample_bound, **sampling).checks)
        structure = structure_check(
            subject, settings.sample_bound, exhaustive_limit=settings.exhaustive_limit, **sampling
        )
        _record_checks(report, structure.checks)
        if subject.center.is_finite:
            _record_ring(report, materialize(subject), settings.modulus)
    else:
        verification = verify_presentation(
            subject, settings.sample_bound, exhaustive_limit=settings.exhaustive_limit, **sampling
        )
        _record_checks(report, verification.checks)
        report.lines.extend(f"warning={w}" for w in verification.warnings)


def cmd_classify(args: argparse.Namespace, settings: WorkbenchSettings, report: RunReport) -> None:
    table = _as_table(load_input(args.path))
    result = classify_finite(table, settings.modulus, settings=settings)
    report.lines.extend(result.lines())
    report.verdicts["classified"] = result.verdict is Verdict.CLASSIFIED
    if result.witness:
        report.witnesses["non_associating"] = list(result.witness)
    if result.verdict is Verdict.NO_MATCH:
        report.exit_status = int(ExitStatus.SENTINEL)
    elif result.verdict is not Verdict.CLASSIFIED:
        report.exit_status = int(ExitStatus.PROPERTY_FAIL)


def cmd_iso(args: argparse.Namespace, settings: WorkbenchSettings, report: RunReport) -> None:
    first = _as_table(load_input(args.first))
    second = _as_table(load_input(args.second))
    phi = iso_search(first, second)
    report.verdicts["isomorphic"] = phi is not None
    if phi is None:
        report.lines.append("map=none")
        report.exit_status = int(ExitStatus.PROPERTY_FAIL)
        return
    report.lines.append("map=" + ",".join(f"{i}:{j}" for i, j in enumerate(phi)))


def cmd_normalize(args: argparse.Namespace, settings: WorkbenchSettings, report: RunReport) -> None:
    doc = _spec_from_args(args, ("row",))
    trace = normalize(doc.id, doc.params, settings=settings)
    report.lines.extend(trace.lines())
    src = build_from_spec(doc)
    verification = check_iso_map(src, target_of(trace), trace, settings=settings)
    report.verdicts["decomposable"] = trace.decomposable
    _record_checks(report, verification.checks)
    report.lines.append(f"verified={'pass' if verification.ok else 'fail'}")


def cmd_ring_check(args: argparse.Namespace, settings: WorkbenchSettings, report: RunReport) -> None:
    modulus = validate_modulus(settings.modulus)
    table = _as_table(load_input(args.path))
    alternative, associative, ra = ring_checks(table, modulus)
    report.lines.append(f"modulus={modulus}")
    for check in (alternative, associative, ra):
        report.verdicts[check.name] = check.passed
        line = f"{check.name}={'true' if check.passed else 'false'}"
        if check.witness:
            report.witnesses[check.name] = list(check.witness)
            line += f" witness={','.join(check.witness)}"
        report.lines.append(line)
    if not ra.passed:
        report.exit_status = int(ExitStatus.PROPERTY_FAIL)


def _fingerprint_lines(fp: Fingerprint) -> List[str]:
    lines = []
    for name, value in fp.model_dump().items():
        if value is None:
            continue
        if name == "order_histogram":
            value = ",".join(f"{order}:{count}" for order, count in value)
        elif isinstance(value, (tuple, list)):
            value = ",".join(str(v) for v in value) or "-"
        lines.append(f"{name}={value}")
    return lines


def cmd_fingerprint(args: argparse.Namespace, settings: WorkbenchSettings, report: RunReport) -> None:
    subject = load_input(args.path)
    if isinstance(subject, CayleyTable):
        fp = table_invariants(subject)
    elif isinstance(subject, RaLoopPresentation):
        fp = fingerprint(subject)
    else:
        raise ConstraintError("fingerprint takes a Cayley table or a loop presentation")
    report.lines.extend(_fingerprint_lines(fp))


async def _archive(report: RunReport, database_url: str) -> int:
    from db.crud import create_run_record
    from db.database import create_all_tables, get_engine, get_sessionmaker

    try:
        await create_all_tables(database_url)
        async with get_sessionmaker(database_url)() as session:
            record = await create_run_record(session, report)
    finally:
        # pooled connections belong to this event loop
        await get_engine(database_url).dispose()
    return record.id


async def _history(database_url: str, limit: int) -> List[str]:
    from db.crud import list_run_records
    from db.database import create_all_tables, get_engine, get_sessionmaker

    await create_all_tables(database_url)
    async with get_sessionmaker(database_url)() as session:
        records = await list_run_records(session, limit)
    await get_engine(database_url).dispose()
    return [f"id={r.id} command={r.command} exit={r.exit_status} created={r.created_at}" for r in records]


def cmd_history(args: argparse.Namespace, settings: WorkbenchSettings, report: RunReport) -> None:
    report.lines.extend(asyncio.run(_history(settings.database_url, args.limit)) or ["runs=0"])


Handler = Callable[[argparse.Namespace, WorkbenchSettings, RunReport], None]

COMMANDS: Dict[str, Handler] = {
    "build": cmd_build,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "iso": cmd_iso,
    "normalize": cmd_normalize,
    "ring-check": cmd_ring_check,
    "fingerprint": cmd_fingerprint,
    "history": cmd_history,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="raloop", description="RA loop workbench")
    parser.add_argument("--seed", type=int, help="Seed for sampled checks on infinite presentations.")
    parser.add_argument("--sample-bound", type=int, help="Exponent window for infinite factors.")
    parser.add_argument("--modulus", type=int, help="Odd modulus of the loop ring coefficients.")
    parser.add_argument("--archive", action="store_true", help="Store the run report in the database.")
    parser.add_argument("--log-level", help="Logging level for stderr.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    build = subparsers.add_parser("build", help="Write the presentation of a row or type.")
    build.add_argument("target", nargs="*", help="row|type ID [name=value ...]")
    build.add_argument("--spec", help="Row/type spec document instead of a target.")
    build.add_argument("--output", "-o", help="Presentation document path.")
    build.add_argument("--table", action="store_true", help="Also write the Cayley file (finite center only).")

    verify = subparsers.add_parser("verify", help="Check loop, Moufang and RA properties.")
    verify.add_argument("path")

    classify = subparsers.add_parser("classify", help="Classify a finite RA loop table.")
    classify.add_argument("path")

    iso = subparsers.add_parser("iso", help="Search for an isomorphism between two tables.")
    iso.add_argument("first")
    iso.add_argument("second")

    norm = subparsers.add_parser("normalize", help="Rewrite a row onto its canonical type.")
    norm.add_argument("target", nargs="*", help="row ID [name=value ...]")
    norm.add_argument("--spec", help="Row spec document instead of a target.")

    ring = subparsers.add_parser("ring-check", help="Alternative and associative checks of the loop ring.")
    ring.add_argument("path")
    ring.add_argument("--modulus", type=int, default=argparse.SUPPRESS, help="Odd modulus.")

    fp = subparsers.add_parser("fingerprint", help="Print the invariants of a table or presentation.")
    fp.add_argument("path")

    history = subparsers.add_parser("history", help="List archived run reports.")
    history.add_argument("--limit", type=int, default=20)
    return parser


def _settings(args: argparse.Namespace) -> WorkbenchSettings:
    overrides = {
        "seed": args.seed,
        "sample_bound": args.sample_bound,
        "modulus": args.modulus,
        "log_level": args.log_level,
    }
    update = {key: value for key, value in overrides.items() if value is not None}
    if args.archive:
        update["archive_reports"] = True
    if update.get("sample_bound", 0) < 0:
        raise ConstraintError("--sample-bound must be non-negative")
    return get_settings().model_copy(update=update)


def run(argv: Optional[Sequence[str]] = None) -> RunReport:
    args = build_parser().parse_args(argv)
    command = " ".join(["raloop"] + list(argv if argv is not None else sys.argv[1:]))
    report = RunReport(command=command)
    started = time.perf_counter()
    settings = None
    try:
        settings = _settings(args)
        configure_logging(settings.log_level)
        COMMANDS[args.command](args, settings, report)
    except WorkbenchError as e:
        logger.error("%s failed: %s", args.command, e)
        report.lines.append(f"error={e}")
        report.exit_status = e.exit_status
    report.timings["total"] = time.perf_counter() - started

    if settings is not None and settings.archive_reports and args.command != "history":
        try:
            record_id = asyncio.run(_archive(report, settings.database_url))
        except (SQLAlchemyError, OSError) as e:
            logger.warning("Could not archive the run report: %s", e)
        else:
            logger.info("Archived run report %d", record_id)
    return report


def main(argv: Optional[Sequence[str]] = None) -> int:
    report = run(argv)
    for line in report.lines:
        print(line)
    return int(report.exit_status)


if __name__ == "__main__":
    raise SystemExit(main())
