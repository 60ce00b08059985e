import logging

import pandas as pd

from .. import config
from ..models import TORSION_ORDERS, VerificationReport
from ..schemas import ReportOut
from ..services.classify import verify_theorem
from ..services.theorems import MODES, theorem
from .common import add_parallel_options, emit, progress_bar, write_frame

logger = logging.getLogger(__name__)


def add_parser(subparsers):
    parser = subparsers.add_parser("verify", help="compare an enumeration with the expected discriminant list")
    parser.add_argument("--n", type=int, required=True, choices=TORSION_ORDERS, help="torsion order N")
    parser.add_argument("--bound", type=int, default=config.VERIFY_BOUND, help="max(|s|, t) (env ECTORSION_VERIFY_BOUND)")
    parser.add_argument("--mode", choices=MODES, help="conductor shape; defaults to the table's mode for N")
    parser.add_argument("--report-discrepancies", action="store_true",
                        help="print computed conductors next to the stated ones (N=8, N=9)")
    parser.add_argument("--format", choices=("table", "json-lines", "xlsx"), default="table")
    parser.add_argument("--output", help="file to write (required for xlsx)")
    add_parallel_options(parser)
    parser.set_defaults(func=run)
    return parser


def report_frame(report: VerificationReport) -> pd.DataFrame:
    """One row per discriminant with its status and, when enumerated, its curve."""
    by_disc = {}
    for record in report.records:
        by_disc.setdefault(str(record.disc_min), record)
        by_disc.setdefault(str(record.disc_min.absolute()), record)
    open_family = set(report.open_family)
    rows = []
    for disc, source in report.matched:
        status = "open-family" if disc in open_family else "matched"
        rows.append((disc, status, source))
    rows += [(disc, "unlisted", label) for disc, label in report.unlisted]
    rows += [(disc, "unwitnessed", "listed") for disc in report.unwitnessed]
    rows += [(disc, "violation", "") for disc in report.violations]
    out = []
    for disc, status, source in rows:
        record = by_disc.get(disc)
        out.append({
            "disc_min": disc,
            "status": status,
            "source": source,
            "s": str(record.param.s) if record else "",
            "t": str(record.param.t) if record else "",
            "minimal_model": str(record.minimal_model) if record else "",
            "conductor": str(record.conductor) if record else "",
        })
    return pd.DataFrame(out, columns=["disc_min", "status", "source", "s", "t", "minimal_model", "conductor"])


def print_report(report: VerificationReport, expected: int, families: int):
    print(f"N={report.N} bound={report.bound} mode={report.mode}")
    line = f"{len(report.records)} curves (expected {expected})"
    if families:
        line += f" plus members of {families} families"
    print(line)
    for disc, source in report.matched:
        flag = "  [open family]" if disc in report.open_family else ""
        print(f"  matched      {disc}  ({source}){flag}")
    for disc, label in report.unlisted:
        print(f"  unlisted     {disc}  ({label})")
    for disc in report.unwitnessed:
        print(f"  unwitnessed  {disc}")
    for disc in report.violations:
        print(f"  VIOLATION    {disc}")
    if report.szpiro is not None:
        sz = report.szpiro
        verdict = "ok" if sz.ok else "FAILED"
        print(f"szpiro: max ratio {sz.max_ratio:.6f} with K={sz.K} over {sz.count} curve(s): {verdict}")
        for label, ratio in sorted(sz.by_family.items()):
            print(f"  {label or 'unmatched'}: {ratio:.6f}")
        for failure in sz.failures:
            print(f"  {failure}")
    for message in report.discrepancies:
        print(f"discrepancy: {message}")
    print(f"{len(report.violations)} violation(s), {len(report.unlisted)} unlisted")


def run(args) -> int:
    table = theorem(args.n)
    with progress_bar(args.progress, f"verify N={args.n}") as callback:
        report = verify_theorem(args.n, args.bound, args.mode, jobs=args.jobs, progress_callback=callback,
                                report_discrepancies=args.report_discrepancies)

    if args.format == "json-lines":
        emit("verify", ReportOut.from_report(report).model_dump())
    elif args.format == "xlsx":
        write_frame(report_frame(report), "xlsx", args.output, f"verify N={args.n}")
    else:
        expected = 0 if report.mode != table.mode else len(table.expected_discs)
        families = 0 if report.mode != table.mode else len(table.expected_families)
        print_report(report, expected, families)

    if not report.ok:
        logger.error("N=%d: %d violation(s)", args.n, len(report.violations))
        return 1
    return 0
