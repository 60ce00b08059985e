from .. import config
from ..models import TORSION_ORDERS
from ..schemas import CurveRow
from ..services.classify import enumerate_curves
from ..services.theorems import MODES, theorem
from .common import add_format_options, add_parallel_options, curves_frame, emit, progress_bar, write_frame


def add_parser(subparsers):
    parser = subparsers.add_parser("enumerate", help="all curves with two-prime conductor up to a height bound")
    parser.add_argument("--n", type=int, required=True, choices=TORSION_ORDERS, help="torsion order N")
    parser.add_argument("--bound", type=int, default=config.ENUM_BOUND, help="max(|s|, t) (env ECTORSION_ENUM_BOUND)")
    parser.add_argument("--mode", choices=MODES, help="conductor shape; defaults to the table's mode for N")
    add_format_options(parser)
    add_parallel_options(parser)
    parser.set_defaults(func=run)
    return parser


def run(args) -> int:
    mode = args.mode or theorem(args.n).mode
    with progress_bar(args.progress, f"N={args.n}") as callback:
        records = enumerate_curves(args.n, args.bound, mode, jobs=args.jobs, progress_callback=callback)

    if args.format == "json-lines":
        for record in records:
            emit("enumerate", CurveRow.from_record(record).model_dump())
        return 0

    if args.format == "table" and not args.output:
        print(f"N={args.n} bound={args.bound} mode={mode}: {len(records)} curve(s)")
    write_frame(curves_frame(records), args.format, args.output, f"N={args.n}")
    return 0
