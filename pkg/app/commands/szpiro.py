from tabulate import tabulate

from .. import config
from ..errors import UsageError
from ..models import TORSION_ORDERS
from ..schemas import SzpiroOut
from ..services.classify import enumerate_curves, szpiro_check
from ..services.theorems import MODES, THEOREMS
from .common import add_parallel_options, emit, progress_bar


def add_parser(subparsers):
    parser = subparsers.add_parser("szpiro", help="check |disc_min| < conductor^K on an enumeration")
    parser.add_argument("--n", type=int, choices=TORSION_ORDERS,
                        help="torsion order N (default: every N with a stated exponent)")
    parser.add_argument("--bound", type=int, default=config.VERIFY_BOUND)
    parser.add_argument("--k", type=int, help="exponent K; defaults to the one stated for N")
    parser.add_argument("--mode", choices=MODES, help="conductor shape; defaults to the table's mode for N")
    parser.add_argument("--format", choices=("table", "json-lines"), default="table")
    add_parallel_options(parser)
    parser.set_defaults(func=run)
    return parser


def run(args) -> int:
    if args.n is not None:
        orders = [args.n]
        if args.k is None and THEOREMS[args.n].szpiro_exponent is None:
            raise UsageError(f"no exponent is stated for N={args.n}; pass --k")
    else:
        orders = [N for N, table in THEOREMS.items() if table.szpiro_exponent is not None]

    rows, all_ok = [], True
    for N in orders:
        table = THEOREMS[N]
        K = args.k if args.k is not None else table.szpiro_exponent
        with progress_bar(args.progress, f"N={N}") as callback:
            records = enumerate_curves(N, args.bound, args.mode or table.mode, jobs=args.jobs,
                                       progress_callback=callback)
        report = SzpiroOut.from_report(szpiro_check(records, K))
        all_ok = all_ok and report.ok
        if args.format == "json-lines":
            emit("szpiro", {"N": N, "bound": args.bound, **report.model_dump()})
        rows.append([N, K, report.count, f"{report.max_ratio:.6f}", "ok" if report.ok else "FAILED"])

    if args.format == "table":
        print(tabulate(rows, headers=["N", "K", "curves", "max ratio", "result"], tablefmt="github"))
    return 0 if all_ok else 1
