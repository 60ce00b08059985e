import logging

from tabulate import tabulate

from ..models import TORSION_ORDERS, TateParameter
from ..schemas import CurveDetail, CurveRow, FactorizationOut, LocalDataOut
from ..services.classify import curve_record
from ..services.weierstrass import coprimality_conditions, integral_model, invariants
from .common import emit

logger = logging.getLogger(__name__)

INVARIANT_NAMES = ("b2", "b4", "b6", "b8", "c4", "c6", "disc", "j")


def add_parser(subparsers):
    parser = subparsers.add_parser("curve", help="model, reduction data and conductor of one curve")
    parser.add_argument("--n", type=int, required=True, choices=TORSION_ORDERS, help="torsion order N")
    parser.add_argument("--s", type=int, required=True)
    parser.add_argument("--t", type=int, required=True)
    parser.add_argument("--format", choices=("table", "json-lines"), default="table")
    parser.set_defaults(func=run)
    return parser


def run(args) -> int:
    param = TateParameter(args.n, args.s, args.t)
    model = integral_model(param)
    inv = invariants(model)
    record = curve_record(param)
    detail = CurveDetail(
        row=CurveRow.from_record(record),
        integral_model=[str(a) for a in model.coefficients],
        invariants={name: None if getattr(inv, name) is None else str(getattr(inv, name))
                    for name in INVARIANT_NAMES},
        scaling=str(record.scaling),
        disc_min=FactorizationOut.from_factorization(record.disc_min),
        conductor=FactorizationOut.from_factorization(record.conductor),
        locals=[LocalDataOut.from_local(local) for local in record.locals],
        coprimality=coprimality_conditions(param),
    )
    logger.info("curve N=%d (%d,%d): conductor %s", args.n, args.s, args.t, record.conductor)

    if args.format == "json-lines":
        emit("curve", detail.model_dump())
        return 0

    print(f"N={args.n}  s={args.s}  t={args.t}")
    print(f"integral model:  {model}")
    print(tabulate([[name, detail.invariants[name]] for name in INVARIANT_NAMES], tablefmt="plain"))
    print(f"minimal model:   {record.minimal_model}  (u = {record.scaling})")
    print(f"disc_min:        {record.disc_min} = {record.disc_min.value}")
    rows = [[l.p, l.ord_disc, l.kodaira, l.f_p, l.m_p, l.reduction] for l in detail.locals]
    print(tabulate(rows, headers=["p", "ord(disc)", "Kodaira", "f_p", "m_p", "reduction"], tablefmt="github"))
    print(f"conductor:       {record.conductor} = {record.conductor.value}")
    print(f"szpiro ratio:    {record.szpiro_ratio:.6f}")
    status = "ok" if record.torsion_verified == args.n else "MISMATCH"
    print(f"torsion:         (0,0) has order {record.torsion_verified} ({status})")
    for condition, holds in detail.coprimality.items():
        print(f"  {condition}: {'yes' if holds else 'no'}")
    return 0 if record.torsion_verified == args.n else 1
