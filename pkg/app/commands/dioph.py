import logging

from ..errors import UsageError
from ..models import SolutionSet
from ..schemas import SolutionSetOut
from ..services import dioph
from .common import emit

logger = logging.getLogger(__name__)

DEFAULTS = {
    "catalan": {"bound": 1000},
    "lemma22": {"pbound": 1000, "mbound": 20},
    "lemma23": {"hbound": 12, "bound": 10 ** 4},
    "lemma24": {"bound": 100, "lbound": 5},
    "cor25": {"bound": 100, "lbound": 5},
    "pell125": {"sign": -4, "count": 5},
    "mordell2000": {"bound": 10 ** 4},
    "x2pm16": {"pbound": 1000, "abound": 5},
}


def add_parser(subparsers):
    parser = subparsers.add_parser("dioph", help="bounded solution sets of the auxiliary equations")
    parser.add_argument("--eq", required=True, choices=dioph.EQUATIONS, help="equation id")
    parser.add_argument("--bound", type=int, help="bound on the main variable")
    parser.add_argument("--pbound", type=int, help="bound on the prime p")
    parser.add_argument("--mbound", type=int, help="bound on the exponent m (lemma22)")
    parser.add_argument("--hbound", type=int, help="bound on the exponent h (lemma23)")
    parser.add_argument("--lbound", type=int, help="bound on the exponent l (lemma24, cor25)")
    parser.add_argument("--abound", type=int, help="bound on the exponent a (x2pm16)")
    parser.add_argument("--sign", type=int, help="right-hand side c of x^2 - 125y^2 = c (pell125)")
    parser.add_argument("--count", type=int, help="number of solutions (pell125)")
    parser.add_argument("--format", choices=("table", "json-lines"), default="table")
    parser.set_defaults(func=run)
    return parser


def _option(args, name):
    value = getattr(args, name)
    return DEFAULTS[args.eq][name] if value is None else value


def solve(args) -> SolutionSet:
    eq = args.eq
    used = set(DEFAULTS[eq])
    extra = [name for name in ("bound", "pbound", "mbound", "hbound", "lbound", "abound", "sign", "count")
             if getattr(args, name) is not None and name not in used]
    if extra:
        raise UsageError(f"--{extra[0]} does not apply to {eq}")
    opt = lambda name: _option(args, name)
    if eq == "catalan":
        return dioph.catalan_search(opt("bound"))
    if eq == "lemma22":
        return dioph.lemma22_search(opt("pbound"), opt("mbound"))
    if eq == "lemma23":
        return dioph.lemma23_search(opt("hbound"), opt("bound"))
    if eq == "lemma24":
        return dioph.lemma24_search(opt("bound"), opt("lbound"))
    if eq == "cor25":
        return dioph.cor25_filter(opt("bound"), opt("lbound"))
    if eq == "pell125":
        return dioph.pell_solution_set(opt("sign"), opt("count"))
    if eq == "mordell2000":
        return dioph.mordell_search(2000, opt("bound"))
    return dioph.x2pm16_search(opt("pbound"), opt("abound"))


def run(args) -> int:
    solutions = solve(args)
    out = SolutionSetOut.from_solution_set(solutions)
    logger.info("%s: %d solution(s)", out.equation_id, len(out.solutions))
    if args.format == "json-lines":
        emit("dioph", out.model_dump())
        return 0

    bounds = ", ".join(f"{k}={v}" for k, v in out.search_bounds.items())
    print(f"{out.equation_id}  ({bounds})")
    print(f"{len(out.solutions)} solution(s)")
    for sol in out.solutions:
        print("  (" + ", ".join(sol) + ")")
    for family in out.families:
        print(f"family {family.name}: {family.formula} for every {family.parameter}")
    for sol in out.flagged:
        print("  flagged (" + ", ".join(sol) + ")")
    for rejected in out.rejected:
        print("  rejected (" + ", ".join(rejected.solution) + f"): {rejected.reason}")
    return 0
