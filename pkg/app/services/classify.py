"""
Enumeration of curves over the (s, t) grid and regression checks against
the expected discriminant tables.

A pair (s, t) is only taken through minimalization and Tate's algorithm
when its discriminant can still end up with the right number of primes:
minimalization only lowers exponents by multiples of 12, so every prime
whose exponent is not divisible by 12 survives into the minimal
discriminant and hence into the conductor.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor, as_completed
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import gmpy2
import pandas as pd

from .. import config
from ..errors import CurveToolError, DegenerateParameter, DomainError, SingularCurve
from ..models import CurveRecord, Point, SzpiroReport, TateParameter, VerificationReport
from .arith import factor_product, is_prime, prime_power
from .localdata import conductor
from .theorems import (
    CLAIMED_CONDUCTORS,
    MODES,
    N4_FAMILIES,
    PRIME,
    SQUAREFREE,
    families_matching,
    match_family,
    prime_conductor_allowed,
    szpiro_bounds,
    theorem,
)
from .weierstrass import disc_factors, integral_model, order_of_point

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[int, str], None]

MODEL_COLUMNS = ["a1", "a2", "a3", "a4", "a6"]


def szpiro_ratio(disc_min: int, cond: int) -> float:
    if cond <= 1:
        return math.inf
    return math.log(abs(disc_min)) / math.log(cond)


def curve_record(param: TateParameter, disc=None) -> CurveRecord:
    """Fully populated record for one parameter, whatever its conductor."""
    model = integral_model(param)
    if disc is None:
        disc = factor_product(disc_factors(param))
    data = conductor(model, disc)
    order = order_of_point(model, Point(Fraction(0), Fraction(0)), 2 * param.N) or 0
    return CurveRecord(
        param=param.canonical(),
        minimal_model=data.minimal_model,
        disc_min=data.disc_min,
        conductor=data.conductor,
        szpiro_ratio=szpiro_ratio(data.disc_min.value, data.conductor.value),
        torsion_verified=order,
        scaling=data.scaling,
        locals=data.locals,
    )


def _wanted_primes(mode: str) -> int:
    return 1 if mode == PRIME else 2


def candidate(N: int, s: int, t: int, mode: str) -> Optional[CurveRecord]:
    """Record for (s, t) if its conductor has the shape required by mode."""
    if gmpy2.gcd(s, t) != 1:
        return None
    try:
        param = TateParameter(N, s, t)
    except (SingularCurve, DegenerateParameter) as e:
        logger.debug("skip N=%d (%d,%d): %s", N, s, t, e)
        return None
    disc = factor_product(disc_factors(param))
    wanted = _wanted_primes(mode)
    sticky = sum(1 for _, e in disc.factors if e % 12)
    if sticky > wanted or len(disc.factors) < wanted:
        return None
    record = curve_record(param, disc)
    if len(record.conductor.factors) != wanted:
        return None
    if mode == SQUAREFREE and any(e != 1 for _, e in record.conductor.factors):
        return None
    if record.torsion_verified != N:
        raise ArithmeticError(f"(0,0) has order {record.torsion_verified} on N={N} model ({s},{t})")
    return record


def _scan_chunk(N: int, s_values: Sequence[int], B: int, mode: str) -> List[CurveRecord]:
    found = []
    for s in s_values:
        for t in range(1, B + 1):
            record = candidate(N, s, t, mode)
            if record is not None:
                found.append(record)
    return found


def records_frame(records: Sequence[CurveRecord]) -> pd.DataFrame:
    rows = []
    for i, r in enumerate(records):
        rows.append({
            "__idx": i,
            "N": r.param.N,
            "s": r.param.s,
            "t": r.param.t,
            **{name: getattr(r.minimal_model, name) for name in MODEL_COLUMNS},
            "disc_min": r.disc_min.value,
            "conductor": r.conductor.value,
            "szpiro_ratio": r.szpiro_ratio,
            "torsion": r.torsion_verified,
            "__height": max(abs(r.param.s), abs(r.param.t)),
            "__abs_disc": abs(r.disc_min.value),
        })
    columns = ["__idx", "N", "s", "t", *MODEL_COLUMNS, "disc_min", "conductor",
               "szpiro_ratio", "torsion", "__height", "__abs_disc"]
    return pd.DataFrame(rows, columns=columns)


def deduplicate(records: Sequence[CurveRecord]) -> List[CurveRecord]:
    """One record per canonical minimal model, ordered by |disc_min| then model."""
    if not records:
        return []
    df = records_frame(records)
    df = df.sort_values(["__height", "t", "s"], kind="mergesort")
    df = df.drop_duplicates(subset=["N", *MODEL_COLUMNS], keep="first")
    df = df.sort_values(["__abs_disc", "disc_min", *MODEL_COLUMNS], kind="mergesort")
    return [records[i] for i in df["__idx"]]


def enumerate_curves(
    N: int,
    B: int,
    mode: str,
    jobs: int = 1,
    progress_callback: Optional[ProgressCallback] = None,
) -> List[CurveRecord]:
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}, got {mode!r}")
    if B < 2:
        raise DomainError(f"bound must be >= 2, got {B}")
    theorem(N)
    s_values = list(range(-B, B + 1))
    size = max(1, config.CHUNK_SIZE)
    chunks = [s_values[i:i + size] for i in range(0, len(s_values), size)]
    found: List[CurveRecord] = []
    if progress_callback: progress_callback(0, f"Scanning N={N} up to height {B}...")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = [executor.submit(_scan_chunk, N, chunk, B, mode) for chunk in chunks]
            for done, future in enumerate(as_completed(futures), start=1):
                found.extend(future.result())
                if progress_callback:
                    progress_callback(int(100 * done / len(chunks)), f"{done}/{len(chunks)} chunks")
    else:
        for done, chunk in enumerate(chunks, start=1):
            found.extend(_scan_chunk(N, chunk, B, mode))
            if progress_callback:
                progress_callback(int(100 * done / len(chunks)), f"{done}/{len(chunks)} chunks")
    records = deduplicate(found)
    logger.info("N=%d B=%d mode=%s: %d curve(s) from %d hit(s)", N, B, mode, len(records), len(found))
    return records


def szpiro_check(
    records: Sequence[CurveRecord],
    K: int,
    labels: Optional[Sequence[str]] = None,
    family_bounds: Optional[Dict[str, int]] = None,
) -> SzpiroReport:
    """Check |disc_min| < conductor^K for every record.

    With ``labels``, records are also grouped by the family they matched and
    checked against that family's own exponent from ``family_bounds``.
    """
    if K <= 0:
        raise DomainError("Szpiro exponent must be positive")
    family_bounds = family_bounds or {}
    failures, by_family = [], {}
    max_ratio = 0.0
    for i, record in enumerate(records):
        d, n = abs(record.disc_min.value), record.conductor.value
        max_ratio = max(max_ratio, record.szpiro_ratio)
        if not d < n ** K:
            failures.append(f"|{record.disc_min}| >= ({record.conductor})^{K}")
        if labels is None:
            continue
        label = labels[i]
        by_family[label] = max(by_family.get(label, 0.0), record.szpiro_ratio)
        bound = family_bounds.get(label)
        if bound is not None and not d < n ** bound:
            failures.append(f"{label}: |{record.disc_min}| >= ({record.conductor})^{bound}")
    return SzpiroReport(K, len(records), max_ratio, tuple(failures), by_family)


def verify_theorem(
    N: int,
    B: int,
    mode: Optional[str] = None,
    jobs: int = 1,
    progress_callback: Optional[ProgressCallback] = None,
    report_discrepancies: bool = False,
) -> VerificationReport:
    table = theorem(N)
    mode = mode or table.mode
    records = enumerate_curves(N, B, mode, jobs, progress_callback)
    if mode == PRIME:
        return _verify_prime_conductor(N, B, records)

    key = (lambda f: str(f)) if table.signed else (lambda f: str(f.absolute()))
    expected = pd.DataFrame({"disc": [key(f) for f in table.expected_discs]}, columns=["disc"])
    found = pd.DataFrame(
        {"disc": [key(r.disc_min) for r in records], "__idx": list(range(len(records)))},
        columns=["disc", "__idx"],
    )
    unlisted_labels = {key(u.disc): u.label for u in table.unlisted}
    merged = pd.merge(expected, found, on="disc", how="outer", indicator=True)

    matched, unwitnessed, violations, open_family = [], [], [], []
    unlisted = []
    labels = [""] * len(records)
    for _, row in merged.iterrows():
        if row["_merge"] == "left_only":
            unwitnessed.append(row["disc"])
            continue
        idx = int(row["__idx"])
        if row["_merge"] == "both":
            matched.append((row["disc"], "listed"))
            labels[idx] = "listed"
            continue
        if row["disc"] in unlisted_labels:
            unlisted.append((row["disc"], unlisted_labels[row["disc"]]))
            labels[idx] = "unlisted"
            logger.warning("N=%d: disc %s is %s, missing from the expected list", N, row["disc"],
                           unlisted_labels[row["disc"]])
            continue
        family = match_family(table, records[idx].disc_min)
        if family is None:
            violations.append(row["disc"])
            logger.error("N=%d: disc %s matches no expected entry", N, row["disc"])
            continue
        matched.append((row["disc"], family.name))
        labels[idx] = family.name
        if family.is_open:
            open_family.append(row["disc"])
            logger.warning("N=%d: disc %s belongs to the open family %s", N, row["disc"], family.name)

    szpiro = None
    if table.szpiro_exponent:
        szpiro = szpiro_check(records, table.szpiro_exponent, labels, szpiro_bounds(table))
    discrepancies = _conductor_discrepancies(N, records) if report_discrepancies else []
    return VerificationReport(
        N=N,
        bound=B,
        mode=mode,
        records=tuple(records),
        matched=tuple(sorted(set(matched))),
        unwitnessed=tuple(sorted(set(unwitnessed))),
        violations=tuple(sorted(set(violations))),
        open_family=tuple(sorted(set(open_family))),
        szpiro=szpiro,
        discrepancies=tuple(discrepancies),
        unlisted=tuple(sorted(set(unlisted))),
    )


def _verify_prime_conductor(N: int, B: int, records: Sequence[CurveRecord]) -> VerificationReport:
    matched, violations = [], []
    for record in records:
        p = record.conductor.primes[0]
        if prime_conductor_allowed(p, record.disc_min):
            matched.append((str(record.disc_min), f"conductor {p}"))
        else:
            violations.append(str(record.disc_min))
    return VerificationReport(N, B, PRIME, tuple(records), tuple(sorted(set(matched))), (),
                              tuple(sorted(set(violations))))


def _conductor_discrepancies(N: int, records: Sequence[CurveRecord]) -> List[str]:
    """Computed vs stated conductor for the listed curves of N."""
    claimed = CLAIMED_CONDUCTORS.get(N)
    if claimed is None:
        return []
    listed = set(theorem(N).expected_discs)
    out = []
    for record in records:
        if record.disc_min not in listed:
            continue
        computed = record.conductor
        support = "same prime support" if computed.primes == claimed.primes else "DIFFERENT prime support"
        note = "agrees" if computed == claimed else "differs"
        message = (f"N={N} disc_min={record.disc_min}: computed conductor {computed} = {computed.value}, "
                   f"stated {claimed} = {claimed.value} ({note}; {support})")
        if computed != claimed:
            logger.warning(message)
        out.append(message)
    return out


# --- witnesses for the infinite N=4 families ----------------------------------

N4_FAMILY_NAMES = tuple(f.name for f in N4_FAMILIES)


def _witness_parameters(family: str, k: int, p: Optional[int], sign: int) -> Optional[Tuple[int, int]]:
    """(s, t) realising one member of an N=4 family, or None if its side condition fails."""
    if family in ("2^(2k+4)p", "2^(2k+4)p^4"):
        if k < 4:
            raise DomainError(f"family {family} needs k >= 4")
        prime = 2 ** (k - 4) + sign
        if not is_prime(prime) or prime == 2:
            return None
        if family == "2^(2k+4)p":
            return sign, 2 ** k
        return -prime, 2 ** k
    if family in ("2^(4k)p", "2^(4k)p^7"):
        if k < 1:
            raise DomainError(f"family {family} needs k > 0")
        prime = 2 ** (k + 4) + sign
        if not is_prime(prime):
            return None
        if family == "2^(4k)p":
            return sign * 2 ** k, 1
        return -(2 ** k), prime
    if p is None or not is_prime(p) or p < 0:
        raise DomainError(f"family {family} needs a prime p")
    if family in ("p^4q^b", "p^4q^(7b)"):
        if k < 1:
            raise DomainError(f"family {family} needs k >= 1")
        value = 16 * p + sign
        if prime_power(value) is None:
            return None
        if family == "p^4q^b":
            return sign * p, 1
        return -p, value
    if family in ("p^(4k)q", "p^(4k)q^7"):
        if k < 1:
            raise DomainError(f"family {family} needs k >= 1")
        value = 16 * p ** k + sign
        if not is_prime(value):
            return None
        if family == "p^(4k)q":
            return sign * p ** k, 1
        return -(p ** k), value
    if family == "p^(2k)q":
        if k < 1:
            raise DomainError(f"family {family} needs k > 0")
        if p == 2 or not is_prime(p ** (2 * k) + 16):
            return None
        return 1, p ** (2 * k)
    raise DomainError(f"unknown N=4 family {family!r}; expected one of {N4_FAMILY_NAMES}")


def family_witness(family: str, k: int, p: Optional[int] = None, sign: int = 1) -> Optional[CurveRecord]:
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    st = _witness_parameters(family, k, p, sign)
    if st is None:
        return None
    try:
        param = TateParameter(4, *st)
    except CurveToolError as e:
        logger.info("family %s k=%d: witness (%d,%d) rejected: %s", family, k, st[0], st[1], e)
        return None
    record = curve_record(param)
    if len(record.conductor.primes) != 2:
        logger.info("family %s k=%d: witness %s has conductor %s", family, k, st, record.conductor)
        return None
    if family not in families_matching(theorem(4), record.disc_min):
        logger.info("family %s k=%d: witness %s has disc_min %s outside the family", family, k, st, record.disc_min)
        return None
    return record

