from pydantic import BaseModel
from typing import Any, Dict, List, Optional

from .config import SCHEMA_VERSION
from .models import CurveRecord, Factorization, LocalData, SolutionSet, SzpiroReport, VerificationReport

# Integers that can outgrow 64 bits travel as decimal strings.

CSV_COLUMNS = ["N", "s", "t", "a1", "a2", "a3", "a4", "a6", "disc_min", "conductor", "szpiro_ratio", "torsion"]


class OutputRecord(BaseModel):
    schema_version: str = SCHEMA_VERSION
    command: str
    payload: Any


class FactorizationOut(BaseModel):
    value: str
    factored: str

    @classmethod
    def from_factorization(cls, f: Factorization) -> "FactorizationOut":
        return cls(value=str(f.value), factored=str(f))


class LocalDataOut(BaseModel):
    p: str
    ord_disc: int
    kodaira: str
    f_p: int
    m_p: int
    reduction: str

    @classmethod
    def from_local(cls, local: LocalData) -> "LocalDataOut":
        return cls(
            p=str(local.p),
            ord_disc=local.ord_disc,
            kodaira=local.kodaira,
            f_p=local.f_p,
            m_p=local.m_p,
            reduction=local.reduction.value,
        )


class CurveRow(BaseModel):
    N: int
    s: str
    t: str
    a1: str
    a2: str
    a3: str
    a4: str
    a6: str
    disc_min: str
    conductor: str
    szpiro_ratio: float
    torsion: int

    @classmethod
    def from_record(cls, record: CurveRecord) -> "CurveRow":
        m = record.minimal_model
        return cls(
            N=record.param.N,
            s=str(record.param.s),
            t=str(record.param.t),
            a1=str(m.a1),
            a2=str(m.a2),
            a3=str(m.a3),
            a4=str(m.a4),
            a6=str(m.a6),
            disc_min=str(record.disc_min.value),
            conductor=str(record.conductor.value),
            szpiro_ratio=round(record.szpiro_ratio, 6),
            torsion=record.torsion_verified,
        )


class CurveDetail(BaseModel):
    row: CurveRow
    integral_model: List[str]
    invariants: Dict[str, Optional[str]]
    scaling: str
    disc_min: FactorizationOut
    conductor: FactorizationOut
    locals: List[LocalDataOut]
    coprimality: Dict[str, bool] = {}


class FamilyOut(BaseModel):
    name: str
    parameter: str
    formula: str


class RejectedOut(BaseModel):
    solution: List[str]
    reason: str


class SolutionSetOut(BaseModel):
    equation_id: str
    search_bounds: Dict[str, str]
    solutions: List[List[str]]
    families: List[FamilyOut] = []
    flagged: List[List[str]] = []
    rejected: List[RejectedOut] = []

    @classmethod
    def from_solution_set(cls, ss: SolutionSet) -> "SolutionSetOut":
        as_text = lambda tup: [str(v) for v in tup]
        return cls(
            equation_id=ss.equation_id,
            search_bounds={k: str(v) for k, v in ss.search_bounds.items()},
            solutions=[as_text(sol) for sol in ss.solutions],
            families=[FamilyOut(name=f.name, parameter=f.parameter, formula=f.formula) for f in ss.families],
            flagged=[as_text(sol) for sol in ss.flagged],
            rejected=[RejectedOut(solution=as_text(sol), reason=reason) for sol, reason in ss.rejected],
        )


class SzpiroOut(BaseModel):
    K: int
    count: int
    max_ratio: float
    ok: bool
    failures: List[str] = []
    by_family: Dict[str, float] = {}

    @classmethod
    def from_report(cls, report: SzpiroReport) -> "SzpiroOut":
        return cls(
            K=report.K,
            count=report.count,
            max_ratio=round(report.max_ratio, 6),
            ok=report.ok,
            failures=list(report.failures),
            by_family={k: round(v, 6) for k, v in sorted(report.by_family.items())},
        )


class MatchOut(BaseModel):
    disc: str
    source: str


class ReportOut(BaseModel):
    N: int
    bound: int
    mode: str
    ok: bool
    curves: List[CurveRow]
    matched: List[MatchOut]
    unwitnessed: List[str]
    violations: List[str]
    open_family: List[str] = []
    szpiro: Optional[SzpiroOut] = None
    discrepancies: List[str] = []
    unlisted: List[MatchOut] = []

    @classmethod
    def from_report(cls, report: VerificationReport) -> "ReportOut":
        return cls(
            N=report.N,
            bound=report.bound,
            mode=report.mode,
            ok=report.ok,
            curves=[CurveRow.from_record(r) for r in report.records],
            matched=[MatchOut(disc=d, source=src) for d, src in report.matched],
            unwitnessed=list(report.unwitnessed),
            violations=list(report.violations),
            open_family=list(report.open_family),
            szpiro=SzpiroOut.from_report(report.szpiro) if report.szpiro else None,
            discrepancies=list(report.discrepancies),
            unlisted=[MatchOut(disc=d, source=label) for d, label in report.unlisted],
        )
