"""Plain request -> response functions shared by the HTTP routes and the CLI."""

from __future__ import annotations

from typing import List

from ..catalog import run_catalog
from ..certificates import (
    Certificate,
    TheoremInstance,
    applicable_checkers,
    run_checker,
    verdict,
)
from ..engine import oracle_minimality_status
from ..groups import Subgroup, from_spec
from ..subsets import parse_subset
from ..sweeps import run_sweep
from ..zset import parse_structured, remark_family, robust_family, z_check
from .models import (
    CatalogItemResult,
    CertificateModel,
    CheckRequest,
    CheckResponse,
    FamilyResponse,
    OracleRequest,
    OracleResponse,
    RemarkFamilyRequest,
    ReproduceResponse,
    RobustFamilyRequest,
    SweepRequest,
    SweepResponse,
    VerdictRequest,
    VerdictResponse,
    ZCertificateModel,
    ZCheckRequest,
)


def _certificate_model(cert: Certificate) -> CertificateModel:
    return CertificateModel.model_validate(cert.to_payload())


def run_oracle(req: OracleRequest) -> OracleResponse:
    group = from_spec(req.group)
    subject = parse_subset(req.subject, group)
    report = oracle_minimality_status(subject, side=req.side, bound=req.bound, jobs=req.jobs)
    return OracleResponse.model_validate(report.to_payload())


def run_check(req: CheckRequest) -> CheckResponse:
    group = from_spec(req.group)
    h = Subgroup(group, parse_subset(req.h, group))
    k = Subgroup(group, parse_subset(req.k, group))
    inst = TheoremInstance(
        group,
        h,
        k,
        parse_subset(req.c, group),
        parse_subset(req.e, group),
        parse_subset(req.f, group),
    )
    names = [req.theorem] if req.theorem else applicable_checkers(inst)
    certs = [run_checker(inst, name) for name in names]
    return CheckResponse(certificates=[_certificate_model(c) for c in certs])


def run_verdict(req: VerdictRequest) -> VerdictResponse:
    group = from_spec(req.group)
    subject = parse_subset(req.subject, group)
    certs = verdict(group, subject, confirm_oracle=req.confirmOracle, oracle_bound=req.bound)
    return VerdictResponse(certificates=[_certificate_model(c) for c in certs])


def run_zcheck(req: ZCheckRequest) -> ZCertificateModel:
    member = parse_structured(req.zset.to_spec())
    cert = z_check(member, req.theorem)
    return ZCertificateModel.model_validate(cert.to_payload())


def run_robust_family(req: RobustFamilyRequest) -> FamilyResponse:
    member = robust_family(
        req.p, req.a, req.residues, {int(s): t for s, t in req.sporadic.items()}
    )
    cert = z_check(member, "ThmCMinusC")
    return FamilyResponse(
        zset=member.to_payload(),
        certificate=ZCertificateModel.model_validate(cert.to_payload()),
    )


def run_remark_family(req: RemarkFamilyRequest) -> FamilyResponse:
    member = remark_family(
        req.n, req.removed, {int(s): t for s, t in req.sporadic.items()}
    )
    cert = z_check(member, "ThmCMinusC")
    return FamilyResponse(
        zset=member.to_payload(),
        certificate=ZCertificateModel.model_validate(cert.to_payload()),
    )


def run_reproduce(item: str | None = None) -> ReproduceResponse:
    results = run_catalog(item)
    models: List[CatalogItemResult] = [
        CatalogItemResult.model_validate(r.to_payload()) for r in results
    ]
    all_passed = all(r.passed for r in results if not r.out_of_scope)
    return ReproduceResponse(results=models, allPassed=all_passed)


def run_sweep_request(req: SweepRequest) -> SweepResponse:
    result = run_sweep(req.suite)
    return SweepResponse.model_validate(result.to_payload())
