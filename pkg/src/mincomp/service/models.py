"""Pydantic request/response models for the verification service."""

from __future__ import annotations

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field


class OracleRequest(BaseModel):
    group: str = Field(examples=["cyclic:12"])
    subject: str = Field(examples=["{2,4,6,8,10}"])
    side: Literal["left", "right", "both"] = "both"
    bound: Optional[int] = None
    jobs: int = 1


class OracleResponse(BaseModel):
    subject: List[int]
    side: str
    status: str
    witness: Optional[List[int]]
    witnessSide: Optional[str]
    searched: int
    elapsedSeconds: float


class HypothesisModel(BaseModel):
    name: str
    holds: bool
    witness: Dict[str, Any]


class CertificateModel(BaseModel):
    theorem: str
    verdict: str
    hypotheses: List[HypothesisModel]
    subject: List[int]
    decomposition: Optional[Dict[str, Any]] = None
    oracleConfirmed: Optional[bool] = None
    notes: List[str] = []


class CheckRequest(BaseModel):
    group: str
    h: str = Field(description="subset literal for the subgroup H")
    k: str = Field(description="subset literal for the subgroup K")
    c: str
    e: str = "{}"
    f: str = "{}"
    theorem: Optional[str] = Field(default=None, description="one checker, or all applicable when omitted")


class CheckResponse(BaseModel):
    certificates: List[CertificateModel]


class VerdictRequest(BaseModel):
    group: str
    subject: str
    confirmOracle: bool = False
    bound: Optional[int] = None


class VerdictResponse(BaseModel):
    certificates: List[CertificateModel]


class ZSetSpec(BaseModel):
    h: int
    k: int
    core: Optional[List[int]] = None
    raw_core: Optional[List[int]] = None
    exceptions: List[int] = []
    sporadic: Dict[str, str] = {}
    samples: Dict[str, List[int]] = {}
    shift: Optional[int] = None

    def to_spec(self) -> dict:
        data: Dict[str, Any] = {
            "h": self.h,
            "k": self.k,
            "exceptions": self.exceptions,
            "sporadic": self.sporadic,
            "samples": self.samples,
        }
        if self.raw_core is not None:
            data["raw_core"] = self.raw_core
        if self.core is not None:
            data["core"] = self.core
        if self.shift is not None:
            data["shift"] = self.shift
        return data


class ZCertificateModel(BaseModel):
    theorem: str
    verdict: str
    hypotheses: List[HypothesisModel]
    subject: Dict[str, Any]
    automatic: List[str] = []
    notes: List[str] = []


class ZCheckRequest(BaseModel):
    zset: ZSetSpec
    theorem: str


class RobustFamilyRequest(BaseModel):
    p: int
    a: int
    residues: List[int]
    sporadic: Dict[str, str] = {}


class RemarkFamilyRequest(BaseModel):
    n: int
    removed: List[int]
    sporadic: Dict[str, str] = {}


class FamilyResponse(BaseModel):
    zset: Dict[str, Any]
    certificate: ZCertificateModel


class CatalogItemResult(BaseModel):
    item: str
    description: str
    expected: Optional[str]
    actual: Optional[str]
    passed: Optional[bool]
    outOfScope: bool


class ReproduceResponse(BaseModel):
    results: List[CatalogItemResult]
    allPassed: bool


class SweepRequest(BaseModel):
    suite: Literal["fini", "soundness", "identities", "robust", "remark"]


class SweepResponse(BaseModel):
    name: str
    instances: int
    confirmed: int
    violations: List[str]
    elapsedSeconds: float
    ok: bool
    details: Dict[str, Any]
