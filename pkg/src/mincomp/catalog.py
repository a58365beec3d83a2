"""The reproduction catalog: worked examples with expected verdicts, stored as
data so the acceptance manifest doubles as documentation."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Optional

from .engine import oracle_minimality_status
from .groups import from_spec
from .subsets import parse_subset
from .zset import cofinite_subgroup_certificate, finite_quotient, parse_structured, remark_family, z_check


@dataclass(frozen=True)
class CatalogResult:
    item: str
    description: str
    expected: Optional[str]
    actual: Optional[str]
    passed: Optional[bool]
    out_of_scope: bool

    def to_payload(self) -> dict:
        return {
            "item": self.item,
            "description": self.description,
            "expected": self.expected,
            "actual": self.actual,
            "passed": self.passed,
            "outOfScope": self.out_of_scope,
        }


def load_catalog() -> List[Dict]:
    text = resources.files("mincomp").joinpath("data/reproduce_catalog.json").read_text("utf-8")
    return json.loads(text)["items"]


def _run_entry(entry: Dict) -> CatalogResult:
    kind = entry["kind"]
    item = entry["item"]
    description = entry.get("description", "")
    if kind == "out_of_scope":
        return CatalogResult(item, description, None, None, None, True)
    expected = entry["expected"]
    if kind == "zcheck":
        member = parse_structured(entry["zset"])
        cert = z_check(member, entry["theorem"])
        actual = cert.verdict
        passed = actual == expected
        quotient = entry.get("quotient")
        if quotient:
            image = finite_quotient(member, int(quotient["m"]))
            report = oracle_minimality_status(image.subset, side="both")
            actual = f"{actual}+oracle:{report.status}"
            passed = passed and image.exact and report.status == quotient["expected"]
    elif kind == "oracle":
        group = from_spec(entry["group"])
        subject = parse_subset(entry["subject"], group)
        report = oracle_minimality_status(subject, side=entry.get("side", "both"))
        actual = report.status
        passed = actual == expected
    elif kind == "cofinite":
        cert = cofinite_subgroup_certificate(int(entry["h"]), entry["removed"])
        actual = cert.verdict
        passed = actual == expected
    elif kind == "family-remark":
        member = remark_family(int(entry["n"]), entry["removed"])
        cert = z_check(member, "ThmCMinusC")
        actual = cert.verdict
        passed = actual == expected
    else:
        raise ValueError(f"unknown catalog kind {kind!r}")
    return CatalogResult(item, description, expected, actual, passed, False)


def run_catalog(item: Optional[str] = None) -> List[CatalogResult]:
    """Run every catalog entry (or one, by id) and report pass/fail per item."""
    entries = load_catalog()
    if item is not None:
        entries = [e for e in entries if e["item"] == item]
        if not entries:
            known = [e["item"] for e in load_catalog()]
            raise ValueError(f"unknown catalog item {item!r}; known items: {known}")
    return [_run_entry(e) for e in entries]
