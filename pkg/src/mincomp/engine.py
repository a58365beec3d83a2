"""Complement predicates, greedy minimalization, the exhaustive minimality
oracle, and the cardinality obstruction.

The oracle decides, for a subject set C in a small finite group, whether ANY
partner set B makes C a minimal complement.  Candidates B are enumerated by
increasing bitmask value; coverage ("B must intersect C^-1·g for every g")
and per-element necessity are evaluated as word-parallel numpy passes over
chunks of the candidate space, so parallel and serial runs return identical
reports by merging on the earliest witness.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from .errors import CapacityError
from .groups import FiniteGroup, GroupSubset, Subgroup, bits_of

ORACLE_DEFAULT_BOUND = 20
ORACLE_HARD_CAP = 28
_CHUNK_BITS = 18

MINIMAL = "Minimal"
NOT_MINIMAL = "NotMinimal"
NOT_A_COMPLEMENT = "NotAComplementToAnything"  # unreachable for nonempty C; kept for totality


def is_complement(a: GroupSubset, b: GroupSubset, side: str = "left") -> bool:
    """Left: ``A*B = G``; right: ``B*A = G``."""
    a._check_same_parent(b)
    group = a.parent
    if side == "left":
        return group.product_mask(a.mask, b.mask) == group.full_mask
    if side == "right":
        return group.product_mask(b.mask, a.mask) == group.full_mask
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def is_minimal_complement_to(c: GroupSubset, b: GroupSubset, side: str = "left") -> bool:
    """Whether C complements B on the given side and no proper subset does."""
    if c.is_empty():
        raise ValueError("C must be nonempty")
    if not is_complement(c, b, side):
        return False
    for elem in c:
        smaller = GroupSubset(c.parent, c.mask & ~(1 << elem))
        if is_complement(smaller, b, side):
            return False
    return True


def minimalize(c: GroupSubset, b: GroupSubset, side: str = "left") -> GroupSubset:
    """Shrink C to a minimal sub-complement of B.

    Elements are offered for removal from the highest index down, so the
    lexicographically least elements survive; the result is deterministic.
    """
    if not is_complement(c, b, side):
        raise ValueError("C is not a complement to B on the requested side")
    mask = c.mask
    for elem in sorted(bits_of(c.mask), reverse=True):
        candidate = mask & ~(1 << elem)
        if is_complement(GroupSubset(c.parent, candidate), b, side):
            mask = candidate
    return GroupSubset(c.parent, mask)


# -- oracle -------------------------------------------------------------------


@dataclass(frozen=True)
class OracleReport:
    """Outcome of the exhaustive scan over candidate partner sets."""

    subject: GroupSubset
    side: str
    status: str
    witness: Optional[GroupSubset]
    witness_side: Optional[str]
    searched: int
    elapsed: float

    def to_payload(self) -> dict:
        """JSON-ready form; ``elapsed`` is reported but not part of report identity."""
        return {
            "subject": list(self.subject.members),
            "side": self.side,
            "status": self.status,
            "witness": list(self.witness.members) if self.witness else None,
            "witnessSide": self.witness_side,
            "searched": self.searched,
            "elapsedSeconds": round(self.elapsed, 6),
        }

    def same_outcome(self, other: "OracleReport") -> bool:
        a, b = self.to_payload(), other.to_payload()
        a.pop("elapsedSeconds")
        b.pop("elapsedSeconds")
        return a == b


def _coverage_tables(
    group: FiniteGroup, subject_mask: int, side: str
) -> Tuple[np.ndarray, np.ndarray]:
    """Per-target-element requirement masks and necessity attributions.

    ``req[g]`` is the mask of partner elements b that put g into the product;
    ``contrib[g][b]`` is ``1 << c`` for the unique subject element c that pairs
    with b to produce g (0 for b outside ``req[g]``).
    """
    n = group.order
    req = np.zeros(n, dtype=np.uint32)
    contrib = np.zeros((n, n), dtype=np.uint32)
    subject = list(bits_of(subject_mask))
    for g in range(n):
        m = 0
        for c in subject:
            if side == "left":
                b = group.mul(group.inv(c), g)  # c*b = g
            else:
                b = group.mul(g, group.inv(c))  # b*c = g
            m |= 1 << b
            contrib[g, b] = np.uint32(1 << c)
        req[g] = np.uint32(m)
    return req, contrib


def _scan_chunk(
    lo: int,
    hi: int,
    req: np.ndarray,
    contrib: np.ndarray,
    subject_mask: int,
) -> Optional[int]:
    """First candidate in [lo, hi) that the subject minimally complements."""
    cands = np.arange(lo, hi, dtype=np.uint32)
    alive = np.ones(len(cands), dtype=bool)
    for g in range(len(req)):
        alive &= (cands & req[g]) != 0
        if not alive.any():
            return None
    cands = cands[alive]
    necessary = np.zeros(len(cands), dtype=np.uint32)
    target = np.uint32(subject_mask)
    for g in range(len(req)):
        hits = cands & req[g]
        single = (hits != 0) & ((hits & (hits - np.uint32(1))) == 0)
        if not single.any():
            continue
        idx = np.log2(np.where(single, hits, np.uint32(1))).astype(np.int64)
        necessary |= np.where(single, contrib[g][idx], np.uint32(0))
    winners = np.flatnonzero(necessary == target)
    if winners.size:
        return int(cands[winners[0]])
    return None


def _scan_chunk_job(args: Tuple) -> Optional[int]:
    return _scan_chunk(*args)


def _chunks(total: int, jobs: int = 1) -> List[Tuple[int, int]]:
    size = 1 << _CHUNK_BITS
    if jobs > 1:
        # enough chunks to keep every worker busy; the merge is order-based,
        # so the report does not depend on the chunking
        size = max(1 << 10, min(size, total // (4 * jobs) + 1))
    return [(lo, min(lo + size, total + 1)) for lo in range(1, total + 1, size)]


def _scan_side(
    group: FiniteGroup,
    subject_mask: int,
    side: str,
    jobs: int,
    pool: Optional[ProcessPoolExecutor],
) -> Tuple[Optional[int], int]:
    """Scan all nonempty partner candidates; return (witness mask, searched count)."""
    total = group.full_mask  # candidates 1 .. 2^n - 1
    req, contrib = _coverage_tables(group, subject_mask, side)
    parts = _chunks(total, jobs)
    if jobs <= 1 or pool is None or len(parts) == 1:
        for lo, hi in parts:
            found = _scan_chunk(lo, hi, req, contrib, subject_mask)
            if found is not None:
                return found, found
        return None, total
    futures = [pool.submit(_scan_chunk_job, (lo, hi, req, contrib, subject_mask)) for lo, hi in parts]
    witness = None
    for fut in futures:  # submission order == enumeration order
        found = fut.result()
        if found is not None:
            witness = found
            break
    for fut in futures:
        fut.cancel()
    if witness is not None:
        return witness, witness
    return None, total


def _resolve_bound(group: FiniteGroup, bound: Optional[int]) -> None:
    limit = ORACLE_DEFAULT_BOUND if bound is None else bound
    if limit > ORACLE_HARD_CAP:
        raise CapacityError(f"oracle bound is hard-capped at {ORACLE_HARD_CAP}, got {limit}")
    if group.order > limit:
        raise CapacityError(
            f"oracle needs group order <= {limit} (got {group.order}); "
            "raise the bound to proceed"
        )


def oracle_minimality_status(
    c: GroupSubset,
    side: str = "both",
    bound: Optional[int] = None,
    jobs: int = 1,
) -> OracleReport:
    """Exhaustively decide whether C is a minimal complement to ANY subset.

    Scans every nonempty B in increasing bitmask order and reports the first
    B to which C is a minimal complement, else NotMinimal.  ``side='both'``
    scans left first, then right, matching the reading that "not a minimal
    complement in G" means on neither side.
    """
    if c.is_empty():
        raise ValueError("oracle subject must be nonempty")
    group = c.parent
    _resolve_bound(group, bound)
    if side not in ("left", "right", "both"):
        raise ValueError(f"side must be left, right or both, got {side!r}")
    started = time.perf_counter()
    sides = ["left", "right"] if side == "both" else [side]
    pool = None
    try:
        if jobs > 1:
            pool = ProcessPoolExecutor(max_workers=jobs)
        searched = 0
        for s in sides:
            witness_mask, count = _scan_side(group, c.mask, s, jobs, pool)
            searched += count
            if witness_mask is not None:
                return OracleReport(
                    subject=c,
                    side=side,
                    status=MINIMAL,
                    witness=GroupSubset(group, witness_mask),
                    witness_side=s,
                    searched=searched,
                    elapsed=time.perf_counter() - started,
                )
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    return OracleReport(
        subject=c,
        side=side,
        status=NOT_MINIMAL,
        witness=None,
        witness_side=None,
        searched=searched,
        elapsed=time.perf_counter() - started,
    )


def enumerate_minimal_complements(
    b: GroupSubset, side: str = "left", bound: Optional[int] = None
) -> List[GroupSubset]:
    """All minimal C with ``C*B = G`` (side-adjusted), sorted by (size, mask).

    Scans candidate C by the same chunked word-parallel kernel as the oracle:
    coverage requires C to hit ``g*B^-1`` (left) for every g, and a candidate
    is minimal exactly when every one of its elements is the unique hitter of
    some requirement.
    """
    if b.is_empty():
        raise ValueError("B must be nonempty")
    group = b.parent
    _resolve_bound(group, bound)
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    n = group.order
    req = np.zeros(n, dtype=np.uint32)
    for g in range(n):
        m = 0
        for elem in b:
            if side == "left":
                m |= 1 << group.mul(g, group.inv(elem))  # c*b = g
            else:
                m |= 1 << group.mul(group.inv(elem), g)  # b*c = g
        req[g] = np.uint32(m)
    found: List[int] = []
    for lo, hi in _chunks(group.full_mask):
        cands = np.arange(lo, hi, dtype=np.uint32)
        alive = np.ones(len(cands), dtype=bool)
        for g in range(n):
            alive &= (cands & req[g]) != 0
            if not alive.any():
                break
        else:
            cands = cands[alive]
            necessary = np.zeros(len(cands), dtype=np.uint32)
            for g in range(n):
                hits = cands & req[g]
                single = (hits != 0) & ((hits & (hits - np.uint32(1))) == 0)
                necessary |= np.where(single, hits, np.uint32(0))
            found.extend(int(v) for v in cands[necessary == cands])
    found.sort(key=lambda m: (m.bit_count(), m))
    return [GroupSubset(group, m) for m in found]


# -- cardinality obstruction ---------------------------------------------------


@dataclass(frozen=True)
class RelativeQuotient:
    """|C| / |H\\C| as an exact rational; ``unit`` is 'elements' or 'cosets'."""

    numerator: int
    denominator: int
    unit: str = "elements"

    def __post_init__(self) -> None:
        if self.denominator <= 0:
            raise ValueError("relative quotient needs a nonempty complement in H")

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


def lambda_quotient(c: GroupSubset, h: Subgroup) -> RelativeQuotient:
    """Relative quotient of C with respect to H; requires C strictly inside H."""
    if not c.issubset(h.members):
        raise ValueError("C must be contained in H")
    if c.mask == h.members.mask:
        raise ValueError("C must be strictly contained in H")
    return RelativeQuotient(len(c), len(h) - len(c))


@dataclass(frozen=True)
class ObstructionReport:
    """The largeness obstruction |C| > 2[G:H]|H\\C| with its equivalent restatements."""

    holds: bool
    verdict: str
    index: int
    size_c: int
    size_h: int
    order: int
    quotient: RelativeQuotient
    threshold: Fraction  # 2|G||H| / (|H| + 2|G|)

    def to_payload(self) -> dict:
        return {
            "holds": self.holds,
            "verdict": self.verdict,
            "index": self.index,
            "sizeC": self.size_c,
            "sizeH": self.size_h,
            "order": self.order,
            "lambda": [self.quotient.numerator, self.quotient.denominator],
            "threshold": [self.threshold.numerator, self.threshold.denominator],
        }


def cardinality_obstruction(
    group: FiniteGroup, h: Subgroup, c: GroupSubset
) -> ObstructionReport:
    """Check |C| > 2[G:H]·|H\\C| for nonempty C strictly inside H.

    Three restatements are computed independently and must agree:
    the coset-free count, the relative-quotient form, and the closed-form
    threshold 2|G||H|/(|H|+2|G|).
    """
    if c.is_empty():
        raise ValueError("C must be nonempty")
    if not c.issubset(h.members):
        raise ValueError("C must be contained in H")
    if c.mask == h.members.mask:
        raise ValueError("C must be strictly contained in H")
    n = group.order
    size_h = len(h)
    size_c = len(c)
    ell = h.index
    rest = size_h - size_c
    direct = size_c > 2 * ell * rest
    quotient = RelativeQuotient(size_c, rest)
    via_lambda = quotient.value > 2 * ell
    threshold = Fraction(2 * n * size_h, size_h + 2 * n)
    via_threshold = size_c > threshold
    if not (direct == via_lambda == via_threshold):
        raise AssertionError(
            f"obstruction restatements disagree: {direct}, {via_lambda}, {via_threshold}"
        )
    return ObstructionReport(
        holds=direct,
        verdict="NonMinimal" if direct else "Inconclusive",
        index=ell,
        size_c=size_c,
        size_h=size_h,
        order=n,
        quotient=quotient,
        threshold=threshold,
    )


def default_jobs() -> int:
    """Default parallelism degree, overridable via MINCOMP_PARALLELISM."""
    env = os.environ.get("MINCOMP_PARALLELISM")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1
