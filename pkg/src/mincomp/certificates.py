"""Executable checkers for the non-minimality theorems on finite groups.

Each checker consumes a decomposed instance (G, H, K, C, E, F) and returns a
machine-readable certificate: the verdict is NonMinimal exactly when every
listed hypothesis holds, and Inconclusive otherwise -- the theorems are
one-directional sufficient conditions, so a failed hypothesis never means
"minimal".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .engine import cardinality_obstruction, oracle_minimality_status
from .groups import (
    FiniteGroup,
    GroupSubset,
    Subgroup,
    _is_normal_in,
    all_subgroups,
    bits_of,
)

PROP_COSET = "PropCoset"
THM_F_AVOIDS = "ThmFAvoids"
THM_Q_FINITE = "ThmQFinite"
THM_SINGLE_COSET = "ThmSingleCoset"
THM_CMINUSC = "ThmCMinusC"
PROP_FINI = "PropFini"
CARDINALITY = "CardinalityObstruction"

COSET_THEOREMS = (PROP_COSET, THM_F_AVOIDS, THM_Q_FINITE, THM_SINGLE_COSET, THM_CMINUSC)


@dataclass(frozen=True)
class Hypothesis:
    name: str
    holds: bool
    witness: Dict[str, object] = field(default_factory=dict)

    def to_payload(self) -> dict:
        return {"name": self.name, "holds": self.holds, "witness": self.witness}


@dataclass(frozen=True)
class Certificate:
    """A verdict naming the rule applied, every hypothesis checked and the subject set."""

    theorem: str
    verdict: str
    hypotheses: Tuple[Hypothesis, ...]
    subject: Tuple[int, ...]
    decomposition: Optional[Dict[str, object]] = None
    oracle_confirmed: Optional[bool] = None
    notes: Tuple[str, ...] = ()

    def to_payload(self) -> dict:
        return {
            "theorem": self.theorem,
            "verdict": self.verdict,
            "hypotheses": [h.to_payload() for h in self.hypotheses],
            "subject": list(self.subject),
            "decomposition": self.decomposition,
            "oracleConfirmed": self.oracle_confirmed,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_payload(), sort_keys=True, separators=(",", ":"))


def _finish(
    theorem: str,
    hypotheses: Sequence[Hypothesis],
    subject_mask: int,
    decomposition: Optional[Dict[str, object]] = None,
    notes: Sequence[str] = (),
) -> Certificate:
    verdict = "NonMinimal" if all(h.holds for h in hypotheses) else "Inconclusive"
    return Certificate(
        theorem=theorem,
        verdict=verdict,
        hypotheses=tuple(hypotheses),
        subject=tuple(bits_of(subject_mask)),
        decomposition=decomposition,
        oracle_confirmed=None,
        notes=tuple(notes),
    )


class TheoremInstance:
    """A validated decomposition (G, H, K, C, E, F).

    Invariants: K is a subgroup of H normal in H; C is a nonempty proper
    subset of H that is a union of K-right cosets (hence so is H\\C);
    E is a subset of C; F is a subset of H\\C.
    """

    __slots__ = (
        "group",
        "h",
        "k",
        "c_mask",
        "e_mask",
        "f_mask",
        "rest_mask",
        "index",
        "cosets",
        "core_cosets",
        "noncore_cosets",
    )

    def __init__(
        self,
        group: FiniteGroup,
        h: Subgroup,
        k: Subgroup,
        c: GroupSubset,
        e: Optional[GroupSubset] = None,
        f: Optional[GroupSubset] = None,
    ) -> None:
        e = e if e is not None else GroupSubset(group, 0)
        f = f if f is not None else GroupSubset(group, 0)
        h_mask, k_mask = h.members.mask, k.members.mask
        if k_mask & ~h_mask:
            raise ValueError("K must be contained in H")
        if not _is_normal_in(group, k_mask, h_mask):
            raise ValueError("K must be normal in H")
        if c.mask == 0:
            raise ValueError("C must be nonempty")
        if c.mask & ~h_mask:
            raise ValueError("C must be contained in H")
        if c.mask == h_mask:
            raise ValueError("C must be a proper subset of H")
        if group.product_mask(k_mask, c.mask) != c.mask:
            raise ValueError("C must be a union of K-right cosets")
        rest = h_mask & ~c.mask
        if group.product_mask(k_mask, rest) != rest:
            raise ValueError("H\\C must be a union of K-right cosets")
        if e.mask & ~c.mask:
            raise ValueError("E must be contained in C")
        if f.mask & ~rest:
            raise ValueError("F must be contained in H\\C")
        self.group = group
        self.h = h
        self.k = k
        self.c_mask = c.mask
        self.e_mask = e.mask
        self.f_mask = f.mask
        self.rest_mask = rest
        self.index = h.index
        cosets: List[int] = []
        covered = 0
        for x in bits_of(h_mask):
            if (covered >> x) & 1:
                continue
            coset = group.right_translate_mask(k_mask, x)
            cosets.append(coset)
            covered |= coset
        self.cosets = cosets
        self.core_cosets = [r for r in cosets if r & ~c.mask == 0]
        self.noncore_cosets = [r for r in cosets if r & c.mask == 0]

    @classmethod
    def from_parts(
        cls,
        group: FiniteGroup,
        h: Subgroup,
        k: Subgroup,
        cosets: Sequence[int],
        c_mask: int,
        e_mask: int,
        f_mask: int,
    ) -> "TheoremInstance":
        """Assemble without re-validating; the caller guarantees the invariants
        (used by the exhaustive sweeps, which build C from whole K-cosets)."""
        inst = object.__new__(cls)
        inst.group = group
        inst.h = h
        inst.k = k
        inst.c_mask = c_mask
        inst.e_mask = e_mask
        inst.f_mask = f_mask
        inst.rest_mask = h.members.mask & ~c_mask
        inst.index = h.index
        inst.cosets = list(cosets)
        inst.core_cosets = [r for r in cosets if r & ~c_mask == 0]
        inst.noncore_cosets = [r for r in cosets if r & c_mask == 0]
        return inst

    @property
    def subject_mask(self) -> int:
        return (self.c_mask & ~self.e_mask) | self.f_mask

    def subject(self) -> GroupSubset:
        return GroupSubset(self.group, self.subject_mask)

    def sizes(self) -> Dict[str, int]:
        return {
            "order": self.group.order,
            "sizeH": len(self.h),
            "sizeK": len(self.k),
            "index": self.index,
            "coreCosets": len(self.core_cosets),
            "noncoreCosets": len(self.noncore_cosets),
            "sizeE": self.e_mask.bit_count(),
            "sizeF": self.f_mask.bit_count(),
        }

    def decomposition_payload(self) -> Dict[str, object]:
        return {
            "h": list(bits_of(self.h.members.mask)),
            "k": list(bits_of(self.k.members.mask)),
            "c": list(bits_of(self.c_mask)),
            "e": list(bits_of(self.e_mask)),
            "f": list(bits_of(self.f_mask)),
        }


def check_assumption(inst: TheoremInstance) -> Hypothesis:
    """The standing largeness hypothesis: [C:K] > 2[G:H]·[(H\\C):K]."""
    core = len(inst.core_cosets)
    rest = len(inst.noncore_cosets)
    holds = core > 2 * inst.index * rest
    return Hypothesis(
        "assumption_coset_count",
        holds,
        {"coreCosets": core, "index": inst.index, "noncoreCosets": rest},
    )


def _k_size_hypothesis(inst: TheoremInstance) -> Hypothesis:
    size_e = inst.e_mask.bit_count()
    bound = 2 * (inst.index + 1) * size_e
    return Hypothesis(
        "k_exceeds_exception_bound",
        len(inst.k) > bound,
        {"sizeK": len(inst.k), "bound": bound, "sizeE": size_e},
    )


def _coset_deficiency_hypothesis(inst: TheoremInstance) -> Hypothesis:
    """F plus any set of at most 2([G:H]+1)|E| elements contains no K-coset.

    Equivalent to: every K-right coset R of H keeps more than that many
    elements outside F, i.e. min |R \\ F| exceeds the bound.
    """
    size_e = inst.e_mask.bit_count()
    bound = 2 * (inst.index + 1) * size_e
    min_deficiency = None
    min_rep = None
    for r in inst.cosets:
        deficiency = (r & ~inst.f_mask).bit_count()
        if min_deficiency is None or deficiency < min_deficiency:
            min_deficiency = deficiency
            min_rep = (r & -r).bit_length() - 1
    return Hypothesis(
        "no_coset_within_padding",
        min_deficiency is not None and min_deficiency > bound,
        {"minUncovered": min_deficiency, "atCosetRep": min_rep, "bound": bound},
    )


def _ef_inverse_hypothesis(inst: TheoremInstance) -> Hypothesis:
    """E·F^-1 contains no K-right coset (vacuous when E or F is empty)."""
    group = inst.group
    if inst.e_mask == 0 or inst.f_mask == 0:
        return Hypothesis("ef_inverse_avoids_cosets", True, {"product": []})
    prod = group.product_mask(inst.e_mask, group.inverse_mask(inst.f_mask))
    contained = [r for r in inst.cosets if r & ~prod == 0]
    return Hypothesis(
        "ef_inverse_avoids_cosets",
        not contained,
        {"containedCosetReps": [(r & -r).bit_length() - 1 for r in contained]},
    )


def check_prop_coset(inst: TheoremInstance) -> Certificate:
    """F must be empty; concludes C\\E is not a minimal complement."""
    if inst.f_mask:
        raise ValueError("this rule requires F to be empty")
    hyps = [check_assumption(inst), _k_size_hypothesis(inst)]
    return _finish(PROP_COSET, hyps, inst.subject_mask)


def check_thm_f_avoids(inst: TheoremInstance) -> Certificate:
    """F misses some K-right coset of H\\C, and K outweighs the exceptions."""
    avoided = [r for r in inst.noncore_cosets if r & inst.f_mask == 0]
    hyps = [
        check_assumption(inst),
        Hypothesis(
            "f_avoids_a_noncore_coset",
            bool(avoided),
            {"avoidedCosetRep": (avoided[0] & -avoided[0]).bit_length() - 1 if avoided else None},
        ),
        _k_size_hypothesis(inst),
    ]
    return _finish(THM_F_AVOIDS, hyps, inst.subject_mask)


def check_thm_q_finite(inst: TheoremInstance) -> Certificate:
    """Finite degenerate form of the separating-subgroup rule.

    In a finite group the trivial subgroup is a finite-index subgroup of K
    that is normal in H and separates every pair of distinct elements, while
    the companion bound over all finite-index subgroups forces |E| = 0.
    """
    if inst.e_mask:
        raise ValueError(
            "E must be empty: in a finite group the trivial subgroup is finite-index "
            "in K, so the bound |L| > 2([G:H]+1)|E| forces |E| = 0"
        )
    f_proper = inst.f_mask != inst.rest_mask
    hyps = [
        check_assumption(inst),
        Hypothesis(
            "f_proper_in_complement",
            f_proper,
            {"sizeF": inst.f_mask.bit_count(), "sizeRest": inst.rest_mask.bit_count()},
        ),
        Hypothesis(
            "separating_subgroup_exists",
            True,
            {"subgroup": [inst.group.identity], "note": "trivial subgroup separates all pairs"},
        ),
        Hypothesis(
            "all_finite_index_subgroups_large_enough",
            True,
            {"bound": 0, "note": "|E| = 0 makes the bound vacuous"},
        ),
    ]
    return _finish(THM_Q_FINITE, hyps, inst.subject_mask)


def check_thm_single_coset(inst: TheoremInstance) -> Certificate:
    """F sits inside one K-right coset and cannot be padded into a full coset."""
    touched = [r for r in inst.noncore_cosets if r & inst.f_mask]
    single = len(touched) <= 1
    hyps = [
        check_assumption(inst),
        Hypothesis(
            "f_in_single_coset",
            single,
            {"touchedCosetReps": [(r & -r).bit_length() - 1 for r in touched]},
        ),
        _coset_deficiency_hypothesis(inst),
        _ef_inverse_hypothesis(inst),
    ]
    return _finish(THM_SINGLE_COSET, hyps, inst.subject_mask)


def _right_stabilizer_mask(inst: TheoremInstance) -> int:
    """{x in H : (H\\C)·x = H\\C} -- by the symmetric product-set identity this
    is the maximal subgroup of H whose left cosets tile H\\C."""
    group = inst.group
    stab = 0
    for x in bits_of(inst.h.members.mask):
        if group.right_translate_mask(inst.rest_mask, x) == inst.rest_mask:
            stab |= 1 << x
    return stab


def _symmetric_difference_hypothesis(inst: TheoremInstance) -> Hypothesis:
    """(C^-1·(H\\C)) | ((H\\C)^-1·C) must equal H \\ K, evaluated two ways."""
    group = inst.group
    c_inv = group.inverse_mask(inst.c_mask)
    rest_inv = group.inverse_mask(inst.rest_mask)
    union = group.product_mask(c_inv, inst.rest_mask) | group.product_mask(rest_inv, inst.c_mask)
    direct = union == inst.h.members.mask & ~inst.k.members.mask
    stab = _right_stabilizer_mask(inst)
    via_stabilizer = stab == inst.k.members.mask
    if direct != via_stabilizer:
        raise AssertionError("symmetric-difference routes disagree; this is a bug")
    return Hypothesis(
        "difference_sets_fill_h_minus_k",
        direct,
        {"stabilizer": list(bits_of(stab))},
    )


def check_thm_cminusc(inst: TheoremInstance) -> Certificate:
    """Difference sets of C and H\\C fill H\\K exactly, conditions on F as in
    the single-coset rule; falls back to the maximal stabilizer subgroup K'
    when it is normal in H."""
    eq_hyp = _symmetric_difference_hypothesis(inst)
    hyps = [
        check_assumption(inst),
        eq_hyp,
        _coset_deficiency_hypothesis(inst),
        _ef_inverse_hypothesis(inst),
    ]
    if eq_hyp.holds:
        return _finish(THM_CMINUSC, hyps, inst.subject_mask)
    # Second path: the stabilizer K' strictly contains K; if K' is normal in
    # H the whole argument re-runs with K replaced by K'.
    group = inst.group
    stab = _right_stabilizer_mask(inst)
    if not _is_normal_in(group, stab, inst.h.members.mask):
        return _finish(
            THM_CMINUSC,
            hyps,
            inst.subject_mask,
            notes=("maximal stabilizer subgroup is not normal in H; no fallback applies",),
        )
    k_prime = Subgroup(group, GroupSubset(group, stab))
    replaced = TheoremInstance(
        group,
        inst.h,
        k_prime,
        GroupSubset(group, inst.c_mask),
        GroupSubset(group, inst.e_mask),
        GroupSubset(group, inst.f_mask),
    )
    eq2 = _symmetric_difference_hypothesis(replaced)
    hyps2 = [
        check_assumption(replaced),
        eq2,
        _coset_deficiency_hypothesis(replaced),
        _ef_inverse_hypothesis(replaced),
    ]
    return _finish(
        THM_CMINUSC,
        hyps2,
        replaced.subject_mask,
        notes=("k replaced by the maximal stabilizer subgroup " + repr(sorted(bits_of(stab))),),
    )


def check_prop_fini(group: FiniteGroup, h: Subgroup, c: GroupSubset) -> Certificate:
    """Pure cardinality rule for finite groups: 2|G||H|/(|H|+2|G|) < |C| < |H|."""
    report = cardinality_obstruction(group, h, c)
    hyp = Hypothesis(
        "size_exceeds_threshold",
        report.holds,
        {
            "sizeC": report.size_c,
            "sizeH": report.size_h,
            "index": report.index,
            "threshold": [report.threshold.numerator, report.threshold.denominator],
        },
    )
    return _finish(PROP_FINI, [hyp], c.mask)


_CHECKERS = {
    PROP_COSET: check_prop_coset,
    THM_F_AVOIDS: check_thm_f_avoids,
    THM_Q_FINITE: check_thm_q_finite,
    THM_SINGLE_COSET: check_thm_single_coset,
    THM_CMINUSC: check_thm_cminusc,
}


def applicable_checkers(inst: TheoremInstance) -> List[str]:
    names = [THM_F_AVOIDS, THM_SINGLE_COSET, THM_CMINUSC]
    if inst.f_mask == 0:
        names.insert(0, PROP_COSET)
    if inst.e_mask == 0:
        names.insert(len(names), THM_Q_FINITE)
    return names


def run_checker(inst: TheoremInstance, theorem: str) -> Certificate:
    try:
        checker = _CHECKERS[theorem]
    except KeyError:
        raise ValueError(f"unknown theorem identifier {theorem!r}") from None
    return checker(inst)


# -- automatic decomposition ----------------------------------------------------


def _decompose(
    group: FiniteGroup, h: Subgroup, k: Subgroup, a_mask: int
) -> Optional[Tuple[GroupSubset, GroupSubset, GroupSubset]]:
    """Split A inside H as (C\\E) | F along the K-coset partition.

    A coset mostly inside A becomes part of the periodic core (its missing
    elements are exceptions E); a coset mostly outside contributes its
    members to the sporadic part F.
    """
    k_mask = k.members.mask
    size_k = len(k)
    c_mask = 0
    e_mask = 0
    f_mask = 0
    covered = 0
    for x in bits_of(h.members.mask):
        if (covered >> x) & 1:
            continue
        coset = group.right_translate_mask(k_mask, x)
        covered |= coset
        inside = coset & a_mask
        if 2 * inside.bit_count() > size_k:
            c_mask |= coset
            e_mask |= coset & ~a_mask
        else:
            f_mask |= inside
    if c_mask == 0 or c_mask == h.members.mask:
        return None
    return (
        GroupSubset(group, c_mask),
        GroupSubset(group, e_mask),
        GroupSubset(group, f_mask),
    )


def verdict(
    group: FiniteGroup,
    a: GroupSubset,
    confirm_oracle: bool = False,
    oracle_bound: Optional[int] = None,
) -> List[Certificate]:
    """Scan decompositions of A and run every checker; at most one certificate
    per rule is kept (the first NonMinimal in scan order, else the first seen).

    Translating A so it lands inside a subgroup is sound because minimal-
    complement status is invariant under left translation.
    """
    if a.is_empty():
        raise ValueError("subject set must be nonempty")
    best: Dict[str, Certificate] = {}

    def offer(cert: Certificate) -> None:
        prev = best.get(cert.theorem)
        if prev is None or (prev.verdict != "NonMinimal" and cert.verdict == "NonMinimal"):
            best[cert.theorem] = cert

    subgroups = all_subgroups(group)
    seen = set()
    for h in subgroups:
        if len(h) < 2:
            continue
        h_mask = h.members.mask
        for g in range(group.order):
            translated = group.left_translate_mask(g, a.mask)
            if translated & ~h_mask or (h_mask, translated) in seen:
                continue
            seen.add((h_mask, translated))
            shifted = GroupSubset(group, translated)
            meta = {"translation": g, "h": list(bits_of(h_mask))}
            if translated != h_mask:
                cert = check_prop_fini(group, h, shifted)
                offer(
                    Certificate(
                        cert.theorem,
                        cert.verdict,
                        cert.hypotheses,
                        cert.subject,
                        decomposition=meta,
                        notes=cert.notes,
                    )
                )
            for k in subgroups:
                if len(k) == len(h):
                    continue
                if k.members.mask & ~h_mask:
                    continue
                if not _is_normal_in(group, k.members.mask, h_mask):
                    continue
                split = _decompose(group, h, k, translated)
                if split is None:
                    continue
                c, e, f = split
                inst = TheoremInstance(group, h, k, c, e, f)
                if inst.subject_mask != translated:
                    continue
                deco = dict(meta)
                deco.update(inst.decomposition_payload())
                for name in applicable_checkers(inst):
                    cert = run_checker(inst, name)
                    offer(
                        Certificate(
                            cert.theorem,
                            cert.verdict,
                            cert.hypotheses,
                            cert.subject,
                            decomposition=deco,
                            notes=cert.notes,
                        )
                    )
    certs = [best[name] for name in sorted(best)]
    if confirm_oracle and any(c.verdict == "NonMinimal" for c in certs):
        report = oracle_minimality_status(a, side="both", bound=oracle_bound)
        confirmed = report.status == "NotMinimal"
        certs = [
            Certificate(
                c.theorem,
                c.verdict,
                c.hypotheses,
                c.subject,
                c.decomposition,
                confirmed if c.verdict == "NonMinimal" else None,
                c.notes,
            )
            for c in certs
        ]
    return certs
