"""Exhaustive cross-validation suites: every checker verdict is replayed
against the brute-force oracle, and the algebraic identities behind the
difference-set rule are exercised over full instance spaces."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .certificates import (
    TheoremInstance,
    applicable_checkers,
    check_assumption,
    check_prop_fini,
    run_checker,
)
from .engine import oracle_minimality_status
from .groups import (
    FiniteGroup,
    GroupSubset,
    Subgroup,
    _is_normal_in,
    all_subgroups,
    bits_of,
    cyclic,
    dihedral,
    product,
)
from .subsets import (
    coset_union_equivalences,
    left_stabilizer,
    subsets_of_mask,
    symmetric_product_complement,
)
from .zset import finite_quotient, remark_family, robust_family, z_check


@dataclass
class SweepResult:
    name: str
    instances: int = 0
    confirmed: int = 0
    violations: List[str] = field(default_factory=list)
    elapsed: float = 0.0
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_payload(self) -> dict:
        return {
            "name": self.name,
            "instances": self.instances,
            "confirmed": self.confirmed,
            "violations": self.violations,
            "elapsedSeconds": round(self.elapsed, 3),
            "ok": self.ok,
            "details": self.details,
        }


def default_soundness_groups() -> List[FiniteGroup]:
    groups: List[FiniteGroup] = [cyclic(n) for n in range(6, 13)]
    groups += [dihedral(n) for n in range(3, 7)]
    groups += [
        product(cyclic(2), cyclic(2)),
        product(cyclic(2), cyclic(4)),
        product(cyclic(2), product(cyclic(2), cyclic(2))),
        product(cyclic(3), cyclic(3)),
        product(cyclic(2), cyclic(6)),
    ]
    return groups


def prop_fini_oracle_sweep(ns: Iterable[int] = range(6, 15)) -> SweepResult:
    """Every subset of every subgroup of Z/n that clears the cardinality
    threshold must be NotMinimal according to the oracle, on both sides."""
    started = time.perf_counter()
    result = SweepResult("prop-fini-oracle")
    for n in ns:
        group = cyclic(n)
        for h in all_subgroups(group):
            size_h = len(h)
            if size_h < 2:
                continue
            members = h.members.members
            # threshold 2|G||H| / (|H| + 2|G|), strict on both sides
            lo = (2 * n * size_h) // (size_h + 2 * n)
            for size_c in range(lo, size_h):
                if (size_h + 2 * n) * size_c <= 2 * n * size_h:
                    continue
                for combo in itertools.combinations(members, size_c):
                    result.instances += 1
                    report = oracle_minimality_status(group.subset(combo), side="both")
                    if report.status != "NotMinimal":
                        result.violations.append(
                            f"cyclic:{n} H={list(members)} C={list(combo)} -> {report.status}"
                        )
                    else:
                        result.confirmed += 1
    result.elapsed = time.perf_counter() - started
    return result


def _instances_for_pair(
    group: FiniteGroup, h: Subgroup, k: Subgroup, max_e: int
) -> Iterable[TheoremInstance]:
    """All decompositions over the (H, K) coset partition: C a nonempty proper
    union of cosets, |E| <= max_e, F over all subsets of the least non-core coset."""
    k_mask = k.members.mask
    cosets: List[int] = []
    covered = 0
    for x in bits_of(h.members.mask):
        if (covered >> x) & 1:
            continue
        coset = group.right_translate_mask(k_mask, x)
        cosets.append(coset)
        covered |= coset
    q = len(cosets)
    if q < 2:
        return
    for pick in range(1, (1 << q) - 1):
        c_mask = 0
        for j in range(q):
            if (pick >> j) & 1:
                c_mask |= cosets[j]
        noncore = next(cosets[j] for j in range(q) if not (pick >> j) & 1)
        e_choices = [0]
        if max_e >= 1:
            e_choices += [1 << x for x in bits_of(c_mask)]
        f_choices = subsets_of_mask(noncore)
        for e_mask in e_choices:
            for f_mask in f_choices:
                yield TheoremInstance.from_parts(group, h, k, cosets, c_mask, e_mask, f_mask)


def checker_soundness_sweep(
    groups: Optional[Sequence[FiniteGroup]] = None, max_e: int = 1
) -> SweepResult:
    """Run every checker over every theorem instance; any NonMinimal verdict
    must be confirmed NotMinimal by the oracle.  Zero tolerance."""
    started = time.perf_counter()
    result = SweepResult("checker-oracle-soundness")
    groups = list(groups) if groups is not None else default_soundness_groups()
    nonminimal = 0
    per_theorem: Dict[str, int] = {}
    for group in groups:
        oracle_memo: Dict[Tuple[int, str], str] = {}
        subs = all_subgroups(group)
        for h in subs:
            if len(h) < 2:
                continue
            h_mask = h.members.mask
            for k in subs:
                if len(k) >= len(h) or k.members.mask & ~h_mask:
                    continue
                if not _is_normal_in(group, k.members.mask, h_mask):
                    continue
                for inst in _instances_for_pair(group, h, k, max_e):
                    assumption = check_assumption(inst)
                    for name in applicable_checkers(inst):
                        result.instances += 1
                        cert = run_checker(inst, name)
                        if cert.verdict != "NonMinimal":
                            continue
                        nonminimal += 1
                        per_theorem[name] = per_theorem.get(name, 0) + 1
                        if not assumption.holds:
                            result.violations.append(
                                f"{group.name}: {name} returned NonMinimal with failed assumption"
                            )
                            continue
                        subject = inst.subject_mask
                        key = (subject, "both")
                        status = oracle_memo.get(key)
                        if status is None:
                            status = oracle_minimality_status(
                                GroupSubset(group, subject), side="both"
                            ).status
                            oracle_memo[key] = status
                        if status != "NotMinimal":
                            result.violations.append(
                                f"{group.name}: {name} NonMinimal but oracle says {status} "
                                f"for subject {sorted(bits_of(subject))} "
                                f"(H={list(h.members.members)}, K={list(k.members.members)})"
                            )
                        else:
                            result.confirmed += 1
        # The pure cardinality rule is swept over (H, C) pairs without K.
        for h in subs:
            if len(h) < 2:
                continue
            members = h.members.members
            for size_c in range(1, len(h)):
                for combo in itertools.combinations(members, size_c):
                    result.instances += 1
                    subset = group.subset(combo)
                    cert = check_prop_fini(group, h, subset)
                    if cert.verdict != "NonMinimal":
                        continue
                    nonminimal += 1
                    per_theorem["PropFini"] = per_theorem.get("PropFini", 0) + 1
                    key = (subset.mask, "both")
                    status = oracle_memo.get(key)
                    if status is None:
                        status = oracle_minimality_status(subset, side="both").status
                        oracle_memo[key] = status
                    if status != "NotMinimal":
                        result.violations.append(
                            f"{group.name}: PropFini NonMinimal but oracle says {status} "
                            f"for C={list(combo)} in H={list(members)}"
                        )
                    else:
                        result.confirmed += 1
    result.details = {"nonMinimalCertificates": nonminimal, "perTheorem": per_theorem}
    result.elapsed = time.perf_counter() - started
    return result


def _prop27_check(
    group: FiniteGroup, l_sub: Subgroup, x_mask: int, result: SweepResult
) -> None:
    y = GroupSubset(group, group.full_mask & ~x_mask)
    x = GroupSubset(group, x_mask)
    result.instances += 1
    spc = symmetric_product_complement(x, y)
    stab = left_stabilizer(y)
    if spc.mask != stab.members.mask:
        result.violations.append(
            f"{group.name}: symmetric product complement {list(spc.members)} != "
            f"stabilizer {list(stab.members.members)} for X={list(x.members)}"
        )
        return
    eq = coset_union_equivalences(x, y, l_sub)
    if not eq.consistent:
        result.violations.append(
            f"{group.name}: equivalence booleans disagree for X={list(x.members)}, "
            f"L={list(l_sub.members.members)}: {eq}"
        )
        return
    if (eq.criterion_order or eq.criterion_divisibility) and not eq.identity_excluded_equality:
        result.violations.append(
            f"{group.name}: criterion held but identity-excluded equality failed "
            f"for X={list(x.members)}"
        )
        return
    result.confirmed += 1


def _coset_masks(group: FiniteGroup, l_mask: int) -> List[int]:
    masks = []
    covered = 0
    for xx in bits_of(group.full_mask):
        if (covered >> xx) & 1:
            continue
        coset = group.right_translate_mask(l_mask, xx)
        masks.append(coset)
        covered |= coset
    return masks


def prop27_identity_sweep(random_instances: int = 10_000, seed: int = 2717) -> SweepResult:
    """Exhaustive over groups of order <= 8, plus random (X, L) instances on
    groups of order <= 16."""
    started = time.perf_counter()
    result = SweepResult("symmetric-product-identities")
    small: List[FiniteGroup] = [cyclic(n) for n in range(2, 9)]
    small += [dihedral(3), dihedral(4)]
    small += [
        product(cyclic(2), cyclic(2)),
        product(cyclic(2), cyclic(4)),
        product(cyclic(2), product(cyclic(2), cyclic(2))),
        product(cyclic(2), cyclic(3)),
    ]
    for group in small:
        for l_sub in all_subgroups(group):
            cosets = _coset_masks(group, l_sub.members.mask)
            q = len(cosets)
            for pick in range(1, (1 << q) - 1):
                x_mask = 0
                for j in range(q):
                    if (pick >> j) & 1:
                        x_mask |= cosets[j]
                _prop27_check(group, l_sub, x_mask, result)
    exhaustive = result.instances

    pool: List[FiniteGroup] = [cyclic(n) for n in range(2, 17)]
    pool += [dihedral(n) for n in range(3, 9)]
    pool += [product(cyclic(2), cyclic(8)), product(cyclic(4), cyclic(4)), product(cyclic(2), cyclic(6))]
    rng = random.Random(seed)
    drawn = 0
    while drawn < random_instances:
        group = rng.choice(pool)
        subs = all_subgroups(group)
        l_sub = rng.choice(subs)
        cosets = _coset_masks(group, l_sub.members.mask)
        q = len(cosets)
        if q < 2:
            continue
        pick = rng.randrange(1, (1 << q) - 1)
        x_mask = 0
        for j in range(q):
            if (pick >> j) & 1:
                x_mask |= cosets[j]
        _prop27_check(group, l_sub, x_mask, result)
        drawn += 1
    result.details = {"exhaustiveInstances": exhaustive, "randomInstances": drawn}
    result.elapsed = time.perf_counter() - started
    return result


def robust_family_sweep(
    primes: Sequence[int] = (5, 7, 11, 13),
    sampled_total: int = 1000,
    sample_above: int = 11,
    seed: int = 33,
) -> SweepResult:
    """Family members must certify via the difference-set rule, and their exact
    finite quotients must be NotMinimal per the oracle; exhaustive over residue
    subsets for small primes, sampled above."""
    started = time.perf_counter()
    result = SweepResult("robust-family")
    rng = random.Random(seed)
    for p in primes:
        group = cyclic(p)
        valid_a = [a for a in range(1, p) if p >= 3 * a + 1]
        for a in valid_a:
            universe = list(range(1, p + 1))
            if p <= sample_above:
                choices: Iterable[Tuple[int, ...]] = itertools.combinations(universe, p - a)
            else:
                per_a = max(1, sampled_total // len(valid_a))
                choices = (
                    tuple(sorted(rng.sample(universe, p - a))) for _ in range(per_a)
                )
            for residues in choices:
                result.instances += 1
                member = robust_family(p, a, residues)
                cert = z_check(member, "ThmCMinusC")
                if cert.verdict != "NonMinimal":
                    result.violations.append(f"p={p} a={a} residues={residues}: {cert.verdict}")
                    continue
                image = finite_quotient(member, p)
                if not image.exact:
                    result.violations.append(f"p={p} a={a}: quotient unexpectedly inexact")
                    continue
                report = oracle_minimality_status(image.subset, side="both")
                if report.status != "NotMinimal":
                    result.violations.append(
                        f"p={p} a={a} residues={residues}: oracle says {report.status}"
                    )
                else:
                    result.confirmed += 1
    result.elapsed = time.perf_counter() - started
    return result


def remark_family_sweep(ns: Iterable[int] = range(11, 21)) -> SweepResult:
    """Pairs obeying the congruence constraint must certify NonMinimal; pairs
    violating it must be rejected at construction."""
    started = time.perf_counter()
    result = SweepResult("remark-family")
    for n in ns:
        for a, b in itertools.combinations(range(1, n + 1), 2):
            result.instances += 1
            valid = (2 * (a - b)) % n != 0
            try:
                member = remark_family(n, [a, b])
            except ValueError:
                if valid:
                    result.violations.append(f"n={n} pair=({a},{b}) wrongly rejected")
                else:
                    result.confirmed += 1
                continue
            if not valid:
                result.violations.append(f"n={n} pair=({a},{b}) wrongly accepted")
                continue
            cert = z_check(member, "ThmCMinusC")
            if cert.verdict != "NonMinimal":
                result.violations.append(f"n={n} pair=({a},{b}): {cert.verdict}")
            else:
                result.confirmed += 1
    result.elapsed = time.perf_counter() - started
    return result


SWEEPS = {
    "fini": prop_fini_oracle_sweep,
    "soundness": checker_soundness_sweep,
    "identities": prop27_identity_sweep,
    "robust": robust_family_sweep,
    "remark": remark_family_sweep,
}


def run_sweep(name: str, **kwargs) -> SweepResult:
    try:
        fn = SWEEPS[name]
    except KeyError:
        raise ValueError(f"unknown sweep {name!r}; choose from {sorted(SWEEPS)}") from None
    return fn(**kwargs)
