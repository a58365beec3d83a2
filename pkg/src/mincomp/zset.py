"""Structured subsets of the integers of the shape (C \\ E) | F.

C is a union of residue classes of kZ inside H = hZ, E is a finite exception
set, and the sporadic part F is described per non-core class by a symbolic
tag: ``avoids`` (F misses the class), ``sparse`` (infinite, density zero,
e.g. primes in a progression), ``thick`` (co-infinite) or ``full`` (the whole
class), plus optional explicit sample elements.  The tags encode exactly the
facts the non-minimality rules consume, so certificates over Z stay exact:
all arithmetic is integer arithmetic and densities never become floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .certificates import CARDINALITY, Hypothesis
from .errors import SpecParseError
from .groups import GroupSubset, cyclic
from .subsets import left_stabilizer

AVOIDS = "avoids"
SPARSE = "sparse"
THICK = "thick"
FULL = "full"
TAGS = (AVOIDS, SPARSE, THICK, FULL)

Z_PROP_COSET = "PropCoset"
Z_THM_F_AVOIDS = "ThmFAvoids"
Z_THM_Q = "ThmQ"
Z_THM_SINGLE_COSET = "ThmSingleCoset"
Z_THM_CMINUSC = "ThmCMinusC"
Z_THEOREMS = (Z_PROP_COSET, Z_THM_F_AVOIDS, Z_THM_Q, Z_THM_SINGLE_COSET, Z_THM_CMINUSC)


@dataclass(frozen=True)
class StructuredZSet:
    """A set (C \\ E) | F with periodic core C inside hZ, modulo kZ."""

    h: int
    k: int
    core: Tuple[int, ...]
    exceptions: Tuple[int, ...]
    sporadic: Tuple[Tuple[int, str], ...]
    samples: Tuple[Tuple[int, Tuple[int, ...]], ...]
    shift: int

    def __post_init__(self) -> None:
        if self.h < 1:
            raise SpecParseError("h: must be a positive integer")
        if self.k % self.h or self.k < 2 * self.h:
            raise SpecParseError("k: must be a multiple of h with at least two classes")
        classes = self.k // self.h
        if not self.core:
            raise SpecParseError("core: must be nonempty")
        if len(self.core) >= classes:
            raise SpecParseError("core: must be a proper subset of the residue classes of H")
        for r in self.core:
            if not 0 <= r < self.k:
                raise SpecParseError(f"core: residue {r} out of range 0..{self.k - 1}")
            if r % self.h:
                raise SpecParseError(f"core: residue {r} does not lie in H = {self.h}Z")
        if len(set(self.core)) != len(self.core):
            raise SpecParseError("core: residues must be distinct")
        core_set = set(self.core)
        for x in self.exceptions:
            if x % self.k not in core_set:
                raise SpecParseError(f"exceptions: {x} is not congruent to a core residue mod k")
        sporadic = dict(self.sporadic)
        expected = {s for s in range(0, self.k, self.h) if s not in core_set}
        if set(sporadic) != expected:
            raise SpecParseError(
                f"sporadic: must tag exactly the non-core classes {sorted(expected)}"
            )
        for s, tag in sporadic.items():
            if tag not in TAGS:
                raise SpecParseError(f"sporadic: unknown tag {tag!r} for class {s}")
        samples = dict(self.samples)
        for s, vals in samples.items():
            if s not in sporadic:
                raise SpecParseError(f"samples: {s} is not a non-core class")
            if sporadic[s] == AVOIDS and vals:
                raise SpecParseError(f"samples: class {s} is tagged avoids and must stay empty")
            for x in vals:
                if x % self.k != s:
                    raise SpecParseError(f"samples: element {x} is not congruent to {s} mod k")

    @property
    def classes(self) -> int:
        return self.k // self.h

    @property
    def noncore(self) -> Tuple[int, ...]:
        core_set = set(self.core)
        return tuple(s for s in range(0, self.k, self.h) if s not in core_set)

    def tag(self, residue: int) -> str:
        return dict(self.sporadic)[residue]

    def samples_for(self, residue: int) -> Tuple[int, ...]:
        return dict(self.samples).get(residue, ())

    def to_payload(self) -> dict:
        return {
            "h": self.h,
            "k": self.k,
            "core": sorted(self.core),
            "exceptions": list(self.exceptions),
            "sporadic": {str(s): tag for s, tag in sorted(self.sporadic)},
            "samples": {str(s): list(vals) for s, vals in sorted(self.samples) if vals},
            "shift": self.shift,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_payload(), sort_keys=True, separators=(",", ":"))


def make_structured(
    h: int,
    k: int,
    core: Iterable[int],
    exceptions: Iterable[int] = (),
    sporadic: Optional[Mapping[int, str]] = None,
    samples: Optional[Mapping[int, Iterable[int]]] = None,
    shift: int = 0,
) -> StructuredZSet:
    """Build a validated set; untagged non-core classes default to ``avoids``."""
    core_t = tuple(sorted(int(r) % k for r in core))
    core_set = set(core_t)
    tags = {int(s) % k: str(tag) for s, tag in (sporadic or {}).items()}
    for s in range(0, k, max(h, 1)):
        if s not in core_set and s not in tags:
            tags[s] = AVOIDS
    samp = {int(s) % k: tuple(sorted(int(x) for x in vals)) for s, vals in (samples or {}).items()}
    return StructuredZSet(
        h=int(h),
        k=int(k),
        core=core_t,
        exceptions=tuple(sorted({int(x) for x in exceptions})),
        sporadic=tuple(sorted(tags.items())),
        samples=tuple(sorted((s, v) for s, v in samp.items() if v)),
        shift=int(shift),
    )


def parse_structured(spec: Mapping[str, object] | str) -> StructuredZSet:
    """Parse the JSON spec; ``raw_core`` residues are normalized into H by a
    derived translation, recorded in the ``shift`` field."""
    if isinstance(spec, str):
        try:
            data = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise SpecParseError(f"structured-set spec is not valid JSON: {exc}") from exc
    else:
        data = dict(spec)
    if not isinstance(data, dict):
        raise SpecParseError("structured-set spec must be a JSON object")
    try:
        h = int(data["h"])
        k = int(data["k"])
    except KeyError as exc:
        raise SpecParseError(f"missing required field {exc.args[0]!r}") from exc
    sporadic = {int(s): str(t) for s, t in dict(data.get("sporadic", {})).items()}
    samples = {int(s): [int(x) for x in v] for s, v in dict(data.get("samples", {})).items()}
    exceptions = [int(x) for x in data.get("exceptions", [])]
    if "raw_core" in data:
        if "core" in data or "shift" in data:
            raise SpecParseError("raw_core: give either raw_core or core+shift, not both")
        raw = [int(r) for r in data["raw_core"]]
        if not raw:
            raise SpecParseError("raw_core: must be nonempty")
        residue = raw[0] % h
        if any(r % h != residue for r in raw):
            raise SpecParseError("raw_core: residues are not all congruent mod h")
        t = -residue
        core = [(r + t) % k for r in raw]
        exceptions = [x + t for x in exceptions]
        sporadic = {(s + t) % k: tag for s, tag in sporadic.items()}
        samples = {(s + t) % k: [x + t for x in v] for s, v in samples.items()}
        shift = t
    else:
        if "core" not in data:
            raise SpecParseError("missing required field 'core'")
        core = [int(r) for r in data["core"]]
        shift = int(data.get("shift", 0))
    return make_structured(h, k, core, exceptions, sporadic, samples, shift)


# -- certificates ---------------------------------------------------------------


@dataclass(frozen=True)
class ZCertificate:
    """A non-minimality certificate over Z, with notes on the hypotheses that
    hold automatically (infinitude of K, residual finiteness of Z)."""

    theorem: str
    verdict: str
    hypotheses: Tuple[Hypothesis, ...]
    subject: Dict[str, object]
    automatic: Tuple[str, ...] = ()
    notes: Tuple[str, ...] = ()

    def to_payload(self) -> dict:
        return {
            "theorem": self.theorem,
            "verdict": self.verdict,
            "hypotheses": [h.to_payload() for h in self.hypotheses],
            "subject": self.subject,
            "automatic": list(self.automatic),
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_payload(), sort_keys=True, separators=(",", ":"))


def z_assumption(s: StructuredZSet) -> Hypothesis:
    """|core classes| > 2[Z:H] * |non-core classes|."""
    core = len(s.core)
    rest = s.classes - core
    return Hypothesis(
        "assumption_coset_count",
        core > 2 * s.h * rest,
        {"coreCosets": core, "index": s.h, "noncoreCosets": rest},
    )


def _z_finish(
    s: StructuredZSet,
    theorem: str,
    hypotheses: Sequence[Hypothesis],
    automatic: Sequence[str],
    notes: Sequence[str] = (),
) -> ZCertificate:
    verdict = "NonMinimal" if all(h.holds for h in hypotheses) else "Inconclusive"
    return ZCertificate(
        theorem=theorem,
        verdict=verdict,
        hypotheses=tuple(hypotheses),
        subject=s.to_payload(),
        automatic=tuple(automatic),
        notes=tuple(notes),
    )


def _k_infinite_hypothesis(s: StructuredZSet) -> Hypothesis:
    bound = 2 * (s.h + 1) * len(s.exceptions)
    return Hypothesis(
        "k_exceeds_exception_bound",
        True,
        {"sizeK": "infinite", "bound": bound},
    )


def _padding_hypothesis(s: StructuredZSet) -> Tuple[Hypothesis, List[str]]:
    """Condition: F plus at most 2([Z:H]+1)|E| extra elements contains no
    class of kZ.  Sparse classes are sound (finite unions of translates of a
    density-zero set stay density zero); thick classes are undecidable from
    the tag alone; a full class fails outright."""
    tags = dict(s.sporadic)
    full = sorted(c for c, t in tags.items() if t == FULL)
    thick = sorted(c for c, t in tags.items() if t == THICK)
    notes = []
    if thick:
        notes.append(
            f"classes {thick} are tagged thick: a co-infinite set plus finitely many "
            "elements may or may not fill a class, so the tag cannot decide this condition"
        )
    holds = not full and not thick
    return (
        Hypothesis(
            "no_coset_within_padding",
            holds,
            {"fullClasses": full, "thickClasses": thick},
        ),
        notes,
    )


def _ef_inverse_hypothesis_z(s: StructuredZSet) -> Tuple[Hypothesis, List[str]]:
    """Condition: E - F contains no class of kZ."""
    if not s.exceptions:
        return Hypothesis("ef_inverse_avoids_cosets", True, {"sizeE": 0}), []
    tags = dict(s.sporadic)
    bad = sorted(c for c, t in tags.items() if t in (THICK, FULL))
    notes = []
    if bad:
        notes.append(
            f"E is nonempty and classes {bad} are thick or full: finitely many translates "
            "of such a set can fill a class, so the tags cannot certify this condition"
        )
    return (
        Hypothesis(
            "ef_inverse_avoids_cosets",
            not bad,
            {"sizeE": len(s.exceptions), "thickOrFullClasses": bad},
        ),
        notes,
    )


def z_check(s: StructuredZSet, theorem: str) -> ZCertificate:
    """Apply one of the non-minimality rules to a structured set."""
    theorem = _normalize_theorem(theorem)
    if theorem == Z_PROP_COSET:
        return _z_prop_coset(s)
    if theorem == Z_THM_F_AVOIDS:
        return _z_f_avoids(s)
    if theorem == Z_THM_Q:
        return _z_thm_q(s)
    if theorem == Z_THM_SINGLE_COSET:
        return _z_single_coset(s)
    if theorem == Z_THM_CMINUSC:
        return _z_cminusc(s)
    raise ValueError(f"unknown theorem identifier {theorem!r}")


def _normalize_theorem(name: str) -> str:
    aliases = {t.lower(): t for t in Z_THEOREMS}
    aliases["thmqfinite"] = Z_THM_Q
    key = name.replace("_", "").replace("-", "").lower()
    if key not in aliases:
        raise ValueError(f"unknown theorem identifier {name!r}")
    return aliases[key]


def _z_prop_coset(s: StructuredZSet) -> ZCertificate:
    tags = dict(s.sporadic)
    nonempty = sorted(c for c, t in tags.items() if t != AVOIDS)
    if nonempty:
        raise ValueError(f"this rule requires F to be empty, but classes {nonempty} carry tags")
    hyps = [z_assumption(s), _k_infinite_hypothesis(s)]
    return _z_finish(s, Z_PROP_COSET, hyps, automatic=["k_exceeds_exception_bound"])


def _z_f_avoids(s: StructuredZSet) -> ZCertificate:
    tags = dict(s.sporadic)
    avoided = sorted(c for c, t in tags.items() if t == AVOIDS)
    hyps = [
        z_assumption(s),
        Hypothesis("f_avoids_a_noncore_coset", bool(avoided), {"avoidedClasses": avoided}),
        _k_infinite_hypothesis(s),
    ]
    return _z_finish(s, Z_THM_F_AVOIDS, hyps, automatic=["k_exceeds_exception_bound"])


def _z_thm_q(s: StructuredZSet) -> ZCertificate:
    tags = dict(s.sporadic)
    not_full = sorted(c for c, t in tags.items() if t != FULL)
    sep_bound = f"N = 1 + max|x_i - y_i| // {s.k}"
    hyps = [
        z_assumption(s),
        Hypothesis("f_proper_in_complement", bool(not_full), {"notFullClasses": not_full}),
        Hypothesis(
            "separating_subgroup_exists",
            True,
            {
                "subgroup": f"N*{s.k}*Z",
                "note": f"for finitely many pairs x_i != y_i pick {sep_bound}; "
                "then no difference is divisible by N*k",
            },
        ),
        Hypothesis(
            "all_finite_index_subgroups_large_enough",
            True,
            {"note": "every finite-index subgroup of kZ is infinite"},
        ),
    ]
    return _z_finish(
        s,
        Z_THM_Q,
        hyps,
        automatic=["separating_subgroup_exists", "all_finite_index_subgroups_large_enough"],
    )


def _z_single_coset(s: StructuredZSet) -> ZCertificate:
    tags = dict(s.sporadic)
    support = sorted(c for c, t in tags.items() if t != AVOIDS)
    if len(support) > 1:
        raise ValueError(
            f"this rule requires sporadic support in a single class, got classes {support}"
        )
    pad_hyp, pad_notes = _padding_hypothesis(s)
    ef_hyp, ef_notes = _ef_inverse_hypothesis_z(s)
    hyps = [
        z_assumption(s),
        Hypothesis("f_in_single_coset", True, {"supportClasses": support}),
        pad_hyp,
        ef_hyp,
    ]
    return _z_finish(s, Z_THM_SINGLE_COSET, hyps, automatic=[], notes=pad_notes + ef_notes)


def quotient_stabilizer(s: StructuredZSet) -> Tuple[int, ...]:
    """Members of the stabilizer of the non-core classes inside H/K = Z_(k/h)."""
    m = s.classes
    group = cyclic(m)
    noncore = group.subset(sorted(c // s.h for c in s.noncore))
    return left_stabilizer(noncore).members.members


def _z_cminusc(s: StructuredZSet) -> ZCertificate:
    m = s.classes
    group = cyclic(m)
    core = group.subset(sorted(r // s.h for r in s.core))
    noncore = group.subset(sorted(c // s.h for c in s.noncore))
    stab = left_stabilizer(noncore).members
    # Cross-check against the difference sets computed directly in the quotient.
    union = group.product_mask(
        group.inverse_mask(core.mask), noncore.mask
    ) | group.product_mask(group.inverse_mask(noncore.mask), core.mask)
    direct = union == group.full_mask & ~1
    via_stab = stab.mask == 1
    if direct != via_stab:
        raise AssertionError("quotient symmetric-difference routes disagree; this is a bug")
    pad_hyp, pad_notes = _padding_hypothesis(s)
    ef_hyp, ef_notes = _ef_inverse_hypothesis_z(s)
    hyps = [
        z_assumption(s),
        Hypothesis(
            "difference_sets_fill_h_minus_k",
            direct,
            {"quotientStabilizer": [c * s.h for c in stab.members]},
        ),
        pad_hyp,
        ef_hyp,
    ]
    return _z_finish(s, Z_THM_CMINUSC, hyps, automatic=[], notes=pad_notes + ef_notes)


# -- families -------------------------------------------------------------------


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def robust_family(
    p: int,
    a: int,
    residues: Iterable[int],
    sporadic: Optional[Mapping[int, str]] = None,
) -> StructuredZSet:
    """A member of the robust non-minimal family: p >= 5 prime, p >= 3a+1,
    and a chosen core of p-a residue classes mod p.

    Because p is prime the quotient stabilizer of the a missing classes is
    trivial, and p-a > 2a, so the difference-set rule always certifies these.
    """
    if not _is_prime(p) or p < 5:
        raise ValueError(f"p must be a prime >= 5, got {p}")
    if a < 1:
        raise ValueError(f"a must be a positive integer, got {a}")
    if p < 3 * a + 1:
        raise ValueError(f"p >= 3a + 1 required, got p={p}, a={a}")
    res = sorted(set(int(r) for r in residues))
    if any(not 1 <= r <= p for r in res):
        raise ValueError(f"residues must lie in 1..{p}")
    if len(res) != p - a:
        raise ValueError(f"need exactly p - a = {p - a} residues, got {len(res)}")
    tags = {int(s) % p: str(t) for s, t in (sporadic or {}).items()}
    for tag in tags.values():
        if tag not in (AVOIDS, SPARSE):
            raise ValueError(f"family tags must be avoids or sparse, got {tag!r}")
    return make_structured(h=1, k=p, core=[r % p for r in res], sporadic=tags)


def remark_family(
    n: int,
    removed: Iterable[int],
    sporadic: Optional[Mapping[int, str]] = None,
) -> StructuredZSet:
    """Even classes mod 2n with k chosen classes removed.

    Valid when ``removed`` has two elements a < b with n >= 11 and
    2(a-b) != 0 mod n, or in general when n >= 5k+1 and n has no divisor
    in (1, k].  Both routes keep the quotient stabilizer trivial.
    """
    rem = sorted(set(int(x) for x in removed))
    kk = len(rem)
    if kk < 2:
        raise ValueError(f"need at least two removed residues, got {kk}")
    if any(not 1 <= x <= n for x in rem):
        raise ValueError(f"removed residues must lie in 1..{n}")
    pair_ok = False
    pair_reasons: List[str] = []
    if kk == 2:
        aa, bb = rem
        if n < 11:
            pair_reasons.append(f"pair rule needs n >= 11, got {n}")
        elif (2 * (aa - bb)) % n == 0:
            pair_reasons.append(f"pair rule needs 2(a-b) != 0 mod n, got a={aa}, b={bb}")
        else:
            pair_ok = True
    general_ok = False
    general_reasons: List[str] = []
    if n < 5 * kk + 1:
        general_reasons.append(f"general rule needs n >= 5k+1 = {5 * kk + 1}, got {n}")
    else:
        divisors = [i for i in range(2, kk + 1) if n % i == 0]
        if divisors:
            general_reasons.append(f"general rule needs n free of divisors in (1,{kk}], found {divisors}")
        else:
            general_ok = True
    if not pair_ok and not general_ok:
        raise ValueError("; ".join(pair_reasons + general_reasons))
    core = sorted({(2 * i) % (2 * n) for i in range(1, n + 1)} - {(2 * x) % (2 * n) for x in rem})
    tags = {int(s) % (2 * n): str(t) for s, t in (sporadic or {}).items()}
    return make_structured(h=2, k=2 * n, core=core, sporadic=tags)


# -- projections and display -----------------------------------------------------


@dataclass(frozen=True)
class QuotientImage:
    subset: GroupSubset
    exact: bool
    notes: Tuple[str, ...]


def finite_quotient(s: StructuredZSet, m: int, include_sporadic: bool = False) -> QuotientImage:
    """Project the periodic core (and optionally samples and full classes)
    into Z/mZ; exact only when there are no exceptions and every sporadic
    tag is ``avoids``."""
    if m % s.k:
        raise ValueError(f"m must be a multiple of k = {s.k}, got {m}")
    group = cyclic(m)
    members = set()
    for r in s.core:
        members.update(range(r, m, s.k))
    notes: List[str] = []
    tags = dict(s.sporadic)
    if include_sporadic:
        for cls, vals in dict(s.samples).items():
            members.update(x % m for x in vals)
        for cls, tag in tags.items():
            if tag == FULL:
                members.update(range(cls, m, s.k))
    exact = not s.exceptions and all(t == AVOIDS for t in tags.values())
    if s.exceptions:
        notes.append("exceptions do not change the image but make it a strict overapproximation")
    if any(t != AVOIDS for t in tags.values()):
        notes.append("sporadic classes are only partially known, image restricted to the core")
    return QuotientImage(group.subset(sorted(members)), exact, tuple(notes))


def cofinite_subgroup_certificate(h: int, removed: Sequence[int]) -> ZCertificate:
    """Certificate for hZ minus a finite nonempty set: the relative quotient
    of the remainder with respect to hZ is infinite, hence exceeds 2[Z:hZ]."""
    if h < 1:
        raise ValueError(f"h must be a positive integer, got {h}")
    rem = sorted(set(int(x) for x in removed))
    if not rem:
        raise ValueError("removed set must be nonempty")
    for x in rem:
        if x % h:
            raise ValueError(f"removed element {x} does not lie in {h}Z")
    hyps = [
        Hypothesis("complement_finite_in_h", True, {"removed": rem}),
        Hypothesis(
            "relative_quotient_exceeds_double_index",
            True,
            {"sizeC": "infinite", "index": h, "bound": 2 * h * len(rem)},
        ),
    ]
    return ZCertificate(
        theorem=CARDINALITY,
        verdict="NonMinimal",
        hypotheses=tuple(hyps),
        subject={"h": h, "k": None, "description": f"{h}Z minus {rem}"},
        automatic=("relative_quotient_exceeds_double_index",),
        notes=(),
    )


def window_membership(s: StructuredZSet, lo: int, hi: int) -> List[Tuple[int, str]]:
    """Three-valued membership over [lo, hi]: sparse and thick classes answer
    ``unknown`` outside their explicit samples."""
    core_set = set(s.core)
    exc = set(s.exceptions)
    tags = dict(s.sporadic)
    samples = {cls: set(vals) for cls, vals in dict(s.samples).items()}
    out: List[Tuple[int, str]] = []
    for x in range(lo, hi + 1):
        if x % s.h:
            out.append((x, "out"))
            continue
        r = x % s.k
        if r in core_set:
            out.append((x, "out" if x in exc else "in"))
            continue
        tag = tags[r]
        if tag == FULL:
            out.append((x, "in"))
        elif tag == AVOIDS:
            out.append((x, "out"))
        elif x in samples.get(r, ()):
            out.append((x, "in"))
        else:
            out.append((x, "unknown"))
    return out
