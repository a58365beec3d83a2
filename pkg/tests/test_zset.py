"""Structured integer sets: parsing, rule applications, families, projections."""

import random

import pytest

from mincomp.errors import SpecParseError
from mincomp.zset import (
    AVOIDS,
    SPARSE,
    cofinite_subgroup_certificate,
    finite_quotient,
    make_structured,
    parse_structured,
    quotient_stabilizer,
    remark_family,
    robust_family,
    window_membership,
    z_assumption,
    z_check,
)

ODD_BLOCK_32 = {
    "h": 2,
    "k": 32,
    "raw_core": [5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25, 27, 29],
    "sporadic": {"1": "sparse", "31": "sparse"},
    "samples": {"1": [97, 193], "31": [31, 127]},
}


def test_parse_raw_core_records_shift():
    s = parse_structured(ODD_BLOCK_32)
    assert s.shift == -1
    assert s.core == tuple(range(4, 29, 2))
    assert s.noncore == (0, 2, 30)
    assert dict(s.sporadic) == {0: SPARSE, 2: AVOIDS, 30: SPARSE}
    assert dict(s.samples)[0] == (96, 192)


def test_parse_normalized_core_directly():
    s = parse_structured({"h": 2, "k": 12, "core": [2, 4, 6], "exceptions": [14], "shift": 0})
    assert s.exceptions == (14,)
    assert s.noncore == (0, 8, 10)


def test_parse_errors_name_the_field():
    with pytest.raises(SpecParseError, match="core: must be nonempty"):
        make_structured(2, 12, [])
    with pytest.raises(SpecParseError, match="core: must be a proper subset"):
        make_structured(2, 12, [0, 2, 4, 6, 8, 10])
    with pytest.raises(SpecParseError, match="does not lie in H"):
        make_structured(2, 12, [3])
    with pytest.raises(SpecParseError, match="exceptions"):
        make_structured(2, 12, [2, 4], exceptions=[3])
    with pytest.raises(SpecParseError, match="sporadic"):
        make_structured(2, 12, [2, 4], sporadic={0: "dense"})
    with pytest.raises(SpecParseError, match="avoids and must stay empty"):
        make_structured(2, 12, [2, 4], sporadic={0: "avoids"}, samples={0: [12]})
    with pytest.raises(SpecParseError, match="not congruent"):
        make_structured(2, 12, [2, 4], sporadic={0: "sparse"}, samples={0: [13]})
    with pytest.raises(SpecParseError, match="not all congruent mod h"):
        parse_structured({"h": 2, "k": 12, "raw_core": [1, 2]})


def test_z_assumption_examples():
    assert z_assumption(parse_structured(ODD_BLOCK_32)).holds
    assert z_assumption(make_structured(1, 4, [1, 2, 3])).holds
    assert not z_assumption(make_structured(2, 12, [2, 4, 6])).holds


def test_zcheck_f_avoids_example():
    cert = z_check(parse_structured(ODD_BLOCK_32), "ThmFAvoids")
    assert cert.verdict == "NonMinimal"
    witness = next(h for h in cert.hypotheses if h.name == "f_avoids_a_noncore_coset")
    assert witness.witness == {"avoidedClasses": [2]}


def test_zcheck_thm_q_example():
    odd_48 = {
        "h": 2,
        "k": 48,
        "raw_core": [3, 9, 11, 13, 15, 17, 19, 21, 23, 25, 27, 29,
                     31, 33, 35, 37, 39, 41, 43, 45, 47],
        "sporadic": {"1": "sparse", "5": "sparse", "7": "sparse"},
    }
    s = parse_structured(odd_48)
    assert len(s.core) == 21
    cert = z_check(s, "ThmQ")
    assert cert.verdict == "NonMinimal"
    assert "separating_subgroup_exists" in cert.automatic


def test_zcheck_single_coset_example():
    s = make_structured(2, 12, [2, 4, 6, 8, 10], sporadic={0: SPARSE})
    assert z_check(s, "ThmSingleCoset").verdict == "NonMinimal"
    two_classes = make_structured(2, 16, [2, 4, 6, 8, 10], sporadic={0: SPARSE, 12: SPARSE})
    with pytest.raises(ValueError, match="single class"):
        z_check(two_classes, "ThmSingleCoset")


def test_zcheck_prop_coset_example():
    s = make_structured(2, 12, [2, 4, 6, 8, 10])
    assert z_check(s, "PropCoset").verdict == "NonMinimal"
    with pytest.raises(ValueError, match="F to be empty"):
        z_check(make_structured(2, 12, [2, 4, 6, 8, 10], sporadic={0: SPARSE}), "PropCoset")


def test_zcheck_cminusc_example():
    s = make_structured(1, 9, [0, 1, 2, 3, 6, 7, 8], sporadic={4: SPARSE, 5: SPARSE})
    cert = z_check(s, "ThmCMinusC")
    assert cert.verdict == "NonMinimal"
    assert quotient_stabilizer(s) == (0,)

    # core tiled by a larger subgroup: stabilizer is nontrivial, rule inconclusive
    tiled = make_structured(1, 9, [0, 3, 6])
    assert quotient_stabilizer(tiled) == (0, 3, 6)
    assert z_check(tiled, "ThmCMinusC").verdict == "Inconclusive"


def test_thick_tag_gives_inconclusive_with_note():
    s = make_structured(2, 12, [2, 4, 6, 8, 10], sporadic={0: "thick"})
    cert = z_check(s, "ThmSingleCoset")
    assert cert.verdict == "Inconclusive"
    assert any("thick" in note for note in cert.notes)


def test_full_tag_fails_padding():
    s = make_structured(2, 12, [2, 4, 6, 8, 10], sporadic={0: "full"})
    cert = z_check(s, "ThmSingleCoset")
    assert cert.verdict == "Inconclusive"
    pad = next(h for h in cert.hypotheses if h.name == "no_coset_within_padding")
    assert not pad.holds and pad.witness["fullClasses"] == [0]
    # F fills the whole complement here, so the separating rule fails too
    assert z_check(s, "ThmQ").verdict == "Inconclusive"
    # with a second, untouched class the sporadic part is proper again
    nine_of_eleven = make_structured(2, 22, range(4, 21, 2), sporadic={0: "full"})
    assert z_check(nine_of_eleven, "ThmQ").verdict == "NonMinimal"


def test_theorem_name_aliases():
    s = make_structured(2, 12, [2, 4, 6, 8, 10])
    assert z_check(s, "thm_q").theorem == "ThmQ"
    assert z_check(s, "ThmQFinite").theorem == "ThmQ"
    with pytest.raises(ValueError, match="unknown theorem"):
        z_check(s, "ThmTop")


def test_robust_family_examples():
    member = robust_family(7, 2, [1, 2, 3, 4, 5])
    assert z_assumption(member).holds
    assert z_check(member, "ThmCMinusC").verdict == "NonMinimal"

    assert robust_family(5, 1, [1, 2, 3, 5]).core == (0, 1, 2, 3)

    with pytest.raises(ValueError, match=r"p - a"):
        robust_family(7, 2, [1, 2, 3, 4])
    with pytest.raises(ValueError, match="prime"):
        robust_family(9, 2, [1, 2, 3, 4, 5, 6, 7])
    with pytest.raises(ValueError, match="3a"):
        robust_family(7, 3, [1, 2, 3, 4])
    with pytest.raises(ValueError, match="avoids or sparse"):
        robust_family(7, 2, [1, 2, 3, 4, 5], sporadic={6: "thick"})


def test_remark_family_examples():
    member = remark_family(11, [1, 2])
    assert z_check(member, "ThmCMinusC").verdict == "NonMinimal"
    assert member.h == 2 and member.k == 22
    assert set(member.noncore) == {2, 4}

    with pytest.raises(ValueError, match=r"2\(a-b\)"):
        remark_family(12, [3, 9])
    with pytest.raises(ValueError, match="n >= 11"):
        remark_family(10, [1, 2])
    # general route: k = 3 removed classes need n >= 16 and no divisor in (1,3]
    assert z_check(remark_family(17, [1, 5, 9]), "ThmCMinusC").verdict == "NonMinimal"
    with pytest.raises(ValueError, match="divisors"):
        remark_family(16, [1, 5, 9])


def test_finite_quotient_examples():
    member = robust_family(7, 2, [1, 2, 3, 4, 5])
    image = finite_quotient(member, 7)
    assert image.subset.members == (1, 2, 3, 4, 5)
    assert image.exact

    five = make_structured(2, 12, [2, 4, 6, 8, 10])
    image12 = finite_quotient(five, 12)
    assert image12.subset.members == (2, 4, 6, 8, 10)
    assert image12.exact

    with_exc = make_structured(2, 12, [2, 4, 6], exceptions=[14])
    assert not finite_quotient(with_exc, 12).exact
    image24 = finite_quotient(five, 24)
    assert image24.subset.members == (2, 4, 6, 8, 10, 14, 16, 18, 20, 22)
    with pytest.raises(ValueError, match="multiple of k"):
        finite_quotient(five, 18)


def test_finite_quotient_includes_sporadic_on_request():
    s = make_structured(2, 12, [2, 4, 6, 8, 10], sporadic={0: SPARSE}, samples={0: [12, 24]})
    plain = finite_quotient(s, 12)
    loaded = finite_quotient(s, 12, include_sporadic=True)
    assert 0 not in plain.subset.members
    assert 0 in loaded.subset.members


def test_cofinite_subgroup_certificate():
    cert = cofinite_subgroup_certificate(2, [0, 2])
    assert cert.verdict == "NonMinimal"
    assert cert.theorem == "CardinalityObstruction"
    with pytest.raises(ValueError, match="nonempty"):
        cofinite_subgroup_certificate(2, [])
    with pytest.raises(ValueError, match="does not lie"):
        cofinite_subgroup_certificate(2, [3])


def test_window_membership_markers():
    s = make_structured(2, 12, [2, 4, 6, 8, 10], sporadic={0: SPARSE}, samples={0: [12]},
                        exceptions=[4])
    rows = dict(window_membership(s, -1, 13))
    assert rows[1] == "out"        # outside H
    assert rows[2] == "in"         # core
    assert rows[4] == "out"        # exception
    assert rows[0] == "unknown"    # sparse class, not sampled
    assert rows[12] == "in"        # sampled
    assert rows[13] == "out"


def test_zcheck_translation_soundness():
    """Shifting the raw description by any integer leaves every verdict alone."""
    base_specs = [
        (ODD_BLOCK_32, "ThmFAvoids"),
        ({"h": 2, "k": 12, "raw_core": [3, 5, 7, 9, 11], "sporadic": {"1": "sparse"}},
         "ThmSingleCoset"),
        ({"h": 1, "k": 9, "core": [0, 1, 2, 3, 6, 7, 8],
          "sporadic": {"4": "sparse", "5": "sparse"}}, "ThmCMinusC"),
    ]
    rng = random.Random(5)
    for spec, theorem in base_specs:
        member = parse_structured(spec)
        baseline = z_check(member, theorem).verdict
        for _ in range(8):
            t = rng.randrange(-300, 300)
            shifted = {
                "h": member.h,
                "k": member.k,
                "raw_core": [(r + t) % member.k for r in member.core],
                "exceptions": [x + t for x in member.exceptions],
                "sporadic": {str((c + t) % member.k): tag for c, tag in member.sporadic},
                "samples": {str((c + t) % member.k): [x + t for x in vals]
                            for c, vals in member.samples},
            }
            assert z_check(parse_structured(shifted), theorem).verdict == baseline


def test_exact_members_agree_with_finite_checkers():
    """For E = F = 0 members the symbolic rules must match the finite checkers
    on every exact quotient: the coset counts and the quotient stabilizer are
    the same data in both worlds."""
    from mincomp.certificates import TheoremInstance, run_checker
    from mincomp.groups import cyclic, subgroup_generated

    pairs = {
        "PropCoset": "PropCoset",
        "ThmFAvoids": "ThmFAvoids",
        "ThmQ": "ThmQFinite",
        "ThmSingleCoset": "ThmSingleCoset",
        "ThmCMinusC": "ThmCMinusC",
    }
    rng = random.Random(17)
    for _ in range(60):
        h = rng.choice([1, 2, 3])
        q = rng.randrange(2, 7)
        k = h * q
        classes = list(range(0, k, h))
        size = rng.randrange(1, q)
        core = rng.sample(classes, size)
        member = make_structured(h, k, core)
        for mult in (1, 2):
            m = k * mult
            if m > 36:
                continue
            group = cyclic(m)
            image = finite_quotient(member, m)
            assert image.exact
            inst = TheoremInstance(
                group,
                subgroup_generated(group, [h % m]),
                subgroup_generated(group, [k % m]),
                image.subset,
            )
            for z_name, fin_name in pairs.items():
                z_verdict = z_check(member, z_name).verdict
                fin_verdict = run_checker(inst, fin_name).verdict
                assert z_verdict == fin_verdict, (h, k, sorted(core), m, z_name)


def test_robustness_against_finite_perturbation():
    """Adding up to three exceptions and three samples never flips a
    difference-rule NonMinimal verdict on an all-sparse family member."""
    rng = random.Random(9)
    bases = [
        robust_family(7, 2, [1, 2, 3, 4, 5], sporadic={0: SPARSE, 6: SPARSE}),
        robust_family(11, 3, [1, 2, 3, 4, 5, 6, 7, 9], sporadic={0: SPARSE, 8: SPARSE, 10: SPARSE}),
    ]
    for base in bases:
        assert z_check(base, "ThmCMinusC").verdict == "NonMinimal"
        payload = base.to_payload()
        for _ in range(100):
            data = {k: v for k, v in payload.items() if k != "shift"}
            extra_exc = rng.randrange(0, 4)
            data["exceptions"] = list(payload["exceptions"])
            for _ in range(extra_exc):
                cls = rng.choice(base.core)
                data["exceptions"].append(cls + base.k * rng.randrange(-5, 6))
            data["samples"] = {c: list(v) for c, v in payload["samples"].items()}
            for _ in range(rng.randrange(0, 4)):
                cls = rng.choice(base.noncore)
                data.setdefault("samples", {}).setdefault(str(cls), []).append(
                    cls + base.k * rng.randrange(-5, 6)
                )
            perturbed = parse_structured(data)
            assert z_check(perturbed, "ThmCMinusC").verdict == "NonMinimal"
