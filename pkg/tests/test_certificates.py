"""Theorem checkers: hypothesis bookkeeping, verdicts on worked instances,
determinism and the automatic decomposition scan."""

import pytest

from mincomp.certificates import (
    TheoremInstance,
    applicable_checkers,
    check_assumption,
    check_prop_coset,
    check_prop_fini,
    check_thm_cminusc,
    check_thm_f_avoids,
    check_thm_q_finite,
    check_thm_single_coset,
    run_checker,
    verdict,
)
from mincomp.engine import oracle_minimality_status
from mincomp.groups import GroupSubset, cyclic, dihedral, subgroup_generated


def coset_union(group, k, reps):
    mask = 0
    for rep in reps:
        mask |= group.right_translate_mask(k.members.mask, rep)
    return GroupSubset(group, mask)


@pytest.fixture
def c12_instance_parts():
    g12 = cyclic(12)
    h = subgroup_generated(g12, [1])
    k = subgroup_generated(g12, [6])
    return g12, h, k


def test_instance_validation(c12_instance_parts):
    g12, h, k = c12_instance_parts
    with pytest.raises(ValueError, match="union of K-right cosets"):
        TheoremInstance(g12, h, k, g12.subset([0, 1]))
    with pytest.raises(ValueError, match="proper"):
        TheoremInstance(g12, h, k, g12.subset(range(12)))
    with pytest.raises(ValueError, match="nonempty"):
        TheoremInstance(g12, h, k, g12.subset([]))
    c = coset_union(g12, k, [0])
    with pytest.raises(ValueError, match="E must be contained"):
        TheoremInstance(g12, h, k, c, e=g12.subset([1]))
    with pytest.raises(ValueError, match="F must be contained"):
        TheoremInstance(g12, h, k, c, f=g12.subset([0]))

    d3 = dihedral(3)
    hd = subgroup_generated(d3, [1])  # <r>, normal
    s_sub = subgroup_generated(d3, [3])  # <s>, not normal in D3
    with pytest.raises(ValueError, match="normal"):
        TheoremInstance(d3, subgroup_generated(d3, [1, 3]), s_sub, d3.subset([0, 3]))


def test_assumption_examples(c12_instance_parts):
    g24 = cyclic(24)
    h = subgroup_generated(g24, [2])
    k = subgroup_generated(g24, [8])
    c = GroupSubset(g24, h.members.mask & ~k.members.mask)
    hyp = check_assumption(TheoremInstance(g24, h, k, c))
    assert not hyp.holds
    assert hyp.witness == {"coreCosets": 3, "index": 2, "noncoreCosets": 1}

    g12, hg, k6 = c12_instance_parts
    four = coset_union(g12, k6, [0, 1, 2, 3])
    assert not check_assumption(TheoremInstance(g12, hg, k6, four)).holds
    five = coset_union(g12, k6, [0, 1, 2, 3, 4])
    assert check_assumption(TheoremInstance(g12, hg, k6, five)).holds


def test_prop_coset_examples(c12_instance_parts):
    g36 = cyclic(36)
    h = subgroup_generated(g36, [1])
    k = subgroup_generated(g36, [6])
    c = coset_union(g36, k, [0, 1, 2, 3, 4])
    inst = TheoremInstance(g36, h, k, c, e=g36.subset([0]))
    cert = check_prop_coset(inst)
    assert cert.verdict == "NonMinimal"
    assert all(h.holds for h in cert.hypotheses)

    g12, hg, k6 = c12_instance_parts
    five = coset_union(g12, k6, [0, 1, 2, 3, 4])
    # empty E makes the subgroup-size hypothesis vacuous: assumption decides
    assert check_prop_coset(TheoremInstance(g12, hg, k6, five)).verdict == "NonMinimal"
    # E of size 3 breaks |K| > 2([G:H]+1)|E|
    inst_big_e = TheoremInstance(g12, hg, k6, five, e=g12.subset([0, 1, 2]))
    assert check_prop_coset(inst_big_e).verdict == "Inconclusive"

    with pytest.raises(ValueError, match="F to be empty"):
        check_prop_coset(TheoremInstance(g12, hg, k6, five, f=g12.subset([5])))


def test_f_avoids_examples(c12_instance_parts):
    g12, hg, k6 = c12_instance_parts
    five = coset_union(g12, k6, [0, 1, 2, 3, 4])
    assert check_thm_f_avoids(TheoremInstance(g12, hg, k6, five)).verdict == "NonMinimal"

    # F filling the single remaining coset leaves nothing avoided
    full_f = TheoremInstance(g12, hg, k6, five, f=g12.subset([5, 11]))
    cert = check_thm_f_avoids(full_f)
    assert cert.verdict == "Inconclusive"
    failed = [h.name for h in cert.hypotheses if not h.holds]
    assert failed == ["f_avoids_a_noncore_coset"]

    # Larger group: two non-core cosets, F meets only one of them.
    g24 = cyclic(24)
    h24 = subgroup_generated(g24, [1])
    k8 = subgroup_generated(g24, [8])  # order 3, eight cosets
    c6 = coset_union(g24, k8, [0, 1, 2, 3, 4, 5])
    f_half = g24.subset([6])  # half of coset 6, coset 7 untouched
    cert24 = check_thm_f_avoids(TheoremInstance(g24, h24, k8, c6, f=f_half))
    assert cert24.verdict == "NonMinimal"


def test_q_finite_examples(c12_instance_parts):
    g12, hg, k6 = c12_instance_parts
    five = coset_union(g12, k6, [0, 1, 2, 3, 4])
    for f_members in ([], [5], [11]):
        inst = TheoremInstance(g12, hg, k6, five, f=g12.subset(f_members))
        assert check_thm_q_finite(inst).verdict == "NonMinimal"
    exact = TheoremInstance(g12, hg, k6, five, f=g12.subset([5, 11]))
    assert check_thm_q_finite(exact).verdict == "Inconclusive"
    with pytest.raises(ValueError, match="E must be empty"):
        check_thm_q_finite(TheoremInstance(g12, hg, k6, five, e=g12.subset([0])))


def test_single_coset_examples(c12_instance_parts):
    g12, hg, k6 = c12_instance_parts
    five = coset_union(g12, k6, [0, 1, 2, 3, 4])
    # E = F = empty reduces to the coset rule
    assert check_thm_single_coset(TheoremInstance(g12, hg, k6, five)).verdict == "NonMinimal"

    # |K| = 2 cannot exceed the padding bound once E is nonempty
    inst = TheoremInstance(g12, hg, k6, five, e=g12.subset([0]), f=g12.subset([5]))
    cert = check_thm_single_coset(inst)
    assert cert.verdict == "Inconclusive"
    deficiency = next(h for h in cert.hypotheses if h.name == "no_coset_within_padding")
    assert not deficiency.holds
    assert deficiency.witness["bound"] == 4

    g24 = cyclic(24)
    h = subgroup_generated(g24, [2])
    k = subgroup_generated(g24, [6])
    two_of_three = coset_union(g24, k, [0, 2])
    cert24 = check_thm_single_coset(TheoremInstance(g24, h, k, two_of_three))
    assert cert24.verdict == "Inconclusive"
    assert not next(h for h in cert24.hypotheses if h.name == "assumption_coset_count").holds


def test_single_coset_padding_monotone_in_e(c12_instance_parts):
    """Growing E never flips Inconclusive to NonMinimal."""
    g36 = cyclic(36)
    h = subgroup_generated(g36, [1])
    k = subgroup_generated(g36, [6])
    c = coset_union(g36, k, [0, 1, 2, 3, 4])
    statuses = []
    members = list(c.members)
    for size_e in range(4):
        inst = TheoremInstance(g36, h, k, c, e=g36.subset(members[:size_e]))
        statuses.append(check_thm_single_coset(inst).verdict)
    for earlier, later in zip(statuses, statuses[1:]):
        assert not (earlier == "Inconclusive" and later == "NonMinimal")


def test_cminusc_examples():
    g10 = cyclic(10)
    h = subgroup_generated(g10, [1])
    k0 = subgroup_generated(g10, [])
    inst = TheoremInstance(g10, h, k0, g10.subset(range(7)))
    cert = check_thm_cminusc(inst)
    assert cert.verdict == "NonMinimal"
    assert oracle_minimality_status(g10.subset(range(7)), side="both").status == "NotMinimal"

    # C a union of cosets of a strictly larger subgroup: the equation fails
    # for the trivial K, and the fallback re-runs with the stabilizer.
    g12 = cyclic(12)
    h12 = subgroup_generated(g12, [1])
    k0_12 = subgroup_generated(g12, [])
    inst2 = TheoremInstance(g12, h12, k0_12, g12.subset([0, 2, 4, 6, 8, 10]))
    cert2 = check_thm_cminusc(inst2)
    assert cert2.notes  # fallback happened
    # with K' = <2> there is a single K'-coset in C, complement has one: 1 > 2 fails
    assert cert2.verdict == "Inconclusive"


def test_cminusc_remark_pair_in_quotient():
    """Even residues mod 22 minus a valid pair certify via the difference rule."""
    g22 = cyclic(22)
    h = subgroup_generated(g22, [2])
    k0 = subgroup_generated(g22, [])
    c = GroupSubset(g22, h.members.mask & ~((1 << 2) | (1 << 4)))  # remove 2a=2, 2b=4
    inst = TheoremInstance(g22, h, k0, c)
    assert check_thm_cminusc(inst).verdict == "NonMinimal"


def test_prop_fini_examples():
    g12 = cyclic(12)
    h = subgroup_generated(g12, [1])
    for size in (9, 10, 11):
        cert = check_prop_fini(g12, h, g12.subset(range(size)))
        assert cert.verdict == "NonMinimal"
    assert check_prop_fini(g12, h, g12.subset(range(8))).verdict == "Inconclusive"

    # index-2 subgroup of D3: the threshold 2.4 leaves no room below |H| = 3
    d3 = dihedral(3)
    hr = subgroup_generated(d3, [1])
    for size in (1, 2):
        cert = check_prop_fini(d3, hr, d3.subset(range(size)))
        assert cert.verdict == "Inconclusive"


def test_certificates_deterministic(c12_instance_parts):
    g12, hg, k6 = c12_instance_parts
    five = coset_union(g12, k6, [0, 1, 2, 3, 4])
    inst1 = TheoremInstance(g12, hg, k6, five, f=g12.subset([5]))
    inst2 = TheoremInstance(g12, hg, k6, five, f=g12.subset([5]))
    assert check_thm_f_avoids(inst1).to_json() == check_thm_f_avoids(inst2).to_json()
    assert check_thm_single_coset(inst1).to_json() == check_thm_single_coset(inst2).to_json()


def test_applicable_checkers(c12_instance_parts):
    g12, hg, k6 = c12_instance_parts
    five = coset_union(g12, k6, [0, 1, 2, 3, 4])
    plain = TheoremInstance(g12, hg, k6, five)
    names = applicable_checkers(plain)
    assert "PropCoset" in names and "ThmQFinite" in names
    with_f = TheoremInstance(g12, hg, k6, five, f=g12.subset([5]))
    assert "PropCoset" not in applicable_checkers(with_f)
    with pytest.raises(ValueError, match="unknown theorem"):
        run_checker(plain, "ThmNope")


def test_verdict_examples():
    g12 = cyclic(12)
    certs = verdict(g12, g12.subset([2, 4, 6, 8, 10]), confirm_oracle=True)
    by_name = {c.theorem: c for c in certs}
    assert by_name["PropFini"].verdict == "NonMinimal"
    assert by_name["PropFini"].oracle_confirmed is True

    quiet = verdict(g12, g12.subset([0, 6]), confirm_oracle=False)
    assert all(c.verdict == "Inconclusive" for c in quiet)

    d3 = dihedral(3)
    certs3 = verdict(d3, d3.subset([1, 2, 3, 4, 5]), confirm_oracle=True)
    fini = next(c for c in certs3 if c.theorem == "PropFini")
    assert fini.verdict == "NonMinimal" and fini.oracle_confirmed is True


def test_verdict_needs_translation_for_shifted_subset():
    """{1,3,5,7,9} only certifies after translation into the even subgroup."""
    g12 = cyclic(12)
    certs = verdict(g12, g12.subset([1, 3, 5, 7, 9]), confirm_oracle=True)
    fini = next(c for c in certs if c.theorem == "PropFini")
    assert fini.verdict == "NonMinimal"
    assert fini.oracle_confirmed is True
    assert fini.decomposition["translation"] % 2 == 1
