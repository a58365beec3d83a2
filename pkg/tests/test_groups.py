"""Group construction, axioms, subgroup enumeration and coset profiles."""

import itertools

import numpy as np
import pytest

from mincomp.errors import CapacityError, GroupConstructionError, SpecParseError
from mincomp.groups import (
    FiniteGroup,
    Subgroup,
    all_subgroups,
    coset_reps,
    cyclic,
    dihedral,
    from_cayley_file,
    from_spec,
    from_table,
    product,
    subgroup_generated,
    subgroup_profile,
    trivial_subgroup,
)


def assert_group_axioms(group: FiniteGroup) -> None:
    n = group.order
    e = group.identity
    for g in range(n):
        assert group.mul(e, g) == g
        assert group.mul(g, e) == g
        assert group.mul(group.inv(g), g) == e
        assert group.mul(g, group.inv(g)) == e
        assert sorted(int(x) for x in group.table[g]) == list(range(n))
        assert sorted(int(x) for x in group.table[:, g]) == list(range(n))
    for a, b, c in itertools.product(range(n), repeat=3):
        assert group.mul(group.mul(a, b), c) == group.mul(a, group.mul(b, c))


@pytest.mark.parametrize(
    "group",
    [cyclic(1), cyclic(7), cyclic(12), dihedral(3), dihedral(5),
     product(cyclic(2), cyclic(2)), product(cyclic(2), cyclic(6)),
     product(cyclic(2), product(cyclic(2), cyclic(3)))],
    ids=lambda g: g.name,
)
def test_axioms_hold_for_constructed_groups(group):
    assert group.order <= 12
    assert_group_axioms(group)


def test_cyclic_12_inverse():
    assert cyclic(12).inv(5) == 7


def test_dihedral_3_is_nonabelian():
    d3 = dihedral(3)
    r, s = 1, 3
    assert d3.mul(r, s) != d3.mul(s, r)
    assert not d3.is_abelian


def test_klein_four_group_every_element_self_inverse():
    k4 = product(cyclic(2), cyclic(2))
    assert all(k4.inv(a) == a for a in range(4))


def test_reflections_are_involutions():
    d4 = dihedral(4)
    for i in range(4, 8):
        assert d4.mul(i, i) == 0


def test_from_table_rejects_non_latin():
    with pytest.raises(GroupConstructionError, match="Latin"):
        from_table([[0, 0], [1, 1]])


def test_from_table_rejects_missing_identity():
    # The subtraction quasigroup mod 3: Latin, but only a one-sided identity.
    with pytest.raises(GroupConstructionError, match="identity"):
        from_table([[0, 1, 2], [2, 0, 1], [1, 2, 0]])


def test_from_table_rejects_non_associative():
    # A 5x5 Latin square with identity 0 that fails associativity (a quasigroup).
    rows = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(GroupConstructionError, match="associative"):
        from_table(rows)


def test_from_spec_strings():
    assert from_spec("cyclic:12").order == 12
    assert from_spec("dihedral:6").order == 12
    assert from_spec("product:cyclic:2,cyclic:4").order == 8
    assert from_spec("product:cyclic:2,cyclic:2,cyclic:2").order == 8
    with pytest.raises(SpecParseError):
        from_spec("simple:60")


def test_cayley_file_round_trip(tmp_path):
    g = dihedral(3)
    path = tmp_path / "d3.tbl"
    lines = [str(g.order)] + [" ".join(str(int(x)) for x in row) for row in g.table]
    path.write_text("\n".join(lines), encoding="utf-8")
    loaded = from_cayley_file(path)
    assert np.array_equal(loaded.table, g.table)
    via_spec = from_spec(f"table:{path}")
    assert np.array_equal(via_spec.table, g.table)


def test_cayley_file_requires_identity_first(tmp_path):
    g = cyclic(3)
    # relabel so that 0 is no longer the identity
    perm = [1, 0, 2]
    table = [[perm[g.mul(a, b)] for b in (1, 0, 2)] for a in (1, 0, 2)]
    path = tmp_path / "bad.tbl"
    path.write_text("3\n" + "\n".join(" ".join(map(str, row)) for row in table))
    with pytest.raises(GroupConstructionError, match="identity"):
        from_cayley_file(path)


def test_subgroup_generated_examples():
    g12 = cyclic(12)
    h = subgroup_generated(g12, [4])
    assert h.members.members == (0, 4, 8)
    assert h.index == 4
    assert subgroup_generated(g12, []).members.members == (0,)
    assert subgroup_generated(g12, []).index == 12
    d3 = dihedral(3)
    assert subgroup_generated(d3, [3, 1]).index == 1


def test_subgroup_generated_rejects_out_of_range():
    with pytest.raises(ValueError, match="out of range"):
        subgroup_generated(cyclic(6), [6])


def test_subgroup_generated_idempotent():
    for group in (cyclic(12), dihedral(4)):
        for sub in all_subgroups(group):
            again = subgroup_generated(group, sub.members.members)
            assert again.members.mask == sub.members.mask


def test_all_subgroups_counts():
    assert len(all_subgroups(cyclic(6))) == 4
    assert len(all_subgroups(cyclic(12))) == 6
    d3_subs = all_subgroups(dihedral(3))
    assert len(d3_subs) == 6
    assert sorted(len(s) for s in d3_subs) == [1, 2, 2, 2, 3, 6]


def test_all_subgroups_brute_force_cross_check():
    """Closure enumeration must agree with the 2^n scan on small groups."""
    for group in (cyclic(8), dihedral(3), product(cyclic(2), cyclic(2))):
        brute = set()
        n = group.order
        for mask in range(1, 1 << n):
            if not (mask >> group.identity) & 1:
                continue
            if group.product_mask(mask, mask) == mask:
                brute.add(mask)
        assert {s.members.mask for s in all_subgroups(group)} == brute


def test_all_subgroups_capacity_error():
    with pytest.raises(CapacityError, match="bound"):
        all_subgroups(cyclic(100))


def test_lagrange_and_coset_partition():
    for group in (cyclic(12), dihedral(4), product(cyclic(2), cyclic(4))):
        for sub in all_subgroups(group):
            assert group.order % len(sub) == 0
            profile = subgroup_profile(group, sub)
            covered = 0
            for rep in profile.right_reps:
                coset = group.right_translate_mask(sub.members.mask, rep)
                assert covered & coset == 0
                covered |= coset
            assert covered == group.full_mask


def test_subgroup_profile_examples():
    g12 = cyclic(12)
    prof = subgroup_profile(g12, subgroup_generated(g12, [2]))
    assert prof.index == 2
    assert prof.normal
    assert prof.right_reps == (0, 1)

    d3 = dihedral(3)
    assert not subgroup_profile(d3, subgroup_generated(d3, [3])).normal
    assert subgroup_profile(d3, subgroup_generated(d3, [1])).normal


def test_subgroup_profile_wrong_parent():
    h = subgroup_generated(cyclic(6), [2])
    with pytest.raises(ValueError, match="belong"):
        subgroup_profile(cyclic(12), h)


def test_subgroup_rejects_unclosed_subset():
    g = cyclic(6)
    with pytest.raises(ValueError, match="closed"):
        Subgroup(g, g.subset([0, 1]))
    with pytest.raises(ValueError, match="identity"):
        Subgroup(g, g.subset([2, 4]))


def test_group_subset_basics():
    g = cyclic(6)
    s = g.subset([0, 2, 4])
    assert len(s) == 3
    assert 2 in s and 3 not in s
    assert s.complement().members == (1, 3, 5)
    assert s.union(g.subset([1])).members == (0, 1, 2, 4)
    with pytest.raises(ValueError, match="out of range"):
        g.subset([6])


def test_rotation_translation_matches_table_path():
    g = cyclic(12)
    generic = FiniteGroup(g.table, name="c12-generic")
    for mask in (0b101, 0b111000111, 1 << 11):
        for elem in range(12):
            assert g.left_translate_mask(elem, mask) == generic.left_translate_mask(elem, mask)
            assert g.right_translate_mask(mask, elem) == generic.right_translate_mask(mask, elem)
        assert g.product_mask(mask, 0b11) == generic.product_mask(mask, 0b11)


def test_coset_reps_within_subset():
    g12 = cyclic(12)
    k = subgroup_generated(g12, [6])
    evens = sum(1 << i for i in range(0, 12, 2))
    reps = coset_reps(g12, k.members.mask, side="right", within_mask=evens)
    assert reps == [0, 2, 4]


def test_trivial_subgroup():
    d3 = dihedral(3)
    assert trivial_subgroup(d3).members.members == (0,)
    assert trivial_subgroup(d3).index == 6
