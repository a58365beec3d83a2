"""Subset arithmetic on finite groups: product sets, translates, stabilizers,
coset decompositions and the symmetric product-set construction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import SpecParseError
from .groups import FiniteGroup, GroupSubset, Subgroup, all_subgroups, bits_of, coset_reps


def product_set(a: GroupSubset, b: GroupSubset) -> GroupSubset:
    """``{x*y : x in a, y in b}``; empty if either input is empty."""
    a._check_same_parent(b)
    return GroupSubset(a.parent, a.parent.product_mask(a.mask, b.mask))


def inverse_set(a: GroupSubset) -> GroupSubset:
    """``{x^-1 : x in a}``; an involution."""
    return GroupSubset(a.parent, a.parent.inverse_mask(a.mask))


def translate(side: str, g: int, a: GroupSubset) -> GroupSubset:
    """Left translate ``g*a`` or right translate ``a*g``."""
    group = a.parent
    if not 0 <= g < group.order:
        raise ValueError(f"element index {g} out of range for order {group.order}")
    if side == "left":
        return GroupSubset(group, group.left_translate_mask(g, a.mask))
    if side == "right":
        return GroupSubset(group, group.right_translate_mask(a.mask, g))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def left_stabilizer(y: GroupSubset) -> Subgroup:
    """The subgroup ``{g : g*Y = Y}`` -- the maximal subgroup whose right
    cosets tile ``Y``.  Empty ``Y`` is rejected to match the nonempty
    hypothesis of the construction this implements."""
    if y.is_empty():
        raise ValueError("stabilizer of the empty set is all of G; Y must be nonempty")
    group = y.parent
    stab = 0
    for g in range(group.order):
        if group.left_translate_mask(g, y.mask) == y.mask:
            stab |= 1 << g
    return Subgroup(group, GroupSubset(group, stab))


def left_stabilizer_mask_within(group: FiniteGroup, y_mask: int, ambient_mask: int) -> int:
    """Mask of ``{g in ambient : g*Y = Y}`` for ``Y`` inside the subgroup ``ambient``."""
    stab = 0
    for g in bits_of(ambient_mask):
        if group.left_translate_mask(g, y_mask) == y_mask:
            stab |= 1 << g
    return stab


def symmetric_product_complement(x: GroupSubset, y: GroupSubset) -> GroupSubset:
    """``G \\ ((X*Y^-1) | (Y*X^-1))`` for a partition ``X | Y = G``.

    The result is always a subgroup (the left stabilizer of ``Y``); callers
    may wrap it in :class:`Subgroup`, which re-verifies closure.
    """
    x._check_same_parent(y)
    group = x.parent
    if x.is_empty() or y.is_empty():
        raise ValueError("X and Y must both be nonempty")
    if x.mask & y.mask:
        raise ValueError("X and Y must be disjoint")
    if x.mask | y.mask != group.full_mask:
        raise ValueError("X and Y must cover the whole group")
    y_inv = group.inverse_mask(y.mask)
    x_inv = group.inverse_mask(x.mask)
    union = group.product_mask(x.mask, y_inv) | group.product_mask(y.mask, x_inv)
    return GroupSubset(group, group.full_mask & ~union)


@dataclass(frozen=True)
class CosetProfile:
    """Whether Y is a union of right cosets of L, with count and representatives."""

    is_union: bool
    count: Optional[int]
    reps: Tuple[int, ...]


def coset_profile(y: GroupSubset, sub: Subgroup) -> CosetProfile:
    """Right-coset decomposition data of ``Y`` with respect to ``L``: Y is a
    union of right cosets iff ``L*Y = Y``."""
    group = y.parent
    is_union = group.product_mask(sub.members.mask, y.mask) == y.mask
    if not is_union:
        return CosetProfile(False, None, ())
    reps = coset_reps(group, sub.members.mask, side="right", within_mask=y.mask)
    return CosetProfile(True, len(y) // len(sub), tuple(reps))


@dataclass(frozen=True)
class CosetUnionEquivalences:
    """Independently computed equivalent conditions on a partition (X, Y) and
    a subgroup L whose right cosets tile X, plus the finite-support criteria."""

    proper_inclusion: bool          # (X·Y^-1) | (Y·X^-1) is strictly inside G \ L
    forall_y_exists: bool           # every y in Y admits y' in Y\(Ly) with y'y^-1 Y = Y
    exists_y_exists: bool           # some y in Y admits such a y'
    y_union_of_larger: bool         # Y tiles by right cosets of a subgroup strictly over L
    x_union_of_larger: bool         # X tiles likewise
    consistent: bool                # the five booleans above agree
    criterion_order: bool           # ord(y'y^-1) > |Y| for all distinct y, y' in Y
    criterion_divisibility: bool    # |Y| divisible by no nontrivial subgroup order
    identity_excluded_equality: bool  # (X·Y^-1) | (Y·X^-1) equals G \ {e}


def coset_union_equivalences(
    x: GroupSubset, y: GroupSubset, sub: Subgroup
) -> CosetUnionEquivalences:
    group = x.parent
    x._check_same_parent(y)
    if x.is_empty() or y.is_empty():
        raise ValueError("X and Y must both be nonempty")
    if x.mask & y.mask:
        raise ValueError("X and Y must be disjoint")
    if x.mask | y.mask != group.full_mask:
        raise ValueError("X and Y must cover the whole group")
    l_mask = sub.members.mask
    if group.product_mask(l_mask, x.mask) != x.mask:
        raise ValueError("X must be a union of right cosets of L")

    y_inv = group.inverse_mask(y.mask)
    x_inv = group.inverse_mask(x.mask)
    union = group.product_mask(x.mask, y_inv) | group.product_mask(y.mask, x_inv)

    outside_l = group.full_mask & ~l_mask
    if union & l_mask:
        raise ValueError("product union meets L; X is not tiled by L as assumed")
    cond1 = union != outside_l

    def _has_witness(yy: int) -> bool:
        ly = group.product_mask(l_mask, 1 << yy)  # the right coset L·y
        for yp in bits_of(y.mask & ~ly):
            g = group.mul(yp, group.inv(yy))
            if group.left_translate_mask(g, y.mask) == y.mask:
                return True
        return False

    witnesses = [_has_witness(yy) for yy in bits_of(y.mask)]
    cond2 = all(witnesses)
    cond3 = any(witnesses)

    cond4 = False
    cond5 = False
    for m in all_subgroups(group):
        mm = m.members.mask
        if mm & ~l_mask == 0:  # not strictly larger
            continue
        if l_mask & ~mm:  # does not contain L
            continue
        if group.product_mask(mm, y.mask) == y.mask:
            cond4 = True
        if group.product_mask(mm, x.mask) == x.mask:
            cond5 = True

    five = [cond1, cond2, cond3, cond4, cond5]
    consistent = len(set(five)) == 1

    y_members = list(bits_of(y.mask))
    size_y = len(y_members)
    crit_a = True
    for i, ya in enumerate(y_members):
        for yb in y_members[:i]:
            g = group.mul(ya, group.inv(yb))
            if group.element_order(g) <= size_y:
                crit_a = False
                break
            g = group.mul(yb, group.inv(ya))
            if group.element_order(g) <= size_y:
                crit_a = False
                break
        if not crit_a:
            break

    crit_b = True
    for m in all_subgroups(group):
        sz = len(m)
        if sz > 1 and size_y % sz == 0:
            crit_b = False
            break

    identity_bit = 1 << group.identity
    eq_2_3 = union == group.full_mask & ~identity_bit

    return CosetUnionEquivalences(
        proper_inclusion=cond1,
        forall_y_exists=cond2,
        exists_y_exists=cond3,
        y_union_of_larger=cond4,
        x_union_of_larger=cond5,
        consistent=consistent,
        criterion_order=crit_a,
        criterion_divisibility=crit_b,
        identity_excluded_equality=eq_2_3,
    )


# -- CLI subset literals ------------------------------------------------------


def parse_subset(literal: str, group: FiniteGroup) -> GroupSubset:
    """Parse ``{0,2,4}`` or the complement shorthand ``!{1,3}``."""
    text = literal.strip()
    negate = text.startswith("!")
    if negate:
        text = text[1:].strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise SpecParseError(f"subset literal must look like {{0,2,4}}, got {literal!r}")
    body = text[1:-1].strip()
    if body:
        try:
            indices = [int(tok) for tok in body.split(",")]
        except ValueError as exc:
            raise SpecParseError(f"bad element index in subset literal {literal!r}") from exc
    else:
        indices = []
    subset = group.subset(indices)
    return subset.complement() if negate else subset


def format_subset(subset: GroupSubset) -> str:
    return "{" + ",".join(str(i) for i in subset.members) + "}"


def subsets_of_mask(mask: int) -> List[int]:
    """All submasks of ``mask`` (including 0 and mask), in increasing numeric order."""
    bits = list(bits_of(mask))
    out = []
    for pick in range(1 << len(bits)):
        m = 0
        for j, b in enumerate(bits):
            if (pick >> j) & 1:
                m |= 1 << b
        out.append(m)
    return sorted(out)
