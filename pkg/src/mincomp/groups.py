"""Finite groups as multiplication tables, with dense bit-indexed subsets.

Elements are canonical integer indices ``0..order-1``; every set-valued
operation works on Python-int bitmasks so that unions, intersections and
coverage tests are single word-parallel integer operations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import CapacityError, GroupConstructionError, SpecParseError

ASSOC_EXHAUSTIVE_BOUND = 64
ASSOC_SAMPLE_TRIPLES = 10_000
SUBGROUP_ENUM_BOUND = 64


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def bits_of(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FiniteGroup:
    """A group of order ``n`` given by a full Cayley table.

    ``table[g][h]`` holds the index of ``g*h``.  Construction verifies the
    Latin-square, identity and inverse axioms, and associativity (fully up
    to ``ASSOC_EXHAUSTIVE_BOUND``, by random sampling above it).
    """

    __slots__ = (
        "order",
        "table",
        "identity",
        "inverses",
        "labels",
        "name",
        "kind",
        "full_mask",
        "_is_abelian",
        "_subgroups",
        "_rotation_translations",
    )

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        labels: Optional[Sequence[str]] = None,
        name: str = "group",
        kind: str = "table",
        _rotation_translations: bool = False,
    ) -> None:
        arr = np.asarray(table, dtype=np.int32)
        n = _validate_table(arr)
        identity = _find_identity(arr)
        self.order = n
        self.table = arr
        self.identity = identity
        self.inverses = _derive_inverses(arr, identity)
        _check_associativity(arr)
        self.labels = [str(x) for x in labels] if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise GroupConstructionError("labels length does not match group order")
        self.name = name
        self.kind = kind
        self.full_mask = (1 << n) - 1
        self._is_abelian: Optional[bool] = None
        self._subgroups: Optional[List["Subgroup"]] = None
        # Cyclic groups in natural order: left/right translation by g is a
        # bit rotation of the mask, which keeps product sets word-parallel.
        self._rotation_translations = _rotation_translations

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def __eq__(self, other: object) -> bool:
        return self is other or (
            isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)
        )

    def __hash__(self) -> int:
        return hash((self.order, self.name, int(self.table[0, :].sum())))

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    @property
    def is_abelian(self) -> bool:
        if self._is_abelian is None:
            self._is_abelian = bool(np.array_equal(self.table, self.table.T))
        return self._is_abelian

    def element_order(self, a: int) -> int:
        x = a
        k = 1
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    def subset(self, indices: Iterable[int]) -> "GroupSubset":
        return GroupSubset(self, mask_of(self._check_indices(indices)))

    def _check_indices(self, indices: Iterable[int]) -> List[int]:
        out = []
        for i in indices:
            i = int(i)
            if not 0 <= i < self.order:
                raise ValueError(f"element index {i} out of range for order {self.order}")
            out.append(i)
        return out

    # -- mask-level kernels -------------------------------------------------

    def left_translate_mask(self, g: int, mask: int) -> int:
        """Mask of ``{g*x : x in mask}``."""
        if self._rotation_translations:
            n = self.order
            g %= n
            return ((mask << g) | (mask >> (n - g))) & self.full_mask if g else mask
        out = 0
        row = self.table[g]
        for x in bits_of(mask):
            out |= 1 << int(row[x])
        return out

    def right_translate_mask(self, mask: int, g: int) -> int:
        """Mask of ``{x*g : x in mask}``."""
        if self._rotation_translations:
            return self.left_translate_mask(g, mask)
        out = 0
        col = self.table[:, g]
        for x in bits_of(mask):
            out |= 1 << int(col[x])
        return out

    def inverse_mask(self, mask: int) -> int:
        out = 0
        for x in bits_of(mask):
            out |= 1 << int(self.inverses[x])
        return out

    def product_mask(self, mask_a: int, mask_b: int) -> int:
        """Mask of ``{a*b : a in mask_a, b in mask_b}``.

        Computed as a union of whole-row translates of ``mask_b``; for
        rotation groups each translate costs O(order/wordsize) words.
        """
        if mask_a == 0 or mask_b == 0:
            return 0
        if self._rotation_translations:
            out = 0
            for a in bits_of(mask_a):
                out |= self.left_translate_mask(a, mask_b)
                if out == self.full_mask:
                    return out
            return out
        a_idx = list(bits_of(mask_a))
        b_idx = list(bits_of(mask_b))
        rows = self.table[np.ix_(a_idx, b_idx)]
        hit = np.zeros(self.order, dtype=bool)
        hit[rows.ravel()] = True
        out = 0
        for i in np.flatnonzero(hit):
            out |= 1 << int(i)
        return out

    def conjugate_mask(self, g: int, mask: int) -> int:
        """Mask of ``{g*x*g^-1 : x in mask}``."""
        return self.right_translate_mask(self.left_translate_mask(g, mask), self.inv(g))


def _validate_table(arr: np.ndarray) -> int:
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise GroupConstructionError("table must be a nonempty square matrix")
    n = int(arr.shape[0])
    if arr.min() < 0 or arr.max() >= n:
        raise GroupConstructionError(f"table entries must lie in 0..{n - 1}")
    ident = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(arr[i]), ident):
            raise GroupConstructionError(f"not a Latin square: row {i} is not a permutation")
        if not np.array_equal(np.sort(arr[:, i]), ident):
            raise GroupConstructionError(f"not a Latin square: column {i} is not a permutation")
    return n


def _find_identity(arr: np.ndarray) -> int:
    n = arr.shape[0]
    ident = np.arange(n)
    for e in range(n):
        if np.array_equal(arr[e], ident) and np.array_equal(arr[:, e], ident):
            return e
    raise GroupConstructionError("no identity element")


def _derive_inverses(arr: np.ndarray, identity: int) -> np.ndarray:
    n = arr.shape[0]
    inverses = np.empty(n, dtype=np.int64)
    for g in range(n):
        hits = np.flatnonzero(arr[g] == identity)
        b = int(hits[0])
        if arr[b, g] != identity:
            raise GroupConstructionError(f"element {g} has no two-sided inverse")
        inverses[g] = b
    return inverses


def _check_associativity(arr: np.ndarray) -> None:
    n = arr.shape[0]
    if n <= ASSOC_EXHAUSTIVE_BOUND:
        # (i*j)*k vs i*(j*k), all triples at once.
        left = arr[arr][:, :, :]          # left[i,j,k] = arr[arr[i,j], k]
        right = np.take(arr, arr, axis=1)  # right[i,j,k] = arr[i, arr[j,k]]
        bad = np.argwhere(left != right)
        if bad.size:
            i, j, k = (int(x) for x in bad[0])
            raise GroupConstructionError(f"not associative on triple ({i}, {j}, {k})")
        return
    rng = random.Random(0xA55)
    for _ in range(ASSOC_SAMPLE_TRIPLES):
        i, j, k = (rng.randrange(n) for _ in range(3))
        if arr[arr[i, j], k] != arr[i, arr[j, k]]:
            raise GroupConstructionError(f"not associative on triple ({i}, {j}, {k})")


@dataclass(frozen=True)
class GroupSubset:
    """A dense bit-indexed subset of a finite group's elements."""

    parent: FiniteGroup
    mask: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask > self.parent.full_mask:
            raise ValueError("subset mask contains out-of-range element indices")

    @property
    def members(self) -> Tuple[int, ...]:
        return tuple(bits_of(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, idx: int) -> bool:
        return bool((self.mask >> idx) & 1)

    def __iter__(self) -> Iterator[int]:
        return bits_of(self.mask)

    def _check_same_parent(self, other: "GroupSubset") -> None:
        if self.parent is not other.parent and self.parent != other.parent:
            raise ValueError("subsets belong to different parent groups")

    def union(self, other: "GroupSubset") -> "GroupSubset":
        self._check_same_parent(other)
        return GroupSubset(self.parent, self.mask | other.mask)

    def intersection(self, other: "GroupSubset") -> "GroupSubset":
        self._check_same_parent(other)
        return GroupSubset(self.parent, self.mask & other.mask)

    def difference(self, other: "GroupSubset") -> "GroupSubset":
        self._check_same_parent(other)
        return GroupSubset(self.parent, self.mask & ~other.mask)

    def complement(self) -> "GroupSubset":
        return GroupSubset(self.parent, self.parent.full_mask & ~self.mask)

    def issubset(self, other: "GroupSubset") -> bool:
        self._check_same_parent(other)
        return self.mask & ~other.mask == 0

    def is_empty(self) -> bool:
        return self.mask == 0

    def __repr__(self) -> str:
        inner = ",".join(str(i) for i in self.members)
        return "{" + inner + "}"


@dataclass(frozen=True)
class Subgroup:
    """A verified subgroup: closed under the table and inverses, with cached index."""

    parent: FiniteGroup
    members: GroupSubset
    index: int = field(init=False)
    normal: bool = field(init=False)

    def __post_init__(self) -> None:
        g = self.parent
        m = self.members.mask
        if not (m >> g.identity) & 1:
            raise ValueError("subgroup must contain the identity")
        if g.product_mask(m, m) != m:
            raise ValueError("subset is not closed under the group product")
        if g.inverse_mask(m) != m:
            raise ValueError("subset is not closed under inverses")
        size = m.bit_count()
        if g.order % size:
            raise ValueError("subgroup size does not divide the group order (Lagrange)")
        object.__setattr__(self, "index", g.order // size)
        object.__setattr__(self, "normal", _is_normal_in(g, m, g.full_mask))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, idx: int) -> bool:
        return idx in self.members

    def __repr__(self) -> str:
        return f"Subgroup({self.members!r}, index={self.index})"


def _is_normal_in(group: FiniteGroup, sub_mask: int, ambient_mask: int) -> bool:
    """Whether ``sub_mask`` is normal inside the subgroup ``ambient_mask``."""
    for g in bits_of(ambient_mask & ~sub_mask):
        if group.conjugate_mask(g, sub_mask) != sub_mask:
            return False
    return True


def normal_in(group: FiniteGroup, sub: Subgroup, ambient: Subgroup) -> bool:
    if not sub.members.issubset(ambient.members):
        raise ValueError("sub is not contained in ambient")
    return _is_normal_in(group, sub.members.mask, ambient.members.mask)


# -- constructors ------------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    """Cyclic group of order ``n`` in additive notation: ``i*j = i+j mod n``."""
    if n < 1:
        raise ValueError(f"cyclic order must be >= 1, got {n}")
    row = np.arange(n, dtype=np.int64)
    table = (row[:, None] + row[None, :]) % n
    return FiniteGroup(table, name=f"cyclic:{n}", kind="cyclic", _rotation_translations=True)


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n`` with elements e, r, .., r^{n-1}, s, sr, .., sr^{n-1}.

    Presentation ``<r, s | r^n = s^2 = e, s r s = r^-1>``; index ``i`` encodes
    ``r^i`` and index ``n+i`` encodes ``s r^i``.
    """
    if n < 3:
        raise ValueError(f"dihedral parameter must be >= 3, got {n}")
    order = 2 * n
    table = np.empty((order, order), dtype=np.int64)
    labels = [f"r^{i}" if i else "e" for i in range(n)]
    labels += [f"sr^{i}" if i else "s" for i in range(n)]
    for i in range(n):
        for j in range(n):
            table[i, j] = (i + j) % n                 # r^i r^j
            table[i, n + j] = n + (j - i) % n         # r^i (s r^j) = s r^{j-i}
            table[n + i, j] = n + (i + j) % n         # (s r^i) r^j
            table[n + i, n + j] = (j - i) % n         # (s r^i)(s r^j) = r^{j-i}
    return FiniteGroup(table, labels=labels, name=f"dihedral:{n}", kind="dihedral")


def product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """Direct product with element ``(a, b)`` packed as ``a * |g2| + b``."""
    n1, n2 = g1.order, g2.order
    a = np.arange(n1 * n2)
    a1, b1 = np.divmod(a, n2)
    t1 = g1.table[np.ix_(a1, a1)].astype(np.int64)
    t2 = g2.table[np.ix_(b1, b1)].astype(np.int64)
    table = t1 * n2 + t2
    labels = [f"({g1.label(x)},{g2.label(y)})" for x, y in zip(a1, b1)]
    return FiniteGroup(table, labels=labels, name=f"product:{g1.name},{g2.name}", kind="product")


def from_table(rows: Sequence[Sequence[int]], name: str = "table") -> FiniteGroup:
    return FiniteGroup(rows, name=name, kind="table")


def from_cayley_file(path: str | Path) -> FiniteGroup:
    """Load the Cayley-table file format: first line n, then n rows of n indices.

    Element 0 must be the identity.
    """
    text = Path(path).read_text(encoding="utf-8")
    tokens = text.split()
    if not tokens:
        raise SpecParseError(f"{path}: empty Cayley table file")
    n = int(tokens[0])
    if len(tokens) != 1 + n * n:
        raise SpecParseError(f"{path}: expected {n * n} entries after the order line")
    vals = [int(t) for t in tokens[1:]]
    rows = [vals[i * n : (i + 1) * n] for i in range(n)]
    group = FiniteGroup(rows, name=f"table:{path}", kind="table")
    if group.identity != 0:
        raise GroupConstructionError("element 0 must be the identity in a Cayley table file")
    return group


def from_spec(spec: str) -> FiniteGroup:
    """Parse group-spec strings: ``cyclic:12``, ``dihedral:6``,
    ``product:cyclic:2,cyclic:4`` (two or more factors), ``table:<path>``."""
    spec = spec.strip()
    if spec.startswith("cyclic:"):
        return cyclic(_spec_int(spec, "cyclic:"))
    if spec.startswith("dihedral:"):
        return dihedral(_spec_int(spec, "dihedral:"))
    if spec.startswith("table:"):
        return from_cayley_file(spec[len("table:") :])
    if spec.startswith("product:"):
        parts = spec[len("product:") :].split(",")
        if len(parts) < 2:
            raise SpecParseError(f"product spec needs at least two factors: {spec!r}")
        factors = [from_spec(p) for p in parts]
        out = factors[0]
        for f in factors[1:]:
            out = product(out, f)
        return out
    raise SpecParseError(f"unrecognized group spec {spec!r}")


def _spec_int(spec: str, prefix: str) -> int:
    try:
        return int(spec[len(prefix) :])
    except ValueError as exc:
        raise SpecParseError(f"bad integer in group spec {spec!r}") from exc


# -- subgroup machinery -------------------------------------------------------


def closure_mask(group: FiniteGroup, mask: int) -> int:
    """Smallest submask containing ``mask`` that is closed under the product."""
    m = mask | (1 << group.identity)
    while True:
        grown = group.product_mask(m, m) | m
        if grown == m:
            return m
        m = grown


def subgroup_generated(group: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Subgroup generated by the given element indices; empty gens give {e}."""
    gen_list = group._check_indices(gens)
    m = closure_mask(group, mask_of(gen_list))
    return Subgroup(group, GroupSubset(group, m))


def trivial_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, GroupSubset(group, 1 << group.identity))


def full_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, GroupSubset(group, group.full_mask))


def all_subgroups(group: FiniteGroup, bound: int = SUBGROUP_ENUM_BOUND) -> List[Subgroup]:
    """Complete duplicate-free list of subgroups, sorted by (size, members mask).

    Closes generated sets over a growing frontier rather than scanning all
    2^n subsets, so it stays feasible well past order 24.
    """
    if group.order > bound:
        raise CapacityError(
            f"subgroup enumeration needs order <= {bound} (got {group.order}); "
            "raise the bound explicitly to proceed"
        )
    if group._subgroups is not None:
        return list(group._subgroups)
    trivial = 1 << group.identity
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        base = frontier.pop()
        for g in bits_of(group.full_mask & ~base):
            grown = closure_mask(group, base | (1 << g))
            if grown not in seen:
                seen.add(grown)
                frontier.append(grown)
    masks = sorted(seen, key=lambda m: (m.bit_count(), m))
    subs = [Subgroup(group, GroupSubset(group, m)) for m in masks]
    group._subgroups = subs
    return list(subs)


@dataclass(frozen=True)
class SubgroupProfile:
    """Index, normality and canonical coset representatives of H in G."""

    index: int
    normal: bool
    right_reps: Tuple[int, ...]
    left_reps: Tuple[int, ...]


def subgroup_profile(group: FiniteGroup, sub: Subgroup) -> SubgroupProfile:
    if sub.parent is not group and sub.parent != group:
        raise ValueError("subgroup does not belong to this group")
    m = sub.members.mask
    right_reps = coset_reps(group, m, side="right")
    left_reps = coset_reps(group, m, side="left")
    return SubgroupProfile(
        index=sub.index,
        normal=sub.normal,
        right_reps=tuple(right_reps),
        left_reps=tuple(left_reps),
    )


def coset_reps(
    group: FiniteGroup, sub_mask: int, side: str = "right", within_mask: Optional[int] = None
) -> List[int]:
    """Least-element representatives of the ``sub_mask`` cosets covering ``within_mask``."""
    ambient = group.full_mask if within_mask is None else within_mask
    reps: List[int] = []
    covered = 0
    for x in bits_of(ambient):
        if (covered >> x) & 1:
            continue
        reps.append(x)
        if side == "right":
            covered |= group.right_translate_mask(sub_mask, x)  # H·x
        else:
            covered |= group.left_translate_mask(x, sub_mask)  # x·H
    return reps
