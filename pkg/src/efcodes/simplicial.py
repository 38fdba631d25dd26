"""Simplicial complexes of F_q^m given by their maximal support sets.

A complex here is purely a point set: all vectors whose support lies inside
one of the maximal subsets of [m].  Sizes come from inclusion-exclusion,
membership from bitmask subset tests, and the independence hypotheses of
the code-construction theorems from exact set algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product

from .errors import BudgetError
from .finite_field import field_for_order

DEFAULT_ENUM_BUDGET = 1 << 24


def _as_mask(subset, m: int) -> int:
    mask = 0
    for i in subset:
        i = int(i)
        if not 1 <= i <= m:
            raise ValueError(f"index {i} outside [1, {m}]")
        mask |= 1 << (i - 1)
    return mask


def _mask_to_tuple(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


@dataclass(frozen=True)
class SimplicialComplex:
    """Canonical form: maximal sets only, sorted by size then lexicographically."""

    m: int
    maximal: tuple[tuple[int, ...], ...]

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(_as_mask(f, self.m) for f in self.maximal)

    @cached_property
    def union_mask(self) -> int:
        u = 0
        for mask in self.masks:
            u |= mask
        return u

    def contains_support(self, supp_mask: int) -> bool:
        return any(supp_mask & ~f == 0 for f in self.masks)

    def __str__(self):
        sets = ", ".join("{" + ",".join(map(str, f)) + "}" for f in self.maximal)
        return f"<complex m={self.m} maximal=[{sets}]>"


def canonicalize(family, m: int) -> SimplicialComplex:
    """Drop duplicates and dominated subsets, sort deterministically."""
    if m < 1:
        raise ValueError(f"m = {m} must be positive")
    masks = []
    for subset in family:
        mask = _as_mask(subset, m)
        if mask not in masks:
            masks.append(mask)
    maximal = [
        a for a in masks if not any(b != a and a & ~b == 0 for b in masks)
    ]
    maximal.sort(key=lambda mask: (mask.bit_count(), _mask_to_tuple(mask)))
    return SimplicialComplex(m=m, maximal=tuple(_mask_to_tuple(f) for f in maximal))


def complex_size(delta: SimplicialComplex, q: int) -> int:
    """|Delta| by inclusion-exclusion over nonempty subfamilies of maximal sets."""
    total = 0
    masks = delta.masks
    for r in range(1, len(masks) + 1):
        for sub in combinations(masks, r):
            inter = sub[0]
            for mask in sub[1:]:
                inter &= mask
            total += (-1) ** (r + 1) * q ** inter.bit_count()
    return total


def enumerate_complex(
    delta: SimplicialComplex,
    q: int,
    complement: bool = False,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> list[tuple[int, ...]]:
    """Members of Delta (or its complement), lexicographically ordered.

    Vectors compare position-wise from the first entry; entries compare by
    their polynomial-basis coefficient vectors, low degree first.
    """
    if q**delta.m > budget:
        raise BudgetError(
            f"enumeration of {q}^{delta.m} vectors exceeds budget {budget}"
        )
    return list(_enumerate_cached(delta, q, complement))


@lru_cache(maxsize=4096)
def _enumerate_cached(delta, q, complement):
    field = field_for_order(q)
    out = []
    for vec in product(field.coeff_order, repeat=delta.m):
        supp = 0
        for i, v in enumerate(vec):
            if v:
                supp |= 1 << i
        if delta.contains_support(supp) != complement:
            out.append(vec)
    return tuple(out)


def _coerce_family(family, m):
    if isinstance(family, SimplicialComplex):
        return family
    return canonicalize(family, m)


def per_family_condition(delta: SimplicialComplex) -> bool:
    """Every F_i keeps an element outside the union of the other F_j."""
    masks = delta.masks
    for i, f in enumerate(masks):
        others = 0
        for j, g in enumerate(masks):
            if j != i:
                others |= g
        if f & ~others == 0:
            return False
    return True


def side_condition(delta: SimplicialComplex, other: SimplicialComplex) -> bool:
    """Every F_i keeps an element outside the other F_j and all of the other family."""
    masks = delta.masks
    blocked_base = other.union_mask
    for i, f in enumerate(masks):
        blocked = blocked_base
        for j, g in enumerate(masks):
            if j != i:
                blocked |= g
        if f & ~blocked == 0:
            return False
    return True


def hypothesis_check(f_family, h_family=None, m: int | None = None):
    """(per-family flag for F, joint flag for the pair) -- joint is None without H."""
    if m is None:
        if not isinstance(f_family, SimplicialComplex):
            raise ValueError("m required for raw families")
        m = f_family.m
    delta1 = _coerce_family(f_family, m)
    per = per_family_condition(delta1)
    if h_family is None:
        return per, None
    delta2 = _coerce_family(h_family, m)
    joint = side_condition(delta1, delta2) and side_condition(delta2, delta1)
    return per, joint


def support_mask(beta) -> int:
    mask = 0
    for i, v in enumerate(beta):
        if v:
            mask |= 1 << i
    return mask


def alpha(beta, a_subset) -> int:
    """1 iff beta lies in the dual of Delta_A, i.e. supp(beta) misses A."""
    m = len(beta)
    return 1 if support_mask(beta) & _as_mask(a_subset, m) == 0 else 0


def nonempty_subfamilies(delta: SimplicialComplex):
    """(|S|, intersection mask of S) for every nonempty S of maximal sets."""
    masks = delta.masks
    full = (1 << delta.m) - 1
    for r in range(1, len(masks) + 1):
        for sub in combinations(masks, r):
            inter = full
            for mask in sub:
                inter &= mask
            yield r, inter


__all__ = [
    "DEFAULT_ENUM_BUDGET",
    "SimplicialComplex",
    "alpha",
    "canonicalize",
    "complex_size",
    "enumerate_complex",
    "hypothesis_check",
    "nonempty_subfamilies",
    "per_family_condition",
    "side_condition",
    "support_mask",
]
