"""Analytical counterparts of the exhaustive oracles.

Character sums are evaluated in exact cyclotomic-integer arithmetic, the
A and T weight functionals come with both a combinatorial formula and a
direct count, and the theorem/proposition operations turn a code spec
into predicted parameters or full Lee weight distributions.  Every stated
hypothesis is checked up front; when one fails the operation refuses with
a named clause instead of extrapolating.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import HypothesisError, VerificationError
from .finite_field import field_for_order
from .ring_codes import CodeSpec, WeightDistribution
from .simplicial import (
    DEFAULT_ENUM_BUDGET,
    SimplicialComplex,
    canonicalize,
    complex_size,
    enumerate_complex,
    nonempty_subfamilies,
    per_family_condition,
    side_condition,
    support_mask,
)

__all__ = [
    "CodeParams",
    "CyclotomicInteger",
    "A_weight",
    "T_value",
    "exp_sum",
    "exp_sum_closed_form",
    "exp_sum_pair",
    "exp_sum_pair_closed_form",
    "gray_params",
    "prop1_distribution",
    "prop2_distribution",
    "theorem1_params",
    "theorem2_params",
    "theorem3_params",
]


class CyclotomicInteger:
    """Integer combination of p-th roots of unity.

    Stored as length-p coefficient vectors (n_0, ..., n_{p-1}) for
    sum n_j w^j, reduced with sum_j w^j = 0 so the minimum coefficient is
    zero; that form is unique, making equality a plain tuple comparison.
    """

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs=None):
        if p < 2:
            raise ValueError("p must be at least 2")
        if coeffs is None:
            coeffs = (0,) * p
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != p:
            raise ValueError(f"need {p} coefficients, got {len(coeffs)}")
        low = min(coeffs)
        self.p = p
        self.coeffs = tuple(c - low for c in coeffs)

    @classmethod
    def zero(cls, p: int) -> "CyclotomicInteger":
        return cls(p)

    @classmethod
    def root(cls, p: int, j: int) -> "CyclotomicInteger":
        coeffs = [0] * p
        coeffs[j % p] = 1
        return cls(p, coeffs)

    def __add__(self, other: "CyclotomicInteger") -> "CyclotomicInteger":
        if self.p != other.p:
            raise ValueError("mixed root orders")
        return CyclotomicInteger(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInteger(self.p, [other * c for c in self.coeffs])
        if isinstance(other, CyclotomicInteger):
            if self.p != other.p:
                raise ValueError("mixed root orders")
            out = [0] * self.p
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[(i + j) % self.p] += a * b
            return CyclotomicInteger(self.p, out)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, CyclotomicInteger)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"CyclotomicInteger(p={self.p}, coeffs={self.coeffs})"

    @property
    def is_rational_integer(self) -> bool:
        tail = self.coeffs[1:]
        return all(c == tail[0] for c in tail)

    def as_integer(self) -> int:
        """The value as an ordinary integer, using 1 + w + ... + w^{p-1} = 0."""
        if not self.is_rational_integer:
            raise VerificationError(f"{self!r} is not a rational integer")
        return self.coeffs[0] - self.coeffs[1]


# -- character sums -----------------------------------------------------------


def _coerce(delta, m: int) -> SimplicialComplex:
    if isinstance(delta, SimplicialComplex):
        if delta.m != m:
            raise ValueError("complex dimension differs from len(beta)")
        return delta
    return canonicalize(delta, m)


def _u_char_sum(field, value: int) -> CyclotomicInteger:
    """Sum over u in F_p^s of w_p^{<u, z>_p} for z the coordinates of value."""
    p = field.p
    z = field.coeffs(value)
    acc = CyclotomicInteger.zero(p)
    for u in range(field.q):
        uc = field.coeffs(u)
        e = sum(a * b for a, b in zip(uc, z)) % p
        acc = acc + CyclotomicInteger.root(p, e)
    return acc


def _value_counts(field, delta, beta, complement, budget):
    counts = [0] * field.q
    for t in enumerate_complex(delta, field.q, complement=complement, budget=budget):
        counts[field.dot(beta, t)] += 1
    return counts


def exp_sum(delta, q: int, beta, complement: bool = False, budget: int = DEFAULT_ENUM_BUDGET):
    """Double character sum over u in F_p^s and t in Delta (or its complement).

    Evaluated exactly in cyclotomic arithmetic; the reduction to a rational
    integer is asserted, not assumed.
    """
    field = field_for_order(q)
    delta = _coerce(delta, len(beta))
    counts = _value_counts(field, delta, beta, complement, budget)
    acc = CyclotomicInteger.zero(field.p)
    for value, count in enumerate(counts):
        if count:
            acc = acc + _u_char_sum(field, value) * count
    return acc.as_integer()


def exp_sum_closed_form(delta, q: int, beta, complement: bool = False) -> int:
    """Inclusion-exclusion form of exp_sum; no enumeration involved."""
    delta = _coerce(delta, len(beta))
    supp = support_mask(beta)
    total = 0
    for r, inter in nonempty_subfamilies(delta):
        a = 1 if supp & inter == 0 else 0
        total += (-1) ** (r + 1) * q**inter.bit_count() * (1 + (q - 1) * a)
    if not complement:
        return total
    g = q**delta.m
    full = q * g if supp == 0 else g
    return full - total


def exp_sum_pair(
    delta1,
    delta2,
    q: int,
    beta,
    complement2: bool = False,
    budget: int = DEFAULT_ENUM_BUDGET,
):
    """Character sum over u and pairs (t1, t2) in Delta1 x Delta2 of <beta, t1+t2>."""
    field = field_for_order(q)
    m = len(beta)
    c1 = _value_counts(field, _coerce(delta1, m), beta, False, budget)
    c2 = _value_counts(field, _coerce(delta2, m), beta, complement2, budget)
    acc = CyclotomicInteger.zero(field.p)
    for v1, n1 in enumerate(c1):
        if not n1:
            continue
        for v2, n2 in enumerate(c2):
            if not n2:
                continue
            acc = acc + _u_char_sum(field, field.add(v1, v2)) * (n1 * n2)
    return acc.as_integer()


def exp_sum_pair_closed_form(delta1, delta2, q: int, beta, complement2: bool = False) -> int:
    m = len(beta)
    delta1 = _coerce(delta1, m)
    delta2 = _coerce(delta2, m)
    supp = support_mask(beta)
    total = 0
    for r1, inter1 in nonempty_subfamilies(delta1):
        a1 = 1 if supp & inter1 == 0 else 0
        for r2, inter2 in nonempty_subfamilies(delta2):
            a2 = 1 if supp & inter2 == 0 else 0
            total += (
                (-1) ** (r1 + r2)
                * q ** (inter1.bit_count() + inter2.bit_count())
                * (1 + (q - 1) * a1 * a2)
            )
    if not complement2:
        return total
    g = q**m
    size1 = complex_size(delta1, q)
    full = g * size1 * (q if supp == 0 else 1)
    return full - total


# -- weight functionals -------------------------------------------------------


def A_weight(delta, q: int, beta, mode: str = "formula") -> int:
    """Hamming weight of the evaluation of beta over Delta.

    formula mode uses inclusion-exclusion over subfamilies; direct mode
    counts nonzero inner products t by t.
    """
    delta = _coerce(delta, len(beta))
    if mode == "direct":
        field = field_for_order(q)
        return sum(
            1 for t in enumerate_complex(delta, q) if field.dot(beta, t)
        )
    if mode != "formula":
        raise ValueError(f"mode must be formula or direct, got {mode!r}")
    supp = support_mask(beta)
    total = 0
    for r, inter in nonempty_subfamilies(delta):
        if supp & inter == 0:
            continue  # alpha = 1 kills the term
        total += (-1) ** (r + 1) * q ** (inter.bit_count() - 1) * (q - 1)
    return total


def T_value(delta1, delta2, q: int, beta) -> int:
    """The two-complex weight functional |Delta1| A_{Delta2} + A-tilde."""
    m = len(beta)
    delta1 = _coerce(delta1, m)
    delta2 = _coerce(delta2, m)
    a1 = A_weight(delta1, q, beta)
    a2 = A_weight(delta2, q, beta)
    if a1 % (q - 1):
        raise VerificationError(f"A value {a1} not divisible by q-1 = {q - 1}")
    n1 = complex_size(delta1, q)
    n2 = complex_size(delta2, q)
    return (2 * n1 - q * (a1 // (q - 1))) * a2 + n2 * a1


# -- theorem parameters -------------------------------------------------------


@dataclass(frozen=True)
class CodeParams:
    """Predicted length, size, and minimum (Lee or Hamming) distance."""

    n: int
    size: int
    min_d: int
    k: int | None = None
    kappa1: int | None = None
    kappa2: int | None = None


def _require(cond: bool, message: str):
    if not cond:
        raise HypothesisError(message)


def _exact_div(numerator: int, q: int) -> int:
    if numerator % q:
        raise VerificationError(f"{numerator} not divisible by {q}")
    return numerator // q


def _face_powers(delta: SimplicialComplex, q: int) -> list[int]:
    if not delta.maximal:
        raise HypothesisError("family has no faces; the void complex is not covered")
    return [q ** len(f) for f in delta.maximal]


def theorem1_params(spec: CodeSpec) -> CodeParams:
    """Length, size, and minimum Lee distance of an E-ring code."""
    if spec.ring != "E":
        raise ValueError("theorem1_params applies to E-ring specs")
    q, m, v = spec.q, spec.m, spec.variant
    g = q**m
    _require(
        per_family_condition(spec.delta1),
        "family 1 must satisfy the per-family condition"
        " (each maximal face keeps a private vertex)",
    )
    powers = _face_powers(spec.delta1, q)
    sum_f, min_f = sum(powers), min(powers)
    n1 = complex_size(spec.delta1, q)
    n2 = complex_size(spec.delta2, q)
    if v != "D1":
        _require(g > sum_f, f"{v} needs q^m > sum_i q^|F_i| ({g} > {sum_f} fails)")
    if v in ("D3", "D4"):
        _require(n2 < g, f"{v} needs |Delta_2| < q^m ({n2} < {g} fails)")
    u1 = spec.delta1.union_mask.bit_count()
    if v == "D1":
        return CodeParams(n1 * n2, q ** (2 * u1), _exact_div(n2 * (q - 1) * min_f, q), k=2 * u1)
    if v == "D3":
        n = n1 * (g - n2)
        return CodeParams(n, q ** (2 * u1), _exact_div((g - n2) * (q - 1) * min_f, q), k=2 * u1)
    if v == "D2":
        return CodeParams(
            (g - n1) * n2, q ** (2 * m), _exact_div((q - 1) * n2 * (g - sum_f), q), k=2 * m
        )
    if v == "D4":
        n = (g - n1) * (g - n2)
        return CodeParams(n, q ** (2 * m), _exact_div((q - 1) * (g - n2) * (g - sum_f), q), k=2 * m)
    n = g * g - n1 * n2
    return CodeParams(n, q ** (2 * m), _exact_div((q - 1) * (g * g - n2 * sum_f), q), k=2 * m)


def theorem2_params(spec: CodeSpec) -> CodeParams:
    """Length, size, and minimum Lee distance of an F-ring code."""
    if spec.ring != "F":
        raise ValueError("theorem2_params applies to F-ring specs")
    q, m, v = spec.q, spec.m, spec.variant
    g = q**m
    d1, d2 = spec.delta1, spec.delta2
    n1 = complex_size(d1, q)
    n2 = complex_size(d2, q)
    c1, c2 = g - n1, g - n2
    powers_f = _face_powers(d1, q)
    powers_h = _face_powers(d2, q)
    sum_f, sum_h = sum(powers_f), sum(powers_h)

    def need_joint():
        _require(
            side_condition(d1, d2) and side_condition(d2, d1),
            f"{v} needs the joint hypothesis (every maximal face of either family"
            " keeps a vertex private from both families)",
        )

    def need_h_side():
        _require(
            per_family_condition(d1),
            f"{v} needs the per-family condition on family 1",
        )
        _require(
            side_condition(d2, d1),
            f"{v} needs every maximal face of family 2 to keep a vertex outside"
            " the rest of family 2 and all of family 1",
        )

    if v == "D1":
        if n2 == 1:
            # Delta2 = {0}: the second family contributes nothing, only the
            # per-family condition on family 1 is meaningful.
            _require(
                per_family_condition(d1),
                "D1 with Delta_2 = {0} needs the per-family condition on family 1",
            )
        else:
            need_joint()
        scaled = [n2 * w for w in powers_f] + [2 * n1 * w for w in powers_h]
        k = (d1.union_mask | d2.union_mask).bit_count()
        return CodeParams(n1 * n2, q**k, _exact_div((q - 1) * min(scaled), q), k=k)
    if v == "D3":
        need_h_side()
        _require(g > sum_h, f"D3 needs q^m > sum_j q^|H_j| ({g} > {sum_h} fails)")
        return CodeParams(n1 * c2, g, _exact_div(2 * (q - 1) * n1 * (g - sum_h), q), k=m)
    if v == "D2":
        need_joint()
        kappa1 = max(n2 * sum_f, (2 * n1 - g) * sum_h)
        _require(
            g * n2 > kappa1, f"D2 needs q^m |Delta_2| > kappa_1 ({g * n2} > {kappa1} fails)"
        )
        d = _exact_div((q - 1) * (g * n2 - kappa1), q)
        return CodeParams(c1 * n2, g, d, k=m, kappa1=kappa1)
    if v == "D4":
        need_joint()
        _require(2 * n1 <= g, f"D4 needs |Delta_1| <= |Delta_1^c| (2*{n1} <= {g} fails)")
        kappa2 = (c1 - n1) * sum_h + (sum_h - n2) * sum_f
        lhs = g * (c1 - n1 + c2)
        _require(
            lhs > kappa2,
            f"D4 needs q^m(|Delta_1^c| - |Delta_1| + |Delta_2^c|) > kappa_2"
            f" ({lhs} > {kappa2} fails)",
        )
        return CodeParams(c1 * c2, g, _exact_div((q - 1) * (lhs - kappa2), q), k=m, kappa2=kappa2)
    need_h_side()
    _require(
        g * g > n1 * sum_h,
        f"D5 needs q^2m > |Delta_1| sum_j q^|H_j| ({g * g} > {n1 * sum_h} fails)",
    )
    n = g * g - n1 * n2
    return CodeParams(n, g, _exact_div(2 * (q - 1) * (g * g - n1 * sum_h), q), k=m)


def theorem3_params(spec: CodeSpec) -> CodeParams:
    """[n, k, d] of the x-projection code; the same for both rings."""
    q, m, v = spec.q, spec.m, spec.variant
    g = q**m
    _require(
        per_family_condition(spec.delta1),
        "family 1 must satisfy the per-family condition"
        " (each maximal face keeps a private vertex)",
    )
    powers = _face_powers(spec.delta1, q)
    sum_f, min_f = sum(powers), min(powers)
    n1 = complex_size(spec.delta1, q)
    n2 = complex_size(spec.delta2, q)
    if v != "D1":
        _require(g > sum_f, f"{v} needs q^m > sum_i q^|F_i| ({g} > {sum_f} fails)")
    if v in ("D3", "D4"):
        _require(n2 < g, f"{v} needs |Delta_2| < q^m ({n2} < {g} fails)")
    u1 = spec.delta1.union_mask.bit_count()
    if v == "D1":
        return CodeParams(n1 * n2, q**u1, _exact_div(n2 * (q - 1) * min_f, q), k=u1)
    if v == "D3":
        return CodeParams(n1 * (g - n2), q**u1, _exact_div((g - n2) * (q - 1) * min_f, q), k=u1)
    if v == "D2":
        return CodeParams((g - n1) * n2, g, _exact_div((q - 1) * n2 * (g - sum_f), q), k=m)
    if v == "D4":
        n = (g - n1) * (g - n2)
        return CodeParams(n, g, _exact_div((q - 1) * (g - n2) * (g - sum_f), q), k=m)
    n = g * g - n1 * n2
    return CodeParams(n, g, _exact_div((q - 1) * (g * g - n2 * sum_f), q), k=m)


def gray_params(spec: CodeSpec) -> CodeParams:
    """[n, k, d] of the Gray image: doubled length, same minimum distance."""
    params = theorem1_params(spec) if spec.ring == "E" else theorem2_params(spec)
    k, x = 0, 1
    while x < params.size:
        x *= spec.q
        k += 1
    if x != params.size:
        raise VerificationError(f"size {params.size} is not a power of {spec.q}")
    return CodeParams(
        n=2 * params.n,
        size=params.size,
        min_d=params.min_d,
        k=k,
        kappa1=params.kappa1,
        kappa2=params.kappa2,
    )


# -- closed-form distributions (single maximal face on each side) -------------


def _subset_mask(subset, m: int) -> int:
    mask = 0
    for i in subset:
        i = int(i)
        if not 1 <= i <= m:
            raise ValueError(f"index {i} outside [1, {m}]")
        mask |= 1 << (i - 1)
    return mask


def _accumulate(rows) -> WeightDistribution:
    counts: dict[int, int] = {}
    for weight, freq in rows:
        if freq:
            counts[weight] = counts.get(weight, 0) + freq
    return WeightDistribution(counts)


def prop1_distribution(a_subset, b_subset, variant: str, q: int, m: int) -> WeightDistribution:
    """Full Lee distribution of an E-ring code with single faces A and B."""
    amask = _subset_mask(a_subset, m)
    bmask = _subset_mask(b_subset, m)
    na, nb = amask.bit_count(), bmask.bit_count()
    g = q**m
    _require(na > 0, "A must be nonempty")
    if variant in ("D2", "D4", "D5"):
        _require(na < m, f"{variant} needs |A| < m ({na} < {m} fails)")
    if variant in ("D3", "D4"):
        _require(nb < m, f"{variant} needs |B| < m ({nb} < {m} fails)")
    if variant in ("D1", "D3"):
        w = (
            (q - 1) * q ** (na + nb - 1)
            if variant == "D1"
            else (q - 1) * q ** (na - 1) * (g - q**nb)
        )
        qa = q**na
        return _accumulate([(0, 1), (w, 2 * (qa - 1)), (2 * w, (qa - 1) ** 2)])
    if variant == "D2":
        w1 = (q - 1) * q ** (m + nb - 1)
        w2 = (q - 1) * (q ** (m + nb - 1) - q ** (na + nb - 1))
    elif variant == "D4":
        w1 = (q - 1) * q ** (m - 1) * (g - q**nb)
        w2 = (q - 1) * (
            q ** (2 * m - 1) - q ** (m + na - 1) - q ** (m + nb - 1) + q ** (na + nb - 1)
        )
    else:
        w1 = (q - 1) * q ** (2 * m - 1)
        w2 = (q - 1) * (q ** (2 * m - 1) - q ** (na + nb - 1))
    big = q ** (m - na)
    small = g - big
    return _accumulate(
        [
            (0, 1),
            (w1, 2 * (big - 1)),
            (w2, 2 * small),
            (w1 + w2, 2 * (big - 1) * small),
            (2 * w2, small**2),
            (2 * w1, (big - 1) ** 2),
        ]
    )


def prop2_distribution(a_subset, b_subset, variant: str, q: int, m: int) -> WeightDistribution:
    """Full Lee distribution of an F-ring code with single faces A and B."""
    amask = _subset_mask(a_subset, m)
    bmask = _subset_mask(b_subset, m)
    na, nb = amask.bit_count(), bmask.bit_count()
    nu = (amask | bmask).bit_count()
    nd = (amask & ~bmask).bit_count()
    g = q**m
    _require(na > 0, "A must be nonempty")
    if variant == "D1":
        _require(nd > 0, "D1 needs a vertex of A outside B")
        w = (q - 1) * q ** (na + nb - 1)
        return _accumulate([(0, 1), (w, q**nd - 1), (2 * w, q**nu - q**nd)])
    if variant == "D3":
        _require(nb < m, f"D3 needs |B| < m ({nb} < {m} fails)")
        u1 = 2 * (q - 1) * q ** (na - 1) * (g - q**nb)
        u2 = (q - 1) * q ** (na - 1) * (2 * g - q**nb)
        u3 = 2 * (q - 1) * q ** (m + na - 1)
    elif variant == "D2":
        _require(na < m, f"D2 needs |A| < m ({na} < {m} fails)")
        u2 = (q - 1) * (q ** (m + nb - 1) - q ** (na + nb - 1))
        u1 = 2 * u2
        u3 = (q - 1) * q ** (m + nb - 1)
    elif variant == "D4":
        _require(na < m, f"D4 needs |A| < m ({na} < {m} fails)")
        _require(nb < m, f"D4 needs |B| < m ({nb} < {m} fails)")
        u1 = 2 * (q - 1) * (q ** (m - 1) - q ** (na - 1)) * (g - q**nb)
        u2 = (q - 1) * (q ** (m - 1) - q ** (na - 1)) * (2 * g - q**nb)
        u3 = (q - 1) * q ** (m - 1) * (2 * g - 2 * q**na - q**nb)
    else:
        _require(na + nb < 2 * m, f"D5 needs |A| + |B| < 2m ({na + nb} < {2 * m} fails)")
        u1 = 2 * (q - 1) * (q ** (2 * m - 1) - q ** (na + nb - 1))
        u2 = (q - 1) * (2 * q ** (2 * m - 1) - q ** (na + nb - 1))
        u3 = 2 * (q - 1) * q ** (2 * m - 1)
    f1 = g - q ** (m - nb)
    f2 = q ** (m - nb) - q ** (m - nu)
    f3 = q ** (m - nu) - 1
    return _accumulate([(0, 1), (u1, f1), (u2, f2), (u3, f3)])
