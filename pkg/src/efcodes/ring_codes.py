"""Codes over the rings E^s and F^s, the Gray map, and exhaustive Lee data.

Ring elements are written ax + cy with x, y in F_q and carried around as
plain (x, y) pairs.  A defining set L = aL_1 + cL_2 is indexed by pairs
(t_1, t_2); codeword coordinates follow the fixed order "t_1 outer, t_2
inner, both lexicographic", so every vector this module produces is
byte-reproducible.

lee_distribution is the enumeration oracle for the closed-form theorems:
it never touches character sums or inclusion-exclusion, only counting.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product

import numpy as np

from .errors import BudgetError, FieldError, VerificationError
from .finite_field import (
    FieldSpec,
    add_arrays,
    dot_rows,
    field_matmul,
    in_row_space,
    make_field,
    outer_dots,
    rref,
    scale_array,
)
from .simplicial import SimplicialComplex, canonicalize, enumerate_complex

RING_KINDS = ("E", "F")
VARIANTS = ("D1", "D2", "D3", "D4", "D5")

# (complement L1, complement L2) per product-type variant.
_COMPLEMENTS = {"D1": (False, False), "D2": (True, False), "D3": (False, True), "D4": (True, True)}

DEFAULT_WORK_BUDGET = 10**8
DEFAULT_SWEEP_BUDGET = 1 << 24
DEFAULT_SET_BUDGET = 1 << 24


@dataclass(frozen=True)
class CodeSpec:
    """Everything that pins down one code C_L."""

    field: FieldSpec
    m: int
    ring: str
    delta1: SimplicialComplex
    delta2: SimplicialComplex
    variant: str

    def __post_init__(self):
        if self.ring not in RING_KINDS:
            raise ValueError(f"ring must be one of {RING_KINDS}, got {self.ring!r}")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.delta1.m != self.m or self.delta2.m != self.m:
            raise ValueError("delta1/delta2 ambient dimension differs from m")

    @property
    def q(self) -> int:
        return self.field.q


def make_code_spec(p, s, m, ring, variant, delta1_family, delta2_family) -> CodeSpec:
    return CodeSpec(
        field=make_field(p, s),
        m=m,
        ring=ring,
        delta1=canonicalize(delta1_family, m),
        delta2=canonicalize(delta2_family, m),
        variant=variant,
    )


@dataclass
class WeightDistribution:
    """Weight -> number of distinct codewords; always includes weight 0."""

    counts: dict[int, int]

    def __post_init__(self):
        self.counts = {int(w): int(c) for w, c in self.counts.items() if c}

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def min_nonzero(self):
        keys = [w for w in self.counts if w > 0]
        return min(keys) if keys else None

    def max_nonzero(self):
        keys = [w for w in self.counts if w > 0]
        return max(keys) if keys else None

    def sorted_pairs(self):
        return sorted(self.counts.items())


@dataclass(eq=False)
class GeneratorMatrix:
    """Basis of an F_q-linear code, rows in reduced row echelon form."""

    field: FieldSpec
    rows: np.ndarray

    @property
    def k(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]


# -- ring arithmetic and the Gray map ---------------------------------------


def ring_mul(field: FieldSpec, r1, r2, kind: str):
    """(ax1+cy1)(ax2+cy2) in E^s or F^s."""
    x1, y1 = r1
    x2, y2 = r2
    if kind == "E":
        return (field.mul(x1, x2), field.mul(x2, y1))
    if kind == "F":
        return (field.mul(x1, x2), field.mul(x1, y2))
    raise FieldError(f"unknown ring kind {kind!r}")


def ring_add(field: FieldSpec, r1, r2):
    return (field.add(r1[0], r2[0]), field.add(r1[1], r2[1]))


def gray(field: FieldSpec, v) -> tuple:
    """ax + cy -> (y, x + y), applied blockwise: y-block then (x+y)-block."""
    ys = tuple(y for _, y in v)
    xys = tuple(field.add(x, y) for x, y in v)
    return ys + xys


def lee_weight(field: FieldSpec, v) -> int:
    return sum(1 for e in gray(field, v) if e)


# -- defining sets -----------------------------------------------------------


@lru_cache(maxsize=64)
def _lex_vectors(field: FieldSpec, m: int) -> tuple[tuple[int, ...], ...]:
    return tuple(product(field.coeff_order, repeat=m))


def _members(spec: CodeSpec, which: int, complement: bool) -> list[tuple[int, ...]]:
    delta = spec.delta1 if which == 1 else spec.delta2
    return enumerate_complex(delta, spec.q, complement=complement)


def _component_lists(spec: CodeSpec):
    """(t1 list, t2 list) for the product variants D1-D4."""
    c1, c2 = _COMPLEMENTS[spec.variant]
    return _members(spec, 1, c1), _members(spec, 2, c2)


def code_length(spec: CodeSpec) -> int:
    """Number of codeword coordinates |L|, by enumeration."""
    if spec.variant == "D5":
        g = spec.q**spec.m
        return g * g - len(_members(spec, 1, False)) * len(_members(spec, 2, False))
    t1, t2 = _component_lists(spec)
    return len(t1) * len(t2)


def _defining_pairs(spec: CodeSpec, budget: int):
    """Yield coordinate index pairs (t1, t2) in canonical order."""
    if code_length(spec) > budget:
        raise BudgetError(f"defining set of size {code_length(spec)} exceeds budget {budget}")
    if spec.variant == "D5":
        full = _lex_vectors(spec.field, spec.m)
        in1 = set(_members(spec, 1, False))
        in2 = set(_members(spec, 2, False))
        for t1 in full:
            skip2 = t1 in in1
            for t2 in full:
                if skip2 and t2 in in2:
                    continue
                yield t1, t2
        return
    t1_list, t2_list = _component_lists(spec)
    for t1 in t1_list:
        for t2 in t2_list:
            yield t1, t2


def build_defining_set(spec: CodeSpec, budget: int = DEFAULT_SET_BUDGET) -> list[tuple]:
    """L as a list of ring vectors: coordinate i of at1 + ct2 is (x=t1_i, y=t2_i)."""
    return [tuple(zip(t1, t2)) for t1, t2 in _defining_pairs(spec, budget)]


def codeword(spec: CodeSpec, beta1, beta2, budget: int = DEFAULT_SET_BUDGET) -> list[tuple]:
    """The evaluation vector of v = a*beta1 + c*beta2 over L.

    E-ring entries are (<beta1,t1>, <beta2,t1>); F-ring entries are
    (<beta1,t1>, <beta1,t2>) and do not involve beta2 at all.
    """
    f = spec.field
    if len(beta1) != spec.m or len(beta2) != spec.m:
        raise FieldError("message length differs from m")
    out = []
    for t1, t2 in _defining_pairs(spec, budget):
        x = f.dot(beta1, t1)
        y = f.dot(beta2, t1) if spec.ring == "E" else f.dot(beta1, t2)
        out.append((x, y))
    return out


# -- exhaustive Lee weight distribution --------------------------------------


def _all_vectors_array(field: FieldSpec, m: int) -> np.ndarray:
    return np.array(_lex_vectors(field, m), dtype=np.int64).reshape(field.q**m, m)


def _member_indices(all_vecs: list, members: list) -> np.ndarray:
    pos = {v: i for i, v in enumerate(all_vecs)}
    return np.array([pos[v] for v in members], dtype=np.int64)


def _row_value_counts(field: FieldSpec, dots: np.ndarray) -> np.ndarray:
    """counts[i, s] = how often value s appears in row i."""
    g = dots.shape[0]
    if dots.shape[1] == 0:
        return np.zeros((g, field.q), dtype=np.int64)
    flat = dots + field.q * np.arange(g)[:, None]
    return np.bincount(flat.ravel(), minlength=g * field.q).reshape(g, field.q)


def _per_gamma_weights_e(spec: CodeSpec, all_arr: np.ndarray) -> np.ndarray:
    """E-ring: contribution of one gamma in wt = c(gamma1) + c(gamma2)."""
    f = spec.field
    g = spec.q**spec.m
    if spec.variant == "D5":
        full_list = _lex_vectors(f, spec.m)
        mult = np.full(g, g, dtype=np.int64)
        idx1 = _member_indices(full_list, _members(spec, 1, False))
        mult[idx1] -= len(_members(spec, 2, False))
        nz = outer_dots(f, all_arr, all_arr) != 0
        return nz.astype(np.int64) @ mult
    t1_list, t2_list = _component_lists(spec)
    if not t1_list or not t2_list:
        return np.zeros(g, dtype=np.int64)
    t1_arr = np.array(t1_list, dtype=np.int64)
    counts = (outer_dots(f, all_arr, t1_arr) != 0).sum(axis=1)
    return len(t2_list) * counts.astype(np.int64)


def _per_beta1_weights_f(spec: CodeSpec, all_arr: np.ndarray) -> np.ndarray:
    """F-ring: full Lee weight as a function of beta1 alone."""
    f = spec.field
    q = spec.q
    g = q**spec.m
    neg_idx = np.array([f.neg(s) for s in range(q)], dtype=np.int64)
    if spec.variant == "D5":
        full_list = _lex_vectors(f, spec.m)
        idx1 = _member_indices(full_list, _members(spec, 1, False))
        idx2 = _member_indices(full_list, _members(spec, 2, False))
        dots = outer_dots(f, all_arr, all_arr)
        nz = dots != 0
        cnt_full = _row_value_counts(f, dots)
        cnt1 = _row_value_counts(f, dots[:, idx1])
        cnt2 = _row_value_counts(f, dots[:, idx2])
        n = g * g - len(idx1) * len(idx2)
        first = g * nz.sum(axis=1) - len(idx1) * nz[:, idx2].sum(axis=1)
        zero_pairs = (cnt_full * cnt_full[:, neg_idx]).sum(axis=1) - (
            cnt1 * cnt2[:, neg_idx]
        ).sum(axis=1)
        return first + (n - zero_pairs)
    t1_list, t2_list = _component_lists(spec)
    m1, m2 = len(t1_list), len(t2_list)
    if m1 == 0 or m2 == 0:
        return np.zeros(g, dtype=np.int64)
    d1 = outer_dots(f, all_arr, np.array(t1_list, dtype=np.int64))
    d2 = outer_dots(f, all_arr, np.array(t2_list, dtype=np.int64))
    zero_pairs = (_row_value_counts(f, d1) * _row_value_counts(f, d2)[:, neg_idx]).sum(axis=1)
    return m1 * (d2 != 0).sum(axis=1) + (m1 * m2 - zero_pairs)


def lee_distribution(spec: CodeSpec, budget: int = DEFAULT_WORK_BUDGET):
    """(distinct-codeword weight distribution, code size, minimum Lee distance).

    Counts messages v in R^m exactly, then divides through by the kernel of
    the message map, asserting that every weight class is a whole number of
    kernel cosets.
    """
    q, m = spec.q, spec.m
    g = q**m
    work = g * (2 * g + q)
    if work > budget:
        raise BudgetError(f"distribution work {work} exceeds budget {budget}")
    all_arr = _all_vectors_array(spec.field, m)
    if spec.ring == "E":
        # wt(a b1 + c b2) = c(b2) + c(b1 + b2) and (b2, b1+b2) sweeps all pairs,
        # so convolve the per-gamma histogram with itself.
        wu, cu = np.unique(_per_gamma_weights_e(spec, all_arr), return_counts=True)
        pair_w = (wu[:, None] + wu[None, :]).ravel()
        pair_c = (cu[:, None] * cu[None, :]).ravel()
        uniq, inv = np.unique(pair_w, return_inverse=True)
        agg = np.zeros(len(uniq), dtype=np.int64)
        np.add.at(agg, inv, pair_c)
        weights, freqs = uniq, agg
    else:
        per_beta1 = _per_beta1_weights_f(spec, all_arr)
        weights, freqs = np.unique(per_beta1, return_counts=True)
        freqs = freqs * g  # beta2 is free
    message_counts = dict(zip((int(w) for w in weights), (int(c) for c in freqs)))
    kernel = message_counts.get(0, 0)
    if kernel == 0 or q ** (2 * m) % kernel:
        raise VerificationError(f"kernel size {kernel} does not divide the message space")
    bad = {w: c for w, c in message_counts.items() if c % kernel}
    if bad:
        raise VerificationError(f"non-uniform fibers at weights {sorted(bad)}")
    dist = WeightDistribution({w: c // kernel for w, c in message_counts.items()})
    return dist, q ** (2 * m) // kernel, dist.min_nonzero()


# -- generator matrices -------------------------------------------------------


def _d5_multiplicities(spec: CodeSpec) -> tuple[np.ndarray, np.ndarray]:
    """Per-t1 repeat counts for D5 plus the allowed-t2 index list per membership."""
    g = spec.q**spec.m
    full_list = _lex_vectors(spec.field, spec.m)
    idx1 = _member_indices(full_list, _members(spec, 1, False))
    len2 = len(_members(spec, 2, False))
    mult = np.full(g, g, dtype=np.int64)
    mult[idx1] -= len2
    in1 = np.zeros(g, dtype=bool)
    in1[idx1] = True
    return mult, in1


def _x_pattern(spec: CodeSpec, beta1) -> np.ndarray:
    """<beta1, t1> across all coordinates in canonical order."""
    f = spec.field
    if spec.variant == "D5":
        full = _all_vectors_array(f, spec.m)
        vals = dot_rows(f, full, beta1)
        mult, _ = _d5_multiplicities(spec)
        return np.repeat(vals, mult)
    t1_list, t2_list = _component_lists(spec)
    if not t1_list or not t2_list:
        return np.zeros(0, dtype=np.int64)
    vals = dot_rows(f, np.array(t1_list, dtype=np.int64), beta1)
    return np.repeat(vals, len(t2_list))


def _y_pattern_f(spec: CodeSpec, beta1) -> np.ndarray:
    """<beta1, t2> across all coordinates (the F-ring y part)."""
    f = spec.field
    if spec.variant == "D5":
        full = _all_vectors_array(f, spec.m)
        vals = dot_rows(f, full, beta1)
        _, in1 = _d5_multiplicities(spec)
        full_list = _lex_vectors(f, spec.m)
        idx2 = set(int(i) for i in _member_indices(full_list, _members(spec, 2, False)))
        keep_not2 = np.array([i for i in range(len(full_list)) if i not in idx2], dtype=np.int64)
        blocks = [vals[keep_not2] if in1[i] else vals for i in range(len(full_list))]
        return np.concatenate(blocks) if blocks else np.zeros(0, dtype=np.int64)
    t1_list, t2_list = _component_lists(spec)
    if not t1_list or not t2_list:
        return np.zeros(0, dtype=np.int64)
    vals = dot_rows(f, np.array(t2_list, dtype=np.int64), beta1)
    return np.tile(vals, len(t1_list))


def _phi_row(spec: CodeSpec, beta1) -> np.ndarray:
    """phi(c_L(v)) = x part; identical for both rings."""
    return _x_pattern(spec, beta1)


def _gray_row(spec: CodeSpec, beta1, beta2) -> np.ndarray:
    f = spec.field
    xs = _x_pattern(spec, beta1)
    if spec.ring == "E":
        ys = _x_pattern(spec, beta2)
    else:
        ys = _y_pattern_f(spec, beta1)
    return np.concatenate([ys, add_arrays(f, xs, ys)])


def subfield_code_matrix(spec: CodeSpec, budget: int = DEFAULT_SET_BUDGET) -> GeneratorMatrix:
    """Basis of the x-projection code phi(C_L) over F_q."""
    n = code_length(spec)
    if n > budget:
        raise BudgetError(f"length {n} exceeds budget {budget}")
    basis = np.eye(spec.m, dtype=np.int64)
    rows = np.array([_phi_row(spec, e) for e in basis], dtype=np.int64).reshape(spec.m, n)
    return GeneratorMatrix(field=spec.field, rows=rref(spec.field, rows))


def gray_code_matrix(
    spec: CodeSpec, budget: int = DEFAULT_SET_BUDGET, checks: int = 20
) -> GeneratorMatrix:
    """Basis of the Gray image, with an explicit F_q-linearity verification."""
    f = spec.field
    n = code_length(spec)
    if 2 * n > budget:
        raise BudgetError(f"Gray length {2 * n} exceeds budget {budget}")
    basis = np.eye(spec.m, dtype=np.int64)
    zero = np.zeros(spec.m, dtype=np.int64)
    spanning = [(e, zero) for e in basis]
    if spec.ring == "E":
        spanning += [(zero, e) for e in basis]
    rows = np.array([_gray_row(spec, b1, b2) for b1, b2 in spanning], dtype=np.int64)
    rows = rows.reshape(len(spanning), 2 * n)
    reduced = rref(f, rows)

    rng = np.random.default_rng(2 * n + spec.q)
    for _ in range(checks):
        b1, b2 = rng.integers(0, spec.q, spec.m), rng.integers(0, spec.q, spec.m)
        c1, c2 = rng.integers(0, spec.q, spec.m), rng.integers(0, spec.q, spec.m)
        lam = int(rng.integers(0, spec.q))
        w1 = _gray_row(spec, b1, b2)
        w2 = _gray_row(spec, c1, c2)
        w_sum = _gray_row(spec, add_arrays(f, b1, c1), add_arrays(f, b2, c2))
        if not np.array_equal(add_arrays(f, w1, w2), w_sum):
            raise VerificationError("Gray image not additive on sampled messages")
        w_scaled = _gray_row(spec, scale_array(f, lam, b1), scale_array(f, lam, b2))
        if not np.array_equal(scale_array(f, lam, w1), w_scaled):
            raise VerificationError("Gray image not closed under F_q scaling")
        if not in_row_space(f, reduced, w1):
            raise VerificationError("sampled Gray codeword escapes the spanned row space")
    return GeneratorMatrix(field=f, rows=reduced)


def matrix_weight_distribution(
    gm: GeneratorMatrix, budget: int = DEFAULT_SWEEP_BUDGET
) -> WeightDistribution:
    """Hamming weight distribution by sweeping the whole row space."""
    q, k, n = gm.field.q, gm.k, gm.n
    cells = q**k * max(n, 1)
    if cells > budget:
        raise BudgetError(f"row-space sweep of {cells} cells exceeds budget {budget}")
    if k == 0:
        return WeightDistribution({0: 1})
    counts: dict[int, int] = {}
    chunk = max(1, (1 << 22) // max(n, 1))
    combos = np.indices((q,) * k).reshape(k, -1).T
    for start in range(0, len(combos), chunk):
        block = combos[start : start + chunk]
        words = field_matmul(gm.field, block, gm.rows)
        wts = (words != 0).sum(axis=1)
        for w, c in zip(*np.unique(wts, return_counts=True)):
            counts[int(w)] = counts.get(int(w), 0) + int(c)
    return WeightDistribution(counts)


def matrix_min_distance(gm: GeneratorMatrix, budget: int = DEFAULT_SWEEP_BUDGET):
    return matrix_weight_distribution(gm, budget).min_nonzero()


__all__ = [
    "CodeSpec",
    "GeneratorMatrix",
    "RING_KINDS",
    "VARIANTS",
    "WeightDistribution",
    "build_defining_set",
    "code_length",
    "codeword",
    "gray",
    "gray_code_matrix",
    "lee_distribution",
    "lee_weight",
    "make_code_spec",
    "matrix_min_distance",
    "matrix_weight_distribution",
    "ring_add",
    "ring_mul",
    "subfield_code_matrix",
]
