"""Ring arithmetic, Gray map, defining sets, and the exhaustive Lee oracle.

The naive evaluator here recomputes everything codeword by codeword from
ring_mul/ring_add alone, so lee_distribution's vectorized counting is
checked against straight-line arithmetic rather than against itself.
"""

from itertools import product

import numpy as np
import pytest

from efcodes.errors import BudgetError, FieldError
from efcodes.finite_field import make_field
from efcodes.ring_codes import (
    VARIANTS,
    build_defining_set,
    code_length,
    codeword,
    gray,
    gray_code_matrix,
    lee_distribution,
    lee_weight,
    make_code_spec,
    matrix_min_distance,
    matrix_weight_distribution,
    ring_add,
    ring_mul,
    subfield_code_matrix,
)
from efcodes.simplicial import complex_size

F2 = make_field(2, 1)
F3 = make_field(3, 1)
F4 = make_field(2, 2)

FULL = [(1,)]  # generates all of F_q^1
POINT = [()]  # generates {0}


def spec_of(p, s, m, ring, variant, f_family, h_family):
    return make_code_spec(p, s, m, ring, variant, f_family, h_family)


# -- ring arithmetic ----------------------------------------------------------


def test_ring_mul_e():
    assert ring_mul(F2, (1, 1), (0, 1), "E") == (0, 0)


def test_ring_mul_f():
    assert ring_mul(F2, (1, 0), (0, 1), "F") == (0, 1)


def test_ring_mul_zero_right():
    for kind in ("E", "F"):
        assert ring_mul(F3, (2, 1), (0, 0), kind) == (0, 0)


def test_ring_mul_bad_kind():
    with pytest.raises(Exception):
        ring_mul(F2, (1, 0), (1, 0), "G")


def test_rings_are_opposite():
    for x1, y1, x2, y2 in product(range(3), repeat=4):
        r1, r2 = (x1, y1), (x2, y2)
        assert ring_mul(F3, r1, r2, "E") == ring_mul(F3, r2, r1, "F")


def test_ring_mul_distributes():
    rng = np.random.default_rng(7)
    for _ in range(50):
        a, b, c = (tuple(rng.integers(0, 4, 2)) for _ in range(3))
        for kind in ("E", "F"):
            lhs = ring_mul(F4, a, ring_add(F4, b, c), kind)
            rhs = ring_add(F4, ring_mul(F4, a, b, kind), ring_mul(F4, a, c, kind))
            assert lhs == rhs
            lhs = ring_mul(F4, ring_add(F4, a, b), c, kind)
            rhs = ring_add(F4, ring_mul(F4, a, c, kind), ring_mul(F4, b, c, kind))
            assert lhs == rhs


# -- Gray map and Lee weight --------------------------------------------------


def test_gray_zero():
    assert gray(F2, [(0, 0), (0, 0), (0, 0)]) == (0,) * 6


def test_gray_single():
    assert gray(F2, [(1, 1)]) == (1, 0)


def test_gray_blocks():
    assert gray(F3, [(1, 2), (0, 1)]) == (2, 1, 0, 1)


def test_lee_weight_examples():
    assert lee_weight(F2, [(0, 0)]) == 0
    assert lee_weight(F2, [(1, 1)]) == 1
    assert lee_weight(F2, [(0, 1)]) == 2


def test_gray_additive_and_scaling():
    rng = np.random.default_rng(11)
    for _ in range(40):
        u = [tuple(rng.integers(0, 4, 2)) for _ in range(3)]
        v = [tuple(rng.integers(0, 4, 2)) for _ in range(3)]
        s = list(map(lambda a, b: ring_add(F4, a, b), u, v))
        gu, gv = gray(F4, u), gray(F4, v)
        assert gray(F4, s) == tuple(F4.add(a, b) for a, b in zip(gu, gv))
        lam = int(rng.integers(0, 4))
        scaled = [(F4.mul(lam, x), F4.mul(lam, y)) for x, y in u]
        assert gray(F4, scaled) == tuple(F4.mul(lam, a) for a in gu)


def test_gray_isometry():
    rng = np.random.default_rng(13)
    for _ in range(40):
        u = [tuple(rng.integers(0, 3, 2)) for _ in range(4)]
        v = [tuple(rng.integers(0, 3, 2)) for _ in range(4)]
        diff = [(F3.sub(x1, x2), F3.sub(y1, y2)) for (x1, y1), (x2, y2) in zip(u, v)]
        gd = [F3.sub(a, b) for a, b in zip(gray(F3, u), gray(F3, v))]
        assert lee_weight(F3, diff) == sum(1 for e in gd if e)


# -- defining sets ------------------------------------------------------------


def test_defining_set_point():
    spec = spec_of(2, 1, 2, "E", "D1", POINT, POINT)
    assert build_defining_set(spec) == [((0, 0), (0, 0))]


def test_defining_set_full_m1():
    spec = spec_of(2, 1, 1, "E", "D1", FULL, FULL)
    got = build_defining_set(spec)
    assert got == [((0, 0),), ((0, 1),), ((1, 0),), ((1, 1),)]


def test_defining_set_d5_size():
    spec = spec_of(2, 1, 2, "E", "D5", [(1,)], [(1,)])
    got = build_defining_set(spec)
    assert len(got) == 12
    assert code_length(spec) == 12
    # t1=(0,0) is in Delta1, so t2 skips (0,0) and (1,0)
    assert got[0] == ((0, 0), (0, 1))


def test_defining_set_budget():
    spec = spec_of(2, 1, 3, "E", "D5", POINT, POINT)
    with pytest.raises(BudgetError):
        build_defining_set(spec, budget=10)


def test_lengths_match_closed_forms():
    rng = np.random.default_rng(17)
    for q, m in ((2, 3), (3, 2), (4, 2)):
        p, s = (2, 2) if q == 4 else (q, 1)
        for _ in range(5):
            fam1 = [tuple(sorted(rng.choice(m, rng.integers(1, m + 1), replace=False) + 1))]
            fam2 = [tuple(sorted(rng.choice(m, rng.integers(1, m + 1), replace=False) + 1))]
            sizes = {}
            for variant in VARIANTS:
                spec = spec_of(p, s, m, "F", variant, fam1, fam2)
                sizes[variant] = code_length(spec)
            n1 = complex_size(spec.delta1, q)
            n2 = complex_size(spec.delta2, q)
            g = q**m
            assert sizes["D1"] == n1 * n2
            assert sizes["D2"] == (g - n1) * n2
            assert sizes["D3"] == n1 * (g - n2)
            assert sizes["D4"] == (g - n1) * (g - n2)
            assert sizes["D5"] == g * g - n1 * n2


# -- codewords ----------------------------------------------------------------


def test_codeword_zero_message():
    spec = spec_of(2, 1, 2, "F", "D2", [(1,)], [(2,)])
    word = codeword(spec, (0, 0), (0, 0))
    assert all(e == (0, 0) for e in word)


def test_codeword_hand_example():
    spec = spec_of(2, 1, 1, "E", "D1", FULL, FULL)
    word = codeword(spec, (1,), (0,))
    assert word == [(0, 0), (0, 0), (1, 0), (1, 0)]
    assert lee_weight(spec.field, word) == 2


def test_codeword_f_ring_ignores_beta2():
    spec = spec_of(3, 1, 2, "F", "D3", [(1,)], [(2,)])
    words = {tuple(codeword(spec, (1, 2), b2)) for b2 in product(range(3), repeat=2)}
    assert len(words) == 1


def test_codeword_dimension_mismatch():
    spec = spec_of(2, 1, 2, "E", "D1", FULL + [(2,)], FULL + [(2,)])
    with pytest.raises(FieldError):
        codeword(spec, (1,), (0, 0))


def test_codeword_matches_ring_inner_product():
    """c_L(v) entry = sum_i v_i * x_i computed with bare ring arithmetic."""
    rng = np.random.default_rng(19)
    for ring in ("E", "F"):
        spec = spec_of(2, 1, 2, ring, "D5", [(1,)], [(2,)])
        f = spec.field
        lset = build_defining_set(spec)
        for _ in range(10):
            b1 = tuple(int(x) for x in rng.integers(0, 2, 2))
            b2 = tuple(int(x) for x in rng.integers(0, 2, 2))
            word = codeword(spec, b1, b2)
            for entry, xvec in zip(word, lset):
                acc = (0, 0)
                for vi, xi in zip(zip(b1, b2), xvec):
                    acc = ring_add(f, acc, ring_mul(f, vi, xi, ring))
                assert entry == acc


def test_codeword_additive():
    rng = np.random.default_rng(23)
    spec = spec_of(3, 1, 2, "E", "D2", [(1,)], [(1, 2)])
    f = spec.field
    for _ in range(10):
        b1, b2, c1, c2 = (tuple(int(x) for x in rng.integers(0, 3, 2)) for _ in range(4))
        w1 = codeword(spec, b1, b2)
        w2 = codeword(spec, c1, c2)
        ws = codeword(
            spec,
            tuple(f.add(a, b) for a, b in zip(b1, c1)),
            tuple(f.add(a, b) for a, b in zip(b2, c2)),
        )
        assert ws == [ring_add(f, e1, e2) for e1, e2 in zip(w1, w2)]


# -- exhaustive Lee distribution ----------------------------------------------


def naive_lee_distribution(spec):
    """Distinct-codeword histogram by brute hashing of every message."""
    f = spec.field
    words = {}
    for msg in product(range(f.q), repeat=2 * spec.m):
        b1, b2 = msg[: spec.m], msg[spec.m :]
        w = tuple(codeword(spec, b1, b2))
        if w not in words:
            words[w] = lee_weight(f, w)
    counts = {}
    for wt in words.values():
        counts[wt] = counts.get(wt, 0) + 1
    return counts, len(words)


NAIVE_SPECS = [
    (2, 1, 2, [(1,)], [(2,)]),
    (2, 1, 2, [(1,), (2,)], [(1, 2)]),
    (3, 1, 1, [(1,)], [()]),
    (2, 2, 1, [(1,)], [(1,)]),
]


@pytest.mark.parametrize("ring", ["E", "F"])
@pytest.mark.parametrize("variant", VARIANTS)
@pytest.mark.parametrize("base", NAIVE_SPECS)
def test_lee_distribution_against_naive(base, variant, ring):
    p, s, m, fam1, fam2 = base
    spec = spec_of(p, s, m, ring, variant, fam1, fam2)
    dist, size, min_dl = lee_distribution(spec)
    counts, nwords = naive_lee_distribution(spec)
    assert dist.counts == counts
    assert size == nwords
    assert dist.total == size
    nonzero = [w for w in counts if w > 0]
    assert min_dl == (min(nonzero) if nonzero else None)


def test_lee_distribution_small_e_ring():
    spec = spec_of(2, 1, 2, "E", "D1", [(1,)], [(1,)])
    dist, size, min_dl = lee_distribution(spec)
    assert dist.counts == {0: 1, 2: 2, 4: 1}
    assert size == 4
    assert min_dl == 2


def test_lee_distribution_point_sets():
    spec = spec_of(2, 1, 2, "E", "D1", POINT, POINT)
    dist, size, min_dl = lee_distribution(spec)
    assert dist.counts == {0: 1}
    assert size == 1
    assert min_dl is None


def test_lee_distribution_f_ring_table_row():
    spec = spec_of(2, 1, 3, "F", "D3", [(2,)], [(1, 2)])
    dist, size, min_dl = lee_distribution(spec)
    assert code_length(spec) == 8
    assert size == 8
    assert min_dl == 8


def test_lee_distribution_budget():
    spec = spec_of(2, 1, 3, "F", "D1", FULL, FULL)
    with pytest.raises(BudgetError):
        lee_distribution(spec, budget=10)


def test_f_ring_size_at_most_qm():
    for variant in VARIANTS:
        spec = spec_of(3, 1, 2, "F", variant, [(1,)], [(2,)])
        _, size, _ = lee_distribution(spec)
        assert size <= 3**2


# -- generator matrices -------------------------------------------------------


def test_subfield_matrix_zero_code():
    spec = spec_of(2, 1, 2, "F", "D1", POINT, FULL + [(2,)])
    gm = subfield_code_matrix(spec)
    assert gm.k == 0


def test_subfield_matrix_12_3_6():
    spec = spec_of(2, 1, 3, "F", "D2", [(1, 2)], [(1,), (3,)])
    gm = subfield_code_matrix(spec)
    dist = matrix_weight_distribution(gm)
    assert (gm.n, gm.k, dist.min_nonzero()) == (12, 3, 6)


def test_subfield_matrix_54_3_36():
    spec = spec_of(3, 1, 3, "F", "D2", [(1, 3)], [(1,)])
    gm = subfield_code_matrix(spec)
    assert (gm.n, gm.k, matrix_min_distance(gm)) == (54, 3, 36)


def test_gray_matrix_zero_code():
    spec = spec_of(2, 1, 2, "F", "D1", POINT, POINT)
    gm = gray_code_matrix(spec)
    assert gm.k == 0


def test_gray_matrix_16_3_8():
    spec = spec_of(2, 1, 3, "F", "D3", [(2,)], [(1, 2)])
    gm = gray_code_matrix(spec)
    assert (gm.n, gm.k, matrix_min_distance(gm)) == (16, 3, 8)


def test_gray_matrix_32_4_16():
    spec = spec_of(2, 1, 4, "F", "D3", [(1,)], [(1, 3, 4)])
    gm = gray_code_matrix(spec)
    assert (gm.n, gm.k, matrix_min_distance(gm)) == (32, 4, 16)


@pytest.mark.parametrize("ring", ["E", "F"])
@pytest.mark.parametrize("variant", VARIANTS)
def test_gray_matrix_agrees_with_lee_oracle(ring, variant):
    """The Gray image row space reproduces the Lee data exactly."""
    spec = spec_of(2, 1, 2, ring, variant, [(1,)], [(1, 2)])
    dist, size, min_dl = lee_distribution(spec)
    gm = gray_code_matrix(spec)
    mdist = matrix_weight_distribution(gm)
    assert spec.q**gm.k == size
    assert mdist.counts == dist.counts
    assert mdist.min_nonzero() == min_dl


def test_matrix_weight_distribution_known():
    from efcodes.ring_codes import GeneratorMatrix

    gm = GeneratorMatrix(field=F2, rows=np.array([[1, 0, 1], [0, 1, 1]]))
    dist = matrix_weight_distribution(gm)
    assert dist.counts == {0: 1, 2: 3}
    assert matrix_min_distance(gm) == 2


def test_matrix_sweep_budget():
    spec = spec_of(2, 1, 3, "E", "D2", [(1,)], [(1, 2)])
    gm = gray_code_matrix(spec)
    with pytest.raises(BudgetError):
        matrix_weight_distribution(gm, budget=4)
