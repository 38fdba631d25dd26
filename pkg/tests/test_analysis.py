"""Certificates: Griesmer bound, minimality, self-orthogonality, tau scans.

The exhaustive and Gram routes are decision procedures; the closed-form
predicates are sufficient conditions. Frozen examples pin both, and the
grid test at the bottom checks that certified verdicts never contradict
the exhaustive ground truth.
"""

import random
from itertools import combinations, product

import numpy as np
import pytest

from efcodes.analysis import (
    Certificate,
    ab_minimal,
    divisibility_self_orthogonal,
    griesmer_certify,
    griesmer_sum,
    minimal_exhaustive,
    minimality_conditions,
    optimality_predicates,
    self_orthogonal,
    tau_conditions,
)
from efcodes.closed_form import theorem1_params, theorem2_params
from efcodes.errors import BudgetError, HypothesisError
from efcodes.finite_field import make_field
from efcodes.ring_codes import (
    GeneratorMatrix,
    WeightDistribution,
    gray_code_matrix,
    make_code_spec,
    matrix_weight_distribution,
    subfield_code_matrix,
)


def matrix(p, s, rows):
    field = make_field(p, s)
    return GeneratorMatrix(field=field, rows=np.array(rows, dtype=np.int32))


# -- certificate container ------------------------------------------------------


def test_certificate_field_validation():
    with pytest.raises(ValueError):
        Certificate("shiny", "gram", "certified", {})
    with pytest.raises(ValueError):
        Certificate("minimal", "vibes", "certified", {})
    with pytest.raises(ValueError):
        Certificate("minimal", "gram", "maybe", {})


def test_certificate_requires_witness_for_decisions():
    with pytest.raises(ValueError):
        Certificate("minimal", "exhaustive", "certified")
    with pytest.raises(ValueError):
        Certificate("minimal", "exhaustive", "refuted")
    cert = Certificate("minimal", "ashikhmin_barg", "inconclusive")
    assert cert.witness is None


# -- Griesmer bound --------------------------------------------------------------


def test_griesmer_sum_values():
    assert griesmer_sum(8, 3, 2) == 14
    assert griesmer_sum(9, 3, 2) == 17
    assert griesmer_sum(649, 5, 3) == 973


def test_griesmer_certifies_flagship_codes():
    cert = griesmer_certify(16, 3, 8, 2)
    assert cert.property == "distance_optimal"
    assert cert.verdict == "certified"
    assert cert.witness["sum_d_plus_1"] == 17
    assert cert.witness["griesmer_code"] is False

    cert = griesmer_certify(972, 5, 648, 3)
    assert cert.verdict == "certified"
    assert cert.witness["sum_d"] == 968


def test_repetition_code_meets_bound_with_equality():
    for n, q in ((7, 2), (9, 3)):
        cert = griesmer_certify(n, 1, n, q)
        assert cert.verdict == "certified"
        assert cert.witness["griesmer_code"] is True


def test_griesmer_almost_optimal():
    # S(9) = 17 <= 17 < S(10) = 18: one step worse than the bound allows.
    cert = griesmer_certify(17, 3, 8, 2)
    assert cert.property == "almost_optimal"
    assert cert.verdict == "certified"
    assert cert.witness["sum_d_plus_2"] == 18
    assert cert.witness["griesmer_relative"] is True


def test_griesmer_inconclusive_when_bound_is_slack():
    cert = griesmer_certify(20, 3, 8, 2)
    assert cert.verdict == "inconclusive"
    assert "griesmer_code" not in cert.witness


def test_griesmer_rejects_bad_input():
    with pytest.raises(ValueError):
        griesmer_certify(16, 0, 8, 2)
    with pytest.raises(ValueError):
        griesmer_certify(16, 3, 0, 2)
    with pytest.raises(ValueError):
        griesmer_certify(16, 3, 8, 1)
    with pytest.raises(ValueError):
        griesmer_certify(13, 3, 8, 2)


def test_griesmer_sum_is_strictly_monotone_in_d():
    rng = random.Random(47)
    for _ in range(200):
        q = rng.choice([2, 3, 4, 5])
        k = rng.randint(1, 6)
        d = rng.randint(1, 500)
        assert griesmer_sum(d + 1, k, q) > griesmer_sum(d, k, q)
        extra = griesmer_sum(d, k + 1, q) - griesmer_sum(d, k, q)
        assert extra == -(-d // q**k)


# -- Ashikhmin-Barg --------------------------------------------------------------


def test_one_weight_code_is_minimal():
    cert = ab_minimal(WeightDistribution({0: 1, 8: 15}), 2)
    assert cert.verdict == "certified"
    assert cert.witness == {"wt_min": 8, "wt_max": 8, "q": 2}


def test_ab_margin():
    assert ab_minimal(WeightDistribution({0: 1, 6: 10, 8: 5}), 2).verdict == "certified"
    # 2 * 4 = (2 - 1) * 8: the strict inequality just fails.
    assert ab_minimal(WeightDistribution({0: 1, 4: 3, 8: 4}), 2).verdict == "inconclusive"


def test_ab_needs_nonzero_words():
    with pytest.raises(ValueError):
        ab_minimal(WeightDistribution({0: 1}), 2)


# -- exhaustive minimality -------------------------------------------------------


def test_zero_code_is_minimal():
    gm = matrix(2, 1, np.zeros((0, 4), dtype=np.int32))
    cert = minimal_exhaustive(gm)
    assert cert.verdict == "certified"
    assert cert.witness == {"classes": 0, "pairs_scanned": 0}


def test_shadowed_support_refutes_minimality():
    gm = matrix(2, 1, [[1, 0, 0], [0, 1, 1]])
    cert = minimal_exhaustive(gm)
    assert cert.verdict == "refuted"
    assert cert.witness["covering"] == [1, 1, 1]
    assert cert.witness["covered"] == [1, 0, 0]
    assert cert.witness["pairs_scanned"] == 3


def test_two_weight_code_with_full_support_word_is_not_minimal():
    """The [16,3,8] image contains the all-ones word, which covers everything."""
    spec = make_code_spec(2, 1, 3, "F", "D3", [(1,)], [(1, 2)])
    gm = gray_code_matrix(spec)
    dist = matrix_weight_distribution(gm)
    assert dist.sorted_pairs() == [(0, 1), (8, 6), (16, 1)]
    assert ab_minimal(dist, 2).verdict == "inconclusive"
    cert = minimal_exhaustive(gm)
    assert cert.verdict == "refuted"
    assert cert.witness["covering"] == [1] * 16
    covered = cert.witness["covered"]
    assert sum(covered) == 8


def test_one_weight_construction_is_minimal():
    spec = make_code_spec(2, 1, 3, "E", "D1", [(1, 2)], [(1,)])
    gm = subfield_code_matrix(spec)
    dist = matrix_weight_distribution(gm)
    assert dist.sorted_pairs() == [(0, 1), (4, 3)]
    assert ab_minimal(dist, 2).verdict == "certified"
    cert = minimal_exhaustive(gm)
    assert cert.verdict == "certified"
    assert cert.witness == {"classes": 3, "pairs_scanned": 3}


def test_pair_scan_budget_guard():
    gm = matrix(2, 1, np.eye(21, dtype=np.int32))
    with pytest.raises(BudgetError):
        minimal_exhaustive(gm)


def test_minimality_is_column_permutation_invariant():
    rng = random.Random(3)
    specs = [
        make_code_spec(2, 1, 3, "E", "D2", [(1, 2)], [(1,), (3,)]),
        make_code_spec(2, 1, 3, "E", "D1", [(1, 2)], [(1,)]),
    ]
    for spec in specs:
        gm = subfield_code_matrix(spec)
        base = minimal_exhaustive(gm)
        perm = list(range(gm.n))
        rng.shuffle(perm)
        shuffled = GeneratorMatrix(field=gm.field, rows=gm.rows[:, perm])
        again = minimal_exhaustive(shuffled)
        assert again.verdict == base.verdict
        if base.verdict == "certified":
            assert again.witness["classes"] == base.witness["classes"]


def naive_minimal(field, rows):
    q, k = field.q, len(rows)
    words = []
    for combo in product(range(q), repeat=k):
        word = tuple(
            field.dot(np.array(combo), np.array(col)) for col in zip(*rows)
        )
        if any(word):
            words.append(word)
    for u in words:
        multiples = {tuple(field.mul(a, x) for x in u) for a in range(1, q)}
        su = {i for i, x in enumerate(u) if x}
        for w in words:
            if w in multiples:
                continue
            if {i for i, x in enumerate(w) if x} <= su:
                return False
    return True


def test_exhaustive_scan_matches_naive_oracle():
    rng = random.Random(19)
    checked = 0
    for _ in range(60):
        p = rng.choice([2, 3])
        field = make_field(p, 1)
        k = rng.randint(1, 2)
        n = rng.randint(2, 6)
        rows = [[rng.randrange(p) for _ in range(n)] for _ in range(k)]
        if not any(any(r) for r in rows):
            continue
        gm = matrix(p, 1, rows)
        cert = minimal_exhaustive(gm)
        assert (cert.verdict == "certified") == naive_minimal(field, rows)
        checked += 1
    assert checked >= 50


# -- self-orthogonality ----------------------------------------------------------


def test_gram_certifies_divisible_examples():
    cert = self_orthogonal(matrix(3, 1, [[1, 1, 1]]))
    assert cert.verdict == "certified"
    assert cert.witness["divisibility"] == {"modulus": 3, "all_divisible": True}

    cert = self_orthogonal(matrix(2, 1, [[1, 1, 1, 1]]))
    assert cert.verdict == "certified"
    assert cert.witness["divisibility"] == {"modulus": 4, "all_divisible": True}


def test_gram_refutes_odd_self_product():
    cert = self_orthogonal(matrix(2, 1, [[1, 1, 1]]))
    assert cert.verdict == "refuted"
    assert cert.witness["row_i"] == cert.witness["row_j"] == 0
    assert cert.witness["inner_product"] == 1
    assert cert.witness["divisibility"] == {"modulus": 4, "all_divisible": False}


def test_hermitian_route():
    gm = matrix(2, 2, [[1, 2]])
    cert = self_orthogonal(gm, hermitian=True)
    assert cert.property == "hermitian_self_orthogonal"
    assert cert.verdict == "certified"
    assert cert.witness["divisibility"] == {"modulus": 2, "all_divisible": True}
    # The Euclidean form over F_4 has no divisibility shortcut and this row
    # is not Euclidean self-orthogonal.
    plain = self_orthogonal(gm)
    assert plain.verdict == "refuted"
    assert plain.witness["divisibility"] is None


def test_self_orthogonal_argument_guards():
    gm = matrix(3, 1, [[1, 1, 1]])
    with pytest.raises(ValueError):
        self_orthogonal(gm, q=2)
    with pytest.raises(ValueError):
        self_orthogonal(gm, hermitian=True)


def test_zero_code_self_orthogonal():
    gm = matrix(2, 1, np.zeros((0, 3), dtype=np.int32))
    cert = self_orthogonal(gm)
    assert cert.verdict == "certified"
    assert cert.witness["rows"] == 0


def test_divisibility_route_verdicts():
    cert = divisibility_self_orthogonal(WeightDistribution({0: 1, 3: 2}), 3)
    assert cert.verdict == "certified"
    cert = divisibility_self_orthogonal(WeightDistribution({0: 1, 4: 2}), 3)
    assert cert.verdict == "refuted"
    assert cert.witness["offending_weights"] == [4]
    cert = divisibility_self_orthogonal(WeightDistribution({0: 1, 2: 3}), 2)
    assert cert.verdict == "inconclusive"
    cert = divisibility_self_orthogonal(WeightDistribution({0: 1, 2: 3}), 4, hermitian=True)
    assert cert.verdict == "certified"
    with pytest.raises(ValueError):
        divisibility_self_orthogonal(WeightDistribution({0: 1, 5: 2}), 5)


def test_divisibility_vs_gram_directions():
    """q = 3: mod-3 weights iff Gram vanishes. q = 2: mod-4 implies it."""
    rng = random.Random(23)
    ternary_seen = {True: 0, False: 0}
    binary_seen = 0
    for _ in range(120):
        p = rng.choice([2, 3])
        k = rng.randint(1, 2)
        n = rng.randint(2, 6)
        gm = matrix(p, 1, [[rng.randrange(p) for _ in range(n)] for _ in range(k)])
        gram = self_orthogonal(gm)
        div = divisibility_self_orthogonal(matrix_weight_distribution(gm), p)
        if p == 3:
            assert (gram.verdict == "certified") == (div.verdict == "certified")
            ternary_seen[gram.verdict == "certified"] += 1
        else:
            if div.verdict == "certified":
                assert gram.verdict == "certified"
                binary_seen += 1
    assert ternary_seen[True] and ternary_seen[False]
    assert binary_seen


# -- tau scans -------------------------------------------------------------------


def test_tau_for_singleton_families():
    tau1, tau2, verdicts = tau_conditions([(1, 2)], [(2, 3)])
    assert (tau1, tau2) == (3, 3)
    assert all(verdicts[q]["tau1"] and verdicts[q]["tau2"] for q in (2, 3, 4))


def test_tau_one_fails_binary_threshold():
    tau1, tau2, verdicts = tau_conditions([(1,)], [(2,)])
    assert (tau1, tau2) == (1, 1)
    assert not verdicts[2]["tau1"]
    assert verdicts[3]["tau1"] and verdicts[4]["tau2"]


def test_tau_two_splits_on_empty_intersection():
    # S1 = both faces has empty intersection: tau_2 sees it, tau_1 does not.
    tau1, tau2, verdicts = tau_conditions([(1,), (2,)], [(1,)])
    assert (tau1, tau2) == (1, 0)
    assert verdicts[3] == {"tau1": True, "tau2": False}
    assert verdicts[2] == {"tau1": False, "tau2": False}


def test_tau_empty_faces_are_vacuous():
    tau1, tau2, verdicts = tau_conditions([()], [()])
    assert tau1 is None and tau2 is None
    assert all(verdicts[q]["tau1"] and verdicts[q]["tau2"] for q in (2, 3, 4))


def test_tau_accepts_complexes_and_raw_families():
    spec = make_code_spec(2, 1, 3, "E", "D1", [(1, 2)], [(2, 3)])
    assert tau_conditions(spec.delta1, spec.delta2) == tau_conditions([(1, 2)], [(2, 3)])


def test_tau_singleton_identity():
    rng = random.Random(53)
    for _ in range(50):
        m = rng.randint(2, 6)
        a = sorted(rng.sample(range(1, m + 1), rng.randint(1, m)))
        b = sorted(rng.sample(range(1, m + 1), rng.randint(1, m)))
        tau1, tau2, _ = tau_conditions([tuple(a)], [tuple(b)])
        assert tau1 == tau2 == len(a) + len(b) - 1


# -- closed-form minimality conditions ---------------------------------------------


def test_gray_minimality_d3():
    spec = make_code_spec(2, 1, 4, "F", "D3", [(1,)], [(1, 2)])
    cert = minimality_conditions(spec, image="gray")
    assert cert.method == "theorem6"
    assert cert.verdict == "certified"
    assert cert.witness == {
        "variant": "D3", "lhs": 16, "rhs": 8, "params": [48, 4, 24],
    }


def test_gray_minimality_d4():
    spec = make_code_spec(2, 1, 3, "F", "D4", [(1,)], [(2,)])
    cert = minimality_conditions(spec, image="gray")
    assert cert.verdict == "certified"
    assert cert.witness["lhs"] == 80
    assert cert.witness["rhs"] == 20
    assert cert.witness["params"] == [72, 3, 36]


def test_gray_minimality_d5():
    spec = make_code_spec(2, 1, 3, "F", "D5", [(2,)], [(1,)])
    cert = minimality_conditions(spec, image="gray")
    assert cert.verdict == "certified"
    assert cert.witness["lhs"] == 64
    assert cert.witness["rhs"] == 8
    assert cert.witness["params"] == [120, 3, 60]


def test_gray_minimality_guards():
    spec = make_code_spec(2, 1, 3, "E", "D3", [(1,)], [(2,)])
    with pytest.raises(ValueError):
        minimality_conditions(spec, image="gray")
    spec = make_code_spec(2, 1, 3, "F", "D1", [(1,)], [(2,)])
    with pytest.raises(ValueError):
        minimality_conditions(spec, image="gray")
    with pytest.raises(ValueError):
        minimality_conditions(spec, image="lee")


def test_subfield_minimality_single_family_iff():
    spec = make_code_spec(2, 1, 3, "E", "D1", [(1,), (2,)], [(1,)])
    cert = minimality_conditions(spec, image="subfield")
    assert cert.method == "theorem7"
    assert cert.verdict == "refuted"
    assert cert.witness["family_count"] == 2
    assert cert.witness["params"] == [6, 2, 2]
    # The refutation is real: the exhaustive scan finds a covering pair.
    assert minimal_exhaustive(subfield_code_matrix(spec)).verdict == "refuted"

    spec = make_code_spec(2, 1, 3, "E", "D1", [(1, 2)], [(1,)])
    cert = minimality_conditions(spec, image="subfield")
    assert cert.verdict == "certified"
    assert cert.witness["family_count"] == 1
    assert minimal_exhaustive(subfield_code_matrix(spec)).verdict == "certified"


def test_subfield_minimality_d2():
    spec = make_code_spec(2, 1, 4, "E", "D2", [(1,)], [(1, 2)])
    cert = minimality_conditions(spec, image="subfield")
    assert cert.verdict == "certified"
    assert cert.witness["lhs"] == 16
    assert cert.witness["rhs"] == 4
    assert cert.witness["params"] == [56, 4, 28]
    assert minimal_exhaustive(subfield_code_matrix(spec)).verdict == "certified"


def test_subfield_minimality_d5_boundary():
    spec = make_code_spec(2, 1, 2, "E", "D5", [(1,)], [(1, 2)])
    cert = minimality_conditions(spec, image="subfield")
    assert cert.verdict == "inconclusive"
    assert cert.witness["lhs"] == cert.witness["rhs"] == 16


def test_gray_minimality_certified_codes_are_minimal():
    cases = [
        (2, 1, 4, "F", "D3", [(1,)], [(1, 2)]),
        (2, 1, 3, "F", "D4", [(1,)], [(2,)]),
        (2, 1, 3, "F", "D5", [(2,)], [(1,)]),
    ]
    for args in cases:
        spec = make_code_spec(*args)
        assert minimality_conditions(spec, image="gray").verdict == "certified"
        assert minimal_exhaustive(gray_code_matrix(spec)).verdict == "certified"


# -- closed-form optimality predicates ---------------------------------------------


def test_subfield_optimality_small_second_face():
    spec = make_code_spec(2, 1, 3, "E", "D2", [(1,)], [(2,)])
    cert = optimality_predicates(spec, image="subfield")
    assert cert.method == "prop5"
    assert cert.verdict == "certified"
    assert cert.witness == {"clause": 1, "lhs": 2, "rhs": 3, "params": [12, 3, 6]}
    assert griesmer_certify(12, 3, 6, 2).verdict == "certified"


def test_gray_optimality_flagship():
    spec = make_code_spec(2, 1, 3, "F", "D3", [(1,)], [(1, 2)])
    cert = optimality_predicates(spec, image="gray")
    assert cert.verdict == "certified"
    assert cert.witness == {"clause": 2, "lhs": 2, "rhs": 3, "params": [16, 3, 8]}
    assert griesmer_certify(16, 3, 8, 2).verdict == "certified"


def test_gray_optimality_inconclusive_over_f3():
    spec = make_code_spec(3, 1, 3, "F", "D3", [(1,)], [(1, 2)])
    cert = optimality_predicates(spec, image="gray")
    assert cert.verdict == "inconclusive"
    assert cert.witness["clause"] == 2
    assert cert.witness["lhs"] == 4
    assert cert.witness["params"] == [108, 3, 72]


def test_singleton_fallthrough_embeds_digit_test():
    spec = make_code_spec(2, 1, 4, "E", "D2", [(1, 2, 3)], [(1, 2, 3)])
    cert = optimality_predicates(spec, image="subfield")
    assert cert.method == "prop5"
    assert cert.verdict == "inconclusive"
    assert cert.witness["clause"] == 2
    assert cert.witness["prop6"] == {
        "tau_strict": None, "tau_loose": None, "f1": 3, "lhs": 64, "rhs": 64,
    }


def test_disjoint_union_digit_test_certifies():
    """k - 1 = 4 = 100 in base 2, so tau = 2 and tau + |F1| = 6 > m = 5."""
    spec = make_code_spec(
        2, 1, 5, "E", "D2", [(1, 2, 3, 4)], [(1,), (2,), (3,), (4,), (5,)]
    )
    cert = optimality_predicates(spec, image="subfield")
    assert cert.method == "prop6"
    assert cert.verdict == "certified"
    assert cert.witness == {
        "tau_strict": 2, "tau_loose": 2, "f1": 4, "lhs": 96, "rhs": 160,
        "params": [96, 5, 48],
    }
    assert griesmer_certify(96, 5, 48, 2).verdict == "certified"


def test_internal_zero_digit_blocks_certification():
    # k - 1 = 5 = 101 in base 2: the digit run has a gap, so the strict tau
    # is undefined even though the counting inequality 224 < 384 holds.
    spec = make_code_spec(
        2, 1, 6, "E", "D2", [(1, 2, 3, 4, 5)], [(i,) for i in range(1, 7)]
    )
    cert = optimality_predicates(spec, image="subfield")
    assert cert.method == "prop6"
    assert cert.verdict == "inconclusive"
    assert cert.witness["tau_strict"] is None
    assert cert.witness["tau_loose"] == 0
    assert cert.witness["lhs"] == 224
    assert cert.witness["rhs"] == 384


def test_optimality_guards():
    spec = make_code_spec(2, 1, 3, "E", "D3", [(1,)], [(2,)])
    with pytest.raises(ValueError):
        optimality_predicates(spec, image="subfield")
    spec = make_code_spec(2, 1, 3, "E", "D2", [(1,)], [(2,)])
    with pytest.raises(ValueError):
        optimality_predicates(spec, image="gray")
    with pytest.raises(ValueError):
        optimality_predicates(spec, image="hamming")
    spec = make_code_spec(2, 1, 3, "E", "D2", [(1,)], [(1, 2), (2, 3)])
    with pytest.raises(HypothesisError):
        optimality_predicates(spec, image="subfield")


def test_certified_optimality_matches_griesmer_on_singleton_sweep():
    certified = 0
    for q, p in ((2, 2), (3, 3)):
        for m in (2, 3, 4):
            for a in range(1, m + 1):
                for b in range(1, m + 1):
                    spec = make_code_spec(
                        p, 1, m, "E", "D2", [tuple(range(1, a + 1))], [tuple(range(1, b + 1))]
                    )
                    try:
                        cert = optimality_predicates(spec, image="subfield")
                    except HypothesisError:
                        continue
                    if cert.verdict != "certified":
                        continue
                    n, k, d = cert.witness["params"]
                    confirm = griesmer_certify(n, k, d, q)
                    assert confirm.property == "distance_optimal"
                    assert confirm.verdict == "certified"
                    certified += 1
    assert certified >= 8


# -- grid soundness ---------------------------------------------------------------


def test_certified_verdicts_hold_on_small_grid():
    """Sufficient conditions must never certify what exhaustion refutes."""
    stats = {"ab": 0, "tau": 0, "minimality": 0}
    for p in (2, 3):
        for m in (2, 3):
            faces = [tuple(c) for r in range(1, m + 1) for c in combinations(range(1, m + 1), r)]
            for f1, f2 in product(faces, repeat=2):
                for ring in ("E", "F"):
                    for variant in ("D1", "D2", "D3", "D4", "D5"):
                        spec = make_code_spec(p, 1, m, ring, variant, [f1], [f2])
                        thm = theorem1_params if ring == "E" else theorem2_params
                        try:
                            thm(spec)
                        except HypothesisError:
                            continue
                        gm = gray_code_matrix(spec)
                        dist = matrix_weight_distribution(gm)
                        if ab_minimal(dist, p).verdict == "certified":
                            assert minimal_exhaustive(gm).verdict == "certified"
                            stats["ab"] += 1
                        tau1, tau2, verdicts = tau_conditions(spec.delta1, spec.delta2)
                        key = "tau1" if ring == "E" else "tau2"
                        if verdicts[p][key]:
                            assert self_orthogonal(gm).verdict == "certified"
                            stats["tau"] += 1
                        if ring == "F" and variant in ("D3", "D4", "D5"):
                            cert = minimality_conditions(spec, image="gray")
                            if cert.verdict == "certified":
                                assert minimal_exhaustive(gm).verdict == "certified"
                                stats["minimality"] += 1
    assert all(count >= 20 for count in stats.values()), stats
