from fractions import Fraction

import pytest

from progset.counting import (
    check_theorem1,
    check_theorem2,
    count_ap_solutions,
    count_gp_solutions,
    verify_cauchy_step,
    verify_counting_identity_ap,
)
from progset.errors import KTooLarge, KTooSmall, ZeroShift
from progset.generators import random_subset
from progset.productsets import ElementSet

from conftest import get_field
from oracles import nested_count_ap, nested_count_gp


def _set(q, idxs):
    return ElementSet.from_indices(q, idxs)


def test_count_ap_gf5_full_nonzero():
    t = get_field(5)
    full = ElementSet.full_nonzero(5)
    rep = count_ap_solutions(t, full, full, 3)
    assert rep.count == 512
    assert rep.main_term == Fraction(5 * 16**3, 16) == 1280
    assert abs(rep.error_bound - 2 * 5**0.5 * 16**2) < 1e-9
    assert rep.inequality_holds
    assert not rep.threshold_satisfied  # 16^2 = 256 < 4 * 125


def test_count_ap_singleton_zero():
    t = get_field(5)
    one = _set(5, [1])
    assert count_ap_solutions(t, one, one, 3).count == 0


def test_count_ap_gf7():
    t = get_field(7)
    full = ElementSet.full_nonzero(7)
    assert count_ap_solutions(t, full, full, 3).count == 5184


def test_count_ap_k_bounds():
    t = get_field(5)
    s = ElementSet.full_nonzero(5)
    with pytest.raises(KTooSmall):
        count_ap_solutions(t, s, s, 2)
    with pytest.raises(KTooLarge):
        count_ap_solutions(t, s, s, 5)


def test_count_gp_gf7():
    t = get_field(7)
    full = ElementSet.full_nonzero(7)
    rep = count_gp_solutions(t, full, full, 3, 1)
    assert rep.count == 2592
    assert rep.main_term == Fraction(36**3 * 4, 36) == 5184
    assert rep.m_card == 4
    assert rep.inequality_holds
    assert not rep.bound_applicable  # 3 > sqrt(7)


def test_count_gp_singleton():
    t = get_field(7)
    one = _set(7, [1])
    assert count_gp_solutions(t, one, one, 3, 1).count == 0


def test_count_gp_k_too_small():
    t = get_field(7)
    s = ElementSet.full_nonzero(7)
    with pytest.raises(KTooSmall):
        count_gp_solutions(t, s, s, 2, 1)


def test_counts_match_nested_oracle_on_random_sets():
    for p in (5, 7, 11):
        t = get_field(p)
        for seed in range(6):
            a = random_subset(t, 0.6, seed)
            b = random_subset(t, 0.6, seed + 31)
            av, bv = a.indices().tolist(), b.indices().tolist()
            if p > 3:
                got = count_ap_solutions(t, a, b, 3).count
                assert got == nested_count_ap(p, av, bv, 3)
            got = count_gp_solutions(t, a, b, 3, 2).count
            assert got == nested_count_gp(p, av, bv, 3, 2)


def test_counts_with_zero_members_use_starred_sets():
    t = get_field(7)
    a = _set(7, [0, 1, 2, 5])
    b = _set(7, [0, 3, 4])
    rep = count_ap_solutions(t, a, b, 3)
    assert (rep.card_a, rep.card_a_star) == (4, 3)
    assert (rep.card_b, rep.card_b_star) == (3, 2)
    assert rep.count == nested_count_ap(7, [1, 2, 5], [3, 4], 3)


def test_count_monotone_under_superset():
    t = get_field(7)
    a1 = _set(7, [1, 2])
    a2 = _set(7, [1, 2, 3])
    b = _set(7, [2, 4, 5])
    assert (
        count_ap_solutions(t, a1, b, 3).count
        <= count_ap_solutions(t, a2, b, 3).count
    )
    assert (
        count_gp_solutions(t, a1, b, 3, 1).count
        <= count_gp_solutions(t, a2, b, 3, 1).count
    )


def test_dual_path_gp_example():
    t = get_field(5)
    full = ElementSet.full_nonzero(5)
    got = count_gp_solutions(t, full, full, 3, 2).count
    assert got == nested_count_gp(5, [1, 2, 3, 4], [1, 2, 3, 4], 3, 2)


# --- character expansion and Cauchy step -------------------------------------


def test_identity_gf5_full():
    t = get_field(5)
    full = ElementSet.full_nonzero(5)
    rep = verify_counting_identity_ap(t, full, full, 3, tol=1e-5)
    assert rep.passed
    assert abs(rep.details["expansion_re"] - 512) < 1e-5


def test_identity_gf7_subgroup():
    t = get_field(7)
    rep = verify_counting_identity_ap(t, _set(7, [1, 2, 4]), _set(7, [1, 2, 4]), 3, tol=1e-5)
    assert rep.passed


def test_identity_gf7_random():
    t = get_field(7)
    a = random_subset(t, 0.6, 7)
    b = random_subset(t, 0.6, 77)
    rep = verify_counting_identity_ap(t, a, b, 3, tol=1e-5)
    assert rep.passed


def test_cauchy_equality_case():
    t = get_field(5)
    full = ElementSet.full_nonzero(5)
    rep = verify_cauchy_step(t, full, full)
    assert rep.passed
    assert abs(rep.details["lhs"] - 16.0) < 1e-9
    assert rep.details["rhs"] == 16.0


def test_cauchy_subgroup_coset_pair():
    # subgroup/coset pairs concentrate the character mass: lhs = rhs = 18
    t = get_field(7)
    rep = verify_cauchy_step(t, _set(7, [1, 2, 4]), _set(7, [3, 5, 6]))
    assert rep.passed
    assert abs(rep.details["lhs"] - 18.0) < 1e-9


def test_cauchy_strict_case():
    t = get_field(7)
    rep = verify_cauchy_step(t, _set(7, [1, 2, 4]), _set(7, [1, 3, 5, 6]))
    assert rep.passed
    assert rep.details["lhs"] < rep.details["rhs"] - 1e-6


def test_cauchy_random_gf9():
    t = get_field(3, 2)
    a = random_subset(t, 0.5, 2)
    b = random_subset(t, 0.5, 22)
    assert verify_cauchy_step(t, a, b).passed


# --- theorem hypothesis checks ------------------------------------------------


def test_theorem1_satisfied_full_field():
    t = get_field(5)
    full = ElementSet.full(5)
    chk = check_theorem1(t, full, full, 3)
    assert chk.threshold_lhs == 625
    assert chk.threshold_rhs == 500
    assert chk.threshold_satisfied and chk.found and chk.consistent
    assert chk.witness.is_valid(t)


def test_theorem1_not_satisfied_nonzero():
    t = get_field(5)
    full = ElementSet.full_nonzero(5)
    chk = check_theorem1(t, full, full, 3)
    assert chk.threshold_lhs == 256
    assert not chk.threshold_satisfied
    assert chk.found  # informational search still runs
    assert chk.consistent


def test_theorem1_k_must_be_under_characteristic():
    t = get_field(2, 2)
    s = ElementSet.full(4)
    with pytest.raises(KTooLarge):
        check_theorem1(t, s, s, 3)


def test_theorem2_threshold_edge_q67():
    # (q^2)^2 >= 64 q^3 iff q >= 64; satisfied at 67, not at 61
    t = get_field(67)
    full = ElementSet.full(67)
    chk = check_theorem2(t, full, full, 3, 1)
    assert chk.threshold_satisfied and chk.found and chk.consistent
    t61 = get_field(61)
    full61 = ElementSet.full(61)
    assert not check_theorem2(t61, full61, full61, 3, 1).threshold_satisfied


def test_theorem2_informational_search():
    t = get_field(7)
    full = ElementSet.full_nonzero(7)
    chk = check_theorem2(t, full, full, 3, 1)
    assert chk.threshold_lhs == 1296
    assert chk.threshold_rhs == 64 * 343
    assert not chk.threshold_satisfied
    assert chk.found


def test_theorem2_zero_shift():
    t = get_field(7)
    s = ElementSet.full_nonzero(7)
    with pytest.raises(ZeroShift):
        check_theorem2(t, s, s, 3, 0)


def test_simplified_constant_mostly_weaker():
    # (4k-4)^2 <= 8^(k-1) holds throughout; (k-1)^2 <= 2^(k-1) fails only at
    # k = 4 (3^(2/3) > 2), so the two thresholds are reported independently
    for k in range(3, 9):
        assert (4 * k - 4) ** 2 <= 8 ** (k - 1)
        if k != 4:
            assert (k - 1) ** 2 <= 2 ** (k - 1)
    assert 3**2 > 2**3
    t = get_field(5)
    full = ElementSet.full(5)
    chk = check_theorem1(t, full, full, 3)
    assert chk.simplified_rhs == 2 ** 2 * 5 ** 3  # 2^(k-1) q^(2k-3); ties (k-1)^2 at k=3
