import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from progset.characters import (
    char_eval,
    char_sum_over_set,
    conj_char,
    gp_structure_sum,
    verify_gp_structure_bound,
    verify_orthogonality,
    verify_weil_bound_ap,
    weil_bound_ap,
    weil_sum_ap,
)
from progset.errors import (
    ConfigError,
    KTooLarge,
    OrthogonalityViolation,
    ZeroShift,
)
from progset.field import FieldTables
from progset.productsets import ElementSet
from progset.progressions import compute_m_set

from conftest import get_field
from oracles import legendre


def test_quadratic_character_is_legendre_symbol():
    for p in (5, 7, 11, 13):
        t = get_field(p)
        eta = (p - 1) // 2
        for x in range(p):
            want = legendre(x, p)
            got = char_eval(t, eta, x)
            assert abs(got - want) < 1e-12


def test_principal_character_convention():
    for p, n in ((5, 1), (3, 2)):
        t = get_field(p, n)
        assert char_eval(t, 0, 0) == 0
        for x in range(1, t.q):
            assert abs(char_eval(t, 0, x) - 1) < 1e-12


def test_char_values_unit_modulus():
    t = get_field(3, 2)
    for c in range(t.order):
        for x in range(1, t.q):
            assert abs(abs(char_eval(t, c, x)) - 1) < 1e-12


def test_char_sum_examples():
    t5 = get_field(5)
    qrs = ElementSet.from_indices(5, [1, 4])
    assert abs(char_sum_over_set(t5, 2, qrs) - 2) < 1e-12
    full = ElementSet.full_nonzero(5)
    for c in range(1, 4):
        assert abs(char_sum_over_set(t5, c, full)) < 1e-12
    with_zero = ElementSet.from_indices(5, [0, 1, 2])
    assert abs(char_sum_over_set(t5, 0, with_zero) - 2) < 1e-12


@given(st.integers(0, 47), st.integers(1, 48), st.integers(1, 48))
@settings(max_examples=80, deadline=None)
def test_multiplicativity(c, xi, yi):
    t = get_field(7, 2)
    x, y = xi % t.q or 1, yi % t.q or 1
    lhs = char_eval(t, c % t.order, t.mul(x, y))
    rhs = char_eval(t, c % t.order, x) * char_eval(t, c % t.order, y)
    assert abs(lhs - rhs) < 1e-10


@given(st.integers(0, 24), st.integers(0, 24), st.integers(1, 24))
@settings(max_examples=80, deadline=None)
def test_group_closure_and_conjugation(s, c, xi):
    t = get_field(5, 2)
    x = xi % t.q or 1
    prod = char_eval(t, s % t.order, x) * char_eval(t, c % t.order, x)
    assert abs(prod - char_eval(t, (s + c) % t.order, x)) < 1e-12
    assert abs(char_eval(t, conj_char(t, c % t.order), x)
               - char_eval(t, c % t.order, x).conjugate()) < 1e-12


@pytest.mark.parametrize("p,n", [(5, 1), (3, 2), (7, 1), (13, 1), (2, 4)])
def test_orthogonality_passes(p, n):
    t = get_field(p, n)
    rep = verify_orthogonality(t, tol=1e-9)
    assert rep.passed
    assert rep.max_residual < 1e-12 * t.q


def test_orthogonality_negative_control():
    t = get_field(7)
    corrupted = FieldTables(t.spec, t.g, t.exp.copy(), t.dlog.copy())
    corrupted.dlog[3] = corrupted.dlog[2]  # duplicate entry breaks bijectivity
    with pytest.raises(OrthogonalityViolation):
        verify_orthogonality(corrupted, tol=1e-9)


def test_orthogonality_cap():
    with pytest.raises(ConfigError):
        verify_orthogonality(get_field(5003))


def test_weil_sum_quadratic_example():
    t = get_field(5)
    val = weil_sum_ap(t, [2, 2, 2])
    assert abs(val - 2) < 1e-12
    assert abs(val) <= 2 * np.sqrt(5)


def test_weil_sum_principal_counts_support():
    t = get_field(5)
    assert abs(weil_sum_ap(t, [0, 0, 0]) - 2) < 1e-12


def test_weil_sum_matches_direct_high_precision_loop():
    # independent double evaluation at 40-digit precision via mpmath
    import mpmath

    mpmath.mp.dps = 40
    t = get_field(7)
    group = t.order
    for chars in ([3, 3, 0], [1, 2, 3], [5, 1, 4], [6, 6, 6]):
        direct = mpmath.mpc(0)
        for lam in range(7):
            term = mpmath.mpc(1)
            for i, c in enumerate(chars):
                x = (lam + i) % 7
                if x == 0:
                    term = mpmath.mpc(0)
                    break
                term *= mpmath.e ** (2j * mpmath.pi * c * t.dlog_of(x) / group)
            direct += term
        got = weil_sum_ap(t, chars)
        assert abs(got - complex(direct)) < 1e-10


@pytest.mark.parametrize("p", [5, 7])
def test_weil_exhaustive_small(p):
    t = get_field(p)
    rep = verify_weil_bound_ap(t, 3, mode="exhaustive")
    assert rep.passed
    assert rep.checks == (p - 1) ** 3 - 1


def test_weil_k_must_be_under_characteristic():
    with pytest.raises(KTooLarge):
        verify_weil_bound_ap(get_field(3, 2), 3)


def test_weil_exhaustive_cap_enforced():
    with pytest.raises(ConfigError):
        verify_weil_bound_ap(get_field(101), 4, mode="exhaustive")


def test_weil_bound_slack_only_for_mixed():
    assert weil_bound_ap(25, 3, mixed=False) == 2 * 5.0
    assert weil_bound_ap(25, 3, mixed=True) == 2 * 5.0 + 3


def test_gp_structure_sum_principal_counts_pairs():
    t = get_field(7)
    m = compute_m_set(t, 3)
    val = gp_structure_sum(t, [0, 0, 0], 1, m)
    assert abs(val - 12) < 1e-12


def test_gp_structure_sum_quadratic_bounded():
    t = get_field(7)
    m = compute_m_set(t, 3)
    val = gp_structure_sum(t, [3, 3, 3], 1, m)
    assert abs(val) <= 2 * 2 * 6 * np.sqrt(7)


def test_gp_structure_sum_rejects_zero_shift():
    t = get_field(7)
    with pytest.raises(ZeroShift):
        gp_structure_sum(t, [0, 0, 0], 0, compute_m_set(t, 3))


def test_gp_structure_exhaustive_q7():
    for h in (1, 2):
        rep = verify_gp_structure_bound(get_field(7), 3, h, mode="exhaustive")
        assert rep.passed
        assert rep.checks == 6**3 - 1


def test_gp_structure_principal_tuple_real():
    # all-principal structure sums count zero-free pairs, hence real
    t = get_field(11)
    m = compute_m_set(t, 3)
    for h in (1, 5):
        v = gp_structure_sum(t, [0, 0, 0], h, m)
        assert abs(v.imag) < 1e-9
        assert v.real >= 0
