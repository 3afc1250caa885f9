from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kslab.boson import (
    PPoly,
    alpha_apply,
    cut_join_apply,
    cut_join_eigenvalue,
    cut_join_ode,
    hurwitz_tau,
    lambda_expand,
    q_product_identity_check,
    schur_poly,
    standard_tableaux_counts,
    virasoro_w_apply,
)
from kslab.coeff import Scalar
from kslab.partitions import Partition, parse_partition, partitions_of, partitions_upto

u = Scalar.Qpow(1)


def p(*parts, c=1):
    return PPoly.p(*parts, coeff=c)


# -- partitions ----------------------------------------------------------------


def test_partition_basics():
    lam = Partition((1, 3, 1))
    assert tuple(lam) == (3, 1, 1)
    assert lam.size == 5 and lam.length == 3
    assert lam.z == 3 * 1 * 1 * 2
    assert lam.conjugate() == Partition((3, 1, 1))
    assert Partition((4, 2)).conjugate() == Partition((2, 2, 1, 1))
    assert parse_partition("(2,1)") == Partition((2, 1))
    with pytest.raises(ValueError):
        Partition((2, 0))


def test_partition_counts():
    assert [len(partitions_of(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]


def test_sum_of_inverse_z_is_one():
    # class equation: sum_mu 1/z_mu = 1
    for d in range(1, 7):
        assert sum(Fraction(1, mu.z) for mu in partitions_of(d)) == 1


# -- operators -----------------------------------------------------------------


def test_alpha_examples():
    assert alpha_apply(1, p(1)) == PPoly.one()
    assert alpha_apply(-2, PPoly.one()) == p(2)
    with pytest.raises(ValueError):
        alpha_apply(0, p(1))


def test_heisenberg_commutator_on_grade_le_6():
    for d in range(7):
        for mu in partitions_of(d):
            f = p(*mu)
            for m in range(1, 4):
                for n in range(-3, 4):
                    if n == 0:
                        continue
                    lhs = alpha_apply(m, alpha_apply(n, f)) - alpha_apply(n, alpha_apply(m, f))
                    expected = f.scale(m) if m + n == 0 else PPoly()
                    assert lhs == expected


def test_cut_join_examples():
    assert cut_join_apply(p(1)).is_zero()
    assert cut_join_apply(p(1, 1)) == p(2)
    assert cut_join_apply(p(2)) == p(1, 1)


def test_L0_and_L1_examples():
    for n in range(1, 7):
        assert virasoro_w_apply("L(0)", p(n), 6) == p(n, c=n)
    assert virasoro_w_apply("L(1)", p(1), 6).is_zero()


def test_K0_from_w_operator_is_cut_and_join():
    for mu in partitions_upto(5):
        f = p(*mu)
        assert virasoro_w_apply(("K", 0), f, 5) == cut_join_apply(f)


def test_virasoro_commutator_L1_Lm1():
    # [L_1, L_-1] = 2 L_0 on grade <= 4
    for mu in partitions_upto(4):
        f = p(*mu)
        a = virasoro_w_apply("L(1)", virasoro_w_apply("L(-1)", f))
        b = virasoro_w_apply("L(-1)", virasoro_w_apply("L(1)", f))
        assert a - b == virasoro_w_apply("L(0)", f).scale(2)


# -- Schur functions -------------------------------------------------------------


def test_schur_small():
    assert schur_poly((1,)) == p(1)
    assert schur_poly((2,)) == (p(1, 1) + p(2)).scale(Fraction(1, 2))
    assert schur_poly((1, 1)) == (p(1, 1) - p(2)).scale(Fraction(1, 2))


def test_p1_power_expansion():
    for d in range(1, 6):
        total = PPoly()
        for lam, f in standard_tableaux_counts(d).items():
            total = total + schur_poly(lam).scale(f)
        assert total == p(*([1] * d))


def test_tableau_counts_hook_sum():
    for d in range(1, 7):
        counts = standard_tableaux_counts(d)
        assert sum(f * f for f in counts.values()) == factorial(d)


@pytest.mark.parametrize("lam,c", [((1,), 0), ((2,), 1), ((1, 1), -1), ((3,), 3), ((2, 1), 0)])
def test_eigenvalue_examples(lam, c):
    assert cut_join_eigenvalue(lam) == Scalar(c)


def test_eigenvalue_is_content_sum_through_8():
    # diagonality is asserted inside cut_join_eigenvalue
    for lam in partitions_upto(8):
        assert cut_join_eigenvalue(lam) == Scalar(lam.content_sum())


def test_schur_involution_under_conjugation():
    # omega(p_n) = (-1)^{n-1} p_n maps s_lam to s_lam'
    for lam in partitions_upto(5):
        s = schur_poly(lam)
        omega = PPoly({mu: c * (-1) ** (mu.size - len(mu)) for mu, c in s.terms.items()})
        assert omega == schur_poly(lam.conjugate())


# -- tau -------------------------------------------------------------------------


def test_tau_low_grades():
    tau = hurwitz_tau(3)
    assert tau.grade_part(1) == p(1)
    g2 = p(1, 1, c=(u**2 + u**-2) * Fraction(1, 4)) + p(2, c=(u**2 - u**-2) * Fraction(1, 4))
    assert tau.grade_part(2) == g2


def test_tau_at_u_one_is_exp_p1():
    tau = hurwitz_tau(5)
    at_one = PPoly({mu: c.evaluate(1) for mu, c in tau.terms.items()})
    assert at_one == PPoly({Partition((1,) * d): Fraction(1, factorial(d)) for d in range(6)})


def test_lambda_expand_of_u_squared():
    series = lambda_expand(PPoly({(): u**2}), 5)
    assert [s.coeff(()) for s in series] == [Scalar(Fraction(1, factorial(b))) for b in range(6)]


def test_cut_and_join_equation():
    b_max = 6
    tau = hurwitz_tau(4)
    z = lambda_expand(tau, b_max)
    kz = lambda_expand(cut_join_apply(tau), b_max)
    for b in range(b_max):
        assert z[b + 1].scale(b + 1) == kz[b]
    assert z[0] == PPoly({Partition((1,) * d): Fraction(1, factorial(d)) for d in range(5)})


def test_ode_construction_matches():
    assert lambda_expand(hurwitz_tau(4), 5) == cut_join_ode(4, 5)


def test_tau_tsv_rows():
    text = hurwitz_tau(2).to_tsv().splitlines()
    assert text[0] == "grade\tpartition\tcoefficient"
    assert text[1] == "0\t()\t1"
    assert len(text) == 5


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=0, max_size=4), st.lists(st.integers(1, 4), max_size=3))
def test_cut_join_preserves_grade_and_is_linear(a, b):
    f, g = p(*a), p(*b, c=3)
    out = cut_join_apply(f + g)
    assert out == cut_join_apply(f) + cut_join_apply(g)
    assert all(mu.size in (sum(a), sum(b)) for mu in out.terms)


# -- q-series identities ----------------------------------------------------------


def test_q_product_symbolic_a():
    rep = q_product_identity_check(6, 20, with_a=True)
    assert rep.passed, rep.residual


def test_q_product_a_zero():
    rep = q_product_identity_check(8, 25, with_a=False)
    assert rep.passed, rep.residual


def test_q_product_x_zero():
    assert q_product_identity_check(0, 5, True).passed
