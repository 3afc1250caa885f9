from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kslab.coeff import ONE, Scalar
from kslab.laurent import ZSeries, exp_series, series_eq_to_order
from kslab.models import ModelId, build_ks, build_phi, commutator_rhs
from kslab.qtorus import TorusOp, op_apply, op_commutator, op_mul, parse_op

q = Scalar.qpow(1)
half = Scalar.qpow(Fraction(1, 2))


# -- ZSeries -----------------------------------------------------------------


def test_add_cancels():
    assert ZSeries({1: 1, 0: 1}) + ZSeries({1: -1}) == ZSeries({0: 1})


def test_scale_monomial():
    s = ZSeries.monomial(-1).scale(half)
    assert s.coeffs == {-1: half}


def test_exact_product():
    assert ZSeries({0: 1, -1: 1}) * ZSeries({0: 1, -1: -1}) == ZSeries({0: 1, -2: -1})


def test_product_tail_shrinks_with_top_of_other_factor():
    a = ZSeries({0: 1}, tail_order=10)
    assert (a * ZSeries({2: 1})).tail_order == 8
    assert a.shift(-1).tail_order == 11


def test_eq_to_order_ignores_unreliable_terms():
    assert series_eq_to_order(ZSeries({0: 1}, 10), ZSeries({0: 1, -11: 1})) is None
    phi = build_phi(ModelId("hurwitz"), 0, 10)
    assert series_eq_to_order(phi, phi) is None


def test_first_discrepancy():
    d = series_eq_to_order(ZSeries({1: 1}), ZSeries({1: 2}))
    assert (d.exponent, d.left, d.right) == (1, ONE, Scalar(2))


def test_index_below_window():
    with pytest.raises(IndexError):
        ZSeries({0: 1}, 3)[-4]


def test_tsv_round_trip():
    phi = build_phi(ModelId("conifold_ii", 1), 2, 6)
    assert ZSeries.from_tsv(phi.to_tsv(), 6) == phi


def test_exp_series_of_z_inverse():
    e = exp_series({1: ONE}, 6)
    from math import factorial

    assert all(e[-n] == Scalar(Fraction(1, factorial(n))) for n in range(7))


@settings(max_examples=30, deadline=None)
@given(
    st.dictionaries(st.integers(-5, 2), st.integers(-3, 3), max_size=4),
    st.dictionaries(st.integers(-5, 2), st.integers(-3, 3), max_size=4),
)
def test_series_product_commutes(a, b):
    A, B = ZSeries(a, 8), ZSeries(b, 8)
    assert A * B == B * A


# -- TorusOp -----------------------------------------------------------------


def test_zE_squared():
    zE = TorusOp.atom(1, 1)
    assert op_mul(zE, zE) == TorusOp.atom(2, 2, q)


def test_identity_is_neutral():
    A = parse_op("1 - E^-1 - q^(1/2)*z^-1*E^-3")
    assert op_mul(TorusOp.identity(), A) == A


def test_E_z_commutator():
    assert op_commutator(TorusOp.E(), TorusOp.z()) == TorusOp.atom(1, 1, q - ONE)


def test_D_eigenvalue():
    assert op_apply(TorusOp.D(), ZSeries.monomial(3)) == ZSeries({3: 3})


def test_E_inverse_on_z_minus_two():
    assert op_apply(TorusOp.E(-1), ZSeries.monomial(-2)) == ZSeries({-2: q * q})


@pytest.mark.parametrize("a,j", [(0, 3), (1, 2), (2, 4)])
def test_Q0_on_monomial(a, j):
    _, Q0 = build_ks(ModelId("conifold_i", a))
    assert op_apply(Q0, ZSeries.monomial(j)) == ZSeries({j + 1: Scalar.qpow((a + 1) * j)})


def test_apply_tail_uses_largest_z_shift():
    f = ZSeries({0: 1}, tail_order=10)
    A = TorusOp.atom(2, 0) + TorusOp.atom(-1, 0)
    assert op_apply(A, f).tail_order == 8


def test_parse_symbolic_exponent():
    assert parse_op("z^-1*E^-(r+1)", r=2) == TorusOp.atom(-1, -3)


def test_render_parse_round_trip():
    for m in [ModelId("mv", 2), ModelId("conifold_i", -1), ModelId("conifold_ii", 2), ModelId("hurwitz")]:
        P, Q0 = build_ks(m)
        assert parse_op(str(P)) == P
        assert parse_op(str(commutator_rhs(m))) == commutator_rhs(m)


def test_operator_associativity_and_action():
    # (AB) f == A (B f) on a truncated series
    P, Q0 = build_ks(ModelId("conifold_ii", 1))
    f = build_phi(ModelId("conifold_ii", 1), 1, 10)
    assert op_apply(op_mul(P, Q0), f) == op_apply(P, op_apply(Q0, f))
    A = P + TorusOp.D()
    assert op_mul(op_mul(A, Q0), P) == op_mul(A, op_mul(Q0, P))
