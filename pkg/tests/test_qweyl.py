import pytest
from hypothesis import given, settings, strategies as st

from artifact.qweyl import (
    DifferenceOperator,
    LocalizationError,
    TorusSpec,
    apply_shift,
    commutator,
)
from artifact.scalars import RationalFunction, rf

SPEC = TorusSpec.make({"w0_1": 1, "w0_2": 1, "w1_1": 2})

W = RationalFunction.var("w0_1")
W2 = RationalFunction.var("w0_2")
V = RationalFunction.var("v")
Z = RationalFunction.var("z")


def D(name="w0_1", exp=1, coeff=None):
    return DifferenceOperator.shift(SPEC, name, exp, coeff)


def scal(c):
    return DifferenceOperator.from_scalar(SPEC, c)


def test_shift_relation_on_whole_variable():
    # D w = v^2 w D at weight 1
    lhs = D() * scal(W)
    rhs = scal(V**2 * W) * D()
    assert lhs == rhs


def test_shift_relation_weight_two():
    # at weight 2 the square of the half-power relation gives v^4
    got = DifferenceOperator.shift(SPEC, "w1_1") * scal(RationalFunction.var("w1_1"))
    want = scal(V**4 * RationalFunction.var("w1_1")) * DifferenceOperator.shift(SPEC, "w1_1")
    assert got == want


def test_shift_relation_half_power():
    half = RationalFunction.half("w0_1", 1)
    assert D() * scal(half) == scal(V * half) * D()


def test_inverse_cancels():
    assert D(exp=1) * D(exp=-1) == scal(1)
    assert D(exp=-1) * D(exp=1) == scal(1)


def test_wd_squared():
    wd = scal(W) * D()
    assert wd * wd == scal(V**2 * W**2) * D(exp=2)


def test_apply_shift_examples():
    assert apply_shift(SPEC, {"w0_1": 1}, W) == V**2 * W
    f = rf(1) / (1 - W / Z)
    assert apply_shift(SPEC, {"w0_1": -1}, f) == rf(1) / (1 - W / (V**2 * Z))
    u = RationalFunction.half("w0_1", 1)
    assert apply_shift(SPEC, {"w0_1": 2}, u) == V**2 * u


def test_commutator_examples():
    assert commutator(D(), scal(W), V**2).is_zero()
    a = scal(W) * D()
    b = D() * scal(W)  # = v^2 w D
    got = commutator(a, b, 1)
    assert got.is_zero()  # both equal up to the same scalar, so they commute
    assert commutator(a, b, 0) == a * b


def test_commutator_with_inverse_shift():
    # [D, w D^-1] = (v^2 - 1) w  as an identity in the algebra
    a = D()
    b = scal(W) * D(exp=-1)
    got = commutator(a, b, 1)
    assert got == scal((V**2 - 1) * W)


def test_localization_accepts_standard_denominators():
    ok = rf(1) / (W - V**2 * W2)
    DifferenceOperator(SPEC, {(): ok})
    ok2 = rf(1) / ((1 - V**2) * W)
    DifferenceOperator(SPEC, {(): ok2})
    ok3 = rf(1) / (1 - W / W2)
    DifferenceOperator(SPEC, {(): ok3})


def test_localization_exempts_spectral_variables():
    f = rf(1) / (Z - W)
    DifferenceOperator(SPEC, {(): f})  # no error: z present


def test_localization_rejects_bad_denominator():
    bad = rf(1) / (1 + W)
    with pytest.raises(LocalizationError):
        DifferenceOperator(SPEC, {(): bad})
    bad2 = rf(1) / (W + W2)
    with pytest.raises(LocalizationError):
        DifferenceOperator(SPEC, {(): bad2})


@st.composite
def operators(draw):
    terms = {}
    n = draw(st.integers(1, 3))
    for _ in range(n):
        name = draw(st.sampled_from(("w0_1", "w0_2")))
        e = draw(st.integers(-2, 2))
        num = draw(st.integers(-3, 3))
        wpow = draw(st.integers(0, 2))
        c = rf(num) * RationalFunction.var(name, wpow) * V ** draw(st.integers(-1, 2))
        key = ((name, e),) if e else ()
        terms[key] = terms.get(key, rf(0)) + c
    return DifferenceOperator(SPEC, terms, audit=False)


@given(operators(), operators(), operators())
@settings(max_examples=100, deadline=None)
def test_multiply_associative(a, b, c):
    assert (a * b) * c == a * (b * c)
