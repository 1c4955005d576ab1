import pytest
from hypothesis import given, settings, strategies as st

from artifact.currents import (
    DeltaDistribution,
    DeltaDistributionN,
    NonSimplePole,
    PoleAtSupport,
    SupportPoint,
    UnsupportedPole,
    mode,
    mul_rational,
    pm_difference,
    product,
    residue,
)
from artifact.qweyl import DifferenceOperator, TorusSpec
from artifact.scalars import RationalFunction, declare, expand, rf

SPEC = TorusSpec.make({"w0_1": 1, "w0_2": 1})
declare("z", "formal")
declare("w", "formal")

V = RationalFunction.var("v")
W1 = RationalFunction.var("w0_1")
W2 = RationalFunction.var("w0_2")
Z = RationalFunction.var("z")
Wf = RationalFunction.var("w")
X = RationalFunction.var("x")


def D(name="w0_1", exp=1):
    return DifferenceOperator.shift(SPEC, name, exp)


def sp_of(f):
    return SupportPoint.from_rf(f)


def delta(support, op, var="z"):
    return DeltaDistribution.single(SPEC, var, sp_of(support), op)


def test_mul_rational_vanishing_factor():
    e = delta(W1, DifferenceOperator.one(SPEC))
    out = mul_rational((Z - W1) / Z, e)
    assert out.is_zero()


def test_mul_rational_evaluates_at_support():
    e = delta(X, DifferenceOperator.one(SPEC))
    out = mul_rational(Z, e)
    assert out.terms[sp_of(X)] == DifferenceOperator.from_scalar(SPEC, X)


def test_mul_rational_shifted_support():
    e = delta(W1, D())
    out = mul_rational(1 - V**2 * W1 / Z, e)
    assert out.terms[sp_of(W1)] == (1 - V**2) * D()


def test_mul_rational_pole_at_support_raises():
    e = delta(W1, D())
    with pytest.raises(PoleAtSupport):
        mul_rational(rf(1) / (Z - W1), e)


def test_mode_examples():
    e = delta(W1, D(exp=-1))
    assert mode(e, 0) == D(exp=-1)
    assert mode(e, -2) == W1 ** (-2) * D(exp=-1)
    e2 = delta(V**2 * W1, D())
    assert mode(e2, 1) == (V**2 * W1) * D()


def test_product_empty():
    e = DeltaDistribution.zero(SPEC, "z")
    f = delta(W1, D(), var="w")
    assert product(e, f).is_zero()


def test_product_diagonal_collapse():
    # E = delta(w1/z) D^-1, F = delta(v^2 w1/w) D: moving D^-1 past the
    # second support turns v^2 w1 into w1, so the pair is diagonal.
    e = delta(W1, D(exp=-1), var="z")
    f = DeltaDistribution.single(SPEC, "w", sp_of(V**2 * W1), D())
    p = product(e, f)
    assert not p.offdiag
    assert list(p.diag) == [sp_of(W1)]
    assert p.diag[sp_of(W1)] == D(exp=-1) * D()


def test_product_term_census_two_points():
    # two torus points at one vertex: E(z) F(w) has 4 terms, 2 diagonal
    one = DifferenceOperator.one(SPEC)
    e = delta(W1, D("w0_1", -1), var="z") + delta(W2, D("w0_2", -1), var="z")
    f = DeltaDistribution.single(SPEC, "w", sp_of(V**2 * W1), D("w0_1")) + \
        DeltaDistribution.single(SPEC, "w", sp_of(V**2 * W2), D("w0_2"))
    p = product(e, f)
    assert len(p.diag) == 2
    assert len(p.offdiag) == 2
    assert p.term_count() == 4


def test_product_respects_modes():
    e = delta(W1, D(exp=-1), var="z") + delta(V * W2, DifferenceOperator.one(SPEC), var="z")
    f = DeltaDistribution.single(SPEC, "w", sp_of(V**2 * W1), D()) + \
        DeltaDistribution.single(SPEC, "w", sp_of(W2), D("w0_2", 1))
    p = product(e, f)
    for r in (-1, 0, 2):
        for s in (-2, 0, 1):
            assert p.mode(r, s) == e.mode(r) * f.mode(s), (r, s)


def test_pm_difference_simple_pole():
    g = X / (Z - X)
    d = pm_difference(SPEC, g)
    assert list(d.terms) == [sp_of(X)]
    assert d.terms[sp_of(X)] == DifferenceOperator.one(SPEC)


def test_pm_difference_laurent_polynomial():
    g = Z**2 + 3 + Z ** (-1)
    assert pm_difference(SPEC, g).is_zero()


def test_pm_difference_two_poles():
    g = Wf / ((1 - Wf / Z) * (1 - V**2 * Wf / Z))
    d = pm_difference(SPEC, g, var="z")
    want_lo = Wf / (1 - V**2)
    want_hi = -(V**2) * Wf / (1 - V**2)
    assert d.terms[sp_of(Wf)].scalar_part() == want_lo
    assert d.terms[sp_of(V**2 * Wf)].scalar_part() == want_hi


def test_residue_examples():
    assert residue(X / (Z - X), sp_of(X)) == rf(1)
    assert residue(1 / (1 - X / Z), sp_of(X)) == rf(1)
    with pytest.raises(NonSimplePole):
        residue(rf(1) / ((Z - X) * (Z - X)), sp_of(X))


def test_pm_difference_rejects_non_simple():
    with pytest.raises(NonSimplePole):
        pm_difference(SPEC, rf(1) / ((Z - X) * (Z - X)))


def test_pm_difference_rejects_non_monomial_pole():
    with pytest.raises(UnsupportedPole):
        pm_difference(SPEC, rf(1) / (Z - X - 1))


def test_symmetrize_two_variables():
    e = delta(W1, DifferenceOperator.one(SPEC), var="z1")
    f = DeltaDistribution.single(SPEC, "z2", sp_of(W2), DifferenceOperator.one(SPEC))
    two = DeltaDistributionN.from_single(e).append(f)
    sym = two.symmetrize([(0, 1), (1, 0)])
    flipped = {t: op for t, op in sym.terms.items()}
    assert (sp_of(W1), sp_of(W2)) in flipped and (sp_of(W2), sp_of(W1)) in flipped


# -- the expansion-difference oracle ------------------------------------------

_gammas = [
    X / (Z - X),
    Wf / ((1 - Wf / Z) * (1 - V**2 * Wf / Z)),
    (Z - V * Wf) / (Z - Wf),
    rf(1) / ((1 - Wf / Z) * (1 - V**4 * Wf / Z)) * (1 - V * Wf / Z),
    Z / (Z - V**2 * X) + X / Z,
]


@pytest.mark.parametrize("gamma", _gammas)
def test_key_equality_oracle(gamma):
    M = 6
    plus = expand(gamma, "z", "+", M)
    minus = expand(gamma, "z", "-", M)
    d = pm_difference(SPEC, gamma, var="z")
    for r in range(-M, M + 1):
        got = d.mode(r).scalar_part()
        want = plus.coeff_stored(2 * r) - minus.coeff_stored(-2 * r)
        assert got == want, r


@given(st.integers(-3, 3), st.integers(1, 4), st.integers(-2, 2))
@settings(max_examples=40, deadline=None)
def test_key_equality_random_single_pole(a, e, b):
    # gamma = x^e v^b / (z - v^a x): residue and expansions agree
    pole = RationalFunction.var("v") ** a * X
    gamma = (X**e * RationalFunction.var("v") ** b) / (Z - pole)
    M = 5
    plus = expand(gamma, "z", "+", M)
    minus = expand(gamma, "z", "-", M)
    d = pm_difference(SPEC, gamma, var="z")
    for r in range(-M, M + 1):
        got = d.mode(r).scalar_part()
        want = plus.coeff_stored(2 * r) - minus.coeff_stored(-2 * r)
        assert got == want, r
