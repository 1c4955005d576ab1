import pytest
from hypothesis import given, settings, strategies as st

from artifact.currents import DeltaDistribution, SupportPoint
from artifact.phi import (
    PhiDatum,
    e_avatar,
    f_avatar,
    jpg_identity,
    levendorskii_reconstruct,
    phi_abcd,
    phi_current,
    phi_mode,
    phi_psi,
    prop113_check,
    quantum_resultant_check,
    relation_ids,
    truncation_ideal_check,
    verify_relation,
)
from artifact.qweyl import DifferenceOperator
from artifact.scalars import RationalFunction, rf

SL2 = PhiDatum.from_preset("A1", (1,))
SL2F = PhiDatum.from_preset("A1", (1,), lambda_seq=(0,))
SL3 = PhiDatum.from_preset("A2", (1, 1))
SPEC = SL2.spec

V = RationalFunction.var("v")
W = RationalFunction.var("w0_1")
Z = RationalFunction.var("z")
ZF = RationalFunction.var("zf1")
WH = RationalFunction.monomial({"w0_1": 1})    # w^(1/2)
WHm = RationalFunction.monomial({"w0_1": -1})  # w^(-1/2)


def D(exp=1, coeff=None):
    if coeff is None:
        return DifferenceOperator.shift(SPEC, "w0_1", exp)
    return DifferenceOperator.shift(SPEC, "w0_1", exp, coeff=coeff)


def scalar(c):
    return DifferenceOperator.from_scalar(SPEC, c)


# -- images on the one-box datum, against hand-computed operators -------------

E_OP = D(-1, coeff=-V * W / (1 - V**2))
F_OP = D(+1, coeff=rf(1) / (1 - V**2))


def test_e_current_single_box():
    want = DeltaDistribution.single(SPEC, "z", SupportPoint(0, "w0_1", 2), E_OP)
    assert phi_current("e", 0, SL2) == want


def test_f_current_single_box():
    # f is supported at v^2 w with a raising shift
    want = DeltaDistribution.single(SPEC, "z", SupportPoint(4, "w0_1", 2), F_OP)
    assert phi_current("f", 0, SL2) == want


def test_current_is_cached():
    assert phi_current("e", 0, SL2) is phi_current("e", 0, SL2)


def test_psi_value():
    want = W / ((1 - W / Z) * (1 - V**2 * W / Z))
    assert phi_psi(0, "+", SL2) == want
    assert phi_psi(0, "-", SL2) == want


def test_psi_value_with_framing_leg():
    want = W * (1 - V * ZF / Z) / ((1 - W / Z) * (1 - V**2 * W / Z))
    assert phi_psi(0, "+", SL2F) == want


def test_group_like_images():
    assert phi_mode(("phi+", 0), SL2).scalar_part() == WH
    assert phi_mode(("phi-", 0), SL2).scalar_part() == -V ** (-1) * WHm
    # powers multiply on the nose
    assert phi_mode(("phi+", 0, 2), SL2).scalar_part() == W
    assert phi_mode(("phi-", 0, 2), SL2).scalar_part() == V ** (-2) * W.inverse()


ABCD_ORACLES = {
    "A+": scalar(WHm * (1 - W / Z)),
    "A-": scalar(-V * WH * (1 - Z / W)),
    "B+": D(-1, coeff=WH),
    "B-": D(-1, coeff=V * Z * WH),
    "C+": D(+1, coeff=-WH / Z),
    "C-": D(+1, coeff=-V * WH),
    "D+": scalar(WH),
    "D-": scalar(V * Z * WH),
}


@pytest.mark.parametrize("kind", sorted(ABCD_ORACLES))
def test_abcd_images_single_box(kind):
    assert phi_abcd(kind, 0, SL2) == ABCD_ORACLES[kind]


def test_bc_from_a_and_half_currents():
    # the lowering/raising series factor through A and the avatars
    vv = V - V.inverse()
    Ap = phi_abcd("A+", 0, SL2)
    assert vv * (Ap * e_avatar(0, SL2, "z")) == phi_abcd("B+", 0, SL2)
    assert vv * (f_avatar(0, SL2, "z") * Ap) == phi_abcd("C+", 0, SL2)


# -- mode extraction ----------------------------------------------------------

def test_current_modes():
    assert phi_mode(("e", 0, 0), SL2) == E_OP
    assert phi_mode(("e", 0, 2), SL2) == W**2 * E_OP
    assert phi_mode(("f", 0, -1), SL2) == (V**2 * W).inverse() * F_OP


def test_abcd_modes():
    assert phi_mode(("B+", 0, 0), SL2) == D(-1, coeff=WH)
    assert phi_mode(("C+", 0, 1), SL2) == D(+1, coeff=-WH)
    assert phi_mode(("D-", 0, -1), SL2) == scalar(V * WH)


def test_b_plus_high_modes_vanish():
    # the truncation kills everything past the framing degree
    for r in (1, 2, 3):
        assert phi_mode(("B+", 0, r), SL2).is_zero()


def test_modes_outside_support_raise():
    with pytest.raises(ValueError):
        phi_mode(("C+", 0, 0), SL2)
    with pytest.raises(ValueError):
        phi_mode(("psi+", 0, -1), SL2)
    with pytest.raises(ValueError):
        phi_mode(("psi-", 0, -1), SL2)  # support ends at b = -2
    with pytest.raises(ValueError):
        phi_mode(("B-", 0, 0), SL2)


def test_psi_and_h_modes():
    assert phi_mode(("psi+", 0, 0), SL2).scalar_part() == W
    assert phi_mode(("psi+", 0, 1), SL2).scalar_part() == (1 + V**2) * W**2
    assert phi_mode(("psi-", 0, -2), SL2).scalar_part() == (V**2 * W).inverse()
    vv = V - V.inverse()
    assert phi_mode(("h", 0, 1), SL2).scalar_part() == (1 + V**2) * W / vv
    assert phi_mode(("h", 0, -1), SL2).scalar_part() == -(1 + V**2) / (V**2 * W * vv)


@given(st.integers(-3, 3))
@settings(max_examples=20, deadline=None)
def test_e_mode_scaling(r):
    assert phi_mode(("e", 0, r), SL2) == W**r * E_OP


@given(st.integers(-3, 3))
@settings(max_examples=20, deadline=None)
def test_f_mode_scaling(s):
    assert phi_mode(("f", 0, s), SL2) == (V**2 * W) ** s * F_OP


# -- relation suite -----------------------------------------------------------

@pytest.mark.parametrize("rid", relation_ids())
@pytest.mark.parametrize("datum", [SL2, SL2F, SL3], ids=["sl2", "sl2-framed", "sl3"])
def test_relation_passes(rid, datum):
    rep = verify_relation(rid, datum, window=2)
    assert rep["status"] == "PASS", rep


def test_relation_report_shape():
    rep = verify_relation("U6", SL2, window=2)
    assert set(rep) == {"relation", "datum", "instances", "status"}
    assert rep["relation"] == "U6"
    assert rep["datum"] == SL2.digest()
    for inst in rep["instances"]:
        assert inst["status"] == "PASS" and "witness" not in inst


def test_serre_relations_have_instances_beyond_rank_one():
    # vacuous on one vertex, two instances on two
    assert verify_relation("U7", SL2, window=2)["instances"] == []
    assert len(verify_relation("U7", SL3, window=2)["instances"]) == 2
    assert len(verify_relation("ABCD13", SL3, window=2)["instances"]) == 2


def test_relation_aliases():
    assert verify_relation("Û3", SL2, window=1)["relation"] == "hatU3"
    assert verify_relation("U4'", SL2, window=1)["relation"] == "U4p"
    with pytest.raises(ValueError):
        verify_relation("U99", SL2)


def test_levendorskii_reconstruction():
    for datum in (SL2, SL2F, SL3):
        rep = levendorskii_reconstruct(datum, window=2)
        assert rep["status"] == "PASS", rep
        assert rep["instances"], "no rungs checked"


# -- wedge ladders, summation identity, resultant ------------------------------

def test_prop113_small_cases():
    for n, m in [(1, 1), (2, 1), (2, 2), (3, 2)]:
        rep = prop113_check(n, m)
        assert rep["status"] == "PASS", (n, m, rep)
    assert prop113_check(1, 1)["oracle"] == "(1) * D[w0_1]"


def test_jpg_identity_values():
    want = {
        0: "(v^2 - 1)/(v^2*w0_1)",
        1: "(-v^2 + 1)/(v^4*w0_1*w0_2)",
        2: "(v^2 - 1)/(v^6*w0_1*w0_2*w0_3)",
    }
    for k, val in want.items():
        rep = jpg_identity(k)
        assert rep["status"] == "PASS" and rep["value"] == val, rep


def test_quantum_resultant():
    rep = quantum_resultant_check(1)
    assert rep["status"] == "PASS"
    assert rep["product"] == "(1)"
    rep = quantum_resultant_check(2)
    assert rep["status"] == "PASS", rep


def test_truncation_ideal():
    for datum in (SL2, SL2F):
        rep = truncation_ideal_check(datum)
        assert rep["status"] == "PASS", rep
