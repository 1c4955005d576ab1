from artifact.cartan import (
    CartanDatum,
    FramingDatum,
    ShiftDatum,
    preset,
    shift_from_coweights,
    shift_from_framing,
)


def test_shift_from_coweights_sl2():
    sl2 = preset("A1")
    assert shift_from_coweights(sl2, (-2,)).b == (-2,)
    assert shift_from_coweights(sl2, (0,)).b == (0,)


def test_shift_from_coweights_sl3():
    sl3 = preset("A2")
    s = shift_from_coweights(sl3, (-1, 0))
    assert s.b == (-1, 0)
    assert s.bplus == (0, 0)


def test_shift_addition_and_antidominance():
    s1 = ShiftDatum((0, 0), (-1, -2))
    s2 = ShiftDatum((-1, 0), (0, -1))
    assert (s1 + s2).b == (-2, -3)
    assert s1.is_antidominant()
    assert not ShiftDatum((1, 0), (0, 0)).is_antidominant()


def test_validate_presets():
    for name in ("A1", "A2", "A3", "A4", "B2", "G2"):
        report = preset(name).validate()
        assert report["valid"], (name, report)


def test_validate_rejects_unsymmetrizable():
    bad = CartanDatum(c=((2, -1), (-2, 2)), d=(1, 1), orientation=((0, 1),))
    report = bad.validate()
    assert not report["valid"]
    assert any("symmetrizability" in p for p in report["problems"])


def test_validate_rejects_missing_orientation():
    bad = CartanDatum(c=((2, -1), (-1, 2)), d=(1, 1), orientation=())
    report = bad.validate()
    assert not report["valid"]


def test_framing_counts_and_names():
    fr = FramingDatum(lambda_seq=(0, 1, 0), a=(2, 1))
    assert fr.N == 3
    assert fr.N_i(0) == 2 and fr.N_i(1) == 1
    assert fr.z_names() == ("zf1", "zf2", "zf3")
    assert fr.z_names(0) == ("zf1", "zf3")
    assert fr.w_names(0) == ("w0_1", "w0_2")
    assert fr.w_names(1) == ("w1_1",)


def test_shift_from_framing_matches_pairing():
    # single vertex: b = N - 2a
    sl2 = preset("A1")
    fr = FramingDatum(lambda_seq=(), a=(1,))
    assert shift_from_framing(sl2, fr).b == (-2,)
    fr2 = FramingDatum(lambda_seq=(0, 0), a=(1,))
    assert shift_from_framing(sl2, fr2).b == (0,)
    # the two-vertex example with unequal symmetrizers
    b2 = preset("B2")
    fr3 = FramingDatum(lambda_seq=(), a=(1, 1))
    s = shift_from_framing(b2, fr3)
    assert s.bminus == (0 - (2 * 1 + (-2) * 1), 0 - ((-1) * 1 + 2 * 1))


def test_json_round_trip():
    c = preset("B2")
    assert CartanDatum.from_json(c.to_json()) == c
    s = ShiftDatum((0,), (-3,))
    assert ShiftDatum.from_json(s.to_json()) == s
    fr = FramingDatum((0, 1), (1, 2))
    assert FramingDatum.from_json(fr.to_json()) == fr
