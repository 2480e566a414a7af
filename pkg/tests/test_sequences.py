import json
from fractions import Fraction

import pytest

from toroshrink.linkio import NMLinkSpec
from toroshrink.sequences import (
    EventuallyPeriodicSequence,
    ExplicitSequence,
    GapSequence,
    GeneratorSequence,
    HorizonError,
    IntPoly,
    PeriodicSequence,
    SequenceError,
    parse_poly,
    parse_sequence_config,
    sequence_to_config,
    tau,
)


def test_parse_poly_examples():
    assert parse_poly("2*s^2")(3) == 18
    assert parse_poly("(s+1)^2")(2) == 9
    assert parse_poly("i+1")(7) == 8
    assert parse_poly("3")(100) == 3
    assert parse_poly("2*i - 4")(1) == -2
    assert parse_poly("-s + s^2")(3) == 6


def test_parse_poly_rejects_garbage():
    for bad in ["", "s + t", "s^", "2**s", "s^-1", "(s+1", "s)"]:
        with pytest.raises(SequenceError):
            parse_poly(bad)


def test_poly_text_round_trip():
    for text in ["2*s^2", "(s+1)^2", "i+1", "7", "s^3 - 2*s + 1"]:
        p = parse_poly(text)
        assert parse_poly(p.text("s")) == p


def test_ge_from_complete_decision():
    p = parse_poly("2*i - 4")
    assert p.ge_from(0, 1) == (False, 1)
    assert p.ge_from(0, 2) == (True, None)
    q = parse_poly("i^2 - 10*i + 1")
    ok, witness = q.ge_from(0, 1)
    assert not ok and q(witness) < 0
    assert q.ge_from(0, 10) == (True, None)
    neg = parse_poly("5 - i^2")
    ok, witness = neg.ge_from(0, 1)
    assert not ok and neg(witness) < 0


def test_ge_from_constant():
    assert IntPoly.const(3).ge_from(1, 5) == (True, None)
    assert IntPoly.const(0).ge_from(1, 5)[0] is False


def test_divide_exact():
    s = IntPoly.var()
    p = parse_poly("2*s^2 + 2*s")
    assert p.divide_exact(parse_poly("2*s")) == parse_poly("s + 1")
    assert p.divide_exact(parse_poly("3*s")) is None
    assert parse_poly("s^2+1").divide_exact(parse_poly("s")) is None
    assert parse_poly("2*(s+1)^2").divide_exact(IntPoly.const(2)) == parse_poly(
        "(s+1)^2"
    )


def test_shifted_arg():
    p = parse_poly("s^2")
    assert p.shifted_arg(1) == parse_poly("(s+1)^2")
    assert p.shifted_arg(1)(4) == 25


def test_periodic_sequence():
    seq = PeriodicSequence(((2, 1), (1, 1)))
    assert seq.link(1) == NMLinkSpec(2, 1)
    assert seq.link(2) == NMLinkSpec(1, 1)
    assert seq.link(3) == NMLinkSpec(2, 1)
    assert seq.tau(2) == Fraction(1, 2)


def test_eventually_periodic_sequence():
    seq = EventuallyPeriodicSequence(prefix=((4, 1),), tail=((2, 1),))
    assert seq.link(1) == NMLinkSpec(4, 1)
    assert seq.link(2) == seq.link(77) == NMLinkSpec(2, 1)


def test_generator_single_form():
    seq = GeneratorSequence(n_poly=parse_poly("2*i"), m_poly=parse_poly("i+1"))
    assert seq.link(3) == NMLinkSpec(6, 4)
    assert seq.tau(3) == Fraction(6, 8)


def test_generator_two_case_form():
    seq = GeneratorSequence(
        even_n=parse_poly("2*s^2"),
        even_m=parse_poly("1"),
        odd_n=parse_poly("2"),
        odd_m=parse_poly("(s+1)^2"),
    )
    assert seq.link(1) == NMLinkSpec(2, 1)  # odd index 1: s = 0
    assert seq.link(2) == NMLinkSpec(2, 1)  # even index 2: s = 1
    assert seq.link(5) == NMLinkSpec(2, 9)  # odd index 5: s = 2
    assert seq.link(6) == NMLinkSpec(18, 1)  # even index 6: s = 3


def test_generator_rejects_nonpositive_terms():
    with pytest.raises(SequenceError, match=">= 1"):
        GeneratorSequence(n_poly=parse_poly("i - 3"), m_poly=parse_poly("1"))


def test_explicit_sequence_horizon():
    seq = ExplicitSequence(((2, 1), (1, 1)))
    assert seq.known_bound() == 2
    assert seq.link(2) == NMLinkSpec(1, 1)
    with pytest.raises(HorizonError):
        seq.link(3)


def test_parse_sequence_config_periodic():
    cfg = '{"variant":"periodic","links":[{"nm":[2,1]},{"nm":[1,1]}]}'
    seq = parse_sequence_config(cfg)
    assert isinstance(seq, PeriodicSequence)
    assert seq.links == (NMLinkSpec(2, 1), NMLinkSpec(1, 1))


def test_parse_sequence_config_generator_two_case():
    cfg = (
        '{"variant":"generator",'
        '"even":{"n":"2*s^2","m":"1"},'
        '"odd":{"n":"2","m":"(s+1)^2"}}'
    )
    seq = parse_sequence_config(cfg)
    assert isinstance(seq, GeneratorSequence) and seq.two_case


def test_parse_sequence_config_aliases():
    seq = parse_sequence_config(
        {"variant": "periodic", "links": ["bing", "whitehead", "nm(3,2)"]}
    )
    assert seq.links == (NMLinkSpec(2, 1), NMLinkSpec(1, 1), NMLinkSpec(3, 2))


def test_config_round_trip():
    configs = [
        {"variant": "periodic", "links": [{"nm": [2, 2]}]},
        {
            "variant": "eventually_periodic",
            "prefix": [{"nm": [4, 1]}],
            "period": [{"nm": [2, 1]}],
        },
        {"variant": "explicit", "links": [{"nm": [1, 1]}, {"nm": [2, 1]}]},
        {"variant": "generator", "n": "2*i", "m": "i + 1"},
        {
            "variant": "generator",
            "even": {"n": "2*s^2", "m": "1"},
            "odd": {"n": "2", "m": "s^2 + 2*s + 1"},
        },
    ]
    for cfg in configs:
        seq = parse_sequence_config(json.dumps(cfg))
        again = parse_sequence_config(sequence_to_config(seq))
        upto = seq.known_bound() or 8
        for i in range(1, upto + 1):
            assert seq.link(i) == again.link(i)


def test_parse_sequence_config_errors():
    with pytest.raises(SequenceError):
        parse_sequence_config({"variant": "spiral"})
    with pytest.raises(SequenceError):
        parse_sequence_config({"variant": "periodic", "links": ["trefoil"]})


def test_gap_sequence_periodic():
    gaps = GapSequence.periodic([1, 2])
    assert [gaps.gap(i) for i in range(1, 5)] == [1, 2, 1, 2]
    assert gaps.term(2) == Fraction(2, 4)


def test_gap_sequence_poly():
    gaps = GapSequence.from_poly("i")
    assert gaps.gap(5) == 5
    assert gaps.term(3) == Fraction(3, 8)


def test_gap_sequence_two_pow():
    gaps = GapSequence.two_pow()
    assert gaps.gap(4) == 16
    assert gaps.term(4) == 1


def test_gap_sequence_from_positions():
    gaps = GapSequence.from_positions([2, 5, 6])
    assert gaps.values == (1, 2, 0)
    with pytest.raises(SequenceError):
        GapSequence.from_positions([3, 3])


def test_gap_sequence_rejects_negative():
    with pytest.raises(SequenceError):
        GapSequence.periodic([2, -1])
    with pytest.raises(SequenceError):
        GapSequence.from_poly("i - 5")


def test_tau_helper():
    assert tau(NMLinkSpec(3, 2)) == Fraction(3, 4)
