from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tlsep.timed import (
    Alphabet,
    ConstantTooLargeError,
    EmptyGuardError,
    Guard,
    GuardError,
    Interval,
    TimedWordError,
    UnknownClockError,
    cell_of,
    clocked_word,
    enumerate_regions,
    format_region,
    format_region_word,
    make_timed_word,
    parse_guard,
    parse_region,
    parse_region_word,
    parse_timed_word,
    region_of_valuation,
    region_satisfies_guard,
    region_word_of,
    split_guard,
    valuation_in_region,
)


def test_alphabet_rejects_bad_input():
    with pytest.raises(ValueError):
        Alphabet((), 1)
    with pytest.raises(ValueError):
        Alphabet(("a", "a"), 1)
    with pytest.raises(ValueError):
        Alphabet(("a",), 0)


def test_clocks_follow_letters(ab1):
    assert ab1.clocks == ("x_a", "x_b")
    assert len(ab1.symbols) == 2 * 16


def test_clocked_word_examples(ab1):
    cw = clocked_word(make_timed_word([("a", 0), ("b", 1)]), ab1)
    assert cw == (("a", (F(0), F(0))), ("b", (F(1), F(1))))
    assert clocked_word((), ab1) == ()
    cw = clocked_word(make_timed_word([("a", F(1, 2)), ("a", F(17, 10))]), ab1)
    assert cw[0][1] == (F(1, 2), F(1, 2))
    assert cw[1][1] == (F(6, 5), F(17, 10))


def test_timed_word_must_be_monotone():
    with pytest.raises(TimedWordError):
        make_timed_word([("a", 1), ("a", F(1, 2))])
    with pytest.raises(TimedWordError):
        make_timed_word([("a", -1)])


def test_region_of_valuation_examples(ab1):
    assert format_region(region_of_valuation((F(0), F(0)), ab1), ab1) == "x_a=0 & x_b=0"
    assert format_region(region_of_valuation((F(1), F(1)), ab1), ab1) == "x_a=1 & x_b=1"
    assert format_region(region_of_valuation((F(6, 5), F(17, 10)), ab1), ab1) == "x_a>1 & x_b>1"


def test_region_word_of_examples(ab1, rw1):
    assert region_word_of(make_timed_word([("a", 0), ("b", 1)]), ab1) == rw1
    assert region_word_of((), ab1) == ()
    rw = region_word_of(make_timed_word([("a", F(1, 2)), ("a", F(17, 10))]), ab1)
    assert format_region_word(rw, ab1) == "(a, 0<x_a<1 & 0<x_b<1)(a, x_a>1 & x_b>1)"


def test_region_satisfies_guard_examples(ab1):
    r = parse_region("x_a=1 & x_b=0", ab1)
    assert region_satisfies_guard(r, parse_guard("x_a=1", ab1))
    assert region_satisfies_guard(r, Guard.true(ab1))
    assert not region_satisfies_guard(parse_region("0<x_a<1 & x_b=0", ab1), parse_guard("x_a=1", ab1))


def test_enumerate_regions_counts():
    a1 = Alphabet(("a",), 1)
    assert [format_region(r, a1) for r in enumerate_regions(a1)] == [
        "x_a=0", "0<x_a<1", "x_a=1", "x_a>1",
    ]
    assert len(enumerate_regions(Alphabet(("a", "b"), 1))) == 16
    assert len(enumerate_regions(Alphabet(("a",), 2))) == 6
    regs = enumerate_regions(Alphabet(("a", "b", "c"), 2))
    assert len(regs) == len(set(regs)) == 6 ** 3


def test_split_guard_examples(ab1):
    regs = split_guard(parse_guard("x_a=1", ab1))
    assert sorted(format_region(r, ab1) for r in regs) == sorted(
        f"x_a=1 & {b}" for b in ("x_b=0", "0<x_b<1", "x_b=1", "x_b>1")
    )
    assert len(split_guard(Guard.true(ab1))) == 16
    a1 = Alphabet(("a",), 1)
    assert [format_region(r, a1) for r in split_guard(parse_guard("x_a<=1", a1))] == [
        "x_a=0", "0<x_a<1", "x_a=1",
    ]


@pytest.mark.parametrize(
    "text, canonical",
    [
        ("x_a = 1", "x_a=1"),
        ("x_b<=1", "x_b<=1"),
        ("x_a>=1 and x_b<1", "x_a>=1 & x_b<1"),
        ("0<x_a<1 ∧ x_b>1", "0<x_a<1 & x_b>1"),
        ("x_a in (0,1]", "0<x_a<=1"),
        ("true", "true"),
        ("⊤", "true"),
        ("x_a>=0", "true"),
    ],
)
def test_parse_guard_canonical(ab1, text, canonical):
    g = parse_guard(text, ab1)
    assert str(g) == canonical
    assert parse_guard(str(g), ab1) == g


def test_parse_guard_errors(ab1):
    with pytest.raises(UnknownClockError):
        parse_guard("x_c=1", ab1)
    with pytest.raises(ConstantTooLargeError):
        parse_guard("x_a=3", ab1)
    with pytest.raises(EmptyGuardError):
        parse_guard("x_a=1 & x_a<1", ab1)
    with pytest.raises(EmptyGuardError):
        parse_guard("1<x_a<1", ab1)
    with pytest.raises(GuardError):
        parse_guard("x_a ~ 1", ab1)


def test_region_word_text_round_trip(ab1, rw1):
    assert parse_region_word(format_region_word(rw1, ab1), ab1) == rw1
    assert parse_region_word("ε", ab1) == ()
    with pytest.raises(GuardError):
        parse_region_word("(a, x_a=0)", ab1)  # x_b unconstrained: not a region


def test_parse_timed_word():
    assert parse_timed_word("(a,0)(b,1/2)") == (("a", F(0)), ("b", F(1, 2)))


# -- properties -------------------------------------------------------------

alphabets = st.builds(
    Alphabet,
    st.sampled_from([("a",), ("a", "b"), ("a", "b", "c")]),
    st.integers(1, 3),
)
rationals = st.fractions(min_value=0, max_value=5, max_denominator=6)


@st.composite
def timed_words(draw, alphabet):
    n = draw(st.integers(0, 6))
    gaps = draw(st.lists(rationals, min_size=n, max_size=n))
    letters = draw(st.lists(st.sampled_from(alphabet.letters), min_size=n, max_size=n))
    t, out = F(0), []
    for a, g in zip(letters, gaps):
        t += g
        out.append((a, t))
    return tuple(out)


@settings(max_examples=200)
@given(st.data())
def test_region_word_of_is_sound(data):
    alphabet = data.draw(alphabets)
    tw = data.draw(timed_words(alphabet))
    rw = region_word_of(tw, alphabet)
    for (a, v), (b, r) in zip(clocked_word(tw, alphabet), rw):
        assert a == b
        assert valuation_in_region(v, r, alphabet.K)


@settings(max_examples=200)
@given(alphabets, st.data())
def test_region_guard_dichotomy(alphabet, data):
    """A region lies inside a guard or misses it entirely; split_guard agrees with valuations."""
    K = alphabet.K
    ivs = []
    for _ in alphabet.clocks:
        lo = data.draw(st.integers(0, K))
        hi = data.draw(st.one_of(st.none(), st.integers(lo, K)))
        lc, hc = data.draw(st.booleans()), data.draw(st.booleans())
        if hi == lo:
            lc = hc = True
        ivs.append(Interval(lo, lc, hi, hc))
    g = Guard(alphabet, tuple(ivs))
    inside = set(split_guard(g))
    v = tuple(data.draw(rationals) for _ in alphabet.clocks)
    r = region_of_valuation(v, alphabet)
    assert g.satisfied_by(v) == (r in inside)


@given(rationals, st.integers(1, 4))
def test_cell_of_matches_bounds(x, K):
    c = cell_of(x, K)
    assert 0 <= c <= 2 * K + 1
    assert valuation_in_region((x,), (c,), K)
