import itertools

import pytest
from hypothesis import given, strategies as st

from projtab import _kernels
from projtab.arrow import (
    ArrowDiagram,
    CanonicalKey,
    DuplicateRole,
    GapInIds,
    OddLength,
    ParseError,
    TRIVIAL,
    canonicalize,
    connected_sum,
    format_tokens,
    interleavement,
    is_prime,
    mirror,
    normalize,
    nugatory_chords,
    parse,
    reverse,
    rotate,
    split_witness,
)
from projtab.enumerator import _decode

from conftest import CHIRAL_6, FIGURE_EIGHT, TREFOIL


@st.composite
def diagrams(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    slots = draw(st.permutations(list(range(2 * n))))
    toks = [0] * (2 * n)
    for k in range(n):
        tail_first = draw(st.booleans())
        a, b = slots[2 * k], slots[2 * k + 1]
        toks[a], toks[b] = (k + 1, -(k + 1)) if tail_first else (-(k + 1), k + 1)
    return ArrowDiagram(tuple(toks))


def test_parse_roundtrip():
    d = parse(TREFOIL)
    assert d.n == 3
    assert format_tokens(d.tokens) == TREFOIL
    assert str(d) == TREFOIL
    assert parse("canon:" + TREFOIL) == d


def test_parse_normalizes_ids():
    assert parse("+2 -1 +1 -2").tokens == (1, -2, 2, -1)


@pytest.mark.parametrize(
    "text, exc",
    [
        ("+1 +2 -1", OddLength),
        ("+1 +1", DuplicateRole),
        ("-2 -2 +1 +1", DuplicateRole),
        ("+1 -1 +3 -3", GapInIds),
        ("+1 x", ParseError),
        ("+0 -0", ParseError),
    ],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse(text)


def test_parse_errors_are_value_errors():
    assert issubclass(ParseError, ValueError)


def test_empty_word_is_trivial():
    assert parse("") == TRIVIAL
    assert TRIVIAL.n == 0
    assert canonicalize(TRIVIAL) == CanonicalKey(b"")


def test_positions_and_partner(trefoil):
    pos = trefoil.positions()
    assert pos[1] == (0, 3)
    assert pos[2] == (4, 1)
    p = trefoil.partner()
    assert all(p[p[i]] == i for i in range(6))
    assert trefoil.word() == (1, 2, 3, 1, 2, 3)


def test_mirror_flips_every_arrow(trefoil):
    assert mirror(trefoil).tokens == (-1, 2, -3, 1, -2, 3)
    assert mirror(mirror(trefoil)) == trefoil


@given(diagrams())
def test_mirror_is_involution(d):
    assert mirror(mirror(d)) == d
    assert canonicalize(mirror(mirror(d))) == canonicalize(d)


@given(diagrams(), st.integers(-20, 20))
def test_canonical_key_invariant_under_reading(d, k):
    key = canonicalize(d)
    assert canonicalize(rotate(d, k)) == key
    assert canonicalize(reverse(d)) == key
    assert canonicalize(reverse(rotate(d, k))) == key


@given(diagrams())
def test_key_roundtrip(d):
    key = canonicalize(d)
    assert canonicalize(key.diagram()) == key
    assert CanonicalKey.from_string(str(key)) == key
    assert key.n == d.n


def _all_arrow_diagrams(n):
    for w in _kernels.generate_words(n):
        for mask in range(1 << n):
            yield _decode(w, mask)


def test_canonical_key_invariance_exhaustive():
    # rotation by one step and reversal generate every change of reading
    for n in range(1, 6):
        for d in _all_arrow_diagrams(n):
            key = canonicalize(d)
            assert canonicalize(rotate(d, 1)) == key
            assert canonicalize(reverse(d)) == key


def test_canonical_key_separates_small_diagrams():
    # brute force equivalence classes for n <= 3 agree with key classes
    for n in range(1, 4):
        ds = list(_all_arrow_diagrams(n))
        by_key = {}
        for d in ds:
            by_key.setdefault(canonicalize(d), set()).add(d.tokens)
        for key, members in by_key.items():
            d = key.diagram()
            readings = {rotate(r, k).tokens for r in (d, reverse(d)) for k in range(2 * n)}
            assert members <= readings


def test_reverse_keeps_roles():
    d = parse("+1 +2 -1 -2")
    assert reverse(d).tokens == (-1, -2, 1, 2)


def test_interleavement(trefoil):
    M = interleavement(trefoil)
    assert all(M[i][j] for i in range(3) for j in range(3) if i != j)
    assert not any(M[i][i] for i in range(3))


def test_nugatory():
    d = parse("+1 -1 +2 -3 +4 -2 +3 -4")
    assert nugatory_chords(d) == frozenset({1})
    assert nugatory_chords(parse(TREFOIL)) == frozenset()


def test_split_witness_of_connected_sum():
    a, b = parse(TREFOIL), parse(FIGURE_EIGHT)
    s = connected_sum(a, b)
    assert s.n == 7
    assert not is_prime(s)
    w = split_witness(s)
    assert w is not None
    lo, hi = w.arc
    inside = {abs(t) for t in s.tokens[lo:hi]}
    outside = {abs(t) for t in (s.tokens + s.tokens)[w.complement[0]:w.complement[1]]}
    assert inside and outside and not inside & outside


@pytest.mark.parametrize("word", [TREFOIL, FIGURE_EIGHT, CHIRAL_6, "+1 -1"])
def test_prime_examples(word):
    assert is_prime(parse(word))
    assert split_witness(parse(word)) is None


def test_connected_sum_with_trivial(trefoil):
    assert connected_sum(trefoil, TRIVIAL) == trefoil
    assert connected_sum(TRIVIAL, trefoil) == trefoil


@given(diagrams(max_n=4), diagrams(max_n=4), st.integers(0, 7), st.integers(0, 7))
def test_connected_sum_is_never_prime(a, b, ea, eb):
    if a.n == 0 or b.n == 0:
        return
    s = connected_sum(a, b, ea % (2 * a.n), eb % (2 * b.n))
    assert s.n == a.n + b.n
    assert not is_prime(s)


def test_key_order_is_bytewise():
    keys = sorted({canonicalize(d) for d in _all_arrow_diagrams(3)})
    assert [k.code for k in keys] == sorted(k.code for k in keys)
    assert str(keys[0]) == "canon:+1 -1 +2 -2 +3 -3"
