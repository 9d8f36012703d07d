import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from surfgroup.freegroup import (Alphabet, Letter, Word, commutator, compare_well_order,
                                 conjugate, cyclic_reduction, enumerate_words, invert,
                                 is_cyclically_reduced, multiply, prefix, reduce, rotate,
                                 substitute, well_order_key)

from conftest import random_raw, random_word

g1, g2, g3 = Word.gen(0), Word.gen(1), Word.gen(2)


def brute_reduce(raw):
    """Repeatedly scan for an adjacent cancelling pair until none is left."""
    w = list(raw)
    changed = True
    while changed:
        changed = False
        for k in range(len(w) - 1):
            if w[k] == -w[k + 1]:
                del w[k:k + 2]
                changed = True
                break
    return tuple(w)


words = st.lists(st.integers(1, 3).flatmap(lambda g: st.sampled_from([g, -g])), max_size=20).map(Word)


def test_reduce_cancellation():
    assert reduce([Letter(0, 1), Letter(0, -1)]) == Word()
    assert reduce([Letter(0, 1), Letter(1, 1), Letter(1, -1), Letter(0, 1)]).pairs() == [Letter(0, 1), Letter(0, 1)]


def test_reduce_matches_brute_force():
    rng = random.Random(1)
    for _ in range(1000):
        raw = random_raw(rng, 3, 40)
        w = reduce(raw)
        assert w.letters == brute_reduce(raw)
        assert reduce(w.letters) == w


def test_multiply_and_invert():
    rng = random.Random(2)
    assert multiply(g1, g2).letters == (1, 2)
    assert invert(Word()) == Word()
    assert invert(g1 * ~g2) == g2 * ~g1
    for _ in range(500):
        u, v, w = (random_word(rng, 3, 12) for _ in range(3))
        assert multiply(u, invert(u)) == Word()
        assert multiply(multiply(u, v), w) == multiply(u, multiply(v, w))
        assert invert(invert(u)) == u


def test_conjugate():
    rng = random.Random(3)
    assert conjugate(g2, Word()) == g2
    assert conjugate(g2, g1) == ~g1 * g2 * g1
    for _ in range(500):
        g, x, y = (random_word(rng, 3, 8) for _ in range(3))
        assert conjugate(conjugate(g, x), y) == conjugate(g, multiply(x, y))


def test_commutator():
    rng = random.Random(4)
    assert commutator(g1, g1) == Word()
    assert commutator(g1, g2).letters == (-1, -2, 1, 2)
    for _ in range(500):
        x, y = random_word(rng, 3, 8), random_word(rng, 3, 8)
        assert commutator(x, y) == multiply(invert(x), invert(y), x, y)


def test_rotate():
    rng = random.Random(5)
    w = g1 * g2 * g3
    assert rotate(w, 1) == w
    assert rotate(w, 2) == g2 * g3 * g1
    with pytest.raises(IndexError):
        rotate(w, 4)
    for _ in range(500):
        w = random_word(rng, 3, 12)
        if not w:
            continue
        i = rng.randint(1, len(w))
        assert rotate(w, i) == conjugate(w, prefix(w, i - 1))


def test_substitute():
    rng = random.Random(6)
    x1x2 = Word((1, 2))
    assert substitute(x1x2, [Word((1, 2)), Word((-2,))]) == Word((1,))
    ident = [Word.gen(g) for g in range(3)]
    for _ in range(200):
        w = random_word(rng, 3, 15)
        assert substitute(w, ident) == w
    with pytest.raises(KeyError):
        substitute(g3, [g1])


@settings(max_examples=200, deadline=None)
@given(words, words, st.lists(words, min_size=3, max_size=3))
def test_substitute_is_a_homomorphism(u, v, images):
    assert substitute(u * v, images) == substitute(u, images) * substitute(v, images)
    assert substitute(~u, images) == ~substitute(u, images)


@settings(max_examples=200, deadline=None)
@given(words)
def test_cyclic_reduction(w):
    c, core = cyclic_reduction(w)
    assert is_cyclically_reduced(core)
    assert core == conjugate(w, c)


def test_well_order_examples():
    assert compare_well_order(Word(), g1) < 0
    assert compare_well_order(g1, ~g1) < 0
    assert compare_well_order(~g1, g2) < 0
    assert compare_well_order(g2, g1 * g1) < 0


def test_well_order_is_total_on_short_words():
    ws = list(enumerate_words(2, 3))
    assert len(ws) == 1 + 4 + 12 + 36
    assert len(set(ws)) == len(ws)
    # the enumeration is itself increasing
    assert all(compare_well_order(a, b) < 0 for a, b in zip(ws, ws[1:]))
    for a, b in itertools.product(ws, repeat=2):
        c = compare_well_order(a, b)
        assert (c == 0) == (a == b)
        assert compare_well_order(b, a) == -c
    keys = [well_order_key(w) for w in ws]
    for a, b, c in itertools.product(range(0, len(ws), 3), repeat=3):
        if keys[a] < keys[b] and keys[b] < keys[c]:
            assert keys[a] < keys[c]


def test_alphabet_format_parse():
    alph = Alphabet.indexed("g", 3)
    w = g1 * ~g2 * g3
    assert alph.format(w) == "g1*g2^-1*g3"
    assert alph.parse("g1*g2^-1*g3") == w
    assert alph.format(Word()) == "1"
    assert alph.parse("1") == Word()
    with pytest.raises(KeyError):
        alph.parse("h1")
    with pytest.raises(ValueError):
        Alphabet(["a", "a"])


def test_word_is_immutable():
    with pytest.raises(AttributeError):
        g1.letters = (2,)
