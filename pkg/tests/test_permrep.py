import random

import pytest

from surfgroup.freegroup import Word
from surfgroup.permrep import (CycleSyntaxError, InvalidInput, MonodromyInput, Permutation, act,
                               compose, cycle_decomposition, format_cycles, is_transitive,
                               normalize_basepoint, parse_cycles, tau)
from surfgroup.samples import non_cyclic, random_batch, random_input

from conftest import random_word


def random_perm(rng, n):
    imgs = list(range(n))
    rng.shuffle(imgs)
    return Permutation(tuple(imgs))


def test_parse_examples():
    p = parse_cycles("(123)", 4)
    assert [p(i) + 1 for i in range(4)] == [2, 3, 1, 4]
    assert parse_cycles("", 3).is_identity()
    assert parse_cycles("()", 3).is_identity()
    assert parse_cycles("(12)(34)", 4) == Permutation.from_one_based([2, 1, 4, 3])
    assert parse_cycles("(1 10)", 10)(9) == 0


@pytest.mark.parametrize("bad", ["(12", "(1a)", "(15)", "(121)", "12)"])
def test_parse_rejects(bad):
    with pytest.raises(CycleSyntaxError):
        parse_cycles(bad, 4)


def test_parse_format_round_trip():
    rng = random.Random(7)
    for _ in range(500):
        n = rng.randint(1, 9)
        p = random_perm(rng, n)
        assert parse_cycles(format_cycles(p), n) == p


def test_compose():
    rng = random.Random(8)
    t = parse_cycles("(12)", 3)
    assert compose(t, t).is_identity()
    for _ in range(300):
        n = rng.randint(1, 8)
        p, q = random_perm(rng, n), random_perm(rng, n)
        assert compose(p, Permutation.identity(n)) == p
        r = compose(p, q)
        assert all(r(i) == q(p(i)) for i in range(n))


def test_cycle_decomposition():
    d = cycle_decomposition(parse_cycles("(123)", 4))
    assert [tuple(x + 1 for x in c) for c in d.cycles] == [(1, 2, 3), (4,)]
    assert d.count == 2 and d.lengths == [3, 1]
    assert cycle_decomposition(Permutation.identity(3)).lengths == [1, 1, 1]
    rng = random.Random(9)
    for _ in range(300):
        n = rng.randint(1, 9)
        p = random_perm(rng, n)
        imgs = [None] * n
        for c in cycle_decomposition(p).cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                imgs[a] = b
        assert Permutation(tuple(imgs)) == p


def closure_orbit(sigmas, n):
    """Orbit of point 0 under the whole generated group, by closing the element set."""
    elems = {Permutation.identity(n)}
    frontier = list(elems)
    while frontier:
        nxt = []
        for e in frontier:
            for s in sigmas:
                f = compose(e, s)
                if f not in elems:
                    elems.add(f)
                    nxt.append(f)
        frontier = nxt
    return {e(0) for e in elems}


def test_transitivity():
    assert is_transitive(non_cyclic())
    inp = MonodromyInput.from_cycles(4, ["(12)", "(12)"])
    assert not is_transitive(inp)
    rng = random.Random(10)
    for _ in range(200):
        n = rng.randint(2, 5)
        sigmas = [random_perm(rng, n) for _ in range(rng.randint(1, 3))]
        inp = MonodromyInput(n, tuple(sigmas))
        assert is_transitive(inp) == (closure_orbit(sigmas, n) == set(range(n)))


def test_tau():
    inp = non_cyclic()
    assert tau(inp, Word()).is_identity()
    assert act(inp, 0, Word((1, -2))) == 3
    assert tau(inp, Word((1,))) == parse_cycles("(123)", 4)
    # gamma_r is expanded, so the full product acts trivially
    assert tau(inp, Word((1, 2, 3))) == inp.sigmas[3].inverse()
    rng = random.Random(11)
    for _ in range(500):
        u, v = random_word(rng, 3, 10), random_word(rng, 3, 10)
        assert tau(inp, u * v) == compose(tau(inp, u), tau(inp, v))


@pytest.mark.parametrize("n, cycles, why", [
    (1, ["()"], "n"),
    (3, ["(123)"], "r"),
    (3, ["(12)", "(13)"], "product"),
    (3, ["(12)", "()", "(12)"], "identity"),
    (4, ["(12)", "(12)"], "transitive"),
])
def test_validate_rejects(n, cycles, why):
    inp = MonodromyInput.from_cycles(n, cycles)
    assert not inp.is_valid()
    with pytest.raises(InvalidInput):
        inp.validate()


def test_json_round_trip():
    inp = non_cyclic()
    assert MonodromyInput.from_json(inp.to_json()) == inp
    with pytest.raises(InvalidInput):
        MonodromyInput.from_json({"n": 3})
    with pytest.raises(InvalidInput):
        MonodromyInput.from_json({"n": 3, "sigmas": "(12)"})


def test_basepoint_relabel():
    inp = MonodromyInput.from_cycles(3, ["(23)", "(123)", "(12)"])
    inp.validate()
    out, m = normalize_basepoint(inp)
    assert m is not None
    assert out.sigmas[0](0) != 0
    out.validate()
    same, none = normalize_basepoint(non_cyclic())
    assert none is None and same == non_cyclic()


def test_random_generator():
    a = random_input(random.Random(1), 4, 4)
    b = random_input(random.Random(1), 4, 4)
    assert a == b
    for inp in random_batch(5, 200):
        assert inp.n <= 7 and inp.r <= 6
        inp.validate()
