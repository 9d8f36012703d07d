"""Built-in monodromy inputs and a seeded generator of random valid ones."""

from __future__ import annotations

import random

from .permrep import InvalidInput, MonodromyInput, Permutation, compose, is_transitive

NON_CYCLIC = {"n": 4, "sigmas": ["(123)", "(234)", "(234)", "(134)"]}


def non_cyclic() -> MonodromyInput:
    """Degree-4 genus-1 cover with four branch points."""
    return MonodromyInput.from_json(NON_CYCLIC)


def hyperelliptic(r: int) -> MonodromyInput:
    """Double cover branched over ``r`` points (``r`` even), genus ``(r - 2) / 2``."""
    if r < 2 or r % 2:
        raise InvalidInput(f"hyperelliptic example needs an even r >= 2, got {r}")
    return MonodromyInput.from_cycles(2, ["(12)"] * r)


EXAMPLES = {
    "nonCyclic": lambda r=None: non_cyclic(),
    "hyperelliptic": lambda r=None: hyperelliptic(6 if r is None else r),
}

MAX_TRIES = 10_000


def random_input(rng: random.Random, n: int, r: int) -> MonodromyInput:
    """Uniform sigma_1..sigma_{r-1}, sigma_r closing the product, rejecting invalid tuples."""
    if n < 2 or r < 2:
        raise InvalidInput(f"need n >= 2 and r >= 2, got n={n}, r={r}")
    points = list(range(n))
    for _ in range(MAX_TRIES):
        sigmas = []
        for _ in range(r - 1):
            imgs = points[:]
            rng.shuffle(imgs)
            sigmas.append(Permutation(tuple(imgs)))
        prod = Permutation.identity(n)
        for s in sigmas:
            prod = compose(prod, s)
        sigmas.append(prod.inverse())
        if any(s.is_identity() for s in sigmas):
            continue
        inp = MonodromyInput(n, tuple(sigmas))
        if is_transitive(inp):
            return inp
    raise RuntimeError(f"no valid tuple for n={n}, r={r} after {MAX_TRIES} draws")


def random_batch(seed: int, count: int, max_n: int = 7, max_r: int = 6,
                 min_n: int = 2, min_r: int = 2) -> list[MonodromyInput]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(min_n, max_n)
        r = rng.randint(min_r, max_r)
        if n == 2 and r % 2:
            # r transpositions multiply to the identity only for even r
            continue
        out.append(random_input(rng, n, r))
    return out
