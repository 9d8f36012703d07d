import random

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from surfgroup.freegroup import Word
from surfgroup.oracle import (abelianization, elementary_divisors, expected_basis_rank,
                              exponent_sum_matrix, riemann_hurwitz_genus)
from surfgroup.permrep import InvalidInput, MonodromyInput
from surfgroup.samples import hyperelliptic, non_cyclic


def sympy_divisors(rows):
    if not rows or not rows[0]:
        return []
    return sorted(abs(int(d)) for d in invariant_factors(Matrix(rows), domain=ZZ) if d != 0)


def test_riemann_hurwitz():
    assert riemann_hurwitz_genus(non_cyclic()) == 1
    for r in (2, 4, 6, 8):
        assert riemann_hurwitz_genus(hyperelliptic(r)) == (r - 2) // 2
    with pytest.raises(InvalidInput):
        riemann_hurwitz_genus(MonodromyInput.from_cycles(3, ["(12)", "(12)"]))


def test_basis_rank():
    assert expected_basis_rank(4, 4) == 9
    assert expected_basis_rank(2, 4) == 5
    assert expected_basis_rank(1, 5) == 4


def test_abelianization_examples(nc):
    ab = abelianization([Word((-1, -2, 1, 2))], 2)
    assert ab.free_rank == 2 and ab.torsion == []
    assert exponent_sum_matrix([Word((-1, -2, 1, 2))], 2) == [[0, 0]]
    ab = abelianization([Word((1,))], 1)
    assert ab.divisors == [1] and ab.free_rank == 0
    ab = abelianization(nc.initial.relators, 9)
    assert ab.free_rank == 2 and not ab.torsion
    assert len(exponent_sum_matrix(nc.initial.relators, 9)) == 8


def test_elementary_divisors_match_sympy():
    rng = random.Random(31)
    for _ in range(400):
        m, n = rng.randint(1, 7), rng.randint(1, 7)
        rows = [[rng.randint(-6, 6) if rng.random() < 0.7 else 0 for _ in range(n)] for _ in range(m)]
        ours = elementary_divisors(rows)
        assert sorted(ours) == sympy_divisors(rows)
        # divisibility chain
        assert all(b % a == 0 for a, b in zip(ours, ours[1:]))


def test_sweep_matrices_match_sympy(sweep):
    for c in sweep[:60]:
        rows = exponent_sum_matrix(c.initial.relators, c.initial.alphabet.size)
        assert sorted(elementary_divisors(rows)) == sympy_divisors(rows)
