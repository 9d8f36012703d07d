from collections import Counter

import pytest

from surfgroup.freegroup import Alphabet, Word, substitute
from surfgroup.oracle import abelianization
from surfgroup.pipeline import run
from surfgroup.presentation import (MultipleFactors, Presentation, eliminate_lonely_generators,
                                    merge_relators, simplify, split_free_factors, surface_factor)
from surfgroup.samples import hyperelliptic, non_cyclic
from surfgroup.trace import Trace, check_step


def bare(p: Presentation) -> Presentation:
    return Presentation(p.alphabet, p.provenance, p.relators)


def group_invariants(p):
    ab = abelianization(p.relators, p.alphabet.size)
    return ab.free_rank, sorted(ab.torsion)


def census_ok(p: Presentation) -> bool:
    occ = p.occurrences()
    return all(n == 1 for n in occ.values()) and all(-c in occ for c in occ)


def test_non_cyclic_chain(nc):
    p0 = bare(nc.initial)
    p1 = eliminate_lonely_generators(p0)
    assert p1.format() == "< y4, y5, y6, y7, y9 | y4*y6, y5*y7*y9, y5^-1*y7^-1*y4^-1, y9^-1*y6^-1 >"
    p2 = merge_relators(p1)
    assert p2.format() == "< y7, y9 | y7^-1*y9^-1*y7*y9 >"
    assert eliminate_lonely_generators(p2).format() == p2.format()
    assert [p.format() for p in nc.chain] == [p0.format(), p1.format(), p2.format()]


def test_elimination_fixpoint():
    alph = Alphabet(["x", "y"])
    p = Presentation(alph, (Word.gen(0), Word.gen(1)), (Word((-1, -2, 1, 2)),))
    assert eliminate_lonely_generators(p) == p


def test_disjoint_commutators_are_left_alone():
    alph = Alphabet(["x", "y", "u", "v"])
    rels = (Word((1, 2, -1, -2)), Word((3, 4, -3, -4)))
    p = Presentation(alph, tuple(Word.gen(g) for g in range(4)), rels)
    assert merge_relators(p) == p
    factors = split_free_factors(p)
    assert [f.alphabet.names for f in factors] == [("x", "y"), ("u", "v")]
    with pytest.raises(MultipleFactors):
        surface_factor(p)


def step3_relator(r):
    """Product formula for the hyperelliptic Step-3 relator over h_{1,l}."""
    m = (r - 2) // 2
    g = [Word.gen(i) for i in range(r - 1)]
    h = lambda l: g[0] * g[l - 1]
    first = [~h(r - 2 * i + 1) * h(r - 2 * i) for i in range(1, m + 1)]
    second = [h(r - 2 * i + 1) * ~h(r - 2 * i) for i in range(1, m + 1)]
    out = Word()
    for w in first + second:
        out = out * w
    return out


@pytest.mark.parametrize("r", [4, 6, 8, 10])
def test_hyperelliptic_step3(hyper, r):
    c = hyper[r]
    assert len(c.surface.relators) == 1
    prov = c.surface.provenance
    gamma_rel = Word()
    for code in c.surface.relators[0].letters:
        w = prov[abs(code) - 1]
        gamma_rel = gamma_rel * (w if code > 0 else ~w)
    assert gamma_rel == step3_relator(r)
    # the surviving generators are exactly h_{1,2}..h_{1,r-1}
    g = [Word.gen(i) for i in range(r - 1)]
    assert set(prov) == {g[0] * g[l] for l in range(1, r - 1)}


def test_invariants_along_the_chain(sweep):
    for c in sweep:
        inv = group_invariants(c.initial)
        for p in c.chain:
            assert census_ok(p)
            assert group_invariants(p) == inv


def test_every_merge_removes_a_generator(sweep):
    for c in sweep:
        for s in c.trace.steps:
            if s.kind in ("GeneratorElimination", "RelatorMerge"):
                assert s.alphabet_after.size == s.alphabet_before.size - 1
                kept = {k for k, _ in s.sources}
                dropped = set(range(len(s.relators_before))) - kept
                assert len(dropped) >= 1
                # beyond the solved relator, only relators pushed to the identity vanish
                solved = {d for _, d in s.eliminated}
                for k in dropped - solved:
                    assert not substitute(s.relators_before[k], s.images)


def test_genus_zero_is_trivial():
    c = run(hyperelliptic(2))
    assert c.surface.alphabet.size == 0 and c.surface.relators == ()
    assert c.output.genus == 0 and c.output.alphabet.size == 0


def test_steps_are_recorded():
    p0 = bare(run(non_cyclic()).initial)
    tr = Trace(None, None, p0.alphabet, p0.provenance, p0.relators)
    p = simplify(Presentation(p0.alphabet, p0.provenance, p0.relators, tr))
    assert Counter(s.kind for s in tr.steps) == {"GeneratorElimination": 4, "RelatorMerge": 3}
    for s in tr.steps:
        check_step(s)
    assert tr.final_relators == p.relators
