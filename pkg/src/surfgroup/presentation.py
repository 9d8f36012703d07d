"""
Step 3: Tietze simplification of a prefundamental presentation.

Every move here eliminates one generator by solving one relator for it.
Moves are recorded on the presentation's trace.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .freegroup import Alphabet, Word, cyclic_reduction, gen_of, invert, letter, rotate, substitute
from .relators import InternalError
from .trace import Trace, make_step


class MultipleFactors(InternalError):
    pass


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    provenance: tuple[Word, ...]    # each generator as a loop word
    relators: tuple[Word, ...]
    trace: Trace | None = None

    def format(self) -> str:
        gens = ", ".join(self.alphabet.names)
        rels = ", ".join(self.alphabet.format(r) for r in self.relators)
        return f"< {gens} | {rels} >"

    def occurrences(self) -> Counter:
        """Letter code -> number of occurrences across all relators."""
        return Counter(c for r in self.relators for c in r.letters)

    def is_prefundamental(self) -> bool:
        occ = self.occurrences()
        return all(n == 1 for n in occ.values()) and all(-c in occ for c in occ)

    def apply(self, step) -> "Presentation":
        if self.trace is not None:
            self.trace.append(step)
        prov = tuple(substitute(w, self.provenance) for w in step.preimages)
        return Presentation(step.alphabet_after, prov, step.relators_after, self.trace)


def eliminate_generator(p: Presentation, x: int, d: int, kind: str, info=None) -> Presentation:
    """Solve relator ``d`` for generator ``x`` (occurring once in it) and remove both."""
    rel = p.relators[d]
    positions = [k for k, c in enumerate(rel.letters) if gen_of(c) == x]
    if len(positions) != 1:
        raise InternalError(f"cannot solve relator {d} for generator {x}")
    rot = rotate(rel, positions[0] + 1)
    rest = Word(rot.letters[1:])
    solution = invert(rest) if rot.letters[0] > 0 else rest

    old = p.alphabet
    new = Alphabet(old.names[:x] + old.names[x + 1:])
    images = [Word() if o == x else Word.gen(o if o < x else o - 1) for o in range(old.size)]
    images[x] = substitute(solution, images)
    preimages = [Word.gen(g if g < x else g + 1) for g in range(new.size)]

    conj = {}
    for k, r in enumerate(p.relators):
        if k != d:
            c, _ = cyclic_reduction(substitute(r, images))
            if c:
                conj[k] = c
    info = dict(info or {})
    info.setdefault("generator", old.names[x])
    info.setdefault("relator", d)
    step = make_step(kind, old, new, p.relators, images, preimages,
                     eliminated=[(x, d)], conjugators=conj, drop={d}, info=info)
    return p.apply(step)


def _single_letter(p: Presentation):
    for d, r in enumerate(p.relators):
        if len(r) == 1:
            return gen_of(r.letters[0]), d
    return None


def _one_sided(p: Presentation):
    """A generator occurring exactly once in the whole relator set."""
    where: dict[int, list[int]] = {}
    for d, r in enumerate(p.relators):
        for c in r.letters:
            where.setdefault(gen_of(c), []).append(d)
    for x in sorted(where):
        if len(where[x]) == 1:
            return x, where[x][0]
    return None


def eliminate_lonely_generators(p: Presentation) -> Presentation:
    while True:
        hit = _single_letter(p)
        if hit is None:
            hit = _one_sided(p)
        if hit is None:
            return p
        x, d = hit
        p = eliminate_generator(p, x, d, "GeneratorElimination")


def _merge_candidate(p: Presentation):
    for x in range(p.alphabet.size):
        u = v = None
        for k, r in enumerate(p.relators):
            if letter(x) in r.letters and u is None:
                u = k
            if letter(x, -1) in r.letters and v is None:
                v = k
        if u is not None and v is not None and u != v:
            return x, u, v
    return None


def merge_relators(p: Presentation) -> Presentation:
    """Join relators that share a generator until every relator is closed under inverses.

    With ``x`` in ``u`` and ``x^-1`` in ``v``, the shorter of the two is
    solved for ``x`` and dropped (``v`` on ties); the solution is substituted
    into the other relator in place.
    """
    while True:
        hit = _merge_candidate(p)
        if hit is None:
            return p
        x, u, v = hit
        drop, keep = (u, v) if len(p.relators[u]) < len(p.relators[v]) else (v, u)
        p = eliminate_generator(p, x, drop, "RelatorMerge", {"kept": keep})


def simplify(p: Presentation) -> Presentation:
    p = eliminate_lonely_generators(p)
    p = merge_relators(p)
    return eliminate_lonely_generators(p)


def split_free_factors(p: Presentation) -> list[Presentation]:
    """Split into factors on disjoint generator sets; unused generators form one free factor."""
    parent = list(range(p.alphabet.size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    used = set()
    for r in p.relators:
        gens = sorted(r.generators())
        used.update(gens)
        for g in gens[1:]:
            parent[find(g)] = find(gens[0])
    groups: dict[int, list[int]] = {}
    for g in sorted(used):
        groups.setdefault(find(g), []).append(g)
    blocks = sorted(groups.values())
    free = [g for g in range(p.alphabet.size) if g not in used]
    if len(blocks) + bool(free) <= 1:
        return [p]

    factors = []
    for gens in blocks + ([free] if free else []):
        index = {g: i for i, g in enumerate(gens)}
        images = {g: Word.gen(index[g]) for g in gens}
        rels = tuple(substitute(r, images) for r in p.relators if r and gen_of(r.letters[0]) in index)
        factors.append(Presentation(Alphabet([p.alphabet.names[g] for g in gens]),
                                    tuple(p.provenance[g] for g in gens), rels))
    return factors


def surface_factor(p: Presentation) -> Presentation:
    """The presentation must be a single one-relator factor or the trivial group."""
    factors = split_free_factors(p)
    if len(factors) > 1:
        raise MultipleFactors(f"presentation splits into {len(factors)} free factors: {p.format()}")
    if len(p.relators) > 1:
        raise MultipleFactors(f"{len(p.relators)} relators remain after simplification")
    if not p.relators and p.alphabet.size:
        raise MultipleFactors(f"{p.alphabet.size} free generators remain")
    return p
