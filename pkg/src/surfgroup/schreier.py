"""
Schreier transversal and Schreier basis of the point stabilizer
``H = tau^-1(Stab(1))`` inside the free group on g1..g{r-1}.

Cosets ``Hw`` are identified with fiber points ``1^tau(w)``, so coset
membership is a permutation walk rather than a word comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

from .freegroup import Alphabet, Word, invert, letters_in_order, multiply
from .permrep import InvalidInput, MonodromyInput, act


@dataclass(frozen=True)
class Transversal:
    """Minimal coset representatives; ``reps[p]`` sends point 0 to ``p``."""

    input: MonodromyInput
    reps: tuple[Word, ...]

    @property
    def rank(self) -> int:
        return self.input.r - 1

    def __len__(self):
        return len(self.reps)

    def point_of(self, w: Word) -> int:
        return act(self.input, 0, w)


def build_transversal(inp: MonodromyInput) -> Transversal:
    """Least prefix-closed transversal under the shortlex well-order.

    Representatives of length L+1 are single-letter extensions of those of
    length L; scanning the extensions in order and keeping the first hit per
    point yields the minimum of every coset.
    """
    rank = inp.r - 1
    alphabet = letters_in_order(rank)
    reps: list[Word | None] = [None] * inp.n
    reps[0] = Word()
    level = [(Word(), 0)]
    found = 1
    while level and found < inp.n:
        nxt = []
        for w, p in level:
            for c in alphabet:
                if w.letters and w.letters[-1] == -c:
                    continue
                q = act(inp, p, Word((c,)))
                if reps[q] is None:
                    cand = Word(w.letters + (c,))
                    reps[q] = cand
                    found += 1
                    nxt.append((cand, q))
        level = nxt
    if found < inp.n:
        missing = [p + 1 for p, w in enumerate(reps) if w is None]
        raise InvalidInput(f"monodromy is not transitive: points {missing} unreachable from 1")
    return Transversal(inp, tuple(reps))


def rho(t: Transversal, w: Word) -> Word:
    return t.reps[t.point_of(w)]


@dataclass(frozen=True)
class SchreierGenerator:
    id: int
    point: int      # fiber point of the representative
    gen: int        # index of the loop generator s
    rep: Word
    value: Word     # rep * s * rho(rep * s)^-1


@dataclass(frozen=True)
class SchreierBasis:
    transversal: Transversal
    generators: tuple[SchreierGenerator, ...]
    lookup: dict   # (point, gen) -> id, or None for trivial entries

    def __len__(self):
        return len(self.generators)

    def values(self) -> list[Word]:
        return [y.value for y in self.generators]

    def alphabet(self, prefix: str = "y") -> Alphabet:
        return Alphabet.indexed(prefix, len(self.generators))

    def table(self) -> list[list[Word]]:
        """Row per fiber point, column per loop generator, identities included."""
        t = self.transversal
        rows = []
        for p in range(t.input.n):
            row = []
            for s in range(t.rank):
                i = self.lookup[(p, s)]
                row.append(Word() if i is None else self.generators[i].value)
            rows.append(row)
        return rows


def schreier_basis(t: Transversal) -> SchreierBasis:
    gens: list[SchreierGenerator] = []
    lookup = {}
    for p, r in enumerate(t.reps):
        for s in range(t.rank):
            rs = Word(r.letters + (s + 1,))
            value = multiply(rs, invert(rho(t, rs)))
            if value:
                lookup[(p, s)] = len(gens)
                gens.append(SchreierGenerator(len(gens), p, s, r, value))
            else:
                lookup[(p, s)] = None
    return SchreierBasis(t, tuple(gens), lookup)


class NotInSubgroup(ValueError):
    pass


def rewrite(b: SchreierBasis, h: Word | tuple[int, ...]) -> Word:
    """Reduced Schreier decomposition of ``h`` as a word over basis ids.

    ``h`` may be an unreduced tuple of letter codes.  A letter ``s^-1`` read
    at point ``q`` contributes the inverse of the basis element attached to
    ``(q^s^-1, s)``.
    """
    inp = b.transversal.input
    letters = h.letters if isinstance(h, Word) else tuple(h)
    q = 0
    out = []
    for c in letters:
        s = abs(c) - 1
        if c > 0:
            i = b.lookup[(q, s)]
            if i is not None:
                out.append(i + 1)
            q = inp.sigmas[s].images[q]
        else:
            q = inp.inverse_sigmas[s].images[q]
            i = b.lookup[(q, s)]
            if i is not None:
                out.append(-(i + 1))
    if q != 0:
        raise NotInSubgroup(f"word moves point 1 to {q + 1}; it is not in H")
    return Word(out)
