"""
Step 2: loops around each preimage of each branch point, rewritten over
the Schreier basis.  These normally generate the kernel of filling in the
punctures.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .freegroup import Word, invert, multiply
from .permrep import MonodromyInput, cycle_decomposition
from .schreier import SchreierBasis, Transversal, rewrite


class InternalError(RuntimeError):
    """A computed object violates an invariant that valid input guarantees."""


@dataclass(frozen=True)
class Relator:
    kind: str            # "E" for branch points 1..r-1, "W" for the last one
    branch: int          # 1-based branch index i
    cycle: int           # 1-based cycle index j within sigma_i
    points: tuple[int, ...]
    delta: Word
    gamma_word: Word     # delta * gamma_i^len * delta^-1, reduced
    word: Word           # over Schreier basis ids


@dataclass(frozen=True)
class RelatorSet:
    relators: tuple[Relator, ...]

    @property
    def E(self) -> list[Relator]:
        return [r for r in self.relators if r.kind == "E"]

    @property
    def W(self) -> list[Relator]:
        return [r for r in self.relators if r.kind == "W"]

    def words(self) -> list[Word]:
        return [r.word for r in self.relators]

    def __len__(self):
        return len(self.relators)


def compute_relators(inp: MonodromyInput, t: Transversal, b: SchreierBasis) -> RelatorSet:
    out = []
    for i, sigma in enumerate(inp.sigmas):
        last = i == inp.r - 1
        loop = inp.gamma_r() if last else Word.gen(i)
        for j, cyc in enumerate(cycle_decomposition(sigma).cycles, 1):
            delta = t.reps[cyc[0]]
            raw = delta.letters + loop.letters * len(cyc) + invert(delta).letters
            try:
                word = rewrite(b, raw)
            except ValueError as exc:
                raise InternalError(f"relator for branch {i + 1}, cycle {j} is not in H: {exc}") from None
            out.append(Relator("W" if last else "E", i + 1, j, cyc, delta, Word(raw), word))
    return RelatorSet(tuple(out))


@dataclass
class CensusReport:
    ok: bool
    positive: Counter = field(default_factory=Counter)
    negative: Counter = field(default_factory=Counter)
    failures: list[str] = field(default_factory=list)


def verify_fundamental_set(words: list[Word], size: int) -> CensusReport:
    """Each of the ``size`` basis letters must occur once with each sign."""
    pos, neg = Counter(), Counter()
    for w in words:
        w = Word(w.letters)
        for c in w.letters:
            (pos if c > 0 else neg)[abs(c) - 1] += 1
    failures = []
    for g in range(size):
        if pos[g] != 1 or neg[g] != 1:
            failures.append(f"generator {g}: {pos[g]} positive, {neg[g]} negative occurrences")
    extra = sorted(g for g in set(pos) | set(neg) if g >= size)
    if extra:
        failures.append(f"letters outside the basis: {extra}")
    return CensusReport(not failures, pos, neg, failures)


def e_side_census(rs: RelatorSet, size: int) -> bool:
    """On the E side alone every basis letter occurs exactly once, positively."""
    pos = Counter()
    for r in rs.E:
        for c in r.word.letters:
            if c < 0:
                return False
            pos[c - 1] += 1
    return all(pos[g] == 1 for g in range(size)) and len(pos) == size


def check_fundamental(rs: RelatorSet, b: SchreierBasis) -> None:
    report = verify_fundamental_set(rs.words(), len(b))
    if not report.ok:
        raise InternalError("Step-2 relators are not fundamental: " + "; ".join(report.failures))


def expand(word: Word, b: SchreierBasis) -> Word:
    """Basis word back to a loop word."""
    vals = b.values()
    return multiply(*[vals[c - 1] if c > 0 else invert(vals[-c - 1]) for c in word.letters])
