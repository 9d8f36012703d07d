"""
Step 4: bring a fundamental one-relator presentation to the form
``[a1, b1] ... [ag, bg]`` by basis changes and rotations.

Positions are 1-based throughout this module to match the usual way the
moves are written down; ``w[p - 1]`` is the letter at position ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .freegroup import (Alphabet, Word, commutator, gen_of, invert, letter, multiply,
                        prefix, rotate, sign_of, substitute)
from .relators import InternalError
from .trace import IsoStep, Trace, make_step


@dataclass(frozen=True)
class Structure:
    admissible: tuple[tuple[int, int, int, int], ...]
    delta: tuple[int, ...]

    @property
    def covered(self) -> set[int]:
        return {p for q in self.admissible for p in q}


def compute_structure(w: Word) -> Structure:
    """Disjoint commutator blocks ``w_i w_{i+1} w_i^-1 w_{i+1}^-1`` and the leftover positions."""
    s = len(w)
    blocks = []
    i = 1
    while i + 3 <= s:
        if w[i - 1] == -w[i + 1] and w[i] == -w[i + 2]:
            blocks.append((i, i + 1, i + 2, i + 3))
            i += 4
        else:
            i += 1
    covered = {p for q in blocks for p in q}
    return Structure(tuple(blocks), tuple(p for p in range(1, s + 1) if p not in covered))


def measure(w: Word) -> tuple[int, int]:
    """``(length, |Delta|)``, compared lexicographically."""
    return len(w), len(compute_structure(w).delta)


def is_prefundamental(letters) -> bool:
    seen = set(letters)
    return len(seen) == len(letters) and all(-c in seen for c in seen)


def find_dagger(w: Word) -> tuple[int, int] | None:
    """Least ``(i, j)`` with ``1 < i < j < s``, ``w_i..w_j`` prefundamental and ``w_{i-1} w_{j+1} = 1``."""
    s = len(w)
    for i in range(2, s):
        partner = -w[i - 2]
        for j in range(i + 1, s):
            if w[j] == partner and is_prefundamental(w.letters[i - 1:j]):
                return i, j
    return None


@dataclass(frozen=True)
class BasisChange:
    """Old generators as new words (``images``) and new generators as old words (``preimages``)."""

    before: Alphabet
    after: Alphabet
    images: tuple[Word, ...]
    preimages: tuple[Word, ...]


def apply_dagger(w: Word, i: int, j: int, alphabet: Alphabet) -> tuple[BasisChange, Word]:
    """Conjugate every generator of the block ``w_i..w_j`` by ``x = w_{i-1}^-1``."""
    x = Word((-w[i - 2],))
    block = {gen_of(c) for c in w.letters[i - 1:j]}
    names = list(alphabet.names)
    images, preimages = [], []
    for g in range(alphabet.size):
        if g in block:
            images.append(multiply(x, Word.gen(g), invert(x)))
            preimages.append(multiply(invert(x), Word.gen(g), x))
            names[g] = _fresh(names[g] + "'", names)
        else:
            images.append(Word.gen(g))
            preimages.append(Word.gen(g))
    change = BasisChange(alphabet, Alphabet(names), tuple(images), tuple(preimages))
    return change, substitute(w, change.images)


def _fresh(name: str, taken) -> str:
    while name in taken:
        name += "'"
    return name


@dataclass(frozen=True)
class GoodTriple:
    i: int
    j: int
    k: int


def _pairs_match(w: Word, t: GoodTriple) -> bool:
    return (1 < t.i < t.j < t.k <= len(w)
            and w[0] == -w[t.j - 1] and w[t.i - 1] == -w[t.k - 1])


def is_good_triple(w: Word, t: GoodTriple) -> bool:
    if not _pairs_match(w, t):
        return False
    delta = set(compute_structure(w).delta)
    return {1, t.i, t.j, t.k} <= delta


def find_good_triple_via_rotation(w: Word) -> tuple[int, GoodTriple]:
    """Rotation start ``h`` and a good triple of ``rotate(w, h)``.

    Follows the constructive argument: in the subword on Delta, take the
    least position ``j`` whose inverse occurs earlier (at ``h``), the first
    position ``i`` after ``h``, and the partner ``k`` of ``i``.
    """
    st = compute_structure(w)
    nu = st.delta
    if not nu:
        raise ValueError("Delta is empty; nothing to extract")
    if find_dagger(w) is not None:
        raise ValueError("a dagger pair exists; apply it first")
    if w[-1] == -w[0]:
        raise ValueError("word is not cyclically reduced")
    sub = [w[p - 1] for p in nu]
    pos = {c: a for a, c in enumerate(sub)}
    jj = next((a for a, c in enumerate(sub) if -c in pos and pos[-c] < a), None)
    if jj is None:
        raise ValueError("Delta subword has no cancelling pair")
    hh = pos[-sub[jj]]
    ii = hh + 1
    if -sub[ii] not in pos:
        raise ValueError("word is not prefundamental")
    kk = pos[-sub[ii]]
    h, i, j, k = nu[hh], nu[ii], nu[jj], nu[kk]
    if not k > j:
        raise InternalError("partner of i precedes j")
    triple = GoodTriple(i - h + 1, j - h + 1, k - h + 1)
    return h, triple


def extract_commutator(w: Word, t: GoodTriple, alphabet: Alphabet,
                       names: tuple[str, str] = ("c", "d")) -> tuple[BasisChange, Word]:
    """Replace the generators at positions 1 and ``i`` by ``y1 = T S w_1^-1`` and
    ``y2 = T w_i^-1 (T S R)^-1``, giving ``w = [y1, y2] T S R U``."""
    # Delta membership only matters for the measure; normalize() checks that.
    if not _pairs_match(w, t):
        raise ValueError(f"{t} does not pair position 1 with j and i with k")
    L = w.letters
    R = Word(L[1:t.i - 1])
    S = Word(L[t.i:t.j - 1])
    T = Word(L[t.j:t.k - 1])
    U = Word(L[t.k:])
    w1, wi = Word((L[0],)), Word((L[t.i - 1],))
    alpha, beta = gen_of(L[0]), gen_of(L[t.i - 1])

    y1_old = multiply(T, S, invert(w1))
    y2_old = multiply(T, invert(wi), invert(multiply(T, S, R)))
    names_new = list(alphabet.names)
    names_new[alpha] = _fresh(names[0], names_new)
    names_new[beta] = _fresh(names[1], names_new)
    after = Alphabet(names_new)

    y1, y2 = Word.gen(alpha), Word.gen(beta)
    # w1 = y1^-1 T S and w_i = R^-1 S^-1 T^-1 y2^-1 T, all over the new basis
    w1_new = multiply(invert(y1), T, S)
    wi_new = multiply(invert(R), invert(S), invert(T), invert(y2), T)
    images = [Word.gen(g) for g in range(alphabet.size)]
    images[alpha] = w1_new if sign_of(L[0]) > 0 else invert(w1_new)
    images[beta] = wi_new if sign_of(L[t.i - 1]) > 0 else invert(wi_new)
    preimages = [Word.gen(g) for g in range(alphabet.size)]
    preimages[alpha] = y1_old
    preimages[beta] = y2_old
    change = BasisChange(alphabet, after, tuple(images), tuple(preimages))

    w_new = multiply(commutator(y1, y2), T, S, R, U)
    if substitute(w, change.images) != w_new:
        raise InternalError("commutator extraction does not reproduce the relator")
    return change, w_new


@dataclass
class NormalizationRecord:
    kind: str
    alphabet: Alphabet
    word: Word
    measure: tuple[int, int]


@dataclass
class NormalForm:
    genus: int
    alphabet: Alphabet          # a1, b1, ..., ag, bg
    relation: Word
    steps: list[IsoStep] = field(default_factory=list)
    log: list[NormalizationRecord] = field(default_factory=list)


class MonotonicityError(InternalError):
    pass


def _basis_step(kind, change: BasisChange, w: Word, info=None) -> IsoStep:
    return make_step(kind, change.before, change.after, (w,), change.images, change.preimages, info=info)


def normalize(w: Word, alphabet: Alphabet, trace: Trace | None = None) -> NormalForm:
    """Run dagger moves, rotations and commutator extractions until Delta is empty."""
    steps: list[IsoStep] = []
    log = [NormalizationRecord("start", alphabet, w, measure(w))]

    def record(step: IsoStep):
        steps.append(step)
        if trace is not None:
            trace.append(step)

    occ = {gen_of(c) for c in w.letters}
    if not is_prefundamental(w.letters):
        raise ValueError("relator is not prefundamental")
    if occ != set(range(alphabet.size)):
        raise InternalError(f"{alphabet.size - len(occ)} generators do not occur in the relator")

    passes = 0
    while True:
        st = compute_structure(w)
        if not st.delta:
            break
        before = measure(w)
        dagger = find_dagger(w)
        if dagger is not None:
            change, w2 = apply_dagger(w, *dagger, alphabet)
            record(_basis_step("DaggerChange", change, w, {"pair": list(dagger)}))
            after = measure(w2)
            if not after < before:
                raise MonotonicityError(f"dagger move did not decrease L: {before} -> {after}")
            w, alphabet = w2, change.after
            log.append(NormalizationRecord("dagger", alphabet, w, after))
            continue

        h, triple = find_good_triple_via_rotation(w)
        if h != 1:
            w2 = rotate(w, h)
            ident = [Word.gen(g) for g in range(alphabet.size)]
            record(make_step("Rotation", alphabet, alphabet, (w,), ident, ident,
                             conjugators={0: prefix(w, h - 1)}, info={"start": h}))
            rot = measure(w2)
            if not rot <= before:
                raise MonotonicityError(f"rotation increased L: {before} -> {rot}")
            w = w2
            log.append(NormalizationRecord("rotation", alphabet, w, rot))
            before = rot
        passes += 1
        change, w2 = extract_commutator(w, triple, alphabet, (f"c{passes}", f"d{passes}"))
        record(_basis_step("CommutatorChange", change, w,
                           {"triple": [triple.i, triple.j, triple.k]}))
        after = measure(w2)
        if not after < before:
            raise MonotonicityError(f"extraction did not decrease L: {before} -> {after}")
        w, alphabet = w2, change.after
        log.append(NormalizationRecord("extract", alphabet, w, after))

    g = len(w) // 4
    if alphabet.size != 2 * g:
        raise InternalError(f"{alphabet.size - 2 * g} free generators remain after normalization")
    names = [n for i in range(1, g + 1) for n in (f"a{i}", f"b{i}")]
    final = Alphabet(names)
    images = [Word()] * alphabet.size
    preimages = []
    for i in range(g):
        for slot, pos in ((2 * i, 4 * i), (2 * i + 1, 4 * i + 1)):
            c = w.letters[pos]
            # the new generator is the inverse of the letter read off the word
            images[gen_of(c)] = Word((letter(slot, -sign_of(c)),))
            preimages.append(Word((-c,)))
    if g:
        step = make_step("FinalRelabel", alphabet, final, (w,), images, preimages)
        record(step)
        w = step.relators_after[0]
    relation = multiply(*[commutator(Word.gen(2 * i), Word.gen(2 * i + 1)) for i in range(g)])
    if w != relation:
        raise InternalError("final relator is not a product of commutators")
    log.append(NormalizationRecord("final", final, w, measure(w)))
    return NormalForm(g, final, relation, steps, log)
