"""
Reduced words in a finitely generated free group.

A letter is stored as a non-zero integer: generator ``g`` (0-based) is
``g + 1`` and its inverse is ``-(g + 1)``.  A :class:`Word` is an immutable,
always freely reduced tuple of such letters.  Display names live in an
:class:`Alphabet`, which is kept separate so that bases can be renamed
without touching the words.
"""

from __future__ import annotations

import itertools
import re
from typing import Iterable, Mapping, NamedTuple, Sequence


class Letter(NamedTuple):
    gen: int
    sign: int

    @property
    def code(self) -> int:
        return self.sign * (self.gen + 1)

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        return cls(abs(code) - 1, 1 if code > 0 else -1)


def letter(gen: int, sign: int = 1) -> int:
    """Integer code of ``gen`` raised to ``sign``."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if gen < 0:
        raise ValueError(f"negative generator index {gen}")
    return sign * (gen + 1)


def gen_of(code: int) -> int:
    return abs(code) - 1


def sign_of(code: int) -> int:
    return 1 if code > 0 else -1


def _free_reduce(codes: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for c in codes:
        if c == 0:
            raise ValueError("letter code 0 is not allowed")
        if stack and stack[-1] == -c:
            stack.pop()
        else:
            stack.append(c)
    return tuple(stack)


class Word:
    """An element of a free group as a reduced sequence of letter codes."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[int | Letter] = ()):
        codes = (l.code if isinstance(l, Letter) else int(l) for l in letters)
        object.__setattr__(self, "letters", _free_reduce(codes))
        object.__setattr__(self, "_hash", hash(self.letters))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def gen(cls, g: int, sign: int = 1) -> "Word":
        return cls((letter(g, sign),))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "Word":
        return cls(letter(g, s) for g, s in pairs)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __bool__(self):
        return bool(self.letters)

    def __eq__(self, other):
        if isinstance(other, Word):
            return self.letters == other.letters
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else invert(self)
        return Word(base.letters * abs(k))

    def __repr__(self):
        return f"Word({list(self.letters)!r})"

    def pairs(self) -> list[Letter]:
        return [Letter.from_code(c) for c in self.letters]

    def generators(self) -> set[int]:
        return {abs(c) - 1 for c in self.letters}

    def max_gen(self) -> int:
        return max((abs(c) for c in self.letters), default=0) - 1


IDENTITY = Word()


def reduce(raw: Iterable[int | Letter]) -> Word:
    return Word(raw)


def multiply(*words: Word) -> Word:
    return Word(itertools.chain.from_iterable(w.letters for w in words))


def invert(w: Word) -> Word:
    return Word(-c for c in reversed(w.letters))


def conjugate(g: Word, x: Word) -> Word:
    """``g^x = x^-1 g x``."""
    return multiply(invert(x), g, x)


def commutator(x: Word, y: Word) -> Word:
    """``[x, y] = x^-1 y^-1 x y``."""
    return multiply(invert(x), invert(y), x, y)


def rotate(w: Word, i: int) -> Word:
    """Cyclic shift starting at the 1-based position ``i``."""
    s = len(w)
    if not 1 <= i <= s:
        raise IndexError(f"rotation index {i} out of range for length {s}")
    return Word(w.letters[i - 1:] + w.letters[:i - 1])


def prefix(w: Word, k: int) -> Word:
    return Word(w.letters[:k])


def substitute(w: Word, images: Mapping[int, Word] | Sequence[Word]) -> Word:
    """Image of ``w`` under the homomorphism sending generator ``g`` to ``images[g]``."""
    out: list[int] = []
    for c in w.letters:
        g = abs(c) - 1
        try:
            img = images[g]
        except (KeyError, IndexError):
            raise KeyError(f"no image for generator {g}") from None
        if c > 0:
            out.extend(img.letters)
        else:
            out.extend(-d for d in reversed(img.letters))
    return Word(out)


def cyclic_reduction(w: Word) -> tuple[Word, Word]:
    """Return ``(c, w')`` with ``w' = c^-1 w c`` cyclically reduced."""
    letters = w.letters
    k = 0
    while len(letters) - 2 * k >= 2 and letters[k] == -letters[len(letters) - 1 - k]:
        k += 1
    return Word(letters[:k]), Word(letters[k:len(letters) - k])


def is_cyclically_reduced(w: Word) -> bool:
    return len(w) < 2 or w.letters[0] != -w.letters[-1]


def _rank(code: int) -> int:
    # s1 < s1^-1 < s2 < s2^-1 < ...
    return 2 * (abs(code) - 1) + (0 if code > 0 else 1)


def well_order_key(w: Word) -> tuple:
    return (len(w), tuple(_rank(c) for c in w.letters))


def compare_well_order(u: Word, v: Word) -> int:
    ku, kv = well_order_key(u), well_order_key(v)
    return (ku > kv) - (ku < kv)


def letters_in_order(rank: int) -> list[int]:
    """All letter codes of a rank-``rank`` free group, smallest first."""
    return [c for g in range(rank) for c in (g + 1, -(g + 1))]


def enumerate_words(rank: int, max_length: int):
    """Reduced words of length <= ``max_length`` in increasing well-order."""
    level = [IDENTITY]
    yield IDENTITY
    alphabet = letters_in_order(rank)
    for _ in range(max_length):
        nxt = []
        for w in level:
            for c in alphabet:
                if w.letters and w.letters[-1] == -c:
                    continue
                nxt.append(Word(w.letters + (c,)))
        yield from nxt
        level = nxt


_NAME_RE = re.compile(r"^[^\s*^()]+$")


class Alphabet:
    """Display names for the generators of one free basis."""

    _versions = itertools.count()

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"generator names must be distinct: {names}")
        for n in names:
            if not _NAME_RE.match(n) or n == "1":
                raise ValueError(f"invalid generator name {n!r}")
        self.names = names
        self.version = next(Alphabet._versions)
        self._index = {n: i for i, n in enumerate(names)}

    @classmethod
    def indexed(cls, prefix: str, size: int, start: int = 1) -> "Alphabet":
        return cls([f"{prefix}{i}" for i in range(start, start + size)])

    @property
    def size(self) -> int:
        return len(self.names)

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        if isinstance(other, Alphabet):
            return self.names == other.names
        return NotImplemented

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Alphabet({list(self.names)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def check(self, w: Word) -> Word:
        if w.max_gen() >= self.size:
            raise ValueError(f"word uses generator {w.max_gen()} outside alphabet of size {self.size}")
        return w

    def format(self, w: Word) -> str:
        if not w:
            return "1"
        self.check(w)
        return "*".join(self.names[abs(c) - 1] + ("" if c > 0 else "^-1") for c in w.letters)

    def parse(self, text: str) -> Word:
        text = text.strip()
        if text == "1" or text == "":
            return IDENTITY
        codes = []
        for tok in text.split("*"):
            tok = tok.strip()
            if tok.endswith("^-1"):
                codes.append(-(self.index(tok[:-3].strip()) + 1))
            else:
                codes.append(self.index(tok) + 1)
        return Word(codes)
