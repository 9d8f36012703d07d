"""
Permutations of {1, ..., n} and the monodromy action of loop words.

Points are 1-based in text and JSON, 0-based internally.  Words act on
points from the right: ``point^(uv) = (point^u)^v``, so ``compose(p, q)``
applies ``p`` first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .freegroup import Alphabet, Word


class InvalidInput(ValueError):
    """Branch data that does not describe a connected branched cover."""


class CycleSyntaxError(InvalidInput):
    pass


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation: {imgs}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> "Permutation":
        return cls(tuple(i - 1 for i in images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __str__(self):
        return format_cycles(self)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` then ``q``: ``(p*q)(i) = q(p(i))``."""
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} != {q.n}")
    return Permutation(tuple(q.images[i] for i in p.images))


def transposition(n: int, a: int, b: int) -> Permutation:
    imgs = list(range(n))
    imgs[a], imgs[b] = imgs[b], imgs[a]
    return Permutation(tuple(imgs))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse disjoint-cycle notation such as ``"(123)(4)"`` or ``"(10 11)(1,2)"``.

    Points must be single digits unless separated by spaces or commas.
    """
    stripped = re.sub(r"\s+", " ", text.strip())
    if _CYCLE_RE.sub("", stripped).strip():
        raise CycleSyntaxError(f"malformed cycle notation: {text!r}")
    imgs = list(range(n))
    seen: set[int] = set()
    for body in _CYCLE_RE.findall(stripped):
        body = body.strip()
        if not body:
            continue
        if re.search(r"[\s,]", body):
            tokens = [t for t in re.split(r"[\s,]+", body) if t]
        else:
            tokens = list(body)
        try:
            points = [int(t) for t in tokens]
        except ValueError:
            raise CycleSyntaxError(f"non-numeric point in {text!r}") from None
        for p in points:
            if not 1 <= p <= n:
                raise CycleSyntaxError(f"point {p} out of range 1..{n} in {text!r}")
            if p in seen:
                raise CycleSyntaxError(f"point {p} repeated in {text!r}")
            seen.add(p)
        for a, b in zip(points, points[1:] + points[:1]):
            imgs[a - 1] = b - 1
    return Permutation(tuple(imgs))


def format_cycles(p: Permutation) -> str:
    cycles = [c for c in cycle_decomposition(p).cycles if len(c) > 1]
    if not cycles:
        return "()"
    sep = "" if p.n <= 9 else " "
    return "".join("(" + sep.join(str(x + 1) for x in c) + ")" for c in cycles)


@dataclass(frozen=True)
class CycleDecomposition:
    cycles: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.cycles)

    @property
    def lengths(self) -> list[int]:
        return [len(c) for c in self.cycles]

    def length_containing(self, point: int) -> int:
        for c in self.cycles:
            if point in c:
                return len(c)
        raise ValueError(f"point {point} not in any cycle")


def cycle_decomposition(p: Permutation) -> CycleDecomposition:
    """Cycles with smallest point first, sorted by smallest point, fixed points included."""
    seen = [False] * p.n
    cycles = []
    for start in range(p.n):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p.images[x]
        cycles.append(tuple(cyc))
    return CycleDecomposition(tuple(cycles))


def orbit(point: int, gens: Sequence[Permutation]) -> set[int]:
    reached = {point}
    frontier = [point]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = g.images[x]
            if y not in reached:
                reached.add(y)
                frontier.append(y)
    return reached


@dataclass(frozen=True)
class MonodromyInput:
    n: int
    sigmas: tuple[Permutation, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "sigmas", tuple(self.sigmas))
        for s in self.sigmas:
            if s.n != self.n:
                raise InvalidInput(f"permutation {s} acts on {s.n} points, expected {self.n}")

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[str], labels=None) -> "MonodromyInput":
        return cls(n, tuple(parse_cycles(c, n) for c in cycles), labels)

    @classmethod
    def from_json(cls, data: dict) -> "MonodromyInput":
        try:
            n = int(data["n"])
            sigmas = data["sigmas"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"expected {{\"n\": int, \"sigmas\": [...]}}: {exc}") from None
        if not isinstance(sigmas, list) or not all(isinstance(s, str) for s in sigmas):
            raise InvalidInput("sigmas must be a list of cycle strings")
        return cls.from_cycles(n, sigmas, data.get("labels"))

    def to_json(self) -> dict:
        return {"n": self.n, "sigmas": [format_cycles(s) for s in self.sigmas]}

    @cached_property
    def inverse_sigmas(self) -> tuple[Permutation, ...]:
        return tuple(s.inverse() for s in self.sigmas)

    @property
    def r(self) -> int:
        return len(self.sigmas)

    def gamma_alphabet(self) -> Alphabet:
        """Free basis g1..g{r-1} of the punctured-sphere group."""
        return Alphabet.indexed("g", self.r - 1)

    def gamma_r(self) -> Word:
        """The last loop, expanded as ``(g1 g2 ... g{r-1})^-1``."""
        return Word(-(g + 1) for g in reversed(range(self.r - 1)))

    def product(self) -> Permutation:
        out = Permutation.identity(self.n)
        for s in self.sigmas:
            out = compose(out, s)
        return out

    def validate(self) -> None:
        if self.n < 2:
            raise InvalidInput(f"degree must be at least 2, got {self.n}")
        if self.r < 2:
            raise InvalidInput(f"need at least 2 branch points, got {self.r}")
        for i, s in enumerate(self.sigmas, 1):
            if s.is_identity():
                raise InvalidInput(f"sigma_{i} is the identity; drop that point, it is not a branch point")
        if not self.product().is_identity():
            raise InvalidInput(f"product of the sigmas is {self.product()}, not the identity")
        if not is_transitive(self):
            raise InvalidInput("the sigmas do not generate a transitive group")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except InvalidInput:
            return False
        return True

    def relabel(self, t: Permutation) -> "MonodromyInput":
        """Conjugate every sigma by the point relabeling ``t``."""
        ti = t.inverse()
        return MonodromyInput(self.n, tuple(compose(compose(ti, s), t) for s in self.sigmas), self.labels)


def is_transitive(inp: MonodromyInput) -> bool:
    return len(orbit(0, inp.sigmas)) == inp.n


def normalize_basepoint(inp: MonodromyInput) -> tuple[MonodromyInput, int | None]:
    """Make sure sigma_1 moves point 1.

    Returns the (possibly) relabeled input and the 0-based point swapped with
    point 0, or ``None`` when nothing changed.
    """
    s1 = inp.sigmas[0]
    if s1.images[0] != 0:
        return inp, None
    m = next(i for i in range(inp.n) if s1.images[i] != i)
    return inp.relabel(transposition(inp.n, 0, m)), m


def tau(inp: MonodromyInput, w: Word) -> Permutation:
    """Monodromy of a word over g1..g{r-1}."""
    return Permutation(tuple(act(inp, p, w) for p in range(inp.n)))


def act(inp: MonodromyInput, point: int, w: Word) -> int:
    """``point^tau(w)``."""
    limit = inp.r - 1
    sigmas = inp.sigmas
    inverses = inp.inverse_sigmas
    for c in w.letters:
        g = abs(c) - 1
        if g >= limit:
            raise ValueError(f"generator index {g} not below r-1 = {limit}")
        if c > 0:
            point = sigmas[g].images[point]
        else:
            point = inverses[g].images[point]
    return point
