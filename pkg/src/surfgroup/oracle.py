"""Cross-checks computed without the presentation pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field

from .permrep import InvalidInput, MonodromyInput, cycle_decomposition


def riemann_hurwitz_genus(inp: MonodromyInput) -> int:
    ramification = sum(len(c) - 1 for s in inp.sigmas for c in cycle_decomposition(s).cycles)
    twice = 2 - 2 * inp.n + ramification
    if twice < 0 or twice % 2:
        raise InvalidInput(f"branch data gives 2g = {twice}, not a nonnegative even integer")
    return twice // 2


def expected_basis_rank(n: int, r: int) -> int:
    """Rank of an index-``n`` subgroup of the free group of rank ``r - 1``."""
    return 1 + n * (r - 2)


def exponent_sum_matrix(relators, size: int) -> list[list[int]]:
    rows = []
    for w in relators:
        row = [0] * size
        for c in w.letters:
            row[abs(c) - 1] += 1 if c > 0 else -1
        rows.append(row)
    return rows


def elementary_divisors(matrix: list[list[int]]) -> list[int]:
    """Nonzero diagonal of the Smith form, by repeated minimal-pivot elimination."""
    a = [list(row) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    divisors = []
    t = 0
    while t < min(m, n):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if done:
                # the pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            entries = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
            entries += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
            _, pi, pj = min(entries)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        divisors.append(abs(a[t][t]))
        t += 1
    return divisors


@dataclass
class Abelianization:
    free_rank: int
    torsion: list[int]
    divisors: list[int]


def abelianization(relators, size: int) -> Abelianization:
    divs = elementary_divisors(exponent_sum_matrix(relators, size)) if relators else []
    return Abelianization(size - len(divs), [d for d in divs if d > 1], divs)


def abelianization_divisors(p) -> list[int]:
    return abelianization(p.relators, p.alphabet.size).divisors


@dataclass
class GenusReport:
    genus_pipeline: int
    genus_rh: int
    basis_rank_expected: int
    basis_rank_actual: int
    abelianization_divisors: list[int]
    abelian_free_rank: int
    torsion: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.genus_pipeline == self.genus_rh
                and self.basis_rank_expected == self.basis_rank_actual
                and self.abelian_free_rank == 2 * self.genus_rh
                and not self.torsion)

    def failures(self) -> list[str]:
        out = []
        if self.genus_pipeline != self.genus_rh:
            out.append(f"genus: pipeline {self.genus_pipeline} != Riemann-Hurwitz {self.genus_rh}")
        if self.basis_rank_expected != self.basis_rank_actual:
            out.append(f"basis rank {self.basis_rank_actual} != expected {self.basis_rank_expected}")
        if self.abelian_free_rank != 2 * self.genus_rh:
            out.append(f"abelianization free rank {self.abelian_free_rank} != 2g = {2 * self.genus_rh}")
        if self.torsion:
            out.append(f"abelianization has torsion {self.torsion}")
        return out

    def to_json(self) -> dict:
        return {
            "genusPipeline": self.genus_pipeline,
            "genusRH": self.genus_rh,
            "basisRankExpected": self.basis_rank_expected,
            "basisRankActual": self.basis_rank_actual,
            "abelianizationDivisors": self.abelianization_divisors,
            "abelianFreeRank": self.abelian_free_rank,
            "torsion": self.torsion,
            "ok": self.ok,
        }
