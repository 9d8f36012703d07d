"""The five steps from monodromy data to the surface-group presentation."""

from __future__ import annotations

from dataclasses import dataclass, field

from .commutator import NormalForm, normalize
from .freegroup import Alphabet, Word, commutator, multiply
from .oracle import (GenusReport, abelianization, expected_basis_rank,
                     riemann_hurwitz_genus)
from .permrep import MonodromyInput, Permutation, act, normalize_basepoint, tau
from .presentation import (Presentation, eliminate_lonely_generators, merge_relators,
                           surface_factor)
from .relators import InternalError, RelatorSet, check_fundamental, compute_relators
from .schreier import SchreierBasis, Transversal, build_transversal, schreier_basis
from .trace import Trace, TraceReport, relabel_step


@dataclass
class SurfaceOutput:
    genus: int
    gamma: Alphabet
    alphabet: Alphabet                  # a1, b1, ..., ag, bg
    generators: tuple[Word, ...]        # each final generator as a loop word
    relation: Word                      # over ``alphabet``

    def relation_in_gamma(self) -> Word:
        return multiply(*[commutator(self.generators[2 * i], self.generators[2 * i + 1])
                          for i in range(self.genus)])


@dataclass
class Computation:
    original: MonodromyInput
    input: MonodromyInput
    swapped_point: int | None
    transversal: Transversal
    basis: SchreierBasis
    relators: RelatorSet
    initial: Presentation
    chain: list[Presentation]
    surface: Presentation
    normal_form: NormalForm
    trace: Trace
    output: SurfaceOutput
    checks: dict = field(default_factory=dict)


def run(inp: MonodromyInput, basis_prefix: str = "y") -> Computation:
    inp.validate()
    original = inp
    inp, swapped = normalize_basepoint(inp)
    gamma = inp.gamma_alphabet()

    t = build_transversal(inp)
    b = schreier_basis(t)
    rs = compute_relators(inp, t, b)
    check_fundamental(rs, b)

    alph = b.alphabet(basis_prefix)
    trace = Trace(inp, gamma, alph, tuple(b.values()), tuple(rs.words()))
    if swapped is not None:
        trace.append(relabel_step(gamma, original, inp, swapped))
    p0 = Presentation(alph, tuple(b.values()), tuple(rs.words()), trace)

    chain = [p0]
    p = eliminate_lonely_generators(p0)
    chain.append(p)
    p = merge_relators(p)
    chain.append(p)
    p = eliminate_lonely_generators(p)
    if p is not chain[-1]:
        chain.append(p)
    surface = surface_factor(p)

    if surface.relators:
        nf = normalize(surface.relators[0], surface.alphabet, trace)
    else:
        nf = normalize(Word(), surface.alphabet, trace)

    prov = trace.final_provenance()
    out = SurfaceOutput(nf.genus, gamma, nf.alphabet, prov, nf.relation)
    return Computation(original, inp, swapped, t, b, rs, p0, chain, surface, nf, trace, out)


def genus_report(c: Computation) -> GenusReport:
    ab = abelianization(c.initial.relators, c.initial.alphabet.size)
    return GenusReport(
        genus_pipeline=c.output.genus,
        genus_rh=riemann_hurwitz_genus(c.original),
        basis_rank_expected=expected_basis_rank(c.input.n, c.input.r),
        basis_rank_actual=len(c.basis),
        abelianization_divisors=ab.divisors,
        abelian_free_rank=ab.free_rank,
        torsion=ab.torsion,
    )


@dataclass
class VerifyResult:
    ok: bool
    trace: TraceReport
    genus: GenusReport
    failures: list[str]
    relation_monodromy: Permutation | None = None   # tau of the expanded relation


def verify(c: Computation) -> VerifyResult:
    """Replay the trace and run every independent cross-check."""
    failures = []
    tr = c.trace.verify()
    if not tr.ok:
        failures.append(f"trace: {tr.message}")
    if c.trace.final_alphabet != c.output.alphabet:
        failures.append("trace does not end at the final alphabet")
    if c.trace.final_relators != ((c.output.relation,) if c.output.genus else ()):
        failures.append("trace does not end at the final relation")
    for name, w in zip(c.output.alphabet.names, c.output.generators):
        if act(c.input, 0, w) != 0:
            failures.append(f"{name} expands to a loop that does not close at point 1")
    # the relation lies in the normal closure of the branch relators, which
    # sits in the stabilizer of point 1 but not in the kernel of tau
    rel_perm = tau(c.input, c.output.relation_in_gamma())
    if rel_perm(0) != 0:
        failures.append("expanded relation moves point 1")
    gr = genus_report(c)
    failures.extend(gr.failures())
    return VerifyResult(not failures, tr, gr, failures, rel_perm)


def check(c: Computation) -> Computation:
    res = verify(c)
    if not res.ok:
        raise InternalError("; ".join(res.failures))
    return c
