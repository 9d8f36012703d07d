"""
Isomorphism trace: every presentation change between the Schreier
presentation and the final surface presentation.

Each :class:`IsoStep` carries two substitutions:

* ``images``    old generator -> word over the new alphabet (pushes relators forward)
* ``preimages`` new generator -> word over the old alphabet (expands backward)

plus, for each relator after the step, the index of the relator it came
from and the conjugator applied to it.  That is enough to replay a step
and to check it in isolation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .freegroup import Alphabet, Word, conjugate, gen_of, invert, rotate, substitute
from .permrep import MonodromyInput, act, compose, parse_cycles, transposition

KINDS = (
    "FiberRelabel",
    "GeneratorElimination",
    "RelatorMerge",
    "Rotation",
    "DaggerChange",
    "CommutatorChange",
    "FinalRelabel",
)


@dataclass(frozen=True)
class IsoStep:
    kind: str
    alphabet_before: Alphabet
    alphabet_after: Alphabet
    relators_before: tuple[Word, ...]
    relators_after: tuple[Word, ...]
    images: tuple[Word, ...]
    preimages: tuple[Word, ...]
    sources: tuple[tuple[int, Word], ...]
    eliminated: tuple[tuple[int, int], ...] = ()
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown step kind {self.kind!r}")


def make_step(kind, alphabet_before, alphabet_after, relators_before, images, preimages,
              eliminated=(), conjugators=None, drop=(), info=None) -> IsoStep:
    """Push ``relators_before`` through ``images`` and build the step.

    Relators listed in ``drop`` or pushed to the identity are removed; the
    rest are conjugated by ``conjugators[k]`` (default: none).
    """
    images = tuple(images)
    pushed = [substitute(r, images) for r in relators_before]
    after, sources = [], []
    for k, w in enumerate(pushed):
        if k in drop or not w:
            continue
        c = (conjugators or {}).get(k, Word())
        after.append(conjugate(w, c))
        sources.append((k, c))
    return IsoStep(kind, alphabet_before, alphabet_after, tuple(relators_before), tuple(after),
                   images, tuple(preimages), tuple(sources), tuple(eliminated), dict(info or {}))


def relabel_step(gamma: Alphabet, before: MonodromyInput, after: MonodromyInput, point: int) -> IsoStep:
    ident = tuple(Word.gen(g) for g in range(gamma.size))
    return IsoStep("FiberRelabel", gamma, gamma, (), (), ident, ident, (), (), {
        "swapped": [1, point + 1],
        "n": before.n,
        "sigmas_before": before.to_json()["sigmas"],
        "sigmas_after": after.to_json()["sigmas"],
    })


@dataclass
class StepReport:
    index: int
    kind: str
    ok: bool
    message: str = ""


@dataclass
class TraceReport:
    ok: bool
    steps: list[StepReport]
    failed_step: int | None = None
    message: str = ""


class StepFailure(Exception):
    pass


def _solve_for(gen: int, relator: Word) -> Word:
    """Solve ``relator = 1`` for a generator occurring in it exactly once."""
    positions = [k for k, c in enumerate(relator.letters) if gen_of(c) == gen]
    if len(positions) != 1:
        raise StepFailure(f"generator {gen} occurs {len(positions)} times in the eliminating relator")
    rot = rotate(relator, positions[0] + 1)
    head, rest = rot.letters[0], Word(rot.letters[1:])
    return invert(rest) if head > 0 else rest


def check_step(step: IsoStep) -> None:
    """Raise :class:`StepFailure` when the step is not a valid isomorphism."""
    if step.kind == "FiberRelabel":
        info = step.info
        n = info["n"]
        a, m = info["swapped"]
        t = transposition(n, a - 1, m - 1)
        for s_before, s_after in zip(info["sigmas_before"], info["sigmas_after"], strict=True):
            p, q = parse_cycles(s_before, n), parse_cycles(s_after, n)
            if compose(compose(t, p), t) != q:
                raise StepFailure(f"{s_after} is not {s_before} relabeled by ({a} {m})")
        return

    old, new = step.alphabet_before, step.alphabet_after
    if len(step.images) != old.size or len(step.preimages) != new.size:
        raise StepFailure("substitution maps do not match the alphabets")
    for w in step.images:
        new.check(w)
    for w in step.preimages:
        old.check(w)
    for w in step.relators_before:
        old.check(w)

    pushed = [substitute(r, step.images) for r in step.relators_before]
    if len(step.sources) != len(step.relators_after):
        raise StepFailure("relator bookkeeping has the wrong length")
    used = set()
    for k, ((src, c), after) in enumerate(zip(step.sources, step.relators_after)):
        if src in used or not 0 <= src < len(pushed):
            raise StepFailure(f"bad source index {src} for relator {k}")
        used.add(src)
        if conjugate(pushed[src], c) != after:
            raise StepFailure(f"relator {k} does not match the image of relator {src}")
    for src in range(len(pushed)):
        if src not in used and pushed[src]:
            raise StepFailure(f"relator {src} was dropped but its image is not trivial")
    for _, d in step.eliminated:
        if d in used:
            raise StepFailure(f"eliminating relator {d} must be dropped")

    for g in range(new.size):
        if substitute(step.preimages[g], step.images) != Word.gen(g):
            raise StepFailure(f"new generator {new.names[g]} does not round-trip")
    gone = {o for o, _ in step.eliminated}
    for o in range(old.size):
        if o in gone:
            continue
        if substitute(step.images[o], step.preimages) != Word.gen(o):
            raise StepFailure(f"old generator {old.names[o]} does not round-trip")
    for o, d in step.eliminated:
        solution = _solve_for(o, step.relators_before[d])
        if substitute(solution, step.images) != step.images[o]:
            raise StepFailure(f"image of eliminated {old.names[o]} disagrees with its relator")
    if old.size - new.size != len(gone):
        raise StepFailure("alphabet shrank by a different amount than the eliminations")


@dataclass
class Trace:
    """Initial Schreier presentation plus the ordered list of steps."""

    input: MonodromyInput
    gamma: Alphabet
    initial_alphabet: Alphabet
    initial_provenance: tuple[Word, ...]
    initial_relators: tuple[Word, ...]
    steps: list[IsoStep] = field(default_factory=list)
    _prov_cache: list = field(default_factory=list, repr=False, compare=False)

    def append(self, step: IsoStep) -> None:
        self.steps.append(step)

    def presentation_steps(self) -> list[IsoStep]:
        return [s for s in self.steps if s.kind != "FiberRelabel"]

    @property
    def final_alphabet(self) -> Alphabet:
        ps = self.presentation_steps()
        return ps[-1].alphabet_after if ps else self.initial_alphabet

    @property
    def final_relators(self) -> tuple[Word, ...]:
        ps = self.presentation_steps()
        return ps[-1].relators_after if ps else self.initial_relators

    def provenances(self) -> list[tuple[Word, ...]]:
        """Loop-word meaning of every generator after each presentation step."""
        ps = self.presentation_steps()
        if not self._prov_cache:
            self._prov_cache.append(self.initial_provenance)
        while len(self._prov_cache) <= len(ps):
            prev = self._prov_cache[-1]
            step = ps[len(self._prov_cache) - 1]
            self._prov_cache.append(tuple(substitute(w, prev) for w in step.preimages))
        return self._prov_cache

    def final_provenance(self) -> tuple[Word, ...]:
        return self.provenances()[len(self.presentation_steps())]

    def expand_to_gamma(self, gen: int | str) -> Word:
        alph = self.final_alphabet
        if isinstance(gen, str):
            gen = alph.index(gen)
        if not 0 <= gen < alph.size:
            raise KeyError(f"unknown generator {gen}")
        return self.final_provenance()[gen]

    def expand_word(self, w: Word) -> Word:
        return substitute(w, self.final_provenance())

    def verify(self) -> TraceReport:
        return verify_trace(self)


def verify_trace(tr: Trace) -> TraceReport:
    reports = []
    alphabet, relators = tr.initial_alphabet, tr.initial_relators

    def fail(i, kind, msg):
        reports.append(StepReport(i, kind, False, msg))
        return TraceReport(False, reports, i, f"step {i} ({kind}): {msg}")

    if len(tr.initial_provenance) != alphabet.size:
        return fail(-1, "initial", "provenance does not cover the alphabet")
    for g, w in enumerate(tr.initial_provenance):
        if act(tr.input, 0, w) != 0:
            return fail(-1, "initial", f"{alphabet.names[g]} is not a loop at point 1")
    for i, step in enumerate(tr.steps):
        try:
            if step.kind != "FiberRelabel":
                if step.alphabet_before != alphabet:
                    raise StepFailure("alphabet does not continue from the previous step")
                if step.relators_before != relators:
                    raise StepFailure("relators do not continue from the previous step")
            check_step(step)
        except (StepFailure, ValueError, KeyError, IndexError) as exc:
            return fail(i, step.kind, str(exc))
        reports.append(StepReport(i, step.kind, True))
        if step.kind != "FiberRelabel":
            alphabet, relators = step.alphabet_after, step.relators_after
    return TraceReport(True, reports)


# ---------------------------------------------------------------- JSON


def _fmt(alph: Alphabet, words) -> list[str]:
    return [alph.format(w) for w in words]


def step_to_json(step: IsoStep) -> dict[str, Any]:
    old, new = step.alphabet_before, step.alphabet_after
    payload = {
        "images": dict(zip(old.names, _fmt(new, step.images))),
        "preimages": dict(zip(new.names, _fmt(old, step.preimages))),
        "relatorsBefore": _fmt(old, step.relators_before),
        "relatorsAfter": _fmt(new, step.relators_after),
        "sources": [{"from": k, "conjugator": new.format(c)} for k, c in step.sources],
        "eliminated": [{"generator": old.names[o], "relator": d} for o, d in step.eliminated],
        "info": step.info,
    }
    return {"kind": step.kind, "payload": payload,
            "alphabetBefore": list(old.names), "alphabetAfter": list(new.names)}


def step_from_json(data: dict[str, Any]) -> IsoStep:
    old = Alphabet(data["alphabetBefore"])
    new = Alphabet(data["alphabetAfter"])
    pl = data["payload"]
    return IsoStep(
        data["kind"], old, new,
        tuple(old.parse(s) for s in pl["relatorsBefore"]),
        tuple(new.parse(s) for s in pl["relatorsAfter"]),
        tuple(new.parse(pl["images"][n]) for n in old.names),
        tuple(old.parse(pl["preimages"][n]) for n in new.names),
        tuple((int(s["from"]), new.parse(s["conjugator"])) for s in pl["sources"]),
        tuple((old.index(e["generator"]), int(e["relator"])) for e in pl["eliminated"]),
        dict(pl.get("info", {})),
    )


def trace_to_json(tr: Trace) -> dict[str, Any]:
    return {
        "input": tr.input.to_json(),
        "gamma": list(tr.gamma.names),
        "initial": {
            "alphabet": list(tr.initial_alphabet.names),
            "provenance": _fmt(tr.gamma, tr.initial_provenance),
            "relators": _fmt(tr.initial_alphabet, tr.initial_relators),
        },
        "steps": [step_to_json(s) for s in tr.steps],
    }


def trace_from_json(data: dict[str, Any]) -> Trace:
    gamma = Alphabet(data["gamma"])
    init = data["initial"]
    alph = Alphabet(init["alphabet"])
    return Trace(
        MonodromyInput.from_json(data["input"]),
        gamma,
        alph,
        tuple(gamma.parse(s) for s in init["provenance"]),
        tuple(alph.parse(s) for s in init["relators"]),
        [step_from_json(s) for s in data["steps"]],
    )
