import random

import pytest

from surfgroup.freegroup import Word
from surfgroup.pipeline import run
from surfgroup.samples import hyperelliptic, non_cyclic, random_batch

SWEEP_SEED = 2024
SWEEP_SIZE = 240

# criterion number -> (passed, detail); filled in by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def random_word(rng: random.Random, rank: int, max_len: int) -> Word:
    raw = [rng.choice([1, -1]) * rng.randint(1, rank) for _ in range(rng.randint(0, max_len))]
    return Word(raw)


def random_raw(rng: random.Random, rank: int, max_len: int) -> list[int]:
    return [rng.choice([1, -1]) * rng.randint(1, rank) for _ in range(rng.randint(0, max_len))]


@pytest.fixture(scope="session")
def nc():
    return run(non_cyclic())


@pytest.fixture(scope="session")
def hyper():
    return {r: run(hyperelliptic(r)) for r in (4, 6, 8, 10)}


@pytest.fixture(scope="session")
def sweep_inputs():
    return random_batch(SWEEP_SEED, SWEEP_SIZE)


@pytest.fixture(scope="session")
def sweep(sweep_inputs):
    return [run(inp) for inp in sweep_inputs]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
