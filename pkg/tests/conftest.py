"""Shared generators for the test suite (all seeded, fully deterministic)."""

import random

import pytest

from tmlab import registry
from tmlab.machines import BLANK, MachineTable, Rule

SYMS = ("0", "1", BLANK)
MOVES = ("L", "R", "N")


@pytest.fixture(autouse=True)
def _fresh_registry():
    # builders register indices in a process-wide set; isolate every test
    registry.clear()
    yield


def random_table(rng: random.Random, max_states: int = 4) -> MachineTable:
    """A valid random table: distinct (state, read) sources, states 1..max."""
    n = rng.randint(1, max_states)
    sources = [(q, a) for q in range(1, n + 1) for a in SYMS]
    rng.shuffle(sources)
    count = rng.randint(0, len(sources))
    rules = tuple(Rule(q, a, rng.randint(0, n), rng.choice(SYMS), rng.choice(MOVES))
                  for q, a in sources[:count])
    return MachineTable(rules)


def all_words(max_len: int):
    """Every binary word of length 0..max_len, in enumeration order."""
    out = [""]
    for length in range(1, max_len + 1):
        out.extend(format(v, "b").zfill(length) for v in range(1 << length))
    return out
