"""Machine model: stepping, running, output convention, table text."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import all_words, random_table
from tmlab.machines import (
    ALREADY_HALTED,
    Configuration,
    Halted,
    InvalidTable,
    MachineTable,
    OutOfFuel,
    Rule,
    format_tm_text,
    initial_config,
    output_word,
    parse_tm_text,
    run,
    step,
    trivial_machine,
)

LOOP = MachineTable((Rule(1, "_", 1, "_", "N"),))
FLIP_ONE = MachineTable((Rule(1, "1", 0, "0", "N"),))


def test_step_applies_matching_rule():
    c = initial_config(FLIP_ONE, "1")
    nxt = step(FLIP_ONE, c)
    assert nxt.state == 0 and nxt.tape.get(0) == "0" and nxt.steps == 1


def test_step_missing_rule_halts_in_one_step():
    c = initial_config(LOOP, "1")  # reads '1', no rule for it
    nxt = step(LOOP, c)
    assert nxt.state == 0 and nxt.steps == 1 and nxt.tape.get(0) == "1"


def test_step_when_already_halted():
    c = Configuration({}, 0, 0, 3)
    assert step(trivial_machine(), c) is ALREADY_HALTED


def test_run_trivial_machine_is_identity():
    got = run(trivial_machine(), "101", 10)
    assert isinstance(got, Halted) and got.output == "101" and got.steps <= 1


def test_run_loop_exhausts_fuel():
    assert run(LOOP, "", 10) == OutOfFuel(10)


def test_run_single_step_halt():
    assert run(FLIP_ONE, "1", 10) == Halted("0", 1)


def test_identity_law_all_words_up_to_8():
    t = trivial_machine()
    for w in all_words(8):
        assert run(t, w, 2) == Halted(w, 0)


def test_output_word_contiguous_under_head():
    c = Configuration({0: "1", 1: "0", 2: "1"}, 1, 0, 0)
    assert output_word(c) == "101"


def test_output_word_blank_head_is_empty():
    assert output_word(Configuration({1: "1"}, 0, 0, 0)) == ""


def test_output_word_picks_word_under_head_only():
    tape = {0: "1", 1: "1", 3: "0", 4: "0"}
    assert output_word(Configuration(tape, 4, 0, 0)) == "00"


def test_output_word_requires_halt():
    from tmlab.machines import NotHalted
    with pytest.raises(NotHalted):
        output_word(Configuration({}, 0, 2, 0))


def test_duplicate_source_rejected():
    with pytest.raises(InvalidTable):
        MachineTable((Rule(1, "0", 0, "0", "N"), Rule(1, "0", 1, "1", "N")))


def test_rule_from_final_state_rejected():
    with pytest.raises(InvalidTable):
        MachineTable((Rule(0, "0", 0, "0", "N"),))


def test_bad_symbol_rejected():
    with pytest.raises(InvalidTable):
        MachineTable((Rule(1, "x", 0, "0", "N"),))


def test_canonical_sorts_rules():
    t = MachineTable((Rule(2, "_", 0, "0", "N"), Rule(1, "1", 2, "0", "R"),
                      Rule(1, "0", 2, "1", "R")))
    assert [r.state for r in t.canonical().rules] == [1, 1, 2]
    assert [r.read for r in t.canonical().rules] == ["0", "1", "_"]


def test_tm_text_roundtrip():
    text = "1 0 2 1 R\n1 1 0 0 N\n2 _ 0 1 N\n"
    t = parse_tm_text(text)
    assert format_tm_text(t) == text
    assert parse_tm_text("\n" + text + "\n") == t  # blank lines ignored


def test_tm_text_rejects_garbage():
    with pytest.raises(InvalidTable):
        parse_tm_text("1 0 2 1\n")
    with pytest.raises(InvalidTable):
        parse_tm_text("1 2 0 0 N\n")


def _runs_equal(a, b):
    return a == b


@settings(deadline=None, max_examples=150)
@given(st.integers(0, 2 ** 30), st.integers(0, 63), st.integers(0, 40))
def test_determinism_and_fuel_laws(seed, word_value, fuel):
    rng = random.Random(seed)
    t = random_table(rng)
    w = format(word_value, "b") if word_value else ""
    first = run(t, w, fuel)
    assert _runs_equal(first, run(t, w, fuel))  # determinism
    if isinstance(first, Halted):
        assert first.steps <= fuel
        for extra in (1, 7):  # fuel monotonicity
            assert run(t, w, fuel + extra) == first
        assert "_" not in first.output
    else:
        assert first == OutOfFuel(fuel)
