"""Deterministic single-tape Turing machines over {0, 1} plus blank.

A table is a finite set of quintuples (state, read, next_state, write, move)
over states 0..n where 0 is the final state and never a rule source.  The tape
is two-sided infinite; a run starts with the input word written from cell 0,
head on cell 0, in state 1 (state 0 at once when the table mentions no state,
which makes the zero-rule table the identity machine).  When no rule matches
the current (state, symbol) the machine moves to state 0 in one step.  Every
run is fuel-bounded and therefore total.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Union

BLANK = "_"
SYMBOLS = ("0", "1", BLANK)
MOVES = ("L", "R", "N")
_DELTA = {"L": -1, "R": 1, "N": 0}
_SYM_ORDER = {"0": 0, "1": 1, BLANK: 2}


class InvalidTable(ValueError):
    pass


class NotHalted(Exception):
    pass


class Rule(NamedTuple):
    state: int
    read: str
    next_state: int
    write: str
    move: str


class _AlreadyHalted:
    def __repr__(self):
        return "ALREADY_HALTED"


ALREADY_HALTED = _AlreadyHalted()


@dataclass(frozen=True)
class MachineTable:
    """Quintuple program; rule order is significant for Goedel coding."""

    rules: tuple[Rule, ...] = ()

    def __post_init__(self):
        seen = set()
        for r in self.rules:
            if not isinstance(r, Rule):
                raise InvalidTable("rules must be Rule tuples")
            if r.state <= 0:
                raise InvalidTable("state 0 is final and cannot be a rule source")
            if r.next_state < 0:
                raise InvalidTable("negative state index")
            if r.read not in SYMBOLS or r.write not in SYMBOLS:
                raise InvalidTable("symbols must be 0, 1 or blank")
            if r.move not in MOVES:
                raise InvalidTable("move must be L, R or N")
            key = (r.state, r.read)
            if key in seen:
                raise InvalidTable("two rules for %r" % (key,))
            seen.add(key)

    @cached_property
    def states(self) -> int:
        """Count of non-final states: the largest state index mentioned."""
        return max((max(r.state, r.next_state) for r in self.rules), default=0)

    @cached_property
    def rule_map(self) -> dict[tuple[int, str], Rule]:
        return {(r.state, r.read): r for r in self.rules}

    def canonical(self) -> "MachineTable":
        """Same rules sorted by (state, symbol); used for order-insensitive comparison."""
        order = sorted(self.rules, key=lambda r: (r.state, _SYM_ORDER[r.read]))
        return MachineTable(tuple(order))


def trivial_machine() -> MachineTable:
    """The zero-rule table; computes the identity in zero steps."""
    return MachineTable(())


@dataclass(frozen=True)
class Configuration:
    tape: dict  # cell -> '0' | '1'; absent cells are blank
    head: int
    state: int
    steps: int


@dataclass(frozen=True)
class Halted:
    output: str
    steps: int


@dataclass(frozen=True)
class OutOfFuel:
    steps: int


RunResult = Union[Halted, OutOfFuel]


def initial_config(table: MachineTable, word: str) -> Configuration:
    tape = {i: c for i, c in enumerate(word)}
    start = 1 if table.states >= 1 else 0
    return Configuration(tape, 0, start, 0)


def step(table: MachineTable, c: Configuration):
    """One transition; returns ALREADY_HALTED when c is final."""
    if c.state == 0:
        return ALREADY_HALTED
    sym = c.tape.get(c.head, BLANK)
    rule = table.rule_map.get((c.state, sym))
    if rule is None:
        return Configuration(dict(c.tape), c.head, 0, c.steps + 1)
    tape = dict(c.tape)
    if rule.write == BLANK:
        tape.pop(c.head, None)
    else:
        tape[c.head] = rule.write
    return Configuration(tape, c.head + _DELTA[rule.move], rule.next_state, c.steps + 1)


def output_word(c: Configuration) -> str:
    """Maximal contiguous non-blank word containing the head cell; empty on blank."""
    if c.state != 0:
        raise NotHalted("machine is in state %d" % c.state)
    return _word_at(c.tape, c.head)


def _word_at(tape: dict, head: int) -> str:
    if head not in tape:
        return ""
    lo = head
    while lo - 1 in tape:
        lo -= 1
    hi = head
    while hi + 1 in tape:
        hi += 1
    return "".join(tape[i] for i in range(lo, hi + 1))


def run(table: MachineTable, word: str, fuel: int) -> RunResult:
    """Fuel-bounded run; equivalent to iterating step from initial_config."""
    if fuel < 0:
        raise ValueError("fuel must be >= 0")
    tape = {i: c for i, c in enumerate(word)}
    head = 0
    state = 1 if table.states >= 1 else 0
    steps = 0
    rules = table.rule_map
    while state != 0:
        if steps >= fuel:
            return OutOfFuel(fuel)
        rule = rules.get((state, tape.get(head, BLANK)))
        if rule is None:
            state = 0
            steps += 1
            continue
        if rule.write == BLANK:
            tape.pop(head, None)
        else:
            tape[head] = rule.write
        head += _DELTA[rule.move]
        state = rule.next_state
        steps += 1
    return Halted(_word_at(tape, head), steps)


def parse_tm_text(text: str) -> MachineTable:
    """Table file format: one `q a q' a' d` rule per line, decimal states,
    a/a' in {0, 1, _}, d in {L, R, N}; blank lines ignored."""
    rules = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        fields = line.split()
        if len(fields) != 5:
            raise InvalidTable("line %d: expected 5 fields" % lineno)
        q, a, q2, a2, d = fields
        if not q.isdigit() or not q2.isdigit():
            raise InvalidTable("line %d: states must be decimal naturals" % lineno)
        rules.append(Rule(int(q), a, int(q2), a2, d))
    return MachineTable(tuple(rules))


def format_tm_text(table: MachineTable) -> str:
    return "".join(
        "%d %s %d %s %s\n" % (r.state, r.read, r.next_state, r.write, r.move)
        for r in table.rules
    )
