"""CNF word coding, assignment checking, and the counterexample search.

A formula is written as runs over {0,1}: each 1-run is a variable index, each
0-run a separator that carries the polarity of the next literal and whether a
new clause starts.  verify checks a paired (formula word, assignment word)
position; solve_E scans assignments in word order and returns the position of
the first satisfying one (0 when there is none, and 0 doubles as the honest
answer on malformed words).  f_neg_A hunts for a position z where a candidate
solver's answer fails a satisfiable formula.
"""

from dataclasses import dataclass
from itertools import groupby
from typing import Optional, Union

from .clocks import ClockedMachine, clocked_run
from .machines import MachineTable, OutOfFuel, run
from .words import index_word, pair, proj1, unpair, word_index

DEFAULT_FUEL = 10 ** 6


class MalformedCnf(ValueError):
    pass


class FuelExhausted(Exception):
    """A plain (unclocked) machine ran out of fuel while being consulted."""


class IndeterminateSearch(Exception):
    """The search hit a z it could neither confirm nor rule out."""

    def __init__(self, z: int):
        super().__init__("undecided at z=%d" % z)
        self.z = z


@dataclass(frozen=True)
class Found:
    witness: int
    value: int


@dataclass(frozen=True)
class Exhausted:
    budget: int


SearchOutcome = Union[Found, Exhausted]

Literal = tuple  # (variable index >= 1, positive: bool)


@dataclass(frozen=True)
class CnfFormula:
    clauses: tuple = ()
    num_vars: int = 0  # may exceed the largest mentioned variable

    def __post_init__(self):
        top = 0
        for clause in self.clauses:
            if not clause:
                raise MalformedCnf("empty clause")
            for var, positive in clause:
                if var < 1:
                    raise MalformedCnf("variable indices start at 1")
                if not isinstance(positive, bool):
                    raise MalformedCnf("polarity must be a bool")
                top = max(top, var)
        if self.num_vars < top:
            raise MalformedCnf("num_vars below a mentioned variable")


EMPTY_FORMULA = CnfFormula()


def encode_cnf(f: CnfFormula) -> str:
    """Emits one-zero separators for positive literals, two-zero for negative,
    the 3/4-zero clause-break forms between clauses, and one trailing zero."""
    if not f.clauses:
        return ""
    bits = []
    for ci, clause in enumerate(f.clauses):
        for li, (var, positive) in enumerate(clause):
            if ci == 0 and li == 0:
                sep = "0" if positive else "00"
            elif li == 0:
                sep = "000" if positive else "0000"
            else:
                sep = "0" if positive else "00"
            bits.append(sep)
            bits.append("1" * var)
    bits.append("0")
    return "".join(bits)


def decode_cnf(word: str) -> CnfFormula:
    """Inverse of encode_cnf on its image; raises MalformedCnf elsewhere.
    All-zero words up to length 2 (and the empty word) mean the empty formula."""
    if "1" not in word:
        if len(word) <= 2:
            return EMPTY_FORMULA
        raise MalformedCnf("over-long empty coding")
    runs = [(ch, len(list(grp))) for ch, grp in groupby(word)]
    if runs[0][0] != "0":
        raise MalformedCnf("missing polarity prefix")
    lead = runs[0][1]
    if lead > 2:
        raise MalformedCnf("over-long polarity prefix")
    positive = lead == 1
    clauses = []
    clause = []
    i = 1
    while i < len(runs):
        var = runs[i][1]  # a 1-run
        clause.append((var, positive))
        i += 1
        if i == len(runs):
            break  # no trailing zeros: fine
        gap = runs[i][1]
        i += 1
        if i == len(runs):
            if gap > 1:
                raise MalformedCnf("over-long trailing zeros")
            break
        if gap in (1, 2):
            positive = gap == 1
        elif gap in (3, 4):
            clauses.append(tuple(clause))
            clause = []
            positive = gap == 3
        else:
            raise MalformedCnf("separator run of length %d" % gap)
    clauses.append(tuple(clause))
    num_vars = max(var for cl in clauses for var, _ in cl)
    return CnfFormula(tuple(clauses), num_vars)


def parse_dimacs(text: str) -> CnfFormula:
    """Classic `p cnf V C` format; clauses are 0-terminated integer runs."""
    num_vars = None
    tokens = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise MalformedCnf("bad problem line: %r" % line)
            num_vars = int(fields[2])
            continue
        tokens.extend(int(tok) for tok in line.split())
    if num_vars is None:
        raise MalformedCnf("missing problem line")
    clauses = []
    clause = []
    for tok in tokens:
        if tok == 0:
            if clause:
                clauses.append(tuple(clause))
                clause = []
            continue
        var = abs(tok)
        if var > num_vars:
            raise MalformedCnf("literal %d above declared variable count" % tok)
        clause.append((var, tok > 0))
    if clause:
        clauses.append(tuple(clause))
    return CnfFormula(tuple(clauses), num_vars)


def _satisfies(f: CnfFormula, assignment: str) -> bool:
    # assignment[v-1] is the value of variable v
    for clause in f.clauses:
        if not any(assignment[var - 1] == ("1" if positive else "0")
                   for var, positive in clause):
            return False
    return True


def verify(z: int) -> int:
    """1 iff position z = pair(x, y) pairs a well-formed formula word with an
    assignment word of exactly matching length that satisfies it."""
    x, y = unpair(z)
    try:
        f = decode_cnf(index_word(x))
    except MalformedCnf:
        return 0
    assignment = index_word(y)
    if len(assignment) != f.num_vars:
        return 0
    return 1 if _satisfies(f, assignment) else 0


def verify_cost(z: int) -> tuple:
    """(verify(z), elementary op count): ops cover the run scan, the length
    check, and one op per literal looked at.  Used to pin the quadratic bound."""
    x, y = unpair(z)
    wx, wy = index_word(x), index_word(y)
    ops = len(wx) + len(wy) + 1
    try:
        f = decode_cnf(wx)
    except MalformedCnf:
        return 0, ops
    if len(wy) != f.num_vars:
        return 0, ops
    bit = 1
    for clause in f.clauses:
        hit = False
        for var, positive in clause:
            ops += 1
            if wy[var - 1] == ("1" if positive else "0"):
                hit = True
                break
        if not hit:
            bit = 0
            break
    return bit, ops


def solve_E(x: int) -> int:
    """Position of the first satisfying assignment word for formula word x,
    scanning assignments in enumeration order; 0 when unsatisfiable or
    malformed.  Exponential in the number of variables by design."""
    try:
        f = decode_cnf(index_word(x))
    except MalformedCnf:
        return 0
    n = f.num_vars
    for value in range(1 << n):
        assignment = format(value, "b").zfill(n) if n else ""
        if _satisfies(f, assignment):
            return word_index(assignment)
    return 0


def _as_runner(m: int, fuel: int):
    """Resolve index m to a word->word function.  Clocked pairs run under
    their own clock (total); plain tables run fuel-bounded."""
    from .codec import ClockedTable, decode_index  # sat is imported by codec's family path

    decoded = decode_index(m)
    if isinstance(decoded, ClockedTable):
        p = ClockedMachine(decoded.machine, decoded.clock)

        def run_clocked(word: str) -> str:
            return clocked_run(p, word).output

        return run_clocked

    def run_plain(word: str) -> str:
        outcome = run(decoded, word, fuel)
        if isinstance(outcome, OutOfFuel):
            raise FuelExhausted("machine %d out of fuel on %r" % (m, word))
        return outcome.output

    return run_plain


def neg_A(m: int, z: int, fuel: int = DEFAULT_FUEL) -> bool:
    """True iff z is a verified satisfiable pair whose formula machine m
    answers incorrectly: verify(z) = 1 but verify(pair(x, m(x))) = 0."""
    if verify(z) != 1:
        return False
    runner = _as_runner(m, fuel)
    x = proj1(z)
    y = word_index(runner(index_word(x)))
    return verify(pair(x, y)) == 0


def f_neg_A(m: int, budget: int, fuel: int = DEFAULT_FUEL) -> SearchOutcome:
    """Scan z = 0, 1, ... below budget for the first counterexample to m.
    Returns Found(z, z) or Exhausted(budget); raises IndeterminateSearch when a
    plain machine runs out of fuel on a formula that still had to be checked."""
    runner = _as_runner(m, fuel)
    answers = {}
    for z in range(budget):
        if verify(z) != 1:
            continue
        x = proj1(z)
        if x not in answers:
            try:
                answers[x] = word_index(runner(index_word(x)))
            except FuelExhausted:
                raise IndeterminateSearch(z)
        if verify(pair(x, answers[x])) == 0:
            return Found(z, z)
    return Exhausted(budget)


def f_prime(m: int, budget: int, fuel: int = DEFAULT_FUEL,
            file_registry=None) -> SearchOutcome:
    """Guarded search: only indices recognized as clocked pairs or registered
    as built finite-threshold solvers are searched; everything else gets the
    default answer Found(0, 0) immediately."""
    from .codec import is_sigma_image
    from .registry import registered

    if is_sigma_image(m) or registered(m, file_registry):
        return f_neg_A(m, budget, fuel)
    return Found(0, 0)
