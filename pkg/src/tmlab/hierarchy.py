"""Budgeted evaluation of the fast-growing hierarchy below epsilon_0.

Base clauses: F_0(x) = 0 and F_1(x) = 2x (both taken as given).  Successors
iterate, F_{b+1}(x) = x-fold F_b starting at 1; limits diagonalize along the
fundamental sequence, F_l(x) = F_{l[x]}(x).  Every evaluator call counts
against an explicit budget and exhaustion is reported as a value (Overflow),
never an exception.  Values explode fast, so comparisons use fgh_at_least,
which certifies lower bounds by capping intermediate values at the threshold.
"""

from dataclasses import dataclass
from typing import Optional, Union

from .ordinals import (
    ONE,
    ZERO,
    OrdinalCNF,
    clock_index_ordinal,
    fundamental_sequence,
    is_successor,
    ord_format,
    ord_parse,
    predecessor,
)


@dataclass(frozen=True)
class Value:
    value: int
    cost: int


@dataclass(frozen=True)
class Overflow:
    budget: int


EvalOutcome = Union[Value, Overflow]


class _BudgetOut(Exception):
    pass


class _Unknown:
    def __repr__(self):
        return "UNKNOWN"


UNKNOWN = _Unknown()

_INF = object()  # stands for "already >= threshold" inside the capped evaluator


class _Counter:
    __slots__ = ("used", "budget")

    def __init__(self, budget: int):
        self.used = 0
        self.budget = budget

    def tick(self):
        self.used += 1
        if self.used > self.budget:
            raise _BudgetOut()


def _eval(a: OrdinalCNF, x: int, counter: _Counter) -> int:
    counter.tick()
    if a == ZERO:
        return 0
    if a == ONE:
        return 2 * x
    if is_successor(a):
        b = predecessor(a)
        v = 1
        for _ in range(x):
            v = _eval(b, v, counter)
        return v
    return _eval(fundamental_sequence(a, x), x, counter)


def fgh_eval(alpha: OrdinalCNF, x: int, budget: int) -> EvalOutcome:
    """F_alpha(x), or Overflow when more than budget evaluator calls are needed.
    Interpreter stack exhaustion on deep descents counts as running out too:
    evaluation must stay total for arbitrary (crafted) levels."""
    counter = _Counter(budget)
    try:
        v = _eval(alpha, x, counter)
    except (_BudgetOut, RecursionError):
        return Overflow(budget)
    return Value(v, counter.used)


def _eval_capped(a: OrdinalCNF, x, counter: _Counter, threshold: int):
    # x is an exact int or _INF ("known >= threshold").  Sound because every
    # F_g with g >= 1 satisfies F_g(v) >= v, and F_0 is never iterated here:
    # the successor clause only unfolds for a >= 2, whose predecessor is >= 1.
    counter.tick()
    if a == ZERO:
        return 0
    if a == ONE:
        if x is _INF:
            return _INF
        v = 2 * x
        return _INF if v >= threshold else v
    if x is _INF:
        return _INF
    if is_successor(a):
        b = predecessor(a)
        v = 1
        for _ in range(x):
            v = _eval_capped(b, v, counter, threshold)
            if v is _INF:
                return _INF
        return v
    return _eval_capped(fundamental_sequence(a, x), x, counter, threshold)


def fgh_at_least(alpha: OrdinalCNF, x: int, threshold: int, budget: int):
    """True when F_alpha(x) >= threshold is certified, False when the exact
    value was computed below it, UNKNOWN when the budget died first."""
    if threshold <= 0:
        return True
    counter = _Counter(budget)
    try:
        v = _eval_capped(alpha, x, counter, threshold)
    except (_BudgetOut, RecursionError):
        return UNKNOWN
    return True if v is _INF else v >= threshold


# --- function descriptors -------------------------------------------------
#
# Text forms: "fgh:w^w", "fgh:2@poly:0,0,1" (argument pre-composed with a
# polynomial, constant term first), "table:0,2,4,6", "eps0" (the diagonal
# F_{tau(x)}(x) over the omega towers tau).

def poly_eval(coeffs: tuple, x: int) -> int:
    return sum(c * x**i for i, c in enumerate(coeffs))


def _check_poly(coeffs):
    if not coeffs or all(c == 0 for c in coeffs) or any(c < 0 for c in coeffs):
        raise ValueError("polynomial needs natural coefficients, one positive")
    return tuple(coeffs)


@dataclass(frozen=True)
class FghFn:
    alpha: OrdinalCNF
    poly: Optional[tuple] = None


@dataclass(frozen=True)
class TableFn:
    values: tuple


@dataclass(frozen=True)
class Eps0Fn:
    poly: Optional[tuple] = None


FnDescriptor = Union[FghFn, TableFn, Eps0Fn]


def parse_fn_descriptor(s: str) -> FnDescriptor:
    if s == "eps0":
        return Eps0Fn()
    if s.startswith("eps0@poly:"):
        return Eps0Fn(_parse_poly(s[len("eps0@"):]))
    if s.startswith("fgh:"):
        body = s[len("fgh:"):]
        if "@" in body:
            ord_text, poly_text = body.split("@", 1)
            return FghFn(ord_parse(ord_text), _parse_poly(poly_text))
        return FghFn(ord_parse(body))
    if s.startswith("table:"):
        return TableFn(tuple(int(v) for v in s[len("table:"):].split(",")))
    raise ValueError("unknown function descriptor %r" % s)


def _parse_poly(s: str) -> tuple:
    if not s.startswith("poly:"):
        raise ValueError("expected poly:c0,c1,... in %r" % s)
    return _check_poly(tuple(int(c) for c in s[len("poly:"):].split(",")))


def format_fn_descriptor(d: FnDescriptor) -> str:
    poly = getattr(d, "poly", None)
    suffix = "@poly:%s" % ",".join(str(c) for c in poly) if poly else ""
    if isinstance(d, Eps0Fn):
        return "eps0" + suffix
    if isinstance(d, FghFn):
        return "fgh:%s%s" % (ord_format(d.alpha), suffix)
    return "table:%s" % ",".join(str(v) for v in d.values)


def _argument(d, x: int) -> int:
    poly = getattr(d, "poly", None)
    return poly_eval(poly, x) if poly else x


def fn_eval(d: FnDescriptor, x: int, budget: int) -> Optional[int]:
    """Exact value of the described function, or None when not evaluable."""
    if isinstance(d, TableFn):
        return d.values[x] if 0 <= x < len(d.values) else None
    arg = _argument(d, x)
    alpha = clock_index_ordinal(arg) if isinstance(d, Eps0Fn) else d.alpha
    out = fgh_eval(alpha, arg, budget)
    return out.value if isinstance(out, Value) else None


def fn_at_least(d: FnDescriptor, x: int, threshold: int, budget: int):
    """Certified f(x) >= threshold: True / False / UNKNOWN."""
    if isinstance(d, TableFn):
        if not 0 <= x < len(d.values):
            return UNKNOWN
        return d.values[x] >= threshold
    arg = _argument(d, x)
    alpha = clock_index_ordinal(arg) if isinstance(d, Eps0Fn) else d.alpha
    return fgh_at_least(alpha, arg, threshold, budget)


# --- window domination ----------------------------------------------------

@dataclass(frozen=True)
class Holds:
    pass


@dataclass(frozen=True)
class FailsAt:
    x: int


@dataclass(frozen=True)
class Unknown:
    x: int


def dominates_on_window(f_desc: FnDescriptor, g_desc: FnDescriptor,
                        window: tuple, budget: int):
    """Pointwise f(x) >= g(x) certificate over the finite window [lo, hi].

    Holds is a window certificate only; the relation proper quantifies over an
    unbounded tail and is not decided here.
    """
    lo, hi = window
    for x in range(lo, hi + 1):
        g = fn_eval(g_desc, x, budget)
        if g is None:
            return Unknown(x)
        ok = fn_at_least(f_desc, x, g, budget)
        if ok is UNKNOWN:
            return Unknown(x)
        if not ok:
            return FailsAt(x)
    return Holds()
