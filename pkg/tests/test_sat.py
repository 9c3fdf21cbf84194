"""CNF word coding, the pair checker, the brute solver, and the failure scan."""

import random
from itertools import product

import pytest

from tmlab import registry
from tmlab.clocks import ClockedMachine, Parametrized
from tmlab.codec import encode_table, is_sigma_image, sigma_embed
from tmlab.families import build_q_table
from tmlab.machines import MachineTable, Rule
from tmlab.ordinals import ord_parse
from tmlab.sat import (
    EMPTY_FORMULA,
    CnfFormula,
    Exhausted,
    Found,
    IndeterminateSearch,
    MalformedCnf,
    decode_cnf,
    encode_cnf,
    f_neg_A,
    f_prime,
    neg_A,
    parse_dimacs,
    solve_E,
    verify,
    verify_cost,
)
from tmlab.words import index_word, pair, word_index

V1 = CnfFormula((((1, True),),), 1)

MALFORMED_X = [2, 5, 6, 7, 11, 12, 13, 14, 15, 16, 19]
SOLVED_X = {0: 0, 1: 0, 3: 0, 4: 2, 8: 1, 9: 2, 10: 4, 17: 1, 20: 2, 21: 4}


def _random_formula(rng: random.Random) -> CnfFormula:
    clauses = []
    for _ in range(rng.randint(1, 3)):
        clause = tuple((rng.randint(1, 4), rng.random() < 0.5)
                       for _ in range(rng.randint(1, 3)))
        clauses.append(clause)
    top = max(var for cl in clauses for var, _ in cl)
    return CnfFormula(tuple(clauses), top)


def test_single_positive_literal_pin():
    assert encode_cnf(V1) == "010"
    assert decode_cnf("010") == V1


def test_all_ones_word_is_malformed():
    with pytest.raises(MalformedCnf):
        decode_cnf("111")


def test_empty_formula_codings():
    assert encode_cnf(EMPTY_FORMULA) == ""
    for w in ["", "0", "00"]:
        assert decode_cnf(w) == EMPTY_FORMULA
    with pytest.raises(MalformedCnf):
        decode_cnf("000")


def test_malformed_word_table():
    for x in MALFORMED_X:
        with pytest.raises(MalformedCnf):
            decode_cnf(index_word(x))
        assert solve_E(x) == 0


def test_solver_value_table():
    for x, e in SOLVED_X.items():
        assert solve_E(x) == e, "E(%d)" % x


def test_solver_returns_first_witness():
    # (v1 OR v2): "01" fails, "10" is the first satisfier in word order
    f = CnfFormula((((1, True), (2, True)),), 2)
    witness = solve_E(word_index(encode_cnf(f)))
    assert index_word(witness) == "01"  # assignment v1=0, v2=1 comes first


def test_solver_unsat_contradiction():
    f = CnfFormula((((1, True),), ((1, False),)), 1)
    assert encode_cnf(f) == "01000010"
    assert solve_E(word_index("01000010")) == 0


def test_roundtrip_generated_formulas():
    rng = random.Random(7)
    for _ in range(200):
        f = _random_formula(rng)
        assert decode_cnf(encode_cnf(f)) == f


def test_decode_then_encode_normalizes():
    for x in range(400):
        try:
            f = decode_cnf(index_word(x))
        except MalformedCnf:
            continue
        assert decode_cnf(encode_cnf(f)) == f


def test_verify_pins():
    assert verify(pair(0, 0)) == 1
    for z in [1, 6, 23, 46, 68]:
        assert verify(z) == 1, "z=%d" % z
    assert verify(pair(9, 4)) == 0  # assignment word longer than num_vars
    assert verify(pair(0, 1)) == 0  # empty formula wants the empty assignment
    assert verify(pair(9, 1)) == 0  # wrong truth value
    assert verify(pair(2, 0)) == 0  # malformed formula word


def test_verify_against_direct_evaluation():
    rng = random.Random(13)
    for _ in range(150):
        f = _random_formula(rng)
        x = word_index(encode_cnf(f))
        for bits in product("01", repeat=f.num_vars):
            assignment = "".join(bits)
            expected = all(any(assignment[var - 1] == ("1" if pos else "0")
                               for var, pos in clause)
                           for clause in f.clauses)
            assert verify(pair(x, word_index(assignment))) == int(expected)


def test_verify_cost_is_quadratic():
    rng = random.Random(19)
    zs = list(range(600)) + [rng.randrange(10 ** 9) for _ in range(200)]
    for z in zs:
        bit, ops = verify_cost(z)
        assert bit == verify(z)
        assert ops <= 64 * (z.bit_length() + 2) ** 2


def test_dimacs_parsing():
    f = parse_dimacs("c header\np cnf 3 2\n1 -2 0\n2 3 0\n")
    assert f == CnfFormula((((1, True), (2, False)), ((2, True), (3, True))), 3)
    assert parse_dimacs("p cnf 5 1\n1 0\n").num_vars == 5  # spare variables ok
    assert parse_dimacs("p cnf 2 1\n1 2\n").clauses == (((1, True), (2, True)),)


def test_dimacs_rejects():
    for bad in ["1 2 0\n", "p sat 2 1\n1 0\n", "p cnf 1 1\n2 0\n"]:
        with pytest.raises(MalformedCnf):
            parse_dimacs(bad)


def test_formula_constructor_validation():
    with pytest.raises(MalformedCnf):
        CnfFormula(((),), 0)
    with pytest.raises(MalformedCnf):
        CnfFormula((((0, True),),), 1)
    with pytest.raises(MalformedCnf):
        CnfFormula((((1, 1),),), 1)
    with pytest.raises(MalformedCnf):
        CnfFormula((((2, True),),), 1)


def test_neg_a_on_identity_machine():
    assert neg_A(0, pair(9, 2)) is True  # identity echoes the formula word
    assert neg_A(0, 0) is False  # empty formula, empty answer: correct
    assert neg_A(0, pair(2, 0)) is False  # not a verified pair at all


def test_failure_scan_identity_machine():
    assert f_neg_A(0, 100) == Found(1, 1)


def test_failure_scan_exhausts_on_correct_solver():
    table = build_q_table(ord_parse("1"), 2)  # answers positions 0..4 correctly
    sigma = sigma_embed(ClockedMachine(table, Parametrized(ord_parse("1"), 2)))
    assert f_neg_A(sigma, 7) == Exhausted(7)


def test_failure_scan_indeterminate_on_looping_machine():
    loop = MachineTable((Rule(1, "0", 1, "0", "N"), Rule(1, "1", 1, "1", "N"),
                         Rule(1, "_", 1, "_", "N")))
    with pytest.raises(IndeterminateSearch) as info:
        f_neg_A(encode_table(loop), 10, fuel=50)
    assert info.value.z == 0


def test_guarded_scan_defaults_outside_known_indices():
    rng = random.Random(31)
    m = encode_table(MachineTable((Rule(1, "0", 0, "1", "N"),)))
    assert f_prime(m, 100) == Found(0, 0)
    picked = 0
    while picked < 20:
        i = rng.randrange(10 ** 6, 10 ** 9)
        if is_sigma_image(i):
            continue
        picked += 1
        assert f_prime(i, 5) == Found(0, 0)


def test_guarded_scan_searches_registered_indices():
    m = encode_table(MachineTable((Rule(1, "0", 0, "1", "N"),)))
    registry.register(m)
    assert f_prime(m, 100) == f_neg_A(m, 100)


def test_guarded_scan_searches_pair_images():
    sigma = 28  # trivial machine under the constant clock
    assert f_prime(sigma, 100) == f_neg_A(sigma, 100) == Found(1, 1)
