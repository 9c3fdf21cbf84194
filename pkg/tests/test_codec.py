"""Word positions for tables, clocks, families, and clocked pairs."""

import random

import pytest

from conftest import random_table
from tmlab import codec
from tmlab.clocks import ClockedMachine, Parametrized, PlainPoly, compose
from tmlab.codec import (
    ClockedTable,
    InvalidPair,
    clock_index,
    decode_index,
    encode_table,
    family_index,
    family_word_bits,
    is_sigma_image,
    sigma_embed,
)
from tmlab.families import build_q_table
from tmlab.machines import MachineTable, Rule, trivial_machine
from tmlab.ordinals import ord_parse
from tmlab.words import index_word, word_index

ORD1 = ord_parse("1")
ORD2 = ord_parse("2")


def test_trivial_table_is_position_zero():
    assert encode_table(trivial_machine()) == 0
    assert decode_index(0) == trivial_machine()


def test_encode_decode_roundtrip_random_tables():
    rng = random.Random(5)
    for _ in range(80):
        t = random_table(rng)
        assert decode_index(encode_table(t)) == t.canonical()


def test_permuted_rules_get_distinct_codes_same_decode():
    a = Rule(1, "0", 0, "0", "N")
    b = Rule(1, "1", 0, "1", "N")
    t1, t2 = MachineTable((a, b)), MachineTable((b, a))
    assert encode_table(t1) != encode_table(t2)
    assert decode_index(encode_table(t1)) == decode_index(encode_table(t2)) == t1


def test_garbage_decodes_to_trivial():
    # word "011" is the packed character 'L', not a table text
    assert index_word(10) == "011"
    assert decode_index(10) == trivial_machine()
    # a clock word names a clock, not a runnable table
    assert decode_index(clock_index(PlainPoly(2))) == trivial_machine()


def test_decode_is_total_and_sigma_flag_matches():
    # at this scale every structurally valid sigma word also materializes,
    # so the syntactic flag and the decoded type agree exactly
    for i in range(16000):
        decoded = decode_index(i)
        assert isinstance(decoded, (MachineTable, ClockedTable))
        assert is_sigma_image(i) == isinstance(decoded, ClockedTable)


def test_sigma_pin_trivial_pair():
    i = sigma_embed(ClockedMachine(trivial_machine(), PlainPoly(0)))
    assert i == 28
    assert index_word(i) == "1101"
    assert decode_index(i) == ClockedTable(trivial_machine(), PlainPoly(0))
    assert is_sigma_image(i)


def test_sigma_roundtrip_random_pairs():
    rng = random.Random(17)
    for _ in range(60):
        t = random_table(rng).canonical()
        clock = PlainPoly(rng.randint(0, 4))
        i = sigma_embed(ClockedMachine(t, clock))
        assert is_sigma_image(i)
        assert decode_index(i) == ClockedTable(t, clock)


def test_sigma_roundtrip_family_machine():
    table = build_q_table(ORD1, 2)
    clock = Parametrized(ORD1, 2)
    i = sigma_embed(ClockedMachine(table, clock))
    assert is_sigma_image(i)
    got = decode_index(i)
    assert got == ClockedTable(table, clock)
    assert got.machine.family_key == (ORD1, 2, 16)


def test_sigma_injective():
    rng = random.Random(29)
    pairs = {ClockedMachine(trivial_machine(), PlainPoly(p)) for p in range(10)}
    while len(pairs) < 110:
        pairs.add(ClockedMachine(random_table(rng).canonical(),
                                 PlainPoly(rng.randint(0, 3))))
    indices = {sigma_embed(p) for p in pairs}
    assert len(indices) == len(pairs)


def test_sigma_rejects_non_pairs():
    p = ClockedMachine(trivial_machine(), PlainPoly(1))
    with pytest.raises(InvalidPair):
        sigma_embed(compose(p, p))
    with pytest.raises(InvalidPair):
        sigma_embed(ClockedMachine(decode_index(28), PlainPoly(1)))
    with pytest.raises(InvalidPair):
        sigma_embed(ClockedMachine(trivial_machine(), "poly:1"))


def test_non_images_are_rejected():
    assert not is_sigma_image(encode_table(trivial_machine()))
    assert not is_sigma_image(family_index(ORD1, 3, 16))
    assert not is_sigma_image(clock_index(PlainPoly(1)))
    rng = random.Random(41)
    for _ in range(40):
        assert not is_sigma_image(encode_table(random_table(rng)))


def test_corrupted_sigma_words_are_rejected():
    good = index_word(sigma_embed(ClockedMachine(
        MachineTable((Rule(1, "1", 0, "1", "N"),)), PlainPoly(1))))
    assert not is_sigma_image(word_index(good + "1"))  # tail no longer 3-bit packed
    fam = index_word(sigma_embed(ClockedMachine(build_q_table(ORD1, 1),
                                                Parametrized(ORD1, 1))))
    flipped = fam[:-1] + ("0" if fam[-1] == "1" else "1")
    assert not is_sigma_image(word_index(flipped))  # broken trailing marker


def test_family_word_decodes_to_built_table():
    for n in range(4):
        assert decode_index(family_index(ORD1, n, 16)) == build_q_table(ORD1, n, 16)


def test_family_word_shape_and_stride():
    assert len(index_word(family_index(ORD1, 0, 16))) == 41
    for alpha, stride in [(ORD1, 1 << 14), (ORD2, 1 << 16)]:
        idx = [family_index(alpha, n, 16) for n in range(9)]
        assert {b - a for a, b in zip(idx, idx[1:])} == {stride}
        assert idx == [idx[0] + n * stride for n in range(9)]


def test_clock_word_stride():
    idx = [clock_index(Parametrized(ORD1, n, 16)) for n in range(9)]
    assert {b - a for a, b in zip(idx, idx[1:])} == {1 << 14}


def test_family_out_of_desk_reach_decodes_to_trivial():
    # threshold F_1(3000) = 6000 exceeds the materialization bound
    assert decode_index(family_index(ORD1, 3000, 16)) == trivial_machine()


def test_sigma_with_unmaterializable_clock():
    # hand-assembled pair word: the clock exponent F_w(2000) is far beyond
    # desk evaluation, so recognition (syntactic) and decoding (budgeted) split
    bits = (codec.TAG_SIGMA + "1" + format(16, "08b") + format(2000, "016b")
            + codec._alpha_bits(ord_parse("w")))
    i = word_index(bits)
    assert is_sigma_image(i)
    assert decode_index(i) == trivial_machine()


def test_gamma_block_pins_and_roundtrip():
    assert [codec._gamma(k) for k in (1, 2, 3, 4)] == ["1", "010", "011", "00100"]
    for k in range(1, 200):
        got = codec._read_gamma(codec._gamma(k), 0)
        assert got == (k, len(codec._gamma(k)))


def test_ordinal_block_pins():
    assert codec._ord_bits(ord_parse("0")) == "1"
    assert codec._ord_bits(ord_parse("1")) == "01011"
    for text in ["w", "w^w+w*2+1", "w^(w^w)*3", "w^2*7+5"]:
        a = ord_parse(text)
        bits = codec._ord_bits(a)
        assert codec._read_ord(bits, 0) == (a, len(bits))


def test_family_word_field_validation():
    with pytest.raises(ValueError):
        family_word_bits(ORD1, 0, 0)
    with pytest.raises(ValueError):
        family_word_bits(ORD1, 256, 8)
