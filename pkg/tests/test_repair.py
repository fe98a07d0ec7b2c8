import itertools
import random

import pytest

from lrckit.construction import Strategy, build_instance, encode, plan_params
from lrckit.errors import LengthMismatch, NotErased, TooManyErasuresInGroup
from lrckit.repair import ErasurePattern, repair_group, repair_position


def random_codeword(instance, rng):
    field = instance.field
    msg = [field.element(rng.randrange(field.q)) for _ in range(instance.k)]
    return encode(instance, msg)


class TestRepairPosition:
    def test_linear_local_polynomial(self):
        # codeword of F = 1 + b: every group reads (1, 2, 3) at nodes (0, 1, 2)
        inst = build_instance(plan_params(5, 2, 2, 0, 3, 3, Strategy.FULL))
        field = inst.field
        grid_msg = [field.zero()] * inst.k
        grid_msg[0] = field.one()  # a_{00}
        grid_msg[3] = field.one()  # a_{10}
        word = encode(inst, grid_msg)
        assert [x.enc for x in word[:3]] == [1, 2, 3]
        pattern = ErasurePattern.erase(word, [0])
        value, trace = repair_position(inst, pattern, 0)
        assert value.enc == 1
        assert trace.read_slots == (1, 2)
        assert trace.symbols_read == 2

    def test_all_ones_codeword(self, full_q4):
        field = full_q4.field
        msg = [field.one()] + [field.zero()] * (full_q4.k - 1)
        word = encode(full_q4, msg)
        assert all(x.enc == 1 for x in word)
        for pos in range(full_q4.n):
            pattern = ErasurePattern.erase(word, [pos])
            value, _ = repair_position(full_q4, pattern, pos)
            assert value.enc == 1

    def test_every_position_every_strategy(self, colwise_q7):
        rng = random.Random(11)
        for _ in range(25):
            word = random_codeword(colwise_q7, rng)
            for pos in range(colwise_q7.n):
                pattern = ErasurePattern.erase(word, [pos])
                value, trace = repair_position(colwise_q7, pattern, pos)
                assert value == word[pos]
                assert trace.symbols_read == colwise_q7.params.r
                group = colwise_q7.layout.group_of(pos)
                assert trace.group == group
                assert all(
                    colwise_q7.layout.group_of(rp) == group
                    for rp in trace.read_positions
                )

    def test_not_erased(self, full_q4):
        word = random_codeword(full_q4, random.Random(0))
        pattern = ErasurePattern(tuple(word))
        with pytest.raises(NotErased):
            repair_position(full_q4, pattern, 0)

    def test_too_many_erasures(self, full_q4):
        word = random_codeword(full_q4, random.Random(1))
        pattern = ErasurePattern.erase(word, [0, 1])
        with pytest.raises(TooManyErasuresInGroup):
            repair_position(full_q4, pattern, 0)

    def test_pattern_length_checked(self, full_q4):
        with pytest.raises(LengthMismatch):
            repair_position(full_q4, ErasurePattern((None,)), 0)

    def test_oblivious_to_generator(self, global_q5):
        # the repair value depends only on received symbols and the layout
        rng = random.Random(3)
        word = random_codeword(global_q5, rng)
        pattern = ErasurePattern.erase(word, [5])
        value, _ = repair_position(global_q5, pattern, 5)
        shuffled = global_q5  # same layout, repair never touches G
        value2, _ = repair_position(shuffled, pattern, 5)
        assert value == value2 == word[5]


class TestRepairGroup:
    def test_single_erasure_matches_position_repair(self, colwise_q7):
        rng = random.Random(2)
        word = random_codeword(colwise_q7, rng)
        pattern = ErasurePattern.erase(word, [4])
        symbols, trace = repair_group(colwise_q7, pattern, colwise_q7.layout.group_of(4))
        pos_value, _ = repair_position(colwise_q7, pattern, 4)
        assert symbols == [pos_value] and trace.repaired_positions == (4,)

    def test_mu3_two_erasures(self, full_mu3_q5):
        rng = random.Random(7)
        gs = full_mu3_q5.params.group_size
        for _ in range(40):
            word = random_codeword(full_mu3_q5, rng)
            group = rng.randrange(full_mu3_q5.params.l)
            slots = rng.sample(range(gs), 2)
            positions = [full_mu3_q5.layout.position_of(group, s) for s in slots]
            pattern = ErasurePattern.erase(word, positions)
            symbols, trace = repair_group(full_mu3_q5, pattern, group)
            assert trace.symbols_read == full_mu3_q5.params.r
            for pos, sym in zip(trace.repaired_positions, symbols):
                assert sym == word[pos]

    def test_mu3_three_erasures_rejected(self, full_mu3_q5):
        word = random_codeword(full_mu3_q5, random.Random(9))
        positions = [full_mu3_q5.layout.position_of(0, s) for s in (0, 1, 2)]
        pattern = ErasurePattern.erase(word, positions)
        with pytest.raises(TooManyErasuresInGroup):
            repair_group(full_mu3_q5, pattern, 0)

    def test_all_pair_patterns_exact(self, full_mu3_q5):
        # exhaustive (mu-1)-subsets per group on a few codewords
        rng = random.Random(13)
        gs = full_mu3_q5.params.group_size
        for _ in range(5):
            word = random_codeword(full_mu3_q5, rng)
            for group in range(full_mu3_q5.params.l):
                for slots in itertools.combinations(range(gs), 2):
                    positions = [full_mu3_q5.layout.position_of(group, s) for s in slots]
                    pattern = ErasurePattern.erase(word, positions)
                    symbols, trace = repair_group(full_mu3_q5, pattern, group)
                    for pos, sym in zip(trace.repaired_positions, symbols):
                        assert sym == word[pos]


def test_round_trip_identity(colwise_q7):
    rng = random.Random(21)
    word = random_codeword(colwise_q7, rng)
    filled = list(word)
    pattern = ErasurePattern.erase(word, [0, 4, 8])  # one per group
    for pos in (0, 4, 8):
        value, _ = repair_position(colwise_q7, pattern, pos)
        filled[pos] = value
    assert filled == word
