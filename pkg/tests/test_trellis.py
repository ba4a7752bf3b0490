from __future__ import annotations

import pytest

from convfec.trellis import DEFAULT_SPEC, CodeSpec, build_trellis, free_distance

from reference import min_codeword_weight_upto


def test_default_spec_geometry():
    assert DEFAULT_SPEC.constraint_length == 7
    assert DEFAULT_SPEC.frame_stages == 40
    assert DEFAULT_SPEC.tail_length == 6
    assert DEFAULT_SPEC.payload_length == 34
    assert DEFAULT_SPEC.num_states == 64
    assert DEFAULT_SPEC.generators_octal == "171,133"
    assert DEFAULT_SPEC.generators == ((1, 1, 1, 1, 0, 0, 1), (1, 0, 1, 1, 0, 1, 1))


def test_default_taps_span_full_register():
    # non-catastrophic full-span default: both generators tap the newest and
    # oldest register bits
    for taps in DEFAULT_SPEC.generators:
        assert taps[0] == 1
        assert taps[-1] == 1


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(constraint_length=1, generators=((1,), (1,)), frame_stages=4),
        dict(constraint_length=3, generators=((1, 1), (1, 0, 1)), frame_stages=5),
        dict(constraint_length=3, generators=((1, 1, 1),), frame_stages=5),
        dict(constraint_length=3, generators=((1, 1, 1), (1, 0, 2)), frame_stages=5),
        dict(constraint_length=3, generators=((1, 1, 1), (1, 0, 1)), frame_stages=2),
    ],
)
def test_spec_rejects_bad_parameters(kwargs):
    with pytest.raises(ValueError):
        CodeSpec(**kwargs)


def test_from_octal_rejects_garbage():
    with pytest.raises(ValueError):
        CodeSpec.from_octal("171", constraint_length=7, frame_stages=40)
    with pytest.raises(ValueError):
        CodeSpec.from_octal("171,9z", constraint_length=7, frame_stages=40)
    with pytest.raises(ValueError):
        # 171 octal needs 7 bits, does not fit K=5
        CodeSpec.from_octal("171,133", constraint_length=5, frame_stages=20)


def test_zero_state_zero_input_emits_zeros(default_trellis):
    assert default_trellis.branch_symbol(0, 0) == (0, 0)


def test_upper_predecessor_offset(default_trellis):
    # state 4 = 2j with j = 2: predecessors are j and j + 32
    assert default_trellis.predecessors(4) == (2, 34)


def test_k3_first_transition(k3_trellis):
    assert k3_trellis.next_state(0, 1) == 1
    assert k3_trellis.branch_symbol(0, 1) == (1, 1)


def test_newest_bit_lands_in_state_lsb(default_trellis):
    for p in range(default_trellis.num_states):
        for b in (0, 1):
            assert default_trellis.next_state(p, b) & 1 == b


def test_butterfly_closure(default_trellis):
    half = default_trellis.num_states // 2
    for j in range(half):
        succ_low = {default_trellis.next_state(j, b) for b in (0, 1)}
        succ_high = {default_trellis.next_state(j + half, b) for b in (0, 1)}
        assert succ_low == succ_high == {2 * j, 2 * j + 1}


def test_predecessor_consistency(default_trellis):
    for s in range(default_trellis.num_states):
        lower, upper = default_trellis.predecessors(s)
        assert default_trellis.next_state(lower, s % 2) == s
        assert default_trellis.next_state(upper, s % 2) == s


def test_branch_antipodality_within_butterfly(default_trellis):
    # both default generators tap the oldest register bit, so the two
    # branches of a butterfly emit complementary symbols
    half = default_trellis.num_states // 2
    for j in range(half):
        for b in (0, 1):
            low = default_trellis.branch_symbol(j, b)
            high = default_trellis.branch_symbol(j + half, b)
            assert low == (1 - high[0], 1 - high[1])


def test_next_state_covers_each_state_twice(default_trellis):
    counts = [0] * default_trellis.num_states
    for p in range(default_trellis.num_states):
        for b in (0, 1):
            counts[default_trellis.next_state(p, b)] += 1
    assert counts == [2] * default_trellis.num_states


def test_branch_symbol_is_tap_parity(default_trellis):
    # spot-check the definition: parity of taps ANDed with the register
    # contents (input bit newest, then the state bits)
    spec = default_trellis.spec
    for state, bit in [(0, 1), (17, 0), (63, 1), (32, 0), (5, 1)]:
        register = [bit] + [(state >> i) & 1 for i in range(spec.constraint_length - 1)]
        expected = tuple(
            sum(t * r for t, r in zip(taps, register)) % 2 for taps in spec.generators
        )
        assert default_trellis.branch_symbol(state, bit) == expected


def test_free_distance_small_code(k3_spec):
    assert free_distance(k3_spec, 16) == 5


def test_free_distance_default_code():
    assert free_distance(DEFAULT_SPEC, 16) == 10


def test_free_distance_exceeds_cap_is_a_value():
    assert free_distance(DEFAULT_SPEC, 1) is None


def test_free_distance_rejects_bad_cap():
    with pytest.raises(ValueError):
        free_distance(DEFAULT_SPEC, 0)


def test_free_distance_matches_exhaustive_enumeration(k3_spec):
    assert free_distance(k3_spec, 16) == min_codeword_weight_upto(k3_spec, 12)
    k5 = CodeSpec.from_octal("23,35", constraint_length=5, frame_stages=14)
    assert free_distance(k5, 16) == min_codeword_weight_upto(k5, 14) == 7


def test_build_trellis_requires_spec():
    with pytest.raises(TypeError):
        build_trellis("171,133")
