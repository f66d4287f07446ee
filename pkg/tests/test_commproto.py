"""Tests for split-input prediction protocols and fooling sets."""
import numpy as np
import pytest

from src.ca import Alphabet, CAError, CellularAutomaton, FormatError, Neighborhood, Pattern, apply_to_pattern
from src.commproto import (
    COUNTER,
    INIT,
    UNKNOWN,
    FoolingCounterexample,
    FoolingSet,
    SplitInstance,
    bits,
    build_highcc_rule,
    check_fooling_set,
    correct_pattern,
    format_transcript,
    mirror_candidates,
    parse_transcript,
    protocol_curve,
    reduced_answer,
    run_diffreport_protocol,
    run_trivial_protocol,
    split_instance,
    szone_reduction_instance,
    write_curve,
)
from src.predict import ChangeBoundExceededError, PredictionInstance, predict_naive
from src.szone import build_szone
from src.zoo import rules


def random_split(rng: np.random.Generator, ca, n: int) -> SplitInstance:
    shape = (2 * ca.radius * n + 1,) * ca.dimension
    return split_instance(ca, PredictionInstance(n, Pattern(rng.integers(0, ca.size, shape))))


def random_freezing_rule(rng: np.random.Generator, size: int = 3) -> CellularAutomaton:
    """Radius-1 rule whose output never drops below the center under 0 < 1 < ..."""
    table = np.maximum(rng.integers(0, size, (size,) * 3), np.arange(size)[None, :, None])
    names = tuple(str(q) for q in range(size))
    return CellularAutomaton(Alphabet(names), Neighborhood.interval(-1, 1), table, "random-freezing")


def test_bits():
    assert [bits(x) for x in (1, 2, 3, 4, 5, 9)] == [0, 1, 2, 2, 3, 4]


def test_split_halves():
    inst = SplitInstance.from_pattern(2, Pattern(np.array([1, 0, 1, 1, 0])))
    assert inst.alice.tolist() == [1, 0, 1, UNKNOWN, UNKNOWN]
    assert inst.bob.tolist() == [UNKNOWN, UNKNOWN, UNKNOWN, 1, 0]
    assert inst.alice_cells == 3
    assert inst.joined().values.tolist() == [1, 0, 1, 1, 0]
    with pytest.raises(CAError):
        SplitInstance(2, inst.bob, inst.alice)


def test_trivial_protocol_cost():
    ca = rules.max_rule(two_way=True)
    transcript = run_trivial_protocol(ca, random_split(np.random.default_rng(0), ca, 4))
    assert transcript.total_bits == 5
    assert transcript.init_bits == 5


def test_diffreport_agrees_with_prediction():
    rng = np.random.default_rng(29)
    ca = rules.max_rule(two_way=True)
    for n in (1, 2, 5, 9, 16):
        inst = random_split(rng, ca, n)
        transcript = run_diffreport_protocol(ca, inst, k=1)
        assert transcript.answer == predict_naive(ca, inst.prediction())
        assert transcript.init_bits == 2


def test_diffreport_in_two_dimensions():
    rng = np.random.default_rng(31)
    ca = rules.ulam()
    for n in (1, 3):
        inst = random_split(rng, ca, n)
        assert run_diffreport_protocol(ca, inst, k=1).answer == predict_naive(ca, inst.prediction())


def test_diffreport_on_a_nonfreezing_rule():
    rng = np.random.default_rng(37)
    ca = rules.nonfreezing_example()
    inst = random_split(rng, ca, 6)
    assert run_diffreport_protocol(ca, inst, k=2).answer == predict_naive(ca, inst.prediction())


def test_diffreport_with_the_identity_rule():
    ca = rules.identity()
    inst = split_instance(ca, PredictionInstance(5, Pattern(np.array([1]))))
    transcript = run_diffreport_protocol(ca, inst, k=0)
    assert transcript.answer == 1
    assert [r.tag for r in transcript.rounds] == [INIT, INIT, COUNTER, COUNTER]
    assert transcript.init_bits == 0
    assert transcript.diff_reports == 0
    assert transcript.total_bits == 2 * bits(6)


def test_diff_bits_stay_within_the_zone_bound():
    rng = np.random.default_rng(43)
    cases = [
        (rules.max_rule(two_way=True), 1),
        (random_freezing_rule(rng), 2),
        (random_freezing_rule(rng), 2),
        (rules.nonfreezing_example(), 2),
    ]
    checked = 0
    for ca, k in cases:
        r, q = ca.radius, ca.size
        for n in (8, 16, 32, 64):
            bound = 2 * r * (q - 1) * (bits(q) + 2 * bits(n))
            for _ in range(20):
                inst = random_split(rng, ca, n)
                transcript = run_diffreport_protocol(ca, inst, k=k)
                assert transcript.answer == predict_naive(ca, inst.prediction())
                assert transcript.diff_changes <= 2 * r * k
                assert transcript.diff_bits <= bound
                checked += 1
    assert checked == 320


def test_radius_zero_rule_sends_no_diffs():
    ca = rules.identity()
    inst = SplitInstance.from_pattern(5, Pattern(np.array([1])))
    transcript = run_diffreport_protocol(ca, inst, k=0)
    assert transcript.answer == 1
    assert transcript.diff_reports == 0
    assert transcript.total_bits == 2 * bits(6)


def test_checkpoints_match_the_true_orbit():
    rng = np.random.default_rng(41)
    ca = rules.max_rule(two_way=True)
    inst = random_split(rng, ca, 8)
    transcript = run_diffreport_protocol(ca, inst, k=1, record_checkpoints=True)
    assert transcript.checkpoints[0].time == 0
    assert transcript.checkpoints[-1].time == 8
    for checkpoint in transcript.checkpoints:
        truth = inst.joined()
        for _ in range(checkpoint.time):
            truth = apply_to_pattern(ca, truth)
        for grid in (checkpoint.alice, checkpoint.bob):
            known = grid != UNKNOWN
            assert np.array_equal(grid[known], truth.values[known])


def test_change_bound_is_enforced():
    ca = rules.max_rule(two_way=True)
    inst = SplitInstance.from_pattern(2, Pattern(np.array([1, 0, 0, 0, 0])))
    with pytest.raises(ChangeBoundExceededError):
        run_diffreport_protocol(ca, inst, k=0)
    assert run_diffreport_protocol(ca, inst, k=None).answer == 1


def test_transcript_text_round_trip():
    ca = rules.max_rule(two_way=True)
    inst = random_split(np.random.default_rng(43), ca, 6)
    transcript = run_diffreport_protocol(ca, inst, k=1)
    text = format_transcript(transcript, ca.alphabet)
    assert text.splitlines()[-1] == f"total {transcript.total_bits}"
    assert parse_transcript(text, ca.alphabet) == transcript


def test_transcript_errors():
    ca = rules.max_rule(two_way=True)
    good = "protocol trivial\nn 4\nround alice 5 init 0\nanswer 1\ntotal 5\n"
    assert parse_transcript(good, ca.alphabet).rounds[0].tag == INIT
    with pytest.raises(FormatError) as error:
        parse_transcript(good.replace("total 5", "total 6"), ca.alphabet)
    assert error.value.line == 5
    with pytest.raises(FormatError):
        parse_transcript(good.replace("alice", "carol"), ca.alphabet)
    with pytest.raises(FormatError):
        parse_transcript(good.replace("answer 1\n", ""), ca.alphabet)


def test_protocol_curve(tmp_path):
    rng = np.random.default_rng(47)
    ca = rules.max_rule(two_way=True)
    points = protocol_curve(ca, [random_split(rng, ca, n) for n in (2, 4)], k=1)
    assert [p.n for p in points] == [2, 4]
    assert all(p.agree for p in points)
    assert [p.trivial_bits for p in points] == [3, 5]
    path = write_curve(tmp_path / "curve.csv", points)
    lines = path.read_text().splitlines()
    assert lines[0] == "n,trivial_bits,diffreport_bits,diff_changes,agree"
    assert lines[1].startswith("2,3,")
    assert lines[1].endswith(",yes")


def test_highcc_answers():
    ca = build_highcc_rule(1)
    mirrored = correct_pattern(np.array([1, 0, 1, 0, 1, 0, 1]))
    broken = correct_pattern(np.array([1, 0, 1, 0, 0, 0, 1]))
    assert ca.alphabet.name_of(predict_naive(ca, PredictionInstance(3, mirrored))) == "T1"
    assert ca.alphabet.name_of(predict_naive(ca, PredictionInstance(3, broken))) == "T0"
    with pytest.raises(CAError):
        build_highcc_rule(0)


def test_fooling_set():
    ca = build_highcc_rule(1)
    candidates = mirror_candidates(1, 6)
    result = check_fooling_set(ca, 6, candidates)
    assert result == FoolingSet(8, ca.alphabet.id_of("T1"))
    assert result.lower_bound_bits == 3


def test_fooling_set_counterexample():
    ca = rules.max_rule(two_way=True)
    pattern = Pattern(np.array([0, 0, 0]))
    other = Pattern(np.array([0, 0, 1]))
    candidates = [SplitInstance.from_pattern(1, pattern), SplitInstance.from_pattern(1, other)]
    result = check_fooling_set(ca, 1, candidates)
    assert isinstance(result, FoolingCounterexample)
    with pytest.raises(CAError):
        check_fooling_set(ca, 1, [candidates[0], candidates[0]])


def test_reduction_to_shrinking_zones():
    rng = np.random.default_rng(53)
    inner = rules.max_rule(two_way=True)
    szone = build_szone(inner)
    for n in (1, 2, 3):
        inst = random_split(rng, inner, n)
        reduced = szone_reduction_instance(szone, inst)
        assert reduced.radius == reduced.n
        state = predict_naive(szone.ca, reduced.prediction())
        assert reduced_answer(szone, state) == predict_naive(inner, inst.prediction())
    with pytest.raises(CAError):
        reduced_answer(szone, szone.blank)
