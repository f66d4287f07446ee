"""Tests for prediction: the direct oracle, streaming and column search."""
import numpy as np
import pytest

from src.ca import Alphabet, CAError, CellularAutomaton, Neighborhood, Pattern
from src.minsky import builtin_machine, compile_minsky, encode_input
from src.predict import (
    ChangeBoundExceededError,
    ColumnSearch,
    PredictionInstance,
    RleColumn,
    StreamingPredictor,
    predict_column_search,
    predict_naive,
    predict_oneway_stream,
)
from src.predict.search import NoConsistentColumnsError
from src.zoo import rules


def random_instance(rng: np.random.Generator, size: int, radius: int, t: int) -> PredictionInstance:
    return PredictionInstance(t, Pattern(rng.integers(0, size, 2 * radius * t + 1)))


def random_freezing_rule(rng: np.random.Generator, size: int = 3) -> CellularAutomaton:
    table = np.maximum(rng.integers(0, size, (size,) * 3), np.arange(size)[None, :, None])
    names = tuple(str(q) for q in range(size))
    return CellularAutomaton(Alphabet(names), Neighborhood.interval(-1, 1), table, "random-freezing")


def test_rle_column_basics():
    column = RleColumn.from_sequence([0, 0, 1, 1, 1, 2])
    assert column.segments == ((0, 2), (1, 3), (2, 1))
    assert column.height == 6
    assert column.changes == 2
    assert column.value_at(4) == 1
    assert column.next_change(1) == 2
    assert column.next_change(5) is None
    assert column.extended(2, 3).segments[-1] == (2, 4)
    assert column.to_sequence() == [0, 0, 1, 1, 1, 2]
    with pytest.raises(ValueError):
        RleColumn(((0, 1), (0, 2)))
    with pytest.raises(IndexError):
        column.value_at(6)


def test_instance_radius_is_checked():
    inst = PredictionInstance(2, Pattern(np.zeros(3, dtype=np.int32)))
    with pytest.raises(CAError):
        inst.check(rules.max_rule(two_way=True))
    with pytest.raises(CAError):
        PredictionInstance(0, Pattern(np.zeros(1, dtype=np.int32))).check(rules.max_rule())


def test_naive_prediction_and_target():
    inst = PredictionInstance(2, Pattern(np.array([1, 0, 0, 0, 0])), target=1)
    state = predict_naive(rules.max_rule(two_way=True), inst)
    assert state == 1
    assert inst.answer(state) is True
    assert PredictionInstance(1, Pattern(np.array([0, 0, 0]))).answer(0) is None


def test_stream_agrees_with_naive_on_freezing_rules():
    rng = np.random.default_rng(11)
    for ca in (rules.max_rule(), rules.shift()):
        for t in (1, 3, 8):
            inst = random_instance(rng, ca.size, ca.radius, t)
            expected = predict_naive(ca, inst)
            assert predict_oneway_stream(ca, inst, k=t) == expected


def test_stream_handles_right_looking_rules():
    ca = rules.nonfreezing_example()
    rng = np.random.default_rng(3)
    for t in (1, 2, 5):
        inst = random_instance(rng, ca.size, ca.radius, t)
        assert predict_oneway_stream(ca, inst, k=2) == predict_naive(ca, inst)


def test_stream_keeps_few_columns():
    rng = np.random.default_rng(5)
    for ca, k in ((rules.max_rule(), 1), (rules.nonfreezing_example(), 2)):
        for t in (8, 16, 32, 64):
            predictor = StreamingPredictor(ca, k)
            inst = random_instance(rng, ca.size, ca.radius, t)
            assert predictor.predict(inst) == predict_naive(ca, inst)
            assert predictor.peak_live_columns <= 2 * ca.radius + 1
            assert predictor.peak_live_columns <= ca.radius + 1
            assert predictor.max_segments <= k + 1


def test_stream_rejects_two_way_rules():
    with pytest.raises(CAError):
        StreamingPredictor(rules.max_rule(two_way=True), 1)


def test_stream_detects_an_exceeded_bound():
    blinking = Pattern(np.array([0, 1] * 12 + [0]))
    with pytest.raises(ChangeBoundExceededError):
        predict_oneway_stream(rules.shift(), PredictionInstance(12, blinking), k=2)


def test_column_search_agrees_with_naive():
    rng = np.random.default_rng(19)
    ca = rules.max_rule(two_way=True)
    for t in (1, 2, 4):
        for _ in range(5):
            inst = random_instance(rng, ca.size, ca.radius, t)
            assert predict_column_search(ca, inst, k=1) == predict_naive(ca, inst)


def test_column_search_on_one_way_rules():
    rng = np.random.default_rng(23)
    ca = rules.max_rule()
    inst = random_instance(rng, ca.size, ca.radius, 5)
    assembly = ColumnSearch(ca, 1).run(inst)
    assert assembly.state == predict_naive(ca, inst)
    assert assembly.max_segments <= 2


def test_column_search_without_consistent_columns():
    blinking = Pattern(np.array([0, 1, 0, 1, 0]))
    ca = rules.shift()
    with pytest.raises(NoConsistentColumnsError):
        ColumnSearch(ca, 0).run(PredictionInstance(2, blinking))


def test_column_search_checks_constraints_completed_by_inputs():
    table = np.array([
        [[0, 0, 0], [1, 1, 1], [2, 2, 0]],
        [[0, 0, 0], [0, 1, 0], [1, 1, 2]],
        [[0, 0, 0], [1, 0, 1], [2, 0, 1]],
    ])
    ca = CellularAutomaton(Alphabet(("0", "1", "2")), Neighborhood.interval(-1, 1), table, "three-state")
    inst = PredictionInstance(1, Pattern(np.array([2, 2, 2])))
    assert predict_naive(ca, inst) == 1
    assert predict_column_search(ca, inst, k=2) == 1


def test_column_search_agrees_with_naive_on_random_freezing_rules():
    rng = np.random.default_rng(47)
    for _ in range(10):
        ca = random_freezing_rule(rng)
        for index in range(20):
            inst = random_instance(rng, ca.size, ca.radius, 1 + index % 4)
            assert predict_column_search(ca, inst, k=ca.size - 1) == predict_naive(ca, inst)


def test_engines_agree_on_many_instances():
    rng = np.random.default_rng(53)
    checked = 0
    for ca, k in ((rules.max_rule(two_way=True), 1), (rules.ulam1d(), 1)):
        for index in range(60):
            inst = random_instance(rng, ca.size, ca.radius, 1 + index % 6)
            assert predict_column_search(ca, inst, k=k) == predict_naive(ca, inst)
            checked += 1
    ca = rules.max_rule()
    for index in range(100):
        inst = random_instance(rng, ca.size, ca.radius, 1 + index % 24)
        expected = predict_naive(ca, inst)
        assert predict_oneway_stream(ca, inst, k=1) == expected
        assert predict_column_search(ca, inst, k=1) == expected
        checked += 1
    ca = rules.nonfreezing_example()
    for index in range(60):
        inst = random_instance(rng, ca.size, ca.radius, 1 + index % 16)
        expected = predict_naive(ca, inst)
        assert predict_oneway_stream(ca, inst, k=2) == expected
        assert predict_column_search(ca, inst, k=2) == expected
        checked += 1
    assert checked == 280


def test_column_search_on_a_compiled_counter_machine():
    f = compile_minsky(builtin_machine("bounce"))
    ca, k = f.ca, f.ca.size - 1
    rng = np.random.default_rng(59)
    for index in range(30):
        inst = random_instance(rng, ca.size, ca.radius, 1 + index % 2)
        assert predict_column_search(ca, inst, k=k) == predict_naive(ca, inst)
    for chis in ((0,), (1,)):
        u = encode_input(f, chis)
        inst = PredictionInstance(u.radius, u)
        assert predict_column_search(ca, inst, k=k, node_limit=2_000_000) == predict_naive(ca, inst)
