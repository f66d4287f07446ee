"""Tests for rules, configurations and simulation."""
import numpy as np
import pytest

from src.ca import (
    CONFIRMED_TAIL,
    STABLE_STATE,
    UNWITNESSED,
    Alphabet,
    CAError,
    CellularAutomaton,
    Configuration,
    DimensionMismatchError,
    Neighborhood,
    Pattern,
    PeriodicBackground,
    Reached,
    SplitBackground,
    Unknown,
    Window,
    apply_to_pattern,
    chi,
    cyreach_bounded,
    freezing_report,
    iterate,
    limit_window,
    orbit_window,
    simulate,
    step,
    trace,
)
from src.zoo import rules


def single_one(dimension: int = 1) -> Configuration:
    return Configuration.from_cells(dimension, 0, {(0,) * dimension: 1})


def test_ball_neighborhood_is_row_major():
    nbhd = Neighborhood.ball(2, 1)
    assert len(nbhd) == 9
    assert nbhd.offsets[0] == (-1, -1)
    assert nbhd.offsets[1] == (-1, 0)
    assert nbhd.center_index == 4
    assert nbhd.radius == 1


def test_neighborhood_rejects_duplicates_and_mixed_dimensions():
    with pytest.raises(CAError):
        Neighborhood(((0,), (0,)))
    with pytest.raises(DimensionMismatchError):
        Neighborhood(((0,), (0, 1)))


def test_alphabet_rejects_duplicate_names():
    with pytest.raises(CAError):
        Alphabet(("a", "a"))


def test_table_shape_is_checked():
    with pytest.raises(CAError):
        CellularAutomaton(Alphabet(("0", "1")), Neighborhood.interval(-1, 1), np.zeros((2, 2), dtype=np.int32))


def test_from_function_matches_tabulated_max():
    by_names = CellularAutomaton.from_function(
        Alphabet(("0", "1")), Neighborhood.interval(-1, 1), lambda ctx: max(ctx), "max2"
    )
    assert by_names.same_rule(rules.max_rule(two_way=True))


def test_max_grows_one_cell_per_step():
    ca = rules.max_rule(two_way=True)
    c = iterate(ca, single_one(), 2)
    assert c.window(Window.interval(-3, 3)).tolist() == [0, 1, 1, 1, 1, 1, 0]


def test_iterate_zero_steps_is_identity():
    ca = rules.max_rule(two_way=True)
    c = single_one()
    assert iterate(ca, c, 0) == c
    with pytest.raises(CAError):
        iterate(ca, c, -1)


def test_simulate_returns_whole_orbit():
    orbit = simulate(rules.shift(), single_one(), 3)
    assert len(orbit) == 4
    assert [c.value_at((t,)) for t, c in enumerate(orbit)] == [1, 1, 1, 1]


def test_split_background_survives_a_step():
    c = Configuration(1, SplitBackground(0, 1, 0))
    image = step(rules.shift(), c)
    assert image.value_at((-5,)) == 1
    assert image.value_at((0,)) == 1
    assert image.value_at((1,)) == 0
    assert image.value_at((7,)) == 0


def test_periodic_background_is_shifted():
    c = Configuration(1, PeriodicBackground(np.array([0, 1])))
    image = step(rules.shift(), c)
    assert image.value_at((0,)) == 1
    assert image.value_at((1,)) == 0


def test_periodic_block_is_reduced_to_its_period():
    assert PeriodicBackground(np.array([1, 0, 1, 0])).periods == (2,)


def test_apply_partial_poisons_unknown_reads():
    ca = rules.max_rule(two_way=True)
    out = ca.apply_partial(np.array([0, 1, 0, -1, 0]))
    assert out.tolist() == [1, -1, -1]


def test_extended_ignores_new_offsets():
    one_way = rules.max_rule()
    wide = one_way.extended(Neighborhood.interval(-1, 1))
    assert wide.local((0, 0, 1)) == 0
    assert wide.local((1, 0, 0)) == 1
    with pytest.raises(CAError):
        one_way.extended(Neighborhood.interval(0, 1))


def test_stable_states():
    assert rules.max_rule(two_way=True).stable_states == frozenset({1})
    assert rules.shift().stable_states == frozenset()


def test_apply_to_pattern_shrinks_by_the_radius():
    ca = rules.max_rule(two_way=True)
    u = Pattern(np.array([0, 0, 1, 0, 0]))
    assert apply_to_pattern(ca, u).values.tolist() == [1, 1, 1]
    with pytest.raises(CAError):
        apply_to_pattern(ca, Pattern(np.array([1])))


def test_pattern_configuration_round_trip():
    u = Pattern(np.arange(9).reshape(3, 3) % 2)
    c = u.to_configuration(0)
    assert Pattern.from_configuration(c, 1) == u
    assert u.center == 0
    with pytest.raises(CAError):
        Pattern(np.zeros((2, 2)))


def test_trace_detects_constant_tail():
    ca = rules.max_rule(two_way=True)
    result = trace(ca, single_one(), [2], 5)
    assert [row[0] for row in result.rows] == [0, 0, 1, 1, 1, 1]
    assert result.eventually_constant_at == 2


def test_freezing_report_guarantees():
    ca = rules.max_rule(two_way=True)
    report = freezing_report(ca, single_one(), 3, horizon=10)
    assert (report.freezing_time, report.limit_state, report.guarantee) == (3, 1, STABLE_STATE)

    far = freezing_report(ca, single_one(), 30, horizon=10, confirm_tail=4)
    assert (far.freezing_time, far.limit_state, far.guarantee) == (0, 0, CONFIRMED_TAIL)

    blinking = Configuration(1, PeriodicBackground(np.array([0, 1])))
    unknown = freezing_report(rules.shift(), blinking, 0, horizon=10, confirm_tail=2)
    assert unknown.guarantee == UNWITNESSED
    assert unknown.freezing_time is None
    assert unknown.changes == 10


def test_limit_window_fills_the_limit_pattern():
    ca = rules.max_rule(two_way=True)
    result = limit_window(ca, single_one(), Window.interval(-3, 3), horizon=10, confirm_tail=3)
    assert result.complete
    assert result.pattern.values.tolist() == [1] * 7
    assert result.reports[(-3,)].freezing_time == 3


def test_orbit_window_shape():
    history = orbit_window(rules.ulam(), single_one(2), Window.ball(2, 2), 4)
    assert history.shape == (5, 5, 5)
    assert history[1].sum() == 5


def test_cyreach_finds_least_time():
    ca = rules.max_rule(two_way=True)
    u = Pattern(np.array([0, 1, 0]))
    v = Pattern(np.array([1, 1, 1]))
    result = cyreach_bounded(ca, u, v, 3, backgrounds=[0])
    assert isinstance(result, Reached)
    assert result.time == 1
    assert v.matches(iterate(ca, result.witness, 1))


def test_cyreach_reports_exhausted_search():
    ca = rules.identity()
    result = cyreach_bounded(ca, Pattern(np.array([0])), Pattern(np.array([1])), 4, extension_radius=1)
    assert isinstance(result, Unknown)
    assert result.exhausted
    assert result.candidates == 8


def test_chi_lists_the_cells_in_a_state():
    c = Configuration.from_cells(1, 0, {(-1,): 1, (2,): 1})
    assert chi(c, 1, Window.interval(-2, 2)) == frozenset({(-1,), (2,)})
    assert chi(c, 0, Window.interval(2, 3)) == frozenset({(3,)})
