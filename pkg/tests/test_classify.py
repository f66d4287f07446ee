"""Tests for freezing orders, change counts, fixed points, nilpotency and limits."""
import numpy as np
import pytest

from src.ca import Alphabet, CellularAutomaton, Configuration, Neighborhood, Window, iterate, step
from src.ca.automaton import tabulate
from src.classify import (
    ASSUMED_CONVERGENT,
    AtLeastTwo,
    ExactlyOneUniform,
    Freezing,
    LimitOracleError,
    MissingCertificateError,
    Nilpotent,
    NoneFound,
    NotFreezing,
    NotNilpotent,
    NotSpreadingError,
    build_debruijn,
    census_fixed_points,
    change_profile,
    check_freezing,
    check_spreading,
    decide_nilpotency_1d,
    group_cells,
    is_nilpotent_bruteforce,
    is_spreading,
    lift_spreading_product,
    limit_segment_with_counts,
    oracle_change_counts,
    state_change_relation,
)
from src.minsky import builtin_machine, canonical_configuration, compile_minsky
from src.zoo import rules


def flip():
    return tabulate(Alphabet(("0", "1")), Neighborhood.interval(0, 0), lambda ctx: 1 - ctx[0], "flip")


def single_one() -> Configuration:
    return Configuration.from_cells(1, 0, {(0,): 1})


def random_configuration(rng: np.random.Generator, size: int, lo: int, hi: int) -> Configuration:
    return Configuration.from_array(rng.integers(0, size, hi - lo + 1), (lo,), 0)


def random_freezing_rule(rng: np.random.Generator, size: int) -> CellularAutomaton:
    table = np.maximum(rng.integers(0, size, (size,) * 3), np.arange(size)[None, :, None])
    names = tuple(str(q) for q in range(size))
    return CellularAutomaton(Alphabet(names), Neighborhood.interval(-1, 1), table, "random-freezing")


def test_state_change_relation_of_ulam():
    assert state_change_relation(rules.ulam()).arcs == frozenset({(0, 1)})


def test_growth_rules_are_freezing():
    order = check_freezing(rules.ulam())
    assert isinstance(order, Freezing)
    assert order.linear_extension() == [1, 0]
    assert order.precedes(1, 0)
    assert order.is_nonincreasing([0, 0, 1, 1])
    assert not order.is_nonincreasing([1, 0])


def test_shift_is_not_freezing():
    order = check_freezing(rules.shift())
    assert isinstance(order, NotFreezing)
    assert sorted(order.cycle) == [0, 1]


def test_nonfreezing_example_has_a_two_cycle():
    order = check_freezing(rules.nonfreezing_example())
    assert isinstance(order, NotFreezing)
    assert sorted(order.cycle) == [1, 2]


def test_freezing_two_state_rule_changes_at_most_once():
    rng = np.random.default_rng(7)
    ca = rules.max_rule(two_way=True)
    samples = [random_configuration(rng, 2, -20, 20) for _ in range(10)]
    profile = change_profile(ca, samples, Window.interval(-5, 5), 12)
    assert profile.max_changes_observed <= 1
    assert profile.sample_count == 10
    assert set(profile.per_cell) == {(z,) for z in range(-5, 6)}


def test_change_profile_of_the_nonfreezing_example():
    ca = rules.nonfreezing_example()
    profile = change_profile(ca, [Configuration.uniform(1, 0)], Window.interval(0, 0), 4, confirm_tail=3)
    assert profile.max_changes_observed == 2
    assert profile.settled is False
    assert change_profile(ca, [Configuration.uniform(1, 0)], Window.interval(0, 0), 12, confirm_tail=3).settled


def test_change_profile_flags_orbits_that_keep_changing():
    samples = [Configuration.uniform(1, 0), Configuration.uniform(1, 1)]
    profile = change_profile(flip(), samples, Window.interval(-1, 1), 20, confirm_tail=4)
    assert profile.unsettled_samples == 2
    assert profile.max_changes_observed == 20


def test_census_with_two_uniform_fixed_points():
    census = census_fixed_points(rules.max_rule(two_way=True))
    assert isinstance(census, AtLeastTwo)
    assert len(census.witnesses) == 2


def test_census_of_a_constant_rule():
    assert census_fixed_points(rules.constant()) == ExactlyOneUniform(0)


def test_census_without_uniform_fixed_point():
    assert census_fixed_points(flip()) == NoneFound()


def test_nilpotency_needs_a_certificate():
    with pytest.raises(MissingCertificateError):
        decide_nilpotency_1d(rules.max_rule(two_way=True))
    with pytest.raises(MissingCertificateError):
        decide_nilpotency_1d(rules.shift(), check_freezing(rules.shift()))


def test_nilpotency_verdicts():
    constant = rules.constant()
    assert decide_nilpotency_1d(constant, check_freezing(constant)) == Nilpotent(0)

    ca = rules.max_rule(two_way=True)
    assert isinstance(decide_nilpotency_1d(ca, check_freezing(ca)), NotNilpotent)

    assert decide_nilpotency_1d(flip(), ASSUMED_CONVERGENT) == NotNilpotent(())


def test_nonfreezing_example_is_nilpotent():
    ca = rules.nonfreezing_example()
    assert decide_nilpotency_1d(ca, ASSUMED_CONVERGENT) == Nilpotent(2)
    assert is_nilpotent_bruteforce(ca, 4, 4)


def test_bruteforce_agrees_on_max():
    assert not is_nilpotent_bruteforce(rules.max_rule(two_way=True), 3, 3)


def test_nilpotency_matches_brute_force_on_random_freezing_rules():
    rng = np.random.default_rng(61)
    for index in range(100):
        size = 2 + index % 2
        ca = random_freezing_rule(rng, size)
        verdict = decide_nilpotency_1d(ca, check_freezing(ca))
        # a period-p configuration is fixed after p (|Q| - 1) steps
        brute = is_nilpotent_bruteforce(ca, 4, 4 * (size - 1))
        if isinstance(verdict, Nilpotent):
            assert brute, ca.table.tolist()
            assert ca.uniform_image(verdict.state) == verdict.state
        else:
            assert len(set(verdict.witnesses)) >= 2
            assert all(step(ca, w) == w for w in verdict.witnesses)
            if size == 2:
                assert not brute, ca.table.tolist()


def test_spreading_states():
    ca = rules.max_rule(two_way=True)
    assert is_spreading(ca, 1)
    assert not is_spreading(ca, 0)
    with pytest.raises(NotSpreadingError):
        check_spreading(ca, 0)


def test_blinking_product_is_not_freezing():
    lifted = lift_spreading_product(rules.max_rule(two_way=True), 1)
    assert lifted.size == 4
    assert lifted.alphabet.symbols == ("0/0", "0/1", "1/0", "1/1")
    assert isinstance(check_freezing(lifted), NotFreezing)
    with pytest.raises(NotSpreadingError):
        lift_spreading_product(rules.max_rule(two_way=True), 0)


def test_grouped_rule_commutes_with_the_base_rule():
    grouped = group_cells(rules.shift(), 2)
    assert grouped.ca.radius == 1
    assert grouped.ca.size == 4
    c = single_one()
    assert grouped.decode(grouped.encode(c)) == c
    assert grouped.decode(step(grouped.ca, grouped.encode(c))) == step(rules.shift(), c)


def test_oracle_counts_feed_the_limit_segment():
    ca = rules.max_rule(two_way=True)
    counts = oracle_change_counts(ca, single_one(), [-2, 2], 10)
    assert counts == {-2: 1, 2: 1}
    limit = limit_segment_with_counts(ca, single_one(), -2, 2, counts[-2], counts[2], k=1)
    assert limit == (1, 1, 1, 1, 1)


def test_wrong_counts_are_detected():
    ca = rules.max_rule(two_way=True)
    with pytest.raises(LimitOracleError):
        limit_segment_with_counts(ca, single_one(), -2, 2, 2, 1, k=1, step_cap=30)


def test_limit_segments_match_long_simulations_of_compiled_machines():
    for name, chis in (("bounce", (2,)), ("countdown", (5,)), ("loop", (0,))):
        f = compile_minsky(builtin_machine(name))
        c = canonical_configuration(f, chis)
        far = iterate(f.ca, c, 2000)
        for z, z_right in ((0, 3), (-3, 1)):
            counts = oracle_change_counts(f.ca, c, [z, z_right], 2000)
            limit = limit_segment_with_counts(f.ca, c, z, z_right, counts[z], counts[z_right], k=f.ca.size - 1)
            assert limit == tuple(far.value_at((x,)) for x in range(z, z_right + 1)), (name, z, z_right)


def test_debruijn_graph_of_max2():
    debruijn = build_debruijn(rules.max_rule(two_way=True))
    assert debruijn.radius == 1
    assert debruijn.graph.number_of_nodes() == 4
    assert debruijn.graph.number_of_edges() == 8
    assert debruijn.graph.edges[(0, 1), (1, 0)]["label"] == 1
    # center 1 always survives, center 0 only inside 000
    assert debruijn.consistent_subgraph().number_of_edges() == 5
