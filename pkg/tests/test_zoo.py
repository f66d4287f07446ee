"""Tests for the named rules, transformers and tile systems."""
import numpy as np
import pytest

from src.ca import Alphabet, CAError, Configuration, Neighborhood, PeriodicBackground, Window, iterate, step, tabulate
from src.ca.formats import load_rule
from src.classify import Freezing, check_freezing
from src.minsky import builtin_machine
from src.zoo import (
    BOUNDED_CHANGE,
    CONVERGENT,
    FREEZING,
    NONE,
    ZOO,
    ZooEntry,
    atam_step,
    atam_to_ca,
    build_named,
    check_bounded_change_samples,
    check_convergent_samples,
    emit,
    format_tiles,
    freeze_under_order,
    get_entry,
    halting_columns,
    line_lift,
    list_entries,
    parse_tiles,
    product,
    rules,
    sample_configurations,
    terminal_assemblies,
    toy_system,
)


def test_every_entry_builds_in_its_class():
    for entry in list_entries():
        ca = entry.build()
        assert ca.name == entry.name
        freezing = isinstance(check_freezing(ca), Freezing)
        if entry.expected_class == FREEZING:
            assert freezing, entry.name
        if entry.expected_class == NONE:
            assert not freezing, entry.name


def test_lookup():
    assert get_entry("max2").expected_class == FREEZING
    assert len(ZOO) == len(list_entries())
    with pytest.raises(KeyError):
        build_named("no-such-rule")


def test_emit_writes_a_loadable_rule(tmp_path):
    path = emit("ulam1d", tmp_path / "ulam1d.rule", {"seed": 0})
    assert load_rule(path).same_rule(build_named("ulam1d"))
    assert path.read_text().startswith("#")


def test_freeze_under_order():
    life = rules.life_without_death()
    assert isinstance(check_freezing(life), Freezing)
    with pytest.raises(CAError):
        freeze_under_order(rules.game_of_life(), ["0", "2"])


def test_product_names_and_steps():
    ca = product(rules.ulam1d(), rules.max_rule())
    assert ca.alphabet.symbols == ("0|0", "0|1", "1|0", "1|1")
    c = Configuration.from_cells(1, 0, {(0,): ca.alphabet.id_of("1|1")})
    image = iterate(ca, c, 1)
    assert ca.alphabet.names(image.window(Window.interval(-1, 1))) == ["1|0", "1|1", "1|1"]


def test_line_lift_computes_rows():
    ca = line_lift(rules.max_rule())
    star = ca.alphabet.id_of("*")
    cells = {(x, y): star for x in range(-5, 6) for y in range(1, 4)}
    cells[(0, 0)] = 1
    c = Configuration(2, 0, cells)
    limit = iterate(ca, c, 3)
    assert [limit.value_at((x, 1)) for x in (-1, 0, 1, 2)] == [0, 1, 1, 0]
    assert [limit.value_at((x, 3)) for x in (2, 3, 4)] == [1, 1, 0]
    with pytest.raises(CAError):
        line_lift(rules.ulam())


def test_halting_columns_mark_halting_machines():
    machines = [builtin_machine("bounce"), builtin_machine("loop")]
    c = halting_columns(machines, 10)
    limit = iterate(rules.vertical_min(), c, 10)
    assert limit.value_at((0, 0)) == 0
    assert limit.value_at((1, 0)) == 1


def test_toy_tile_system():
    system = toy_system()
    terminal = terminal_assemblies(system)
    assert len(terminal) == 1
    ca = atam_to_ca(system)
    grown = iterate(ca, system.seed_configuration(), 3)
    window = Window((-1, -1), (3, 2))
    assert (grown.window(window) == terminal[0].window(window)).all()
    assert ca.alphabet.names([grown.value_at((2, 0)), grown.value_at((0, 1))]) == ["B", "C"]


def test_tile_file_round_trip():
    system = toy_system()
    again = parse_tiles(format_tiles(system))
    assert again.tiles == system.tiles
    assert again.order == system.order


def test_atam_step_attaches_one_tile():
    system = toy_system()
    successors = atam_step(system, system.seed_configuration())
    placed = sorted(
        (cell, system.alphabet.name_of(c.value_at(cell)))
        for c in successors
        for cell in ((1, 0), (0, 1))
        if c.value_at(cell) != system.empty
    )
    assert placed == [((0, 1), "C"), ((1, 0), "A")]


def test_threshold_growth_needs_two_neighbors():
    ca = rules.threshold_growth(threshold=2)
    c = step(ca, Configuration.from_cells(2, 0, {(0, 0): 1, (1, 1): 1}))
    assert [c.value_at(z) for z in ((1, 0), (0, 1), (-1, 0), (0, 0))] == [1, 1, 0, 1]


def test_sir_wave():
    ca = rules.sir(dimension=1)
    c = iterate(ca, Configuration.from_cells(1, 0, {(0,): 1}), 2)
    assert ca.alphabet.names(c.window(Window.interval(-3, 3))) == ["S", "I", "R", "R", "R", "I", "S"]


def flip():
    return tabulate(Alphabet(("0", "1")), Neighborhood.interval(0, 0), lambda ctx: 1 - ctx[0], "flip")


def test_sampled_classes_of_the_catalogue():
    profile = check_bounded_change_samples(build_named("nonfreezing"))
    assert profile.settled
    assert profile.max_changes_observed <= 2
    for name in ("szone-max2", "szone-ulam1d"):
        traces = check_convergent_samples(build_named(name))
        assert all(t.eventually_constant_at is not None for t in traces)


def test_mislabeled_entries_are_rejected():
    with pytest.raises(CAError):
        ZooEntry("flip", flip, CONVERGENT, "Blinks forever").build()
    with pytest.raises(CAError):
        ZooEntry("flip", flip, BOUNDED_CHANGE, "Blinks forever").build()
    with pytest.raises(CAError):
        ZooEntry("shift", rules.shift, BOUNDED_CHANGE, "Periodic backgrounds keep moving").build()
    with pytest.raises(CAError):
        ZooEntry("max", rules.max_rule, NONE, "Freezing").build()
    with pytest.raises(CAError):
        ZooEntry("life", rules.game_of_life, FREEZING, "Cells die").build()


def test_sample_configurations_are_seeded():
    ca = rules.max_rule()
    first = sample_configurations(ca, periodic=True, seed=5)
    assert first == sample_configurations(ca, periodic=True, seed=5)
    periodic = [c for c in first if isinstance(c.background, PeriodicBackground)]
    assert len(periodic) == len(first) // 2
    assert all(len(np.unique(c.background.block)) > 1 for c in periodic)
