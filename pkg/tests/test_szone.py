"""Tests for shrinking-zone automata."""
from functools import lru_cache

import numpy as np
import pytest

from src.ca import Alphabet, CAError, CellularAutomaton, Configuration, Neighborhood, Window
from src.classify import NotSpreadingError
from src.config import Config
from src.szone import (
    BLANK,
    ERROR,
    MOVE_LEFT,
    MOVE_RIGHT,
    RIGHT_OF_HEAD,
    ZoneCell,
    build_f2_variant,
    build_szone,
    center_changes,
    make_lambda,
    round_trip_time,
    verify_lemma1,
    zone_widths,
)
from src.zoo import rules


@lru_cache(maxsize=None)
def max_zone():
    return build_szone(rules.max_rule(two_way=True))


def random_configuration(rng: np.random.Generator, n: int) -> Configuration:
    return Configuration.from_array(rng.integers(0, 2, 2 * n + 1), (-n,), 0)


def test_alphabet_size():
    szone = max_zone()
    assert szone.ca.size == 19
    assert szone.ca.name == "Z[max2]"
    assert szone.token_of(szone.blank) == BLANK
    assert not szone.is_f2_variant


def test_error_spreads():
    szone = max_zone()
    cell = szone.zone_state(0, 1, RIGHT_OF_HEAD)
    for context in ((szone.error, cell, szone.blank), (szone.blank, szone.blank, szone.error)):
        assert szone.ca.local(context) == szone.error


def test_lonely_zone_cell_becomes_passive():
    szone = max_zone()
    head = szone.zone_state(1, 0, MOVE_LEFT)
    assert szone.ca.local((szone.blank, head, szone.blank_plus)) == szone.zone_state(1, 0, RIGHT_OF_HEAD)


def test_adjacent_heads_are_an_error():
    szone = max_zone()
    a = szone.zone_state(0, 0, MOVE_RIGHT)
    b = szone.zone_state(0, 0, MOVE_LEFT)
    assert szone.ca.local((szone.blank, a, b)) == szone.error


def test_make_lambda():
    szone = max_zone()
    c = Configuration.from_cells(1, 0, {(0,): 1})
    seeded = make_lambda(szone, 1, c)
    names = szone.ca.alphabet.names(seeded.realized.window(Window.interval(-2, 2)))
    assert names == ["b", "(0,0,>)", "(1,1,r)", "(0,0,r)", "b"]
    with pytest.raises(CAError):
        make_lambda(szone, 0, c)


def test_round_trip_time():
    assert round_trip_time(1, 1) == 5
    assert round_trip_time(3, 2) == 22
    assert round_trip_time(4, 0) == 0


def test_one_pass_on_a_tiny_zone():
    szone = max_zone()
    c = Configuration.from_cells(1, 0, {(-1,): 1})
    report = verify_lemma1(szone, c, 1, 1)
    assert report.passed
    assert report.steps == 5


def test_passes_compute_the_inner_rule():
    rng = np.random.default_rng(13)
    szone = max_zone()
    for n, t in ((2, 1), (3, 2), (4, 4), (5, 3)):
        report = verify_lemma1(szone, random_configuration(rng, n + 2), n, t)
        assert report.passed, (n, t, report.mismatches, report.form_violations)


def test_passes_on_a_nonfreezing_rule():
    rng = np.random.default_rng(17)
    szone = build_szone(rules.shift())
    report = verify_lemma1(szone, random_configuration(rng, 6), 4, 3)
    assert report.passed


def test_passes_compute_random_inner_rules():
    rng = np.random.default_rng(67)
    for index in range(20):
        size = 2 + index % 2
        table = rng.integers(0, size, (size,) * 3)
        names = Alphabet(tuple(str(q) for q in range(size)))
        inner = CellularAutomaton(names, Neighborhood.interval(-1, 1), table, f"random{index}")
        szone = build_szone(inner)
        for n in range(1, 9):
            for t in range(1, n + 1):
                c = Configuration.from_array(rng.integers(0, size, 2 * n + 5), (-n - 2,), 0)
                report = verify_lemma1(szone, c, n, t)
                assert report.passed, (index, n, t, report.mismatches, report.form_violations)


def test_lemma_arguments_are_checked():
    with pytest.raises(CAError):
        verify_lemma1(max_zone(), Configuration.uniform(1, 0), 2, 3)


def test_center_changes_grow_with_the_zone():
    szone = max_zone()
    c = Configuration.uniform(1, 0)
    counts = [center_changes(szone, n, c) for n in (2, 4, 8)]
    assert all(count > n for count, n in zip(counts, (2, 4, 8)))
    assert counts == sorted(counts)


def test_zone_widths():
    szone = max_zone()
    z = szone.zone_state(0, 0, RIGHT_OF_HEAD)
    row = np.array([szone.blank, z, z, szone.blank_plus, z])
    assert zone_widths(szone, row) == [2, 1]


def test_inner_rule_must_be_one_dimensional():
    with pytest.raises(CAError):
        build_szone(rules.ulam())


def test_f2_variant():
    inner = rules.max_rule(two_way=True)
    with pytest.raises(NotSpreadingError):
        build_f2_variant(inner, 0)
    szone = build_f2_variant(inner, 1)
    assert szone.is_f2_variant
    assert szone.token_of(szone.error) == ERROR
    marked = szone.zone_state(1, 0, RIGHT_OF_HEAD)
    assert szone.ca.local((szone.blank, szone.blank, marked)) == szone.error
    assert szone.token_of(szone.zone_state(0, 0, RIGHT_OF_HEAD)) == ZoneCell(0, 0, RIGHT_OF_HEAD)


def test_blank_name_follows_the_configuration(monkeypatch):
    monkeypatch.setattr(Config, "BLANK_STATE", "B")
    szone = build_szone(rules.ulam1d())
    assert szone.ca.alphabet.name_of(szone.blank) == "B"
    assert szone.ca.alphabet.name_of(szone.blank_plus) == "B+"
    assert "b" not in szone.ca.alphabet.symbols
