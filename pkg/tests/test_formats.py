"""Tests for the rule, configuration and pattern files and PGM rendering."""
import numpy as np
import pytest

from src.ca import Alphabet, Configuration, FormatError, Pattern, SplitBackground, Window
from src.ca.formats import (
    format_configuration,
    format_pattern,
    format_rule,
    load_rule,
    load_rule_or_builtin,
    parse_configuration,
    parse_coords,
    parse_pattern,
    parse_rule,
    save_rule,
    tokenize,
)
from src.ca.render import orbit_image, snapshot_image, write_pgm
from src.zoo import rules

BINARY = Alphabet(("0", "1"))

FLIP_RULE = """\
# flips every cell
name flip
dim 1
alphabet 0 1
neighborhood 0
entry 0 -> 1
entry 1 -> 0   # trailing comment
"""


def test_tokenize_skips_comments_and_blank_lines():
    lines = list(tokenize("# header\n\ndim 1  # one\ncell 0 a\n"))
    assert lines == [(3, ["dim", "1"]), (4, ["cell", "0", "a"])]


def test_parse_coords():
    assert parse_coords("-1,2") == (-1, 2)
    with pytest.raises(FormatError):
        parse_coords("1,x", line=4)
    with pytest.raises(FormatError):
        parse_coords("1,2", dimension=1)


def test_parse_rule():
    ca = parse_rule(FLIP_RULE)
    assert ca.name == "flip"
    assert ca.local((0,)) == 1
    assert ca.local((1,)) == 0


def test_rule_errors_carry_line_numbers():
    with pytest.raises(FormatError) as duplicate:
        parse_rule(FLIP_RULE + "entry 0 -> 0\n")
    assert duplicate.value.line == 8

    with pytest.raises(FormatError) as unknown:
        parse_rule(FLIP_RULE.replace("entry 1 -> 0", "entry 2 -> 0"))
    assert unknown.value.line == 7

    with pytest.raises(FormatError) as arity:
        parse_rule(FLIP_RULE.replace("entry 1 -> 0", "entry 1 1 -> 0"))
    assert arity.value.line == 7


def test_missing_entries_are_reported():
    text = "\n".join(FLIP_RULE.splitlines()[:-1]) + "\n"
    with pytest.raises(FormatError, match="missing"):
        parse_rule(text)


def test_rule_file_round_trip():
    for ca in (rules.max_rule(two_way=True), rules.ulam(), rules.nonfreezing_example()):
        assert parse_rule(format_rule(ca, {"seed": 0})).same_rule(ca)


def test_builtin_rule_lines():
    ca = parse_rule("dim 1\nbuiltin max2\n")
    assert ca.same_rule(rules.max_rule(two_way=True))
    with pytest.raises(FormatError):
        parse_rule("builtin no-such-rule\n")
    with pytest.raises(FormatError):
        parse_rule("dim 2\nbuiltin max2\n")


def test_load_rule_errors_name_the_file(tmp_path):
    path = tmp_path / "bad.rule"
    path.write_text("dim 1\nalphabet 0 0\n")
    with pytest.raises(FormatError) as error:
        load_rule(path)
    assert error.value.path == path
    assert error.value.line == 2


def test_load_rule_or_builtin(tmp_path):
    path = save_rule(tmp_path / "max.rule", rules.max_rule())
    assert load_rule_or_builtin(path).same_rule(rules.max_rule())
    assert load_rule_or_builtin("max").same_rule(rules.max_rule())
    with pytest.raises(FormatError):
        load_rule_or_builtin("no-such-rule")


def test_configuration_with_split_background():
    c = parse_configuration("dim 1\nbackground-split 0 1 0\ncell 3 1\ncell -2 0\n", BINARY)
    assert c.background == SplitBackground(0, 1, 0)
    assert [c.value_at((z,)) for z in (-3, -2, -1, 0, 3, 4)] == [1, 0, 1, 0, 1, 0]
    assert parse_configuration(format_configuration(c, BINARY), BINARY) == c


def test_periodic_configuration_round_trip():
    text = "dim 2\nbackground-periodic 2,1 0 1\ncell 0,0 1\n"
    c = parse_configuration(text, BINARY)
    assert c.value_at((1, 5)) == 1
    assert c.value_at((2, 5)) == 0
    assert parse_configuration(format_configuration(c, BINARY), BINARY) == c


def test_configuration_errors():
    with pytest.raises(FormatError) as error:
        parse_configuration("dim 1\nbackground 0\ncell 1 1\ncell 1 0\n", BINARY)
    assert error.value.line == 4
    with pytest.raises(FormatError):
        parse_configuration("dim 2\nbackground-split 0 1 0\n", BINARY)
    with pytest.raises(FormatError):
        parse_configuration("dim 1\ncell 0 1\n", BINARY)


def test_pattern_with_target():
    u, target = parse_pattern("dim 1\nradius 1\nvalues 0 1 0\ntarget 1\n", BINARY)
    assert u.values.tolist() == [0, 1, 0]
    assert target == 1
    again, again_target = parse_pattern(format_pattern(u, BINARY, target), BINARY)
    assert again == u and again_target == target


def test_pattern_value_count_is_checked():
    with pytest.raises(FormatError) as error:
        parse_pattern("dim 2\nradius 1\nvalues 0 1 0\n", BINARY)
    assert error.value.line == 3


def test_orbit_image():
    c = Configuration.from_cells(1, 0, {(0,): 1})
    image = orbit_image(rules.max_rule(two_way=True), c, Window.interval(-2, 2), 2)
    assert image == "P2\n5 3\n1\n0 0 1 0 0\n0 1 1 1 0\n1 1 1 1 1\n"


def test_snapshot_rows_follow_the_second_coordinate(tmp_path):
    c = Configuration.from_cells(2, 0, {(1, 0): 1})
    image = snapshot_image(rules.ulam(), c, Window.ball(2, 1))
    assert image.splitlines() == ["P2", "3 3", "1", "0 0 0", "0 0 1", "0 0 0"]
    path = write_pgm(tmp_path / "out" / "snapshot.pgm", image)
    assert path.read_text() == image


def test_single_state_images_use_maxval_one():
    ca = rules.identity(states=("only",))
    image = orbit_image(ca, Configuration.uniform(1, 0), Window.interval(0, 1), 0)
    assert image.splitlines()[2] == "1"


def test_pattern_from_values_matches_file_order():
    u = Pattern.from_values(2, 1, range(9))
    assert u.value_at((-1, 1)) == 2
    assert u.value_at((1, -1)) == 6
    assert np.array_equal(u.values, np.arange(9).reshape(3, 3))
