"""Example rules, rule transformers, tile systems and the named-rule catalogue."""
from src.zoo.atam import (
    AtamSystem,
    Glue,
    Tile,
    atam_step,
    atam_to_ca,
    format_tiles,
    load_tiles,
    parse_tiles,
    terminal_assemblies,
    toy_system,
)
from src.zoo.registry import (
    BOUNDED_CHANGE,
    CONVERGENT,
    FREEZING,
    NONE,
    ZOO,
    ZooEntry,
    build_named,
    check_bounded_change_samples,
    check_convergent_samples,
    emit,
    get_entry,
    list_entries,
    sample_configurations,
)
from src.zoo.rules import (
    constant,
    freeze_under_order,
    game_of_life,
    halting_columns,
    identity,
    life_without_death,
    line_lift,
    max_rule,
    nonfreezing_example,
    product,
    shift,
    sir,
    threshold_growth,
    ulam,
    ulam1d,
    vertical_min,
)

__all__ = [
    "AtamSystem",
    "Glue",
    "Tile",
    "atam_step",
    "atam_to_ca",
    "format_tiles",
    "load_tiles",
    "parse_tiles",
    "terminal_assemblies",
    "toy_system",
    "BOUNDED_CHANGE",
    "CONVERGENT",
    "FREEZING",
    "NONE",
    "ZOO",
    "ZooEntry",
    "build_named",
    "check_bounded_change_samples",
    "check_convergent_samples",
    "emit",
    "get_entry",
    "list_entries",
    "sample_configurations",
    "constant",
    "freeze_under_order",
    "game_of_life",
    "halting_columns",
    "identity",
    "life_without_death",
    "line_lift",
    "max_rule",
    "nonfreezing_example",
    "product",
    "shift",
    "sir",
    "threshold_growth",
    "ulam",
    "ulam1d",
    "vertical_min",
]
