"""Shrinking-zone automata: convergent rules that are not bounded-change."""
from src.szone.construction import (
    BLANK,
    BLANK_PLUS,
    ERROR,
    HEADS,
    LEFT_OF_HEAD,
    MODES,
    MOVE_LEFT,
    MOVE_RIGHT,
    RIGHT_OF_HEAD,
    SZoneRule,
    ZoneCell,
    build_f2_variant,
    build_szone,
    local_map,
    szone_tokens,
    zone_rule,
)
from src.szone.lemma import (
    Lemma1Report,
    LambdaInput,
    center_changes,
    make_lambda,
    round_trip_time,
    verify_lemma1,
    zone_widths,
)

__all__ = [
    "BLANK",
    "BLANK_PLUS",
    "ERROR",
    "HEADS",
    "LEFT_OF_HEAD",
    "MODES",
    "MOVE_LEFT",
    "MOVE_RIGHT",
    "RIGHT_OF_HEAD",
    "SZoneRule",
    "ZoneCell",
    "build_f2_variant",
    "build_szone",
    "local_map",
    "szone_tokens",
    "zone_rule",
    "Lemma1Report",
    "LambdaInput",
    "center_changes",
    "make_lambda",
    "round_trip_time",
    "verify_lemma1",
    "zone_widths",
]
