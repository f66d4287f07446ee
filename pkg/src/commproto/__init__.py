"""Split-input protocols for prediction and their communication cost."""
from src.commproto.highcc import (
    HIGHCC_STATES,
    FoolingCounterexample,
    FoolingSet,
    build_highcc_rule,
    check_fooling_set,
    correct_pattern,
    mirror_candidates,
)
from src.commproto.instances import UNKNOWN, SplitInstance, bits, split_instance
from src.commproto.protocols import (
    ALICE,
    BOB,
    COUNTER,
    DIFF_REPORT,
    DIFFREPORT,
    INIT,
    TRIVIAL,
    Checkpoint,
    CurvePoint,
    ProtocolTranscript,
    Round,
    format_transcript,
    parse_transcript,
    protocol_curve,
    run_diffreport_protocol,
    run_trivial_protocol,
    write_curve,
)
from src.commproto.reduction import reduced_answer, szone_reduction_instance

__all__ = [
    "HIGHCC_STATES",
    "FoolingCounterexample",
    "FoolingSet",
    "build_highcc_rule",
    "check_fooling_set",
    "correct_pattern",
    "mirror_candidates",
    "UNKNOWN",
    "SplitInstance",
    "bits",
    "split_instance",
    "ALICE",
    "BOB",
    "COUNTER",
    "DIFF_REPORT",
    "DIFFREPORT",
    "INIT",
    "TRIVIAL",
    "Checkpoint",
    "CurvePoint",
    "ProtocolTranscript",
    "Round",
    "format_transcript",
    "parse_transcript",
    "protocol_curve",
    "run_diffreport_protocol",
    "run_trivial_protocol",
    "write_curve",
    "reduced_answer",
    "szone_reduction_instance",
]
