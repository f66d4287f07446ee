"""Prediction instances of a radius-1 rule re-encoded as shrinking-zone instances."""
from src.ca import CAError, Pattern
from src.commproto.instances import SplitInstance
from src.szone import SZoneRule, ZoneCell, make_lambda, round_trip_time


def szone_reduction_instance(szone: SZoneRule, inner: SplitInstance) -> SplitInstance:
    """Seed a zone of half-width n with the inner input and run it n passes.

    Each half of the result depends only on the same half of ``inner``; the
    first layer of the answer is the inner answer (see :func:`reduced_answer`).

    Raises:
        CAError: If ``inner`` is not a 1D instance of the zone's radius-1 rule
    """
    n = inner.n
    if szone.inner.radius != 1 or inner.dimension != 1 or inner.radius != n:
        raise CAError("The reduction needs a 1D instance of a radius-1 rule")
    c = inner.joined().to_configuration(0)
    seeded = make_lambda(szone, n, c)
    steps = round_trip_time(n, n)
    return SplitInstance.from_pattern(steps, Pattern.from_configuration(seeded.realized, steps))


def reduced_answer(szone: SZoneRule, state: int) -> int:
    """Inner state read from the first layer of a zone cell."""
    token = szone.token_of(state)
    if not isinstance(token, ZoneCell):
        raise CAError(f"State {szone.ca.alphabet.name_of(state)!r} carries no inner state")
    return token.first
