"""
Height exchanges of adjacent events and the moves built from them.

Two consecutive events A (lower) and B (upper) meet at the level between
them.  On that level A occupies its output footprint and B its input
footprint, as half-open intervals of strand slots:

            output of A     input of B
    cup p   [p, p+2)        point p
    cap p   point p         [p, p+2)
    x p     [p, p+2)        [p, p+2)

The exchange is legal when the footprints do not overlap; then the two
events can slide past each other and only their positions are relabelled.
The one configuration whose left/right order is lost (a cap at gap p
followed by a cup at gap p) is resolved by putting the cup on the right,
so the mirror image [cup p; cap p+2] is not offered as an exchange.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .morse import CAP, CROSS, CUP, Event, MorseWord, strand_profile, validate, width


class IllegalExchange(ValueError):
    def __init__(self, k: int, reason: str, other: Optional[int] = None):
        self.k = k
        self.reason = reason
        self.other = other
        where = f"site {k}" if other is None else f"events {k} and {other}"
        super().__init__(f"illegal exchange at {where}: {reason}")


OVERLAP = "overlapping supports"
TORN = "support torn by renumbering"
OUT_OF_RANGE = "index out of range"


def _output(ev: Event) -> tuple[int, int]:
    p = ev.position
    return (p, p) if ev.kind == CAP else (p, p + 2)


def _input(ev: Event) -> tuple[int, int]:
    p = ev.position
    return (p, p) if ev.kind == CUP else (p, p + 2)


def _overlap(a: tuple[int, int], b: tuple[int, int]) -> bool:
    (s1, e1), (s2, e2) = a, b
    if s1 == e1 and s2 == e2:
        return False
    if s1 == e1:
        return s2 < s1 < e2
    if s2 == e2:
        return s1 < s2 < e1
    return max(s1, s2) < min(e1, e2)


def swap_events(lower: Event, upper: Event) -> tuple[Event, Event]:
    """Return (new lower, new upper) after exchanging heights, or raise.

    Raises IllegalExchange with k=0; callers fill in the site.
    """
    a_out, b_in = _output(lower), _input(upper)
    if _overlap(a_out, b_in):
        raise IllegalExchange(0, OVERLAP)
    if a_out[0] == a_out[1] and b_in[0] == b_in[1] and a_out[0] == b_in[0]:
        lower_left = True  # cap then cup at one gap: the cup goes right
    else:
        lower_left = a_out[1] <= b_in[0]
    if lower.kind == CUP and upper.kind == CAP and lower_left and a_out[1] == b_in[0]:
        # would land on the cap-then-cup tie with the cup on the left
        raise IllegalExchange(0, TORN)
    if lower_left:
        new_upper_pos = upper.position - lower.net
        new_lower_pos = lower.position
    else:
        new_upper_pos = upper.position
        new_lower_pos = lower.position + upper.net
    return (
        Event(upper.kind, new_upper_pos, upper.sign),
        Event(lower.kind, new_lower_pos, lower.sign),
    )


def exchange(word: MorseWord, k: int) -> MorseWord:
    """Swap the heights of events k and k+1 (1-based)."""
    validate(word).raise_if_invalid()
    if not 1 <= k < len(word.events):
        raise IllegalExchange(k, OUT_OF_RANGE)
    events = list(word.events)
    try:
        new_lower, new_upper = swap_events(events[k - 1], events[k])
    except IllegalExchange as exc:
        raise IllegalExchange(k, exc.reason) from None
    events[k - 1], events[k] = new_lower, new_upper
    return word.replace_events(events)


def is_legal(word: MorseWord, k: int) -> bool:
    if not 1 <= k < len(word.events):
        return False
    try:
        swap_events(word.events[k - 1], word.events[k])
    except IllegalExchange:
        return False
    return True


def legal_sites(word: MorseWord) -> list[int]:
    return [k for k in range(1, len(word.events)) if is_legal(word, k)]


def classified_delta(lower_kind: str, upper_kind: str) -> int:
    """Width change from exchanging a pair of event kinds (lower, upper)."""
    if lower_kind == CUP and upper_kind == CAP:
        return -4
    if lower_kind == CAP and upper_kind == CUP:
        return 4
    return 0


def exchange_delta(word: MorseWord, k: int) -> int:
    exchange(word, k)  # raises when illegal
    return classified_delta(word.events[k - 1].kind, word.events[k].kind)


class DeltaMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class MoveStep:
    move: str
    site: int
    predicted: int
    recomputed: int


@dataclass
class MoveTrace:
    steps: list[MoveStep] = field(default_factory=list)

    @property
    def total_delta(self) -> int:
        return sum(s.recomputed for s in self.steps)

    @property
    def predicted_total(self) -> int:
        return sum(s.predicted for s in self.steps)

    def record(self, move: str, site: int, predicted: int, recomputed: int):
        if predicted != recomputed:
            raise DeltaMismatch(f"{move} at {site}: predicted {predicted}, recomputed {recomputed}")
        self.steps.append(MoveStep(move, site, predicted, recomputed))

    def extend(self, other: "MoveTrace"):
        self.steps.extend(other.steps)

    def to_json(self) -> list[dict]:
        return [
            {"move": s.move, "site": s.site, "predicted": s.predicted, "recomputed": s.recomputed}
            for s in self.steps
        ]


def traced_exchange(word: MorseWord, k: int, trace: MoveTrace) -> MorseWord:
    predicted = classified_delta(word.events[k - 1].kind, word.events[k].kind) if 1 <= k < len(word.events) else 0
    new = exchange(word, k)
    trace.record("exchange", k, predicted, width(new) - width(word))
    return new


def replay(word: MorseWord, trace: MoveTrace) -> MorseWord:
    for step in trace.steps:
        word = exchange(word, step.site)
    return word


UP, DOWN = "up", "down"


def push_block(word: MorseWord, block: tuple[int, int], direction: str, past: int) -> tuple[MorseWord, MoveTrace]:
    """Move events block[0]..block[1] (inclusive, 1-based) as a unit.

    Pushing down past event ``past`` ends with that event just above the
    block; pushing up past ``past`` ends with it just below the block.
    """
    lo, hi = block
    n = len(word.events)
    if not 1 <= lo <= hi <= n:
        raise IllegalExchange(lo, OUT_OF_RANGE)
    trace = MoveTrace()
    if direction == DOWN:
        if not 1 <= past < lo:
            raise IllegalExchange(past, OUT_OF_RANGE)
        while lo > past:
            # the event just below the block climbs through it
            for k in range(lo - 1, hi):
                try:
                    word = traced_exchange(word, k, trace)
                except IllegalExchange as exc:
                    raise IllegalExchange(lo - 1, f"{exc.reason} (blocked by block event {k + 1})", other=k + 1) from None
            lo, hi = lo - 1, hi - 1
    elif direction == UP:
        if not hi < past <= n:
            raise IllegalExchange(past, OUT_OF_RANGE)
        while hi < past:
            for k in range(hi, lo - 1, -1):
                try:
                    word = traced_exchange(word, k, trace)
                except IllegalExchange as exc:
                    raise IllegalExchange(hi + 1, f"{exc.reason} (blocked by block event {k})", other=k) from None
            lo, hi = lo + 1, hi + 1
    else:
        raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")
    return word, trace


def is_locally_thin(word: MorseWord) -> tuple[bool, list[int]]:
    validate(word).raise_if_invalid()
    improving = [k for k in legal_sites(word) if classified_delta(word.events[k - 1].kind, word.events[k].kind) < 0]
    return not improving, improving


@dataclass(frozen=True)
class OrbitResult:
    min_width: int
    witness: MorseWord
    exhausted: bool
    states: int


def orbit_min_width(word: MorseWord, budget: int = 100_000) -> OrbitResult:
    """Breadth-first search of the exchange orbit of ``word``.

    States are deduplicated by canonical text.  The witness is the
    lexicographically least canonical text among minimum-width states, so
    the answer does not depend on the visiting order.  The result is an
    upper bound on the true width: far-commutation exchanges do not
    generate every isotopy.
    """
    from .dsl import serialize_word

    validate(word).raise_if_invalid()
    start_key = serialize_word(word)
    seen = {start_key}
    queue = deque([word])
    best = (width(word), start_key, word)
    exhausted = True
    while queue:
        current = queue.popleft()
        for k in legal_sites(current):
            nxt = exchange(current, k)
            key = serialize_word(nxt)
            if key in seen:
                continue
            if len(seen) >= budget:
                exhausted = False
                queue.clear()
                break
            seen.add(key)
            queue.append(nxt)
            cand = (width(nxt), key, nxt)
            if cand[:2] < best[:2]:
                best = cand
    return OrbitResult(best[0], best[2], exhausted, len(seen))


def profile_changes(before: MorseWord, after: MorseWord) -> list[int]:
    """Gap indices where the strand profiles of two equal-length words differ."""
    pa, pb = strand_profile(before), strand_profile(after)
    return [g for g, (x, y) in enumerate(zip(pa, pb)) if x != y]


__all__ = [
    "CAP", "CROSS", "CUP", "DOWN", "UP", "DeltaMismatch", "IllegalExchange", "MoveStep",
    "MoveTrace", "OrbitResult", "classified_delta", "exchange", "exchange_delta",
    "is_legal", "is_locally_thin", "legal_sites", "orbit_min_width", "push_block",
    "replay", "swap_events",
]
