"""
Two-sided schematics for a thin level sphere P with a vertical c-disk.

Above P the link splits into the part alpha on one side of the disk and the
part beta on the other.  A schematic keeps only the order of critical
points above P, which side each lies on, whether it lies on the connecting
strand tau, and (for a cut-disk) the single ``transfer`` where tau passes
through the disk.  Reading upward the transfer moves one strand from beta
to alpha.

Levels are counted between critical events: critical gap g (0 <= g <= c)
lies above the g-th critical event, gap 0 being P itself.  Widths are
relative: the part of the link below P never moves and is left out.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional

from .morse import ValidationReport, Violation
from .moves import MoveTrace, classified_delta

MIN, MAX, TRANSFER = "min", "max", "transfer"
ALPHA, BETA = "alpha", "beta"
COMPRESS, CUT = "compress", "cut"


class SchematicError(ValueError):
    pass


class InvalidSchematic(SchematicError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(str(v) for v in report.violations))


class NotNormalized(SchematicError):
    pass


class NotApplicable(SchematicError):
    def __init__(self, message: str, level: Optional[int] = None):
        self.level = level
        super().__init__(message)


class IllegalPipe(SchematicError):
    pass


class IllegalMove(SchematicError):
    pass


class FactPreconditionError(SchematicError):
    pass


@dataclass(frozen=True)
class SchematicEvent:
    kind: str
    side: Optional[str] = None
    on_tau: bool = False

    @property
    def is_critical(self) -> bool:
        return self.kind != TRANSFER

    def __str__(self):
        if self.kind == TRANSFER:
            return TRANSFER
        return f"{self.kind} {self.side}" + (" tau" if self.on_tau else "")


def smin(side: str, tau: bool = False) -> SchematicEvent:
    return SchematicEvent(MIN, side, tau)


def smax(side: str, tau: bool = False) -> SchematicEvent:
    return SchematicEvent(MAX, side, tau)


def transfer() -> SchematicEvent:
    return SchematicEvent(TRANSFER)


@dataclass(frozen=True, eq=True)
class CDiskSchematic:
    disk_kind: str
    base_alpha: int
    base_beta: int
    inside: str
    events: tuple[SchematicEvent, ...] = ()
    top: Optional[tuple[int, int]] = None  # declared (alpha, beta) counts at the top, if any

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        top = None if self.top is None else tuple(self.top)
        object.__setattr__(self, "top", top)
        # memoized helpers hash schematics constantly
        object.__setattr__(self, "_hash", hash((self.disk_kind, self.base_alpha, self.base_beta, self.inside, self.events, top)))

    def __hash__(self):
        return self._hash

    @property
    def outside(self) -> str:
        return BETA if self.inside == ALPHA else ALPHA

    def with_events(self, events) -> "CDiskSchematic":
        return replace(self, events=tuple(events))


def _side_counts(s: CDiskSchematic):
    """Yield (alpha, beta) before each event and once after the last."""
    a, b = s.base_alpha, s.base_beta
    for ev in s.events:
        yield a, b
        if ev.kind == TRANSFER:
            a, b = a + 1, b - 1
        else:
            d = 2 if ev.kind == MIN else -2
            if ev.side == ALPHA:
                a += d
            else:
                b += d
    yield a, b


@lru_cache(maxsize=1 << 16)
def validate_schematic(s: CDiskSchematic) -> ValidationReport:
    bad: list[Violation] = []
    warn: list[Violation] = []
    if s.disk_kind not in (COMPRESS, CUT):
        bad.append(Violation(0, f"disk kind must be compress or cut, got {s.disk_kind!r}"))
    if s.inside not in (ALPHA, BETA):
        bad.append(Violation(0, f"inside must be alpha or beta, got {s.inside!r}"))
    if s.base_alpha < 0 or s.base_beta < 0:
        bad.append(Violation(0, "base counts must be nonnegative"))
    for k, ev in enumerate(s.events, 1):
        if ev.kind == TRANSFER:
            if ev.side is not None or ev.on_tau:
                bad.append(Violation(k, "transfer carries no side and no tau flag"))
        elif ev.kind in (MIN, MAX):
            if ev.side not in (ALPHA, BETA):
                bad.append(Violation(k, f"{ev.kind} needs a side"))
        else:
            bad.append(Violation(k, f"unknown event kind {ev.kind!r}"))
    if bad:
        return ValidationReport(tuple(bad))
    transfers = [k for k, ev in enumerate(s.events, 1) if ev.kind == TRANSFER]
    if s.disk_kind == CUT and len(transfers) != 1:
        bad.append(Violation(0, f"cut-disk needs exactly one transfer, found {len(transfers)}"))
    if s.disk_kind == COMPRESS:
        for k in transfers:
            bad.append(Violation(k, "compressing disk has no transfer"))
        for k, ev in enumerate(s.events, 1):
            if ev.on_tau:
                bad.append(Violation(k, "compressing disk has no tau"))
    t = transfers[0] if len(transfers) == 1 and s.disk_kind == CUT else None
    counts = list(_side_counts(s))
    for k, ev in enumerate(s.events, 1):
        a, b = counts[k - 1]
        if ev.kind == MAX:
            have = a if ev.side == ALPHA else b
            if have < 2:
                bad.append(Violation(k, f"max {ev.side} needs >=2 {ev.side} strands, level has {have}"))
        elif ev.kind == TRANSFER and b < 1:
            bad.append(Violation(k, "transfer needs a beta strand"))
        if t is not None and ev.on_tau:
            if ev.side == ALPHA and k < t:
                bad.append(Violation(k, "tau on the alpha side lies above the transfer"))
            if ev.side == BETA and k > t:
                bad.append(Violation(k, "tau on the beta side lies below the transfer"))
    if t is not None:
        for k in range(t):
            if counts[k][1] < 1:
                bad.append(Violation(k, "tau meets every level below the transfer on the beta side"))
                break
    for k, (a, b) in enumerate(counts):
        if a < 0 or b < 0:
            bad.append(Violation(k, f"negative strand count ({a}, {b})"))
            break
        if 0 < k < len(s.events) and a + b == 0:
            warn.append(Violation(k, "empty level above P: schematic is split"))
    if s.top is not None and counts[-1] != tuple(s.top):
        bad.append(Violation(0, f"top counts are {counts[-1]}, declared {tuple(s.top)}"))
    return ValidationReport(tuple(bad), tuple(warn))


def _require_valid(s: CDiskSchematic):
    report = validate_schematic(s)
    if not report.ok:
        raise InvalidSchematic(report)


# -- levels and widths ----------------------------------------------------------


def critical_positions(s: CDiskSchematic) -> list[int]:
    """1-based list index of each critical event, in order."""
    return [k for k, ev in enumerate(s.events, 1) if ev.is_critical]


def transfer_index(s: CDiskSchematic) -> Optional[int]:
    for k, ev in enumerate(s.events, 1):
        if ev.kind == TRANSFER:
            return k
    return None


def transfer_gap(s: CDiskSchematic) -> Optional[int]:
    t = transfer_index(s)
    if t is None:
        return None
    return sum(1 for ev in s.events[:t - 1] if ev.is_critical)


@lru_cache(maxsize=1 << 16)
def gap_counts(s: CDiskSchematic) -> tuple[tuple[int, int], ...]:
    """(alpha, beta) at every critical gap, read just above its lower critical event."""
    counts = list(_side_counts(s))
    out = [counts[0]]
    for k in critical_positions(s):
        out.append(counts[k])
    return tuple(out)


def level_widths(s: CDiskSchematic) -> tuple[int, ...]:
    return tuple(a + b for a, b in gap_counts(s))


@lru_cache(maxsize=1 << 16)
def relative_width(s: CDiskSchematic) -> int:
    """One level per interval between consecutive critical values above P.

    The interval containing P contributes w(P); the region above the last
    critical event is not an interval.
    """
    widths = level_widths(s)
    return sum(widths[:-1])


def _sides(s: CDiskSchematic) -> list[str]:
    return [ev.side for ev in s.events if ev.is_critical]


def _kinds(s: CDiskSchematic) -> list[str]:
    return [ev.kind for ev in s.events if ev.is_critical]


@dataclass(frozen=True)
class AlternatingLevels:
    gaps: tuple[int, ...]  # critical gaps of S_0, S_1, ..., S_n (top to bottom)
    r: Optional[int]

    @property
    def n(self) -> int:
        return len(self.gaps) - 1

    def index_of_gap(self, g: int) -> Optional[int]:
        try:
            return self.gaps.index(g)
        except ValueError:
            return None


def _alternating_gaps(s: CDiskSchematic) -> tuple[int, ...]:
    sides = _sides(s)
    c = len(sides)
    inside = [j for j in range(1, c + 1) if sides[j - 1] == s.inside]
    top = inside[-1] if inside else 0
    gaps = {0, top}
    for g in range(1, top):
        if sides[g - 1] != sides[g]:
            gaps.add(g)
    return tuple(sorted(gaps, reverse=True))


def _qualifies(s: CDiskSchematic, g: int) -> bool:
    """Critical event above g is alpha (or none) and the one below is beta (or P)."""
    sides = _sides(s)
    below_ok = g == 0 or sides[g - 1] == BETA
    above_ok = g == len(sides) or sides[g] == ALPHA
    return below_ok and above_ok


@lru_cache(maxsize=1 << 16)
def alternating_levels(s: CDiskSchematic) -> AlternatingLevels:
    _require_valid(s)
    gaps = _alternating_gaps(s)
    if s.disk_kind == COMPRESS:
        return AlternatingLevels(gaps, len(gaps) - 1)
    g = transfer_gap(s)
    if g not in gaps or not _qualifies(s, g):
        raise NotNormalized(
            f"transfer sits in critical gap {g}, which is not an alternating level with "
            "beta below and alpha above; run normalize_tau first"
        )
    return AlternatingLevels(gaps, gaps.index(g))


def _move_transfer(s: CDiskSchematic, g: int) -> CDiskSchematic:
    rest = [ev for ev in s.events if ev.kind != TRANSFER]
    crit_seen = 0
    out = []
    if g == 0:
        out.append(transfer())
    for ev in rest:
        out.append(ev)
        crit_seen += 1
        if crit_seen == g:
            out.append(transfer())
    return s.with_events(out)


def normalize_tau(s: CDiskSchematic) -> CDiskSchematic:
    """Slide the transfer horizontally into the alternating level S_r.

    The critical sequence is untouched, so every level width is unchanged.
    Candidates are tried nearest first, the higher one winning a tie.
    """
    _require_valid(s)
    if s.disk_kind != CUT:
        raise NotNormalized("no tau to normalize: compressing disk")
    gaps = _alternating_gaps(s)
    current = transfer_gap(s)
    qualifying = [g for g in gaps if _qualifies(s, g)]
    if current in qualifying:
        moved = _move_transfer(s, current)
        return moved if validate_schematic(moved).ok else s
    for g in sorted(qualifying, key=lambda g: (abs(g - current), -g)):
        moved = _move_transfer(s, g)
        if validate_schematic(moved).ok:
            return moved
    raise NotNormalized("no alternating level has beta below and alpha above; degenerate schematic")


def _alpha_after(s: CDiskSchematic, k: int) -> list[int]:
    return [j for j in range(k + 1, len(s.events) + 1)
            if s.events[j - 1].is_critical and s.events[j - 1].side == ALPHA]


def first_tau_max(s: CDiskSchematic) -> Optional[int]:
    for k, ev in enumerate(s.events, 1):
        if ev.kind == MAX and ev.side == ALPHA and ev.on_tau:
            return k
    return None


def _max_run_below_r(s: CDiskSchematic, start: int) -> list[int]:
    """Alpha maxima from ``start`` up to the last one below R."""
    run = [start]
    for j in _alpha_after(s, start):
        if s.events[j - 1].kind != MAX:
            break
        run.append(j)
    return run


def r_level(s: CDiskSchematic) -> int:
    """Critical gap of R, the lowest thin level of alpha above the first tau max."""
    k = first_tau_max(s)
    crit = critical_positions(s)
    if k is None:
        return len(crit)
    run = _max_run_below_r(s, k)
    nxt = _alpha_after(s, run[-1])
    if not nxt:
        return len(crit)
    return crit.index(run[-1]) + 1


def designated_tau_max(s: CDiskSchematic) -> Optional[int]:
    """The alpha max directly below R once the first tau max has been raised there."""
    k = first_tau_max(s)
    if k is None:
        return None
    return _max_run_below_r(s, k)[-1]


def normalize_first_tau_max(s: CDiskSchematic) -> CDiskSchematic:
    """Make the first tau max of alpha the highest alpha max below R.

    Only alpha maxima trade heights, which leaves every width alone; on the
    schematic this is a rotation of the tau flags along that run of maxima.
    """
    _require_valid(s)
    k = first_tau_max(s)
    if k is None:
        return s
    run = _max_run_below_r(s, k)
    flags = [s.events[j - 1].on_tau for j in run]
    if flags[-1]:
        return s
    flags = flags[1:] + flags[:1]
    events = list(s.events)
    for j, flag in zip(run, flags):
        events[j - 1] = replace(events[j - 1], on_tau=flag)
    return s.with_events(events)


def normalize(s: CDiskSchematic) -> CDiskSchematic:
    if s.disk_kind == CUT:
        s = normalize_tau(s)
    return normalize_first_tau_max(s)


def is_normalized(s: CDiskSchematic) -> bool:
    try:
        return normalize(s) == s
    except NotNormalized:
        return False


# -- regions ------------------------------------------------------------------------


@dataclass(frozen=True)
class Region:
    i: int
    side: str
    maxima: int
    minima: int
    events: tuple[int, ...]  # 1-based list indices of its critical events

    def counts(self, side: str) -> tuple[int, int]:
        """(M, m) of ``side`` in this region; zero for the inactive side."""
        return (self.maxima, self.minima) if side == self.side else (0, 0)


@lru_cache(maxsize=1 << 16)
def region_counts(s: CDiskSchematic) -> tuple[Region, ...]:
    levels = alternating_levels(s)
    crit = critical_positions(s)
    kinds, sides = _kinds(s), _sides(s)
    regions = []
    for i in range(1, levels.n + 1):
        lo, hi = levels.gaps[i], levels.gaps[i - 1]
        js = range(lo + 1, hi + 1)
        region_sides = {sides[j - 1] for j in js}
        if len(region_sides) != 1:
            raise AssertionError(f"region {i} has critical events on both sides")
        regions.append(Region(
            i,
            region_sides.pop(),
            sum(1 for j in js if kinds[j - 1] == MAX),
            sum(1 for j in js if kinds[j - 1] == MIN),
            tuple(crit[j - 1] for j in js),
        ))
    return tuple(regions)


# -- moves ----------------------------------------------------------------------------

_AS_WORD_KIND = {MIN: "cup", MAX: "cap", TRANSFER: "cross"}


def swap_delta(lower: SchematicEvent, upper: SchematicEvent) -> int:
    return classified_delta(_AS_WORD_KIND[lower.kind], _AS_WORD_KIND[upper.kind])


def swap(s: CDiskSchematic, k: int) -> CDiskSchematic:
    """Exchange the heights of events k and k+1 (1-based).

    Critical points on opposite sides of the disk move independently; two
    on the same side may share a strand, which a schematic cannot see, so
    that exchange is refused.  The result must still be a valid schematic.
    """
    if not 1 <= k < len(s.events):
        raise IllegalMove(f"swap site {k} out of range")
    a, b = s.events[k - 1], s.events[k]
    if a.is_critical and b.is_critical and a.side == b.side:
        raise IllegalMove(f"events {k} and {k + 1} are both on the {a.side} side")
    events = list(s.events)
    events[k - 1], events[k] = b, a
    out = s.with_events(events)
    report = validate_schematic(out)
    if not report.ok:
        raise IllegalMove(f"swap at {k} breaks the schematic: {report.violations[0]}")
    return out


def traced_swap(s: CDiskSchematic, k: int, trace: MoveTrace) -> CDiskSchematic:
    predicted = swap_delta(s.events[k - 1], s.events[k]) if 1 <= k < len(s.events) else 0
    new = swap(s, k)
    trace.record("swap", k, predicted, relative_width(new) - relative_width(s))
    return new


def replay_schematic(s: CDiskSchematic, trace: MoveTrace) -> CDiskSchematic:
    for step in trace.steps:
        s = swap(s, step.site)
    return s


def move_block(s: CDiskSchematic, block: tuple[int, int], direction: str, past: int) -> tuple[CDiskSchematic, MoveTrace]:
    """Move events block[0]..block[1] (1-based, inclusive) as a unit.

    Same conventions as the word version: going down, event ``past`` ends
    just above the block; going up, it ends just below.  An empty block
    (hi == lo - 1) is the identity.
    """
    lo, hi = block
    trace = MoveTrace()
    if hi == lo - 1:
        return s, trace
    n = len(s.events)
    if not 1 <= lo <= hi <= n:
        raise IllegalMove(f"block {block} out of range")
    if direction == "down":
        if not 1 <= past < lo:
            raise IllegalMove(f"cannot push block {block} down past event {past}")
        while lo > past:
            for k in range(lo - 1, hi):
                s = traced_swap(s, k, trace)
            lo, hi = lo - 1, hi - 1
    elif direction == "up":
        if not hi < past <= n:
            raise IllegalMove(f"cannot push block {block} up past event {past}")
        while hi < past:
            for k in range(hi, lo - 1, -1):
                s = traced_swap(s, k, trace)
            lo, hi = lo + 1, hi + 1
    else:
        raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")
    return s, trace


def _index_after_gap(s: CDiskSchematic, g: int) -> int:
    """List index of the last event strictly below critical event g+1."""
    crit = critical_positions(s)
    return crit[g] - 1 if g < len(crit) else len(s.events)


def pipe(s: CDiskSchematic, block: tuple[int, int], target_gap: int) -> tuple[CDiskSchematic, MoveTrace]:
    """Carry a block of beta events up along tau to just below critical gap ``target_gap``.

    On the schematic this is the same sequence of exchanges as a push-up;
    what the move adds is permission to take beta through the transfer.
    It is provided only up to R.
    """
    _require_valid(s)
    if s.disk_kind != CUT:
        raise IllegalPipe("piping needs a cut-disk")
    lo, hi = block
    if hi == lo - 1:
        return s, MoveTrace()
    if not 1 <= lo <= hi <= len(s.events):
        raise IllegalPipe(f"block {block} out of range")
    for k in range(lo, hi + 1):
        ev = s.events[k - 1]
        if ev.kind == TRANSFER or ev.side != BETA:
            raise IllegalPipe(f"event {k} is not a beta critical point")
    t = transfer_index(s)
    if hi > t:
        raise IllegalPipe("the block must lie below the transfer")
    if any(s.events[k - 1].on_tau for k in range(lo, hi + 1)):
        # where tau would cross the disk afterwards is not determined by the schematic
        raise IllegalPipe("the block holds critical points of tau itself; that pipe is not modelled")
    if target_gap > r_level(s):
        raise IllegalPipe("piping above the first maximum's thin level is not an available move")
    past = _index_after_gap(s, target_gap)
    if past <= hi:
        raise IllegalPipe(f"target gap {target_gap} is not above the block")
    try:
        return move_block(s, block, "up", past)
    except IllegalMove as exc:
        raise IllegalPipe(str(exc)) from None


# -- facts ----------------------------------------------------------------------------


@dataclass(frozen=True)
class FactReport:
    fact_id: int
    i: int
    counts: dict
    predicted_delta: int
    recomputed_delta: int
    move: MoveTrace
    before: CDiskSchematic
    after: CDiskSchematic

    @property
    def agrees(self) -> bool:
        return self.predicted_delta == self.recomputed_delta

    def to_json(self) -> dict:
        return {
            "fact": self.fact_id,
            "region": self.i,
            "counts": dict(self.counts),
            "predicted": self.predicted_delta,
            "recomputed": self.recomputed_delta,
            "moves": self.move.to_json(),
        }


def _region_range(region: Region) -> tuple[int, int]:
    return region.events[0], region.events[-1]


def _region_of_event(regions, k: int) -> Optional[int]:
    for reg in regions:
        if k in reg.events:
            return reg.i
    return None


def applicable_facts(s: CDiskSchematic) -> list[tuple[int, int]]:
    """(fact_id, i) pairs whose preconditions hold, in scan order."""
    levels = alternating_levels(s)
    regions = region_counts(s)
    out = []
    for reg in regions:
        i = reg.i
        if i + 1 > levels.n:
            continue
        if s.disk_kind == CUT and i == levels.r:
            if first_tau_max(s) is not None and _region_of_event(regions, first_tau_max(s)) == i:
                out.append((4, i))
            else:
                out.append((3, i))
        elif reg.side == BETA:
            out.append((1, i))
        else:
            out.append((2, i))
    return out


def fact_delta(s: CDiskSchematic, fact_id: int, i: int) -> FactReport:
    levels = alternating_levels(s)
    regions = region_counts(s)
    if not 1 <= i < levels.n:
        raise FactPreconditionError(f"region {i} has no region below it")
    upper, lower = regions[i - 1], regions[i]
    Ma, ma = upper.counts(ALPHA) if upper.side == ALPHA else lower.counts(ALPHA)
    Mb, mb = upper.counts(BETA) if upper.side == BETA else lower.counts(BETA)
    counts = {"M_alpha": Ma, "m_alpha": ma, "M_beta": Mb, "m_beta": mb}
    at_r = s.disk_kind == CUT and i == levels.r
    if fact_id in (1, 2):
        side = BETA if fact_id == 1 else ALPHA
        if upper.side != side:
            raise FactPreconditionError(f"Fact {fact_id} needs a {side} region at {i}")
        if at_r:
            raise FactPreconditionError(f"Fact {fact_id} does not apply at r = {i}; the transfer sits below it")
        # the upper block slides down past the lower region
        M_up, m_up = upper.maxima, upper.minima
        M_lo, m_lo = lower.maxima, lower.minima
        predicted = 4 * (m_up * M_lo - M_up * m_lo)
        after, trace = move_block(s, _region_range(upper), "down", lower.events[0])
        return FactReport(fact_id, i, counts, predicted, trace.total_delta, trace, s, after)
    if fact_id not in (3, 4):
        raise ValueError(f"fact_id must be 1..4, got {fact_id}")
    if not at_r or i == 0:
        raise FactPreconditionError(f"Fact {fact_id} applies only at region r of a cut-disk with r != 0")
    dmax = first_tau_max(s)
    in_r = dmax is not None and dmax in upper.events
    if fact_id == 3:
        if in_r:
            raise FactPreconditionError("Fact 3 needs the first tau max outside region r")
        predicted = 4 * (Mb * ma - mb * Ma)
        after, trace = pipe(s, _region_range(lower), levels.gaps[i - 1])
        return FactReport(3, i, counts, predicted, trace.total_delta, trace, s, after)
    if not in_r:
        raise FactPreconditionError("Fact 4 needs the first tau max inside region r")
    if designated_tau_max(s) != dmax:
        raise NotNormalized("the first tau max is not yet the highest alpha max below R; run normalize_first_tau_max")
    below = [k for k in upper.events if k <= dmax]
    above = [k for k in upper.events if k > dmax]
    kinds = {k: s.events[k - 1].kind for k in upper.events}
    counts.update({
        "M_alpha_minus": sum(1 for k in below if kinds[k] == MAX),
        "m_alpha_minus": sum(1 for k in below if kinds[k] == MIN),
        "M_alpha_plus": sum(1 for k in above if kinds[k] == MAX),
        "m_alpha_plus": sum(1 for k in above if kinds[k] == MIN),
    })
    predicted = 4 * (Mb * ma + counts["m_alpha_plus"] - mb * (Ma - 1))
    crit = critical_positions(s)
    lo, hi = _region_range(lower)
    mid, trace = pipe(s, (lo, hi), crit.index(dmax))
    # the piped block now sits directly under dmax, whose index is unchanged
    size = hi - lo + 1
    after = mid
    if above:
        after, second = move_block(mid, (dmax - size, dmax), "up", upper.events[-1])
        trace.extend(second)
    return FactReport(4, i, counts, predicted, trace.total_delta, trace, s, after)


# -- theorem and width chain ---------------------------------------------------------


def _check_thin_alternating(s: CDiskSchematic, levels: AlternatingLevels):
    kinds = _kinds(s)
    c = len(kinds)
    for idx, g in enumerate(levels.gaps):
        if g == 0:
            if c and kinds[0] != MIN:
                raise NotApplicable("P is not thin: the first critical point above it is a max", idx)
            continue
        if kinds[g - 1] != MAX or (g < c and kinds[g] != MIN):
            raise NotApplicable(f"alternating level S_{idx} (critical gap {g}) is not thin", idx)


def thin_alternating(s: CDiskSchematic) -> Optional[int]:
    """Index of the first non-thin alternating level, or None."""
    try:
        _check_thin_alternating(s, alternating_levels(s))
    except NotApplicable as exc:
        return exc.level
    return None


def _theorem_setup(s: CDiskSchematic):
    _require_valid(s)
    if not is_normalized(s):
        raise NotNormalized("schematic is not normalized; run normalize first")
    levels = alternating_levels(s)
    _check_thin_alternating(s, levels)
    return levels, region_counts(s)


@dataclass(frozen=True)
class Conclusion:
    number: int
    applies: bool
    holds: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"conclusion": self.number, "applies": self.applies, "holds": self.holds, "detail": self.detail}


@dataclass(frozen=True)
class TheoremReport:
    n: int
    r: int
    case: Optional[str]
    regions: tuple[Region, ...]
    conclusions: tuple[Conclusion, ...]
    equality_at_1: bool = False
    decomposing_proxy: bool = False

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.conclusions if c.applies)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "case": self.case,
            "regions": [[g.i, g.side, g.maxima, g.minima] for g in self.regions],
            "conclusions": [c.to_json() for c in self.conclusions],
            "holds": self.holds,
        }


def _strict_from(Mm: dict[int, tuple[int, int]], start: int, n: int) -> list[int]:
    return [i for i in range(start, n + 1) if not Mm[i][0] > Mm[i][1]]


def check_theorem(s: CDiskSchematic) -> TheoremReport:
    levels, regions = _theorem_setup(s)
    n, r = levels.n, levels.r
    Mm = {g.i: (g.maxima, g.minima) for g in regions}
    out = []
    bad = [i for i in range(1, min(r, n) + 1) if not Mm[i][0] > Mm[i][1]]
    out.append(Conclusion(1, True, not bad, f"M_i <= m_i at i = {bad}" if bad else ""))

    inside_at_1 = 0
    equality = proxy = False
    if r == 0 and n >= 1:
        a, b = gap_counts(s)[levels.gaps[1]]
        inside_at_1 = a if s.inside == ALPHA else b
        equality = Mm[1][0] == Mm[1][1]
        proxy = inside_at_1 == 1
        ok = Mm[1][0] >= Mm[1][1] and equality == proxy
        out.append(Conclusion(2, True, ok, f"M_1={Mm[1][0]}, m_1={Mm[1][1]}, inside strands at S_1={inside_at_1}"))
    else:
        out.append(Conclusion(2, False, True))

    dmax = first_tau_max(s)
    regions_by_i = {g.i: g for g in regions}
    tau_in_r = r >= 1 and dmax is not None and r in regions_by_i and dmax in regions_by_i[r].events
    case = None
    if r != 0:
        case = "4a" if tau_in_r else "3a"
    elif n >= 1:
        case = "3b" if Mm[1][0] > Mm[1][1] else ("4b" if Mm[1][0] == Mm[1][1] else None)

    if case in ("3a", "3b"):
        bad = _strict_from(Mm, 1, n)
        out.append(Conclusion(3, True, not bad, f"M_i <= m_i at i = {bad}" if bad else ""))
    else:
        out.append(Conclusion(3, False, True))
    if case in ("4a", "4b"):
        weak = [i for i in range(r + 1, n + 1) if Mm[i][0] < Mm[i][1]]
        firsts = [j for j in range(r + 1, n + 1) if Mm[j][0] > Mm[j][1]]
        strict_bad = _strict_from(Mm, firsts[0], n) if firsts else []
        detail = []
        if weak:
            detail.append(f"M_i < m_i at i = {weak}")
        if strict_bad:
            detail.append(f"strictness not propagated at i = {strict_bad}")
        out.append(Conclusion(4, True, not weak and not strict_bad, "; ".join(detail)))
    else:
        out.append(Conclusion(4, False, True))
    return TheoremReport(n, r, case, tuple(regions), tuple(out), equality, proxy)


@dataclass(frozen=True)
class ChainStep:
    i: int
    upper: int  # w(S_{i-1})
    lower: int  # w(S_i)
    required: str  # "<" or "<="
    holds: bool
    identity: bool


@dataclass(frozen=True)
class ChainReport:
    widths: tuple[int, ...]  # w(S_0), ..., w(S_n)
    r: int
    steps: tuple[ChainStep, ...]

    @property
    def holds(self) -> bool:
        return all(st.holds for st in self.steps)

    @property
    def identity_holds(self) -> bool:
        return all(st.identity for st in self.steps)

    def to_json(self) -> dict:
        return {
            "widths": list(self.widths),
            "r": self.r,
            "holds": self.holds,
            "identity": self.identity_holds,
            "steps": [
                {"i": st.i, "upper": st.upper, "lower": st.lower, "required": st.required,
                 "holds": st.holds, "identity": st.identity}
                for st in self.steps
            ],
        }


def check_width_chain(s: CDiskSchematic) -> ChainReport:
    """w(S_0) < ... < w(S_r) <= w(S_{r+1}) <= ... <= w(P), strict again after a strict step past r.

    Each step is also checked against w(S_{i-1}) - w(S_i) = 2(m_i - M_i).
    """
    levels, regions = _theorem_setup(s)
    lw = level_widths(s)
    widths = tuple(lw[g] for g in levels.gaps)
    steps = []
    strict_again = False
    for reg in regions:
        i = reg.i
        up, lo = widths[i - 1], widths[i]
        if i <= levels.r or strict_again:
            required, ok = "<", up < lo
        else:
            required, ok = "<=", up <= lo
            if up < lo:
                strict_again = True
        steps.append(ChainStep(i, up, lo, required, ok, up - lo == 2 * (reg.minima - reg.maxima)))
    return ChainReport(widths, levels.r, tuple(steps))


# -- certificates ----------------------------------------------------------------------


def possibly_fake(s: CDiskSchematic) -> bool:
    """Heuristic: tau's beta arc has no critical points and starts from one beta strand."""
    if s.disk_kind != CUT:
        return False
    tau_beta = any(ev.on_tau and ev.side == BETA for ev in s.events)
    return not tau_beta and s.base_beta == 1


@dataclass(frozen=True)
class Certificate:
    fact: FactReport
    possibly_fake: bool

    @property
    def trace(self) -> MoveTrace:
        return self.fact.move

    @property
    def total_delta(self) -> int:
        return self.fact.move.total_delta

    def replay(self) -> CDiskSchematic:
        return replay_schematic(self.fact.before, self.fact.move)

    def to_json(self) -> dict:
        out = self.fact.to_json()
        out["total_delta"] = self.total_delta
        out["possibly_fake"] = self.possibly_fake
        return out


def thinness_certificate(s: CDiskSchematic) -> Optional[Certificate]:
    """First Fact move (top region first) that lowers the width, if any."""
    _require_valid(s)
    if not is_normalized(s):
        raise NotNormalized("schematic is not normalized; run normalize first")
    for fact_id, i in applicable_facts(s):
        try:
            report = fact_delta(s, fact_id, i)
        except (IllegalMove, IllegalPipe):
            continue
        if report.recomputed_delta < 0:
            return Certificate(report, possibly_fake(s))
    return None


# -- projection from words ------------------------------------------------------------


class LabelingError(SchematicError):
    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(f"event {index}: {message}" if index else message)


def _label(entry):
    if entry is None:
        return None, False
    if isinstance(entry, str):
        return entry, False
    side, tau = entry
    return side, bool(tau)


def to_schematic(word, labeling, P: int, inside: str = ALPHA, transfer_at: Optional[int] = None,
                 top: Optional[tuple[int, int]] = None) -> CDiskSchematic:
    """Project the part of ``word`` above gap P onto a schematic.

    ``labeling`` has one entry per event: a side, a (side, on_tau) pair, or
    None for crossings.  ``transfer_at`` is the gap of the word where tau
    passes through the disk (cut-disks only).  Base counts at P are solved
    from the top counts, (0, 0) for a link.
    """
    from .morse import components, strand_profile

    profile = strand_profile(word)
    if not 0 <= P <= len(word.events):
        raise LabelingError(0, f"P must be a gap 0..{len(word.events)}")
    if len(labeling) != len(word.events):
        raise LabelingError(0, f"labeling has {len(labeling)} entries for {len(word.events)} events")
    if top is None:
        if word.top:
            raise LabelingError(0, "tangle words need declared top counts")
        top = (0, 0)
    comp = components(word).of_event
    tau_comp = None
    sides_of: dict[int, str] = {}
    events = []
    for k in range(P + 1, len(word.events) + 1):
        ev = word.events[k - 1]
        if transfer_at is not None and k - 1 == transfer_at:
            events.append(transfer())
        if not ev.is_critical:
            continue
        side, tau = _label(labeling[k - 1])
        if side not in (ALPHA, BETA):
            raise LabelingError(k, f"critical event needs a side, got {side!r}")
        c = comp[k - 1]
        if tau:
            if tau_comp is not None and tau_comp != c:
                raise LabelingError(k, "tau spans more than one component")
            tau_comp = c
        events.append(SchematicEvent(MIN if ev.kind == "cup" else MAX, side, tau))
    if transfer_at is not None and transfer_at == len(word.events):
        events.append(transfer())
    for k in range(P + 1, len(word.events) + 1):
        ev = word.events[k - 1]
        if not ev.is_critical:
            continue
        c = comp[k - 1]
        side, _ = _label(labeling[k - 1])
        if c == tau_comp:
            continue
        if sides_of.setdefault(c, side) != side:
            raise LabelingError(k, f"component {c} has critical points on both sides")
    net_a = sum((2 if ev.kind == MIN else -2) for ev in events if ev.is_critical and ev.side == ALPHA)
    net_t = sum(1 for ev in events if ev.kind == TRANSFER)
    base_a = top[0] - net_a - net_t
    base_b = profile[P] - base_a
    s = CDiskSchematic(CUT if transfer_at is not None else COMPRESS, base_a, base_b, inside, tuple(events), top)
    report = validate_schematic(s)
    if not report.ok:
        v = report.violations[0]
        raise LabelingError(0, f"labeling gives an invalid schematic: {v}")
    return s
