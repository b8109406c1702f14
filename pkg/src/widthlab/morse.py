"""
Morse words: the combinatorial form of a link or tangle in Morse position.

A word is read bottom to top.  Each event acts on the strands of the level
just below it, numbered 0, 1, ... from the left:

    cup p     births two strands which occupy positions p, p+1 above it
    cap p     kills the strands at positions p, p+1
    x+ p      crossing of the strands at p, p+1 (x- for the other sign)

Cups are minima and caps are maxima of the height function; crossings are
regular.  Regular levels are identified with the gaps between consecutive
events, so gap k (0 <= k <= len(events)) lies just above event k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

CUP, CAP, CROSS = "cup", "cap", "cross"
KINDS = (CUP, CAP, CROSS)
_NET = {CUP: 2, CAP: -2, CROSS: 0}

THIN, THICK, NEITHER, BOUNDARY_THIN = "thin", "thick", "neither", "boundary_thin"


class InvalidWord(ValueError):
    """Raised when an operation needs a valid word and got something else."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("; ".join(str(v) for v in report.violations))


@dataclass(frozen=True, order=True)
class Event:
    kind: str
    position: int
    sign: Optional[str] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")
        if self.kind == CROSS:
            if self.sign is None:
                object.__setattr__(self, "sign", "+")
            elif self.sign not in "+-" or len(self.sign) != 1:
                raise ValueError(f"crossing sign must be '+' or '-', got {self.sign!r}")
        elif self.sign is not None:
            raise ValueError(f"{self.kind} carries no sign")

    @property
    def is_critical(self) -> bool:
        return self.kind != CROSS

    @property
    def net(self) -> int:
        """Change in strand count across the event."""
        return _NET[self.kind]

    def __str__(self):
        if self.kind == CROSS:
            return f"x{self.sign} {self.position}"
        return f"{self.kind} {self.position}"


def cup(p: int) -> Event:
    return Event(CUP, p)


def cap(p: int) -> Event:
    return Event(CAP, p)


def cross(p: int, sign: str = "+") -> Event:
    return Event(CROSS, p, sign)


@dataclass(frozen=True)
class MorseWord:
    events: tuple[Event, ...] = ()
    bottom: int = 0
    top: int = 0

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))

    @property
    def is_link(self) -> bool:
        return self.bottom == 0 and self.top == 0

    def __len__(self):
        return len(self.events)

    def replace_events(self, events: Iterable[Event]) -> "MorseWord":
        return MorseWord(tuple(events), self.bottom, self.top)

    def __str__(self):
        body = "; ".join(str(e) for e in self.events)
        return f"[{body}] {self.bottom}/{self.top}"


@dataclass(frozen=True)
class Violation:
    index: int  # 1-based event index, 0 for the word as a whole
    message: str

    def __str__(self):
        where = f"event {self.index}" if self.index else "word"
        return f"{where}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()
    warnings: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def raise_if_invalid(self):
        if not self.ok:
            raise InvalidWord(self)


def validate(word: MorseWord) -> ValidationReport:
    violations = []
    warnings = []
    if word.bottom < 0 or word.top < 0:
        violations.append(Violation(0, "boundary strand counts must be nonnegative"))
        return ValidationReport(tuple(violations))
    n = word.bottom
    for k, ev in enumerate(word.events, 1):
        p = ev.position
        if p < 0:
            violations.append(Violation(k, f"negative position {p}"))
            return ValidationReport(tuple(violations))
        if ev.kind == CUP:
            if p > n:
                violations.append(Violation(k, f"cup position {p} exceeds strand count {n}"))
                return ValidationReport(tuple(violations))
        else:
            if n < 2:
                name = "cap" if ev.kind == CAP else "crossing"
                violations.append(Violation(k, f"{name} needs >=2 strands, level has {n}"))
                return ValidationReport(tuple(violations))
            if p > n - 2:
                violations.append(Violation(k, f"{ev.kind} position {p} out of range for {n} strands"))
                return ValidationReport(tuple(violations))
        n += ev.net
        if n == 0 and k < len(word.events) and word.is_link:
            warnings.append(Violation(k, "empty interior level: link is split"))
    if n != word.top:
        violations.append(Violation(0, f"top strand count is {n}, declared {word.top}"))
    return ValidationReport(tuple(violations), tuple(warnings))


def _require_valid(word: MorseWord):
    validate(word).raise_if_invalid()


def strand_profile(word: MorseWord) -> list[int]:
    """Strand counts n_0 ... n_len at every gap of the word."""
    _require_valid(word)
    profile = [word.bottom]
    for ev in word.events:
        profile.append(profile[-1] + ev.net)
    return profile


def critical_indices(word: MorseWord) -> list[int]:
    return [k for k, ev in enumerate(word.events, 1) if ev.is_critical]


def width(word: MorseWord) -> int:
    """Sum of strand counts over one regular level per inter-critical interval.

    Crossings are regular, so an interval runs from one cup/cap to the next
    and its count is the profile value just above the lower one.
    """
    profile = strand_profile(word)
    crit = critical_indices(word)
    return sum(profile[k] for k in crit[:-1])


@dataclass(frozen=True)
class LevelClass:
    interval: tuple[int, int]  # (lower event, upper event); 0 / len+1 are the boundary sentinels
    strand_count: int
    cls: str

    @property
    def gap(self) -> int:
        """Gap index of a representative regular level."""
        return self.interval[0]


def classify_levels(word: MorseWord) -> list[LevelClass]:
    profile = strand_profile(word)
    crit = critical_indices(word)
    kinds = {k: word.events[k - 1].kind for k in crit}
    end = len(word.events) + 1
    levels = []
    tangle = not word.is_link
    if not crit:
        if tangle:
            levels.append(LevelClass((0, end), word.bottom, NEITHER))
        return levels
    if tangle:
        cls = BOUNDARY_THIN if kinds[crit[0]] == CUP else NEITHER
        levels.append(LevelClass((0, crit[0]), word.bottom, cls))
    for lo, hi in zip(crit, crit[1:]):
        below, above = kinds[lo], kinds[hi]
        if below == CAP and above == CUP:
            cls = THIN
        elif below == CUP and above == CAP:
            cls = THICK
        else:
            cls = NEITHER
        levels.append(LevelClass((lo, hi), profile[lo], cls))
    if tangle:
        cls = BOUNDARY_THIN if kinds[crit[-1]] == CAP else NEITHER
        levels.append(LevelClass((crit[-1], end), word.top, cls))
    return levels


def thin_levels(word: MorseWord) -> list[LevelClass]:
    return [lv for lv in classify_levels(word) if lv.cls == THIN]


# -- components ---------------------------------------------------------------


class _UnionFind:
    def __init__(self):
        self.parent = []

    def make(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class Components:
    """Component labels, numbered 0, 1, ... in order of first appearance.

    ``of_event[k-1]`` is the component of event k (for a crossing, that of
    the strand entering on the left).  ``of_strand[g]`` lists the component
    of each strand at gap g.
    """

    count: int
    of_event: tuple[int, ...]
    of_strand: tuple[tuple[int, ...], ...]


def components(word: MorseWord) -> Components:
    _require_valid(word)
    uf = _UnionFind()
    strands = [uf.make() for _ in range(word.bottom)]
    levels = [list(strands)]
    raw_events = []
    for ev in word.events:
        p = ev.position
        if ev.kind == CUP:
            a = uf.make()
            strands[p:p] = [a, a]
            raw_events.append(a)
        elif ev.kind == CAP:
            uf.union(strands[p], strands[p + 1])
            raw_events.append(strands[p])
            del strands[p:p + 2]
        else:
            raw_events.append(strands[p])
            strands[p], strands[p + 1] = strands[p + 1], strands[p]
        levels.append(list(strands))
    roots = [uf.find(x) for x in range(len(uf.parent))]
    numbering: dict[int, int] = {}
    # number bottom strands first, then events bottom-up
    for x in levels[0] + raw_events:
        numbering.setdefault(roots[x], len(numbering))
    label = [numbering.get(r, -1) for r in roots]
    of_event = tuple(label[x] for x in raw_events)
    of_strand = tuple(tuple(label[x] for x in lv) for lv in levels)
    return Components(len(numbering), of_event, of_strand)


# -- braid boxes --------------------------------------------------------------


@dataclass(frozen=True)
class BraidBox:
    event_indices: tuple[int, ...]
    minima: int
    maxima: int
    lower_level: int  # gap index just below the lowest cup of the box
    upper_level: int  # gap index just above the highest cap of the box


@dataclass(frozen=True)
class BoxReport:
    boxes: tuple[BraidBox, ...]
    unboxed: tuple[int, ...]
    proper_certified: bool


def _selected_critical(word: MorseWord, subset: Optional[Iterable[int]]) -> list[int]:
    crit = critical_indices(word)
    if subset is None:
        return crit
    chosen = set(subset)
    comp = components(word).of_event
    return [k for k in crit if comp[k - 1] in chosen]


def box_report(word: MorseWord, subset: Optional[Iterable[int]] = None) -> BoxReport:
    """Group the critical events of ``subset`` (component ids) into braid boxes.

    Thin levels of the selection cut its critical sequence into runs; a
    run between two thin levels has the form cups..caps and is a box.  A
    run with no thick level (all caps at the bottom, all cups at the top)
    can only occur when the lowest event is a cap or the highest a cup,
    and its events are reported as unboxed.
    """
    _require_valid(word)
    crit = _selected_critical(word, subset)
    kinds = [word.events[k - 1].kind for k in crit]
    proper = bool(crit) and kinds[0] == CUP and kinds[-1] == CAP
    runs: list[list[int]] = []
    current: list[int] = []
    for j, k in enumerate(crit):
        if j and kinds[j - 1] == CAP and kinds[j] == CUP:
            runs.append(current)
            current = []
        current.append(k)
    if current:
        runs.append(current)
    boxes, unboxed = [], []
    for run in runs:
        run_kinds = [word.events[k - 1].kind for k in run]
        if CUP in run_kinds and CAP in run_kinds:
            boxes.append(BraidBox(
                tuple(run),
                run_kinds.count(CUP),
                run_kinds.count(CAP),
                run[0] - 1,
                run[-1],
            ))
        else:
            unboxed.extend(run)
    return BoxReport(tuple(boxes), tuple(unboxed), proper)


def braid_boxes(word: MorseWord, subset: Optional[Iterable[int]] = None) -> list[BraidBox]:
    return list(box_report(word, subset).boxes)


def proper_certified(word: MorseWord, subset: Optional[Iterable[int]] = None) -> bool:
    """Combinatorial properness proxy: lowest critical event a cup, highest a cap."""
    return box_report(word, subset).proper_certified


def word_from_events(events: Sequence[Event], bottom: int = 0, top: Optional[int] = None) -> MorseWord:
    """Build a word, inferring the top count from the events when omitted."""
    if top is None:
        top = bottom + sum(e.net for e in events)
    return MorseWord(tuple(events), bottom, top)
