"""
Enumerated and random corpora of words and schematics for the test suites.

Schematic enumeration covers link schematics (top counts 0/0) with every
side/kind sequence, both inside sides, and the transfer at every gap.  The
tau flags are restricted to at most one alpha max and at most one beta
critical point: the calculus reads flags only through the lowest tau alpha
max and the existence of a tau beta point, and every further flag only
removes schematics by validation.
"""

from __future__ import annotations

import random
from typing import Iterator

from .cdisk import ALPHA, BETA, COMPRESS, CUT, MAX, MIN, CDiskSchematic, SchematicEvent, transfer, validate_schematic
from .morse import Event, MorseWord, cap, cross, cup

_validate = validate_schematic.__wrapped__  # skip the memo table during enumeration


def _word_moves(n: int, remaining: int) -> list[Event]:
    out = []
    if n + 2 <= 2 * (remaining - 1):
        out.extend(cup(p) for p in range(n + 1))
    if n >= 2:
        out.extend(cap(p) for p in range(n - 1))
        if n <= 2 * (remaining - 1):
            for p in range(n - 1):
                out.append(cross(p, "+"))
                out.append(cross(p, "-"))
    return out


def all_link_words(max_events: int) -> Iterator[MorseWord]:
    """Every valid nonempty link word with at most ``max_events`` events, in a fixed order."""
    def rec(prefix, n, remaining):
        if prefix and n == 0:
            yield MorseWord(tuple(prefix), 0, 0)
        if remaining == 0:
            return
        for ev in _word_moves(n, remaining):
            prefix.append(ev)
            yield from rec(prefix, n + ev.net, remaining - 1)
            prefix.pop()

    yield from rec([], 0, max_events)


def random_link_word(rng: random.Random, max_events: int) -> MorseWord:
    length = rng.randrange(2, max_events + 1)
    while True:
        events, n = [], 0
        for remaining in range(length, 0, -1):
            choices = _word_moves(n, remaining)
            if not choices:
                break
            ev = rng.choice(choices)
            events.append(ev)
            n += ev.net
        if n == 0 and events:
            return MorseWord(tuple(events), 0, 0)


def random_link_words(count: int, max_events: int, seed: int = 0) -> list[MorseWord]:
    rng = random.Random(seed)
    return [random_link_word(rng, max_events) for _ in range(count)]


_CRIT = [SchematicEvent(k, s) for k in (MIN, MAX) for s in (ALPHA, BETA)]


def _critical_sequences(max_critical: int) -> Iterator[tuple[SchematicEvent, ...]]:
    """Side/kind sequences whose alpha and beta nets are both <= 0 (bases are solved from them)."""
    def rec(prefix, na, nb, remaining):
        # na, nb: net change so far; the rest must bring each side back down to <= 0
        if prefix and na <= 0 and nb <= 0:
            yield tuple(prefix)
        if remaining == 0:
            return
        for ev in _CRIT:
            d = 2 if ev.kind == MIN else -2
            a, b = (na + d, nb) if ev.side == ALPHA else (na, nb + d)
            if max(a, 0) + max(b, 0) > 2 * (remaining - 1):
                continue
            prefix.append(ev)
            yield from rec(prefix, a, b, remaining - 1)
            prefix.pop()

    yield from rec([], 0, 0, max_critical)


def _base(events) -> tuple[int, int]:
    a = b = 0
    for ev in events:
        if ev.kind == "transfer":
            a, b = a + 1, b - 1
        else:
            d = 2 if ev.kind == MIN else -2
            if ev.side == ALPHA:
                a += d
            else:
                b += d
    return -a, -b


def _flag(ev: SchematicEvent) -> SchematicEvent:
    return SchematicEvent(ev.kind, ev.side, True)


def all_schematics(max_events: int) -> Iterator[CDiskSchematic]:
    """Every valid link schematic in the enumerated space, in a fixed order."""
    for crit in _critical_sequences(max_events):
        for inside in (ALPHA, BETA):
            base = _base(crit)
            s = CDiskSchematic(COMPRESS, base[0], base[1], inside, crit, (0, 0))
            if _validate(s).ok:
                yield s
        if len(crit) + 1 > max_events:
            continue
        for g in range(len(crit) + 1):
            plain = list(crit[:g]) + [transfer()] + list(crit[g:])
            alpha_max = [k for k, ev in enumerate(plain) if ev.kind == MAX and ev.side == ALPHA and k > g]
            beta_crit = [k for k, ev in enumerate(plain) if ev.is_critical and ev.side == BETA and k < g]
            for ka in [None] + alpha_max:
                for kb in [None] + beta_crit:
                    events = list(plain)
                    if ka is not None:
                        events[ka] = _flag(events[ka])
                    if kb is not None:
                        events[kb] = _flag(events[kb])
                    base = _base(events)
                    for inside in (ALPHA, BETA):
                        s = CDiskSchematic(CUT, base[0], base[1], inside, tuple(events), (0, 0))
                        if _validate(s).ok:
                            yield s
