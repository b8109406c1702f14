"""
Acceptance criteria 1-10.  Each test records one PASS/FAIL line.

Word suites: every link word with <= 8 events plus 1000 random words with
<= 20 events.  Schematic suites run at <= 8 events: enumerating <= 10 took
332 s on one core during development, over the 60 s budget.
"""

import collections
import functools
import json
import itertools
import time

import pytest

from oracles import naive_width
from test_dsl import MALFORMED, _parse
from widthlab import cdisk as cd
from widthlab import presets
from widthlab.cli import main
from widthlab.corpus import all_link_words, all_schematics, random_link_words
from widthlab.dsl import ParseError, parse_schematic, parse_word, serialize_schematic, serialize_word
from widthlab.morse import CAP, CUP, box_report, components, critical_indices, strand_profile, width
from widthlab.moves import classified_delta, exchange, legal_sites
from widthlab.report import dumps

WORD_EVENTS, RANDOM_COUNT, RANDOM_EVENTS = 8, 1000, 20
SCHEMATIC_EVENTS = 8
REDUCTION = "schematic suite reduced to <=8 events (<=10 enumeration took 332 s, budget 60 s)"


@functools.cache
def word_suite():
    return tuple(all_link_words(WORD_EVENTS)) + tuple(random_link_words(RANDOM_COUNT, RANDOM_EVENTS, seed=2024))


@functools.cache
def schematic_space():
    return tuple(all_schematics(SCHEMATIC_EVENTS))


@functools.cache
def schematic_suite():
    return tuple(s for s in schematic_space() if cd.is_normalized(s))


def _cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


# 1 --------------------------------------------------------------------------

def test_01_width_fixtures(capsys, verdict):
    start = time.perf_counter()
    got = {}
    for name, expected in (("unknot", 2), ("trefoil-plat", 8), ("figure-eight-plat", 8)):
        assert width(presets.WORDS[name].word) == expected
        code, out = _cli(capsys, "orbit", "--preset", name, "--json")
        meta = json.loads(out)["meta"]
        got[name] = (code, meta["min_width"], meta["exhausted"])
    elapsed = time.perf_counter() - start
    ok = got == {"unknot": (0, 2, True), "trefoil-plat": (0, 8, True), "figure-eight-plat": (0, 8, True)} and elapsed < 10
    verdict(1, ok, f"unknot 2, trefoil 8, figure-eight 8 as exhausted orbit minima ({elapsed:.1f} s)")
    assert ok


# 2, 3 -----------------------------------------------------------------------

def test_02_exchange_delta_law(verdict):
    start = time.perf_counter()
    sites = bad = 0
    seen = set()
    for w in word_suite():
        before = width(w)
        for k in legal_sites(w):
            sites += 1
            delta = width(exchange(w, k)) - before
            seen.add(delta)
            if delta != classified_delta(w.events[k - 1].kind, w.events[k].kind):
                bad += 1
    ok = bad == 0 and seen <= {-4, 0, 4}
    verdict(2, ok, f"{sites} legal exchanges over {len(word_suite())} words, {bad} mismatches, "
                   f"deltas {sorted(seen)} ({time.perf_counter() - start:.0f} s)")
    assert ok


def _partition(word, relabel=None):
    """Component partition of the event indices, optionally renaming indices."""
    relabel = relabel or {}
    groups = collections.defaultdict(set)
    for idx, c in enumerate(components(word).of_event, 1):
        groups[c].add(relabel.get(idx, idx))
    return {frozenset(g) for g in groups.values()}


def test_03_involution_and_conservation(verdict):
    start = time.perf_counter()
    sites = bad = 0
    for w in word_suite():
        profile = strand_profile(w)
        kinds = sorted(e.kind for e in w.events)
        parts = _partition(w)
        for k in legal_sites(w):
            sites += 1
            new = exchange(w, k)
            new_profile = list(itertools.accumulate((e.net for e in new.events), initial=0))
            if (
                exchange(new, k) != w
                or sorted(e.kind for e in new.events) != kinds
                or _partition(new, {k: k + 1, k + 1: k}) != parts
                or any(new_profile[g] != profile[g] for g in range(len(profile)) if g != k)
            ):
                bad += 1
    verdict(3, bad == 0, f"{sites} sites: involution, event multiset, component partition, off-site profile; "
                         f"{bad} violations ({time.perf_counter() - start:.0f} s)")
    assert bad == 0


# 4 --------------------------------------------------------------------------

def test_04_braid_box_partition(verdict):
    certified = flagged = bad = 0
    for w in word_suite():
        rep = box_report(w)
        if not rep.proper_certified:
            flagged += 1
            if rep.boxes:
                bad += 1
            continue
        certified += 1
        covered = [k for b in rep.boxes for k in b.event_indices]
        if sorted(covered) != critical_indices(w) or rep.unboxed:
            bad += 1
            continue
        for b in rep.boxes:
            cups = [k for k in b.event_indices if w.events[k - 1].kind == CUP]
            caps = [k for k in b.event_indices if w.events[k - 1].kind == CAP]
            if cups and caps and max(cups) > min(caps):
                bad += 1
    verdict(4, bad == 0, f"{certified} proper-certified words partitioned, {flagged} flagged unproper, {bad} bad")
    assert bad == 0


# 5 --------------------------------------------------------------------------

def _fact_records(suite):
    records, illegal = [], collections.Counter()
    for s in suite:
        for fact_id, i in cd.applicable_facts(s):
            try:
                rep = cd.fact_delta(s, fact_id, i)
            except (cd.IllegalMove, cd.IllegalPipe):
                illegal[fact_id] += 1
                continue
            records.append((fact_id, rep.predicted_delta, rep.recomputed_delta))
    return records, illegal


def test_05_fact_oracle(verdict):
    start = time.perf_counter()
    records, illegal = _fact_records(schematic_suite())
    bad = sum(p != r for _, p, r in records)
    per_fact = collections.Counter(f for f, _, _ in records)
    elapsed = time.perf_counter() - start
    verdict(5, bad == 0, f"{len(records)} fact instances over {len(schematic_suite())} normalized schematics, "
                         f"{bad} mismatches; per fact {dict(sorted(per_fact.items()))}; move unavailable "
                         f"{dict(sorted(illegal.items()))}; {REDUCTION} ({elapsed:.0f} s)")
    assert bad == 0


# 6 --------------------------------------------------------------------------

def test_06_telescoping(verdict):
    checked = bad = 0
    for s in schematic_suite():
        lv = cd.alternating_levels(s)
        widths = cd.level_widths(s)
        for region in cd.region_counts(s):
            checked += 1
            upper, lower = widths[lv.gaps[region.i - 1]], widths[lv.gaps[region.i]]
            if upper - lower != 2 * (region.minima - region.maxima):
                bad += 1
    verdict(6, bad == 0, f"{checked} regions, {bad} violations; {REDUCTION}")
    assert bad == 0


# 7 --------------------------------------------------------------------------

def _completeness_scope(s):
    """True when the schematic meets the completeness hypotheses (thin alternating levels included)."""
    try:
        cd.check_theorem(s)
    except cd.NotApplicable:
        return False
    lv = cd.alternating_levels(s)
    if s.top != (0, 0) or lv.n < 1:
        return False
    a, b = cd.gap_counts(s)[lv.gaps[1]]
    return (a if s.inside == cd.ALPHA else b) >= 1


def _violates(s):
    rep = cd.check_theorem(s)
    c1, c3 = rep.conclusions[0], rep.conclusions[2]
    return not c1.holds or (c3.applies and not c3.holds)


@functools.cache
def certificate_census():
    issued = unsound = 0
    violating, uncovered = 0, []
    for s in schematic_suite():
        cert = cd.thinness_certificate(s)
        if cert is not None:
            issued += 1
            after = cert.replay()
            w0, w1 = cd.relative_width(s), cd.relative_width(after)
            if not (cd.validate_schematic(after).ok and w1 == w0 + cert.total_delta < w0):
                unsound += 1
        if _completeness_scope(s) and _violates(s):
            violating += 1
            if cert is None:
                uncovered.append(s)
    return issued, unsound, violating, tuple(uncovered)


def test_07_certificate_soundness(verdict):
    issued, unsound, _, _ = certificate_census()
    verdict(7, unsound == 0, f"soundness: {issued} certificates replay to a strictly lower-width valid schematic, "
                             f"{unsound} unsound; {REDUCTION}")
    assert unsound == 0


def _tau_in_piped_region(s):
    lv = cd.alternating_levels(s)
    regions = cd.region_counts(s)
    if lv.r >= len(regions):
        return False
    return any(s.events[k - 1].on_tau for k in regions[lv.r].events)


@pytest.mark.xfail(strict=True, reason="completeness fails when tau's beta points lie in the region Fact 3 pipes")
def test_07_certificate_completeness(verdict):
    _, _, violating, uncovered = certificate_census()
    explained = sum(_tau_in_piped_region(s) for s in uncovered)
    verdict(7, not uncovered, f"completeness: {violating} violating schematics, {len(uncovered)} without a certificate "
                              f"({explained} of them have tau beta points in the region to be piped)")
    assert not uncovered


# 8 --------------------------------------------------------------------------

def test_08_normalization(verdict):
    start = time.perf_counter()
    checked = bad = degenerate = 0
    for s in schematic_space():
        steps = [cd.normalize_first_tau_max]
        if s.disk_kind == cd.CUT:
            steps.append(cd.normalize_tau)
        for step in steps:
            try:
                once = step(s)
            except cd.NotNormalized:
                degenerate += 1
                continue
            checked += 1
            if cd.level_widths(once) != cd.level_widths(s) or step(once) != once:
                bad += 1
    verdict(8, bad == 0, f"{checked} normalizations over {len(schematic_space())} schematics preserve widths and are "
                         f"idempotent, {bad} violations, {degenerate} without a qualifying gap; {REDUCTION} "
                         f"({time.perf_counter() - start:.0f} s)")
    assert bad == 0


# 9 --------------------------------------------------------------------------

def test_09_parser(verdict):
    bad = 0
    for p in presets.WORDS.values():
        bad += parse_word(serialize_word(p.word)) != p.word
    for p in presets.SCHEMATICS.values():
        bad += parse_schematic(serialize_schematic(p.schematic)) != p.schematic
    randoms = random_link_words(1000, 20, seed=99)
    bad += sum(parse_word(serialize_word(w)) != w for w in randoms)
    spans = 0
    for kind, text, span, fragment in MALFORMED:
        try:
            _parse(kind, text)
        except ParseError as err:
            spans += (err.span.line, err.span.column, err.span.length) == span and fragment in err.message
    ok = bad == 0 and spans == len(MALFORMED) == 20
    verdict(9, ok, f"round trips: {len(presets.WORDS) + len(presets.SCHEMATICS)} presets and {len(randoms)} random "
                   f"words, {bad} failures; {spans}/20 malformed inputs with the expected span")
    assert ok


# 10 -------------------------------------------------------------------------

def _suite_report(max_events):
    words = list(all_link_words(max_events))
    deltas = collections.Counter(
        classified_delta(w.events[k - 1].kind, w.events[k].kind) for w in words for k in legal_sites(w)
    )
    schematics = [s for s in all_schematics(max_events) if cd.is_normalized(s)]
    records, illegal = _fact_records(schematics)
    certs = [c.to_json() for c in map(cd.thinness_certificate, schematics) if c is not None]
    return dumps({
        "width": None, "levels": [], "boxes": [], "moves": [], "certificate": None,
        "meta": {
            "widths": [width(w) for w in words],
            "naive": sum(naive_width(w.events, 0) for w in words),
            "deltas": {str(k): v for k, v in sorted(deltas.items())},
            "facts": records, "illegal": {str(k): v for k, v in sorted(illegal.items())},
            "certificates": certs,
        },
    })


def _clear_caches():
    for fn in (cd.validate_schematic, cd.gap_counts, cd.relative_width, cd.alternating_levels, cd.region_counts):
        fn.cache_clear()


def test_10_determinism(capsys, verdict):
    orbit = [_cli(capsys, "orbit", "--preset", name, "--json")[1]
             for name in ("trefoil-plat", "figure-eight-plat", "stacked") for _ in range(2)]
    same_orbit = all(orbit[i] == orbit[i + 1] for i in range(0, len(orbit), 2))
    first = _suite_report(6)
    _clear_caches()
    second = _suite_report(6)
    ok = same_orbit and first == second
    verdict(10, ok, f"orbit JSON byte-identical across runs: {same_orbit}; <=6-event exhaustive suite report "
                    f"({len(first)} bytes) byte-identical with caches cleared: {first == second}")
    assert ok
