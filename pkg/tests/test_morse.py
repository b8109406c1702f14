import pytest

from oracles import component_count, naive_levels, naive_width
from widthlab.corpus import all_link_words, random_link_words
from widthlab.morse import (
    BOUNDARY_THIN, NEITHER, THICK, THIN, InvalidWord, MorseWord, box_report, cap, classify_levels,
    components, cross, cup, proper_certified, strand_profile, thin_levels, validate, width, word_from_events,
)

TREFOIL = MorseWord((cup(0), cup(0), cross(1), cross(1), cross(1), cap(0), cap(0)))
STACKED = MorseWord((cup(0), cup(2), cap(1), cup(1), cap(1), cap(0)))


def test_unknot_width():
    assert width(MorseWord((cup(0), cap(0)))) == 2


def test_trefoil_profile_and_width():
    assert strand_profile(TREFOIL) == [0, 2, 4, 4, 4, 4, 2, 0]
    assert width(TREFOIL) == 8


def test_crossings_are_regular():
    bare = MorseWord((cup(0), cup(0), cap(0), cap(0)))
    assert width(bare) == width(TREFOIL)


def test_stacked_levels():
    classes = [lv.cls for lv in classify_levels(STACKED)]
    assert classes == [NEITHER, THICK, THIN, THICK, NEITHER]
    assert [lv.interval for lv in thin_levels(STACKED)] == [(3, 4)]
    assert width(STACKED) == 14


def test_tangle_boundary_levels():
    # two strands come in at the bottom and are capped off
    w = MorseWord((cup(2), cap(1), cap(0)), bottom=2, top=0)
    levels = classify_levels(w)
    assert levels[0].cls == BOUNDARY_THIN
    assert levels[-1].cls == BOUNDARY_THIN and levels[-1].strand_count == 0
    w2 = MorseWord((cap(0), cup(0)), bottom=2, top=2)
    assert [lv.cls for lv in classify_levels(w2)] == [NEITHER, THIN, NEITHER]


@pytest.mark.parametrize(
    "word, fragment",
    [
        (MorseWord((cap(0),), 0, 0), "cap needs >=2 strands, level has 0"),
        (MorseWord((cup(0), cap(1)), 0, 0), "out of range"),
        (MorseWord((cup(3),), 0, 2), "exceeds strand count"),
        (MorseWord((cup(0),), 0, 0), "top strand count is 2, declared 0"),
        (MorseWord((cup(0), cross(0)), 0, 2), None),
    ],
)
def test_validate_messages(word, fragment):
    report = validate(word)
    if fragment is None:
        assert report.ok
    else:
        assert not report.ok
        assert fragment in report.violations[0].message


def test_split_warning():
    report = validate(MorseWord((cup(0), cap(0), cup(0), cap(0))))
    assert report.ok and report.warnings


def test_invalid_word_raises():
    with pytest.raises(InvalidWord):
        width(MorseWord((cap(0),), 0, 0))


def test_event_sign_rules():
    assert cross(0).sign == "+"
    with pytest.raises(ValueError):
        cup(0).__class__("cup", 0, "+")
    with pytest.raises(ValueError):
        cup(0).__class__("twist", 0)


def test_word_from_events_infers_top():
    w = word_from_events([cup(0), cup(0)], bottom=1)
    assert w.top == 5


def test_components():
    assert components(TREFOIL).count == 1
    assert components(STACKED).count == 2
    assert components(MorseWord((cup(0), cup(2), cap(0), cap(0)))).count == 2


def test_boxes_stacked():
    rep = box_report(STACKED)
    assert [(b.minima, b.maxima) for b in rep.boxes] == [(2, 1), (1, 2)]
    assert rep.unboxed == () and rep.proper_certified


def test_boxes_unproper_tangle():
    w = MorseWord((cap(0), cup(0)), bottom=2, top=2)
    rep = box_report(w)
    assert not rep.proper_certified
    assert rep.boxes == () and rep.unboxed == (1, 2)
    assert not proper_certified(w)


def test_box_subset_by_component():
    rep = box_report(STACKED, subset=[1])
    assert [b.event_indices for b in rep.boxes] == [(4, 5)]


def test_width_matches_naive_exhaustive():
    for w in all_link_words(6):
        assert width(w) == naive_width(w.events, 0)
        assert strand_profile(w) == [len(lv) for lv in naive_levels(w.events, 0)]


def test_components_match_oracle_random():
    for w in random_link_words(300, 14, seed=7):
        assert components(w).count == component_count(w.events)
