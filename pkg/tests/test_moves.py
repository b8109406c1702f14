import pytest
from hypothesis import given, settings, strategies as st

from oracles import bracket, determinant, naive_width
from widthlab import presets
from widthlab.corpus import all_link_words, random_link_word
from widthlab.morse import MorseWord, cap, components, cross, cup, strand_profile, width
from widthlab.moves import (
    OVERLAP, TORN, DeltaMismatch, IllegalExchange, MoveTrace, classified_delta, exchange, exchange_delta,
    is_locally_thin, legal_sites, orbit_min_width, profile_changes, push_block, replay, traced_exchange,
)

NESTED = MorseWord((cup(0), cup(2), cap(0), cap(0)))
SPLIT = MorseWord((cup(0), cap(0), cup(0), cap(0)))


def test_exchange_example():
    assert exchange(NESTED, 2) == SPLIT
    assert exchange_delta(NESTED, 2) == -4
    assert exchange_delta(SPLIT, 2) == 4
    assert exchange(SPLIT, 2) == NESTED


def test_overlap_illegal():
    with pytest.raises(IllegalExchange) as info:
        exchange(MorseWord((cup(0), cross(0), cap(0))), 1)
    assert info.value.reason == OVERLAP


def test_torn_illegal():
    # cup to the left of a cap that would land on the cap-cup tie
    w = MorseWord((cup(0), cup(0), cap(2), cap(0)))
    with pytest.raises(IllegalExchange) as info:
        exchange(w, 2)
    assert info.value.reason == TORN


def test_out_of_range():
    with pytest.raises(IllegalExchange):
        exchange(NESTED, 4)


def test_cancellation_pair_not_exchangeable():
    assert legal_sites(MorseWord((cup(0), cap(0)))) == []


def test_cap_cap_zero():
    w = MorseWord((cup(0), cup(2), cap(2), cap(0)))
    assert exchange_delta(w, 3) == 0


def test_delta_table():
    assert classified_delta("cup", "cap") == -4
    assert classified_delta("cap", "cup") == 4
    for a in ("cup", "cap", "cross"):
        for b in ("cup", "cap", "cross"):
            if (a, b) not in (("cup", "cap"), ("cap", "cup")):
                assert classified_delta(a, b) == 0


def _check_site(w, k):
    new = exchange(w, k)
    delta = width(new) - width(w)
    assert delta == exchange_delta(w, k) == classified_delta(w.events[k - 1].kind, w.events[k].kind)
    assert delta == naive_width(new.events, 0) - naive_width(w.events, 0)
    assert exchange(new, k) == w
    assert sorted(e.kind for e in new.events) == sorted(e.kind for e in w.events)
    assert set(profile_changes(w, new)) <= {k}
    assert components(new).count == components(w).count


def test_delta_law_exhaustive_small():
    for w in all_link_words(6):
        for k in legal_sites(w):
            _check_site(w, k)


@settings(max_examples=300, deadline=None)
@given(st.randoms(use_true_random=False))
def test_delta_law_random(rng):
    w = random_link_word(rng, 16)
    for k in legal_sites(w):
        _check_site(w, k)


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_exchange_preserves_bracket(rng):
    w = random_link_word(rng, 10)
    for k in legal_sites(w):
        assert bracket(exchange(w, k).events) == bracket(w.events)


def test_determinants_of_presets():
    assert determinant(presets.WORDS["trefoil-plat"].word.events) == 3
    assert determinant(presets.WORDS["figure-eight-plat"].word.events) == 5
    assert determinant(presets.WORDS["unknot"].word.events) == 1


def test_push_block_examples():
    w, trace = push_block(NESTED, (2, 2), "down", 1)
    assert len(trace.steps) == 1 and trace.total_delta == 0
    w, trace = push_block(NESTED, (3, 3), "down", 2)
    assert trace.total_delta == -4 and w == SPLIT


def test_push_up_then_down_restores():
    w = MorseWord((cup(0), cup(2), cap(0), cup(0), cap(0), cap(0)))
    up, t1 = push_block(w, (2, 2), "up", 3)
    back, t2 = push_block(up, (3, 3), "down", 2)
    assert back == w
    assert t1.total_delta == -t2.total_delta


def test_push_block_collision_names_both():
    w = MorseWord((cup(0), cross(0), cap(0)))
    with pytest.raises(IllegalExchange) as info:
        push_block(w, (2, 3), "down", 1)
    assert info.value.other == 2


def test_trace_rejects_mismatch():
    with pytest.raises(DeltaMismatch):
        MoveTrace().record("exchange", 1, -4, 0)


def test_replay():
    trace = MoveTrace()
    traced_exchange(NESTED, 2, trace)
    assert replay(NESTED, trace) == SPLIT


def test_local_thinness():
    assert is_locally_thin(presets.WORDS["trefoil-plat"].word) == (True, [])
    assert is_locally_thin(NESTED) == (False, [2])
    assert is_locally_thin(MorseWord((cup(0), cap(0))))[0]


def test_orbit_examples():
    res = orbit_min_width(NESTED, 10_000)
    assert (res.min_width, res.witness, res.exhausted) == (4, SPLIT, True)
    tre = presets.WORDS["trefoil-plat"].word
    res = orbit_min_width(tre, 100_000)
    assert (res.min_width, res.witness, res.exhausted) == (8, tre, True)
    unk = MorseWord((cup(0), cap(0)))
    assert orbit_min_width(unk).witness == unk


def test_orbit_budget():
    w = MorseWord((cup(0), cup(2), cup(4), cap(0), cap(0), cap(0)))
    res = orbit_min_width(w, 2)
    assert not res.exhausted and res.states == 2


def test_orbit_profile_is_width_upper_bound():
    w = presets.WORDS["stacked"].word
    res = orbit_min_width(w)
    assert res.min_width <= width(w)
    assert strand_profile(res.witness)[0] == 0
