"""Bundled fixtures, addressable by name from the CLI and the tests."""

from __future__ import annotations

from dataclasses import dataclass

from .cdisk import ALPHA, BETA, COMPRESS, CUT, CDiskSchematic, smax, smin, transfer
from .morse import MorseWord, cap, cross, cup, width


@dataclass(frozen=True)
class Preset:
    name: str
    word: MorseWord
    expected_width: int
    note: str = ""


@dataclass(frozen=True)
class SchematicPreset:
    name: str
    schematic: CDiskSchematic
    note: str = ""


def _link(*events) -> MorseWord:
    return MorseWord(tuple(events), 0, 0)


WORDS = {
    p.name: p
    for p in [
        Preset("unknot", _link(cup(0), cap(0)), 2, "one min, one max"),
        Preset(
            "split-unlink-nested",
            _link(cup(0), cup(2), cap(0), cap(0)),
            8,
            "two circles side by side at one height; one exchange separates them",
        ),
        Preset("split-unlink", _link(cup(0), cap(0), cup(0), cap(0)), 4, "two circles stacked"),
        Preset(
            "trefoil-plat",
            _link(cup(0), cup(0), cross(1), cross(1), cross(1), cap(0), cap(0)),
            8,
            "plat closure of sigma_2^3; determinant 3",
        ),
        Preset(
            "figure-eight-plat",
            _link(cup(0), cup(2), cross(1, "+"), cross(0, "-"), cross(1, "+"), cross(0, "-"), cap(1), cap(0)),
            8,
            "plat closure of (sigma_2 sigma_1^-1)^2; determinant 5",
        ),
        Preset(
            "stacked",
            _link(cup(0), cup(2), cap(1), cup(1), cap(1), cap(0)),
            14,
            "two bridge boxes separated by an interior thin level",
        ),
    ]
}

SCHEMATICS = {
    p.name: p
    for p in [
        SchematicPreset(
            "cdisk-clean",
            CDiskSchematic(COMPRESS, 2, 2, BETA, (smin(ALPHA), smax(ALPHA), smax(ALPHA), smin(BETA), smax(BETA), smax(BETA))),
            "compressing disk; every region has more maxima than minima",
        ),
        SchematicPreset(
            "cdisk-fact1",
            CDiskSchematic(COMPRESS, 0, 2, BETA, (smin(ALPHA), smax(ALPHA), smin(BETA), smax(BETA), smax(BETA))),
            "balanced alpha region under a beta region; the Fact 1 push lowers width by 4",
        ),
        SchematicPreset(
            "cdisk-fact4",
            CDiskSchematic(
                CUT, 1, 1, BETA,
                (smin(BETA), transfer(), smin(ALPHA), smax(ALPHA), smax(ALPHA, True), smax(BETA)),
            ),
            "cut-disk whose first tau max lies in region r",
        ),
    ]
}


def get(name: str):
    if name in WORDS:
        return WORDS[name]
    if name in SCHEMATICS:
        return SCHEMATICS[name]
    raise KeyError(f"unknown preset {name!r}; known: {', '.join(names())}")


def names() -> list[str]:
    return sorted(WORDS) + sorted(SCHEMATICS)


def check_presets():
    for p in WORDS.values():
        if width(p.word) != p.expected_width:
            raise AssertionError(f"{p.name}: width {width(p.word)}, expected {p.expected_width}")
