"""The JSON report shared by every CLI command."""

from __future__ import annotations

import json
from typing import Optional

from .morse import BoxReport, LevelClass, MorseWord, box_report, classify_levels, width
from .moves import MoveTrace

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["width", "levels", "boxes", "moves", "certificate"],
    "properties": {
        "width": {"type": ["integer", "null"]},
        "levels": {"type": "array", "items": {"type": "object"}},
        "boxes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["events", "minima", "maxima"],
                "properties": {
                    "events": {"type": "array", "items": {"type": "integer"}},
                    "minima": {"type": "integer"},
                    "maxima": {"type": "integer"},
                },
            },
        },
        "moves": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["move", "site", "predicted", "recomputed"],
                "properties": {
                    "move": {"type": "string"},
                    "site": {"type": "integer"},
                    "predicted": {"type": "integer"},
                    "recomputed": {"type": "integer"},
                },
            },
        },
        "certificate": {"type": ["object", "null"]},
        "meta": {"type": "object"},
    },
    "additionalProperties": False,
}


def level_json(lv: LevelClass) -> dict:
    return {"interval": list(lv.interval), "strands": lv.strand_count, "class": lv.cls}


def boxes_json(rep: BoxReport) -> list[dict]:
    return [
        {
            "events": list(b.event_indices),
            "minima": b.minima,
            "maxima": b.maxima,
            "lower_level": b.lower_level,
            "upper_level": b.upper_level,
        }
        for b in rep.boxes
    ]


def make_report(width_value: Optional[int] = None, levels=(), boxes=(), moves: Optional[MoveTrace] = None,
                certificate: Optional[dict] = None, **meta) -> dict:
    out = {
        "width": width_value,
        "levels": list(levels),
        "boxes": list(boxes),
        "moves": moves.to_json() if moves is not None else [],
        "certificate": certificate,
    }
    if meta:
        out["meta"] = meta
    return out


def word_report(word: MorseWord, moves: Optional[MoveTrace] = None, **meta) -> dict:
    rep = box_report(word)
    meta.setdefault("unboxed", list(rep.unboxed))
    meta.setdefault("proper_certified", rep.proper_certified)
    return make_report(
        width(word),
        [level_json(lv) for lv in classify_levels(word)],
        boxes_json(rep),
        moves,
        None,
        **meta,
    )


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)
