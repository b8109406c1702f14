"""
Line-oriented text formats.

.morse::

    # comments run to end of line
    link                           | tangle bottom=2 top=0
    cup 0
    x+ 1
    cap 0

.cdisk::

    cdisk cut                      | cdisk compress
    base alpha=1 beta=1
    top alpha=0 beta=0             (optional)
    inside=beta
    min beta
    transfer
    max alpha tau

One item per line, bottom to top.  Both CRLF and LF are accepted; the
serializers emit LF.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Optional

from .morse import CAP, CROSS, CUP, Event, MorseWord, validate


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 1

    def __post_init__(self):
        if self.line < 1 or self.column < 1 or self.length < 1:
            raise ValueError(f"spans are 1-based with positive length: {self}")


class ParseError(ValueError):
    def __init__(self, span: SourceSpan, message: str, expected: Optional[tuple[str, ...]] = None):
        if not message:
            raise ValueError("ParseError needs a message")
        self.span = span
        self.message = message
        self.expected = expected
        super().__init__(f"{span.line}:{span.column}: {message}")

    def to_json(self) -> dict:
        return {
            "line": self.span.line,
            "column": self.span.column,
            "length": self.span.length,
            "message": self.message,
            "expected": list(self.expected) if self.expected else None,
        }


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    column: int

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.line, self.column, max(1, len(self.text)))


_TOKEN = re.compile(r"\S+")
_INT = re.compile(r"\d+")


def _lines(text: str) -> Iterator[tuple[int, list[Token], str]]:
    for lineno, raw in enumerate(text.split("\n"), 1):
        raw = raw.rstrip("\r")
        code = raw.split("#", 1)[0]
        tokens = [Token(m.group(), lineno, m.start() + 1) for m in _TOKEN.finditer(code)]
        if tokens:
            yield lineno, tokens, raw


def _end_span(text: str) -> SourceSpan:
    lines = text.split("\n")
    if lines and lines[-1] == "" and len(lines) > 1:
        lines.pop()
    last = lines[-1].rstrip("\r") if lines else ""
    return SourceSpan(max(1, len(lines)), len(last) + 1, 1)


def _int(tok: Token, what: str = "integer") -> int:
    if not _INT.fullmatch(tok.text):
        raise ParseError(tok.span, f"expected {what}, found {tok.text!r}", ("INT",))
    return int(tok.text)


def _keyed_int(tok: Token, key: str) -> int:
    prefix = key + "="
    if not tok.text.startswith(prefix):
        raise ParseError(tok.span, f"expected {prefix}INT, found {tok.text!r}", (prefix,))
    value = tok.text[len(prefix):]
    if not _INT.fullmatch(value):
        span = SourceSpan(tok.line, tok.column + len(prefix), max(1, len(value)))
        raise ParseError(span, f"expected integer after {prefix!r}, found {value!r}", ("INT",))
    return int(value)


def _no_extra(tokens: list[Token], n: int):
    if len(tokens) > n:
        tok = tokens[n]
        raise ParseError(tok.span, f"unexpected {tok.text!r}", ("end of line",))


def _missing(tokens: list[Token], what: str, expected: tuple[str, ...]):
    last = tokens[-1]
    span = SourceSpan(last.line, last.column + len(last.text), 1)
    raise ParseError(span, f"missing {what}", expected)


_WORD_EVENTS = {"cup": (CUP, None), "cap": (CAP, None), "x+": (CROSS, "+"), "x-": (CROSS, "-")}


def parse_word(text: str) -> MorseWord:
    lines = list(_lines(text))
    if not lines:
        raise ParseError(_end_span(text), "missing header", ("link", "tangle"))
    _, header, _ = lines[0]
    head = header[0]
    if head.text == "link":
        _no_extra(header, 1)
        bottom = top = 0
    elif head.text == "tangle":
        if len(header) < 3:
            _missing(header, "boundary counts", ("bottom=", "top="))
        bottom = _keyed_int(header[1], "bottom")
        top = _keyed_int(header[2], "top")
        _no_extra(header, 3)
    else:
        raise ParseError(head.span, f"missing header: expected 'link' or 'tangle', found {head.text!r}", ("link", "tangle"))
    events = []
    event_lines = []
    for lineno, tokens, raw in lines[1:]:
        kw = tokens[0]
        if kw.text not in _WORD_EVENTS:
            raise ParseError(kw.span, f"unknown keyword {kw.text!r}", tuple(_WORD_EVENTS))
        if len(tokens) < 2:
            _missing(tokens, "position", ("INT",))
        kind, sign = _WORD_EVENTS[kw.text]
        events.append(Event(kind, _int(tokens[1]), sign))
        _no_extra(tokens, 2)
        event_lines.append((lineno, raw))
    word = MorseWord(tuple(events), bottom, top)
    report = validate(word)
    if not report.ok:
        v = report.violations[0]
        if v.index:
            lineno, raw = event_lines[v.index - 1]
            stripped = raw.split("#", 1)[0].rstrip()
            col = len(stripped) - len(stripped.lstrip()) + 1
            span = SourceSpan(lineno, col, max(1, len(stripped.strip())))
        else:
            span = header[0].span
        raise ParseError(span, f"invalid word: {v.message}")
    return word


def serialize_word(word: MorseWord) -> str:
    validate(word).raise_if_invalid()
    if word.is_link:
        lines = ["link"]
    else:
        lines = [f"tangle bottom={word.bottom} top={word.top}"]
    lines.extend(str(e) for e in word.events)
    return "\n".join(lines) + "\n"


def _keyword(tok: Token, allowed: tuple[str, ...], what: str) -> str:
    if tok.text not in allowed:
        raise ParseError(tok.span, f"expected {what}, found {tok.text!r}", allowed)
    return tok.text


def parse_schematic(text: str):
    from .cdisk import (ALPHA, BETA, COMPRESS, CUT, MAX, MIN, CDiskSchematic, SchematicEvent,
                        transfer, validate_schematic)

    lines = list(_lines(text))
    if not lines:
        raise ParseError(_end_span(text), "missing header", ("cdisk",))
    _, header, _ = lines[0]
    if header[0].text != "cdisk":
        raise ParseError(header[0].span, f"missing header: expected 'cdisk', found {header[0].text!r}", ("cdisk",))
    if len(header) < 2:
        _missing(header, "disk kind", (CUT, COMPRESS))
    kind = _keyword(header[1], (CUT, COMPRESS), "disk kind")
    _no_extra(header, 2)

    rest = lines[1:]
    if not rest:
        _missing(header, "base line", ("base",))
    _, base, _ = rest[0]
    if base[0].text != "base":
        raise ParseError(base[0].span, f"expected 'base', found {base[0].text!r}", ("base",))
    if len(base) < 3:
        _missing(base, "base counts", ("alpha=", "beta="))
    base_alpha = _keyed_int(base[1], "alpha")
    base_beta = _keyed_int(base[2], "beta")
    _no_extra(base, 3)
    rest = rest[1:]

    top = None
    if rest and rest[0][1][0].text == "top":
        _, tl, _ = rest[0]
        if len(tl) < 3:
            _missing(tl, "top counts", ("alpha=", "beta="))
        top = (_keyed_int(tl[1], "alpha"), _keyed_int(tl[2], "beta"))
        _no_extra(tl, 3)
        rest = rest[1:]

    if not rest:
        _missing(base, "inside line", ("inside=",))
    _, ins, _ = rest[0]
    tok = ins[0]
    if not tok.text.startswith("inside="):
        raise ParseError(tok.span, f"expected inside=alpha|beta, found {tok.text!r}", ("inside=",))
    value = tok.text[len("inside="):]
    if value not in (ALPHA, BETA):
        span = SourceSpan(tok.line, tok.column + 7, max(1, len(value)))
        raise ParseError(span, f"expected alpha or beta after 'inside=', found {value!r}", (ALPHA, BETA))
    _no_extra(ins, 1)

    events = []
    event_lines = []
    for lineno, tokens, raw in rest[1:]:
        kw = tokens[0]
        if kw.text == "transfer":
            _no_extra(tokens, 1)
            events.append(transfer())
        elif kw.text in (MIN, MAX):
            if len(tokens) < 2:
                _missing(tokens, "side", (ALPHA, BETA))
            side = _keyword(tokens[1], (ALPHA, BETA), "side")
            tau = False
            if len(tokens) > 2:
                _keyword(tokens[2], ("tau",), "'tau' or end of line")
                tau = True
            _no_extra(tokens, 3)
            events.append(SchematicEvent(kw.text, side, tau))
        else:
            raise ParseError(kw.span, f"unknown keyword {kw.text!r}", (MIN, MAX, "transfer"))
        event_lines.append((lineno, raw))
    s = CDiskSchematic(kind, base_alpha, base_beta, value, tuple(events), top)
    report = validate_schematic(s)
    if not report.ok:
        v = report.violations[0]
        if v.index and v.index <= len(event_lines):
            lineno, raw = event_lines[v.index - 1]
            stripped = raw.split("#", 1)[0].rstrip()
            col = len(stripped) - len(stripped.lstrip()) + 1
            span = SourceSpan(lineno, col, max(1, len(stripped.strip())))
        else:
            span = header[0].span
        raise ParseError(span, f"invalid schematic: {v.message}")
    return s


def serialize_schematic(s) -> str:
    from .cdisk import InvalidSchematic, validate_schematic

    report = validate_schematic(s)
    if not report.ok:
        raise InvalidSchematic(report)
    lines = [f"cdisk {s.disk_kind}", f"base alpha={s.base_alpha} beta={s.base_beta}"]
    if s.top is not None:
        lines.append(f"top alpha={s.top[0]} beta={s.top[1]}")
    lines.append(f"inside={s.inside}")
    lines.extend(str(ev) for ev in s.events)
    return "\n".join(lines) + "\n"
