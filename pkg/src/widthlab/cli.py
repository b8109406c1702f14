"""
widthlab command line.

Exit codes: 0 success, 1 invalid input or unmet precondition, 2 a
width-decreasing certificate was found.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import cdisk as cd
from . import presets
from .dsl import ParseError, parse_schematic, parse_word, serialize_schematic, serialize_word
from .morse import BOUNDARY_THIN, InvalidWord, box_report, classify_levels, width
from .moves import DOWN, UP, IllegalExchange, MoveTrace, orbit_min_width, push_block, traced_exchange
from .report import dumps, make_report, word_report

OK, INVALID, CERTIFICATE = 0, 1, 2


class CliError(Exception):
    pass


def _source(args, want: str):
    """Return (value, path or None) for a word or a schematic."""
    if args.preset:
        try:
            p = presets.get(args.preset)
        except KeyError as exc:
            raise CliError(exc.args[0]) from None
        if want == "word":
            if not isinstance(p, presets.Preset):
                raise CliError(f"preset {args.preset!r} is a schematic, not a word")
            return p.word, None
        if not isinstance(p, presets.SchematicPreset):
            raise CliError(f"preset {args.preset!r} is a word, not a schematic")
        return p.schematic, None
    if not args.file:
        raise CliError("give an input file or --preset NAME")
    path = Path(args.file)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}") from None
    try:
        value = parse_word(text) if want == "word" else parse_schematic(text)
    except ParseError as exc:
        raise CliError(f"{path}:{exc.span.line}:{exc.span.column}: {exc.message}") from None
    return value, path


def _print_levels(word):
    print(f"{'interval':>12}  {'strands':>7}  class")
    for lv in classify_levels(word):
        lo, hi = lv.interval
        flag = "  <- boundary" if lv.cls == BOUNDARY_THIN else ""
        print(f"{f'{lo}..{hi}':>12}  {lv.strand_count:>7}  {lv.cls}{flag}")


def cmd_width(args) -> int:
    word, _ = _source(args, "word")
    if args.json:
        print(dumps(word_report(word, command="width")))
        return OK
    print(f"width {width(word)}")
    _print_levels(word)
    return OK


def cmd_levels(args) -> int:
    word, _ = _source(args, "word")
    if args.json:
        print(dumps(word_report(word, command="levels")))
        return OK
    _print_levels(word)
    thin = [lv for lv in classify_levels(word) if lv.cls == "thin"]
    print(f"{len(thin)} thin level(s)")
    return OK


def cmd_boxes(args) -> int:
    word, _ = _source(args, "word")
    rep = box_report(word)
    if args.json:
        print(dumps(word_report(word, command="boxes")))
        return OK
    for b in rep.boxes:
        print(f"box events {list(b.event_indices)}: {b.minima} min, {b.maxima} max, levels {b.lower_level}..{b.upper_level}")
    if rep.unboxed:
        print(f"unboxed events {list(rep.unboxed)}")
    if not rep.proper_certified:
        print("not proper-certified: lowest critical event is not a cup or highest is not a cap")
    return OK


_RANGE = re.compile(r"^(\d+)\.\.(\d+)$")


def cmd_move(args) -> int:
    word, _ = _source(args, "word")
    if args.exchange is not None:
        trace = MoveTrace()
        new = traced_exchange(word, args.exchange, trace)
    else:
        rng, direction, past = args.push
        m = _RANGE.match(rng)
        if not m:
            raise CliError(f"--push range must look like A..B, got {rng!r}")
        if direction not in (UP, DOWN):
            raise CliError(f"--push direction must be up or down, got {direction!r}")
        if not past.isdigit():
            raise CliError(f"--push target must be an event index, got {past!r}")
        new, trace = push_block(word, (int(m.group(1)), int(m.group(2))), direction, int(past))
    if args.json:
        print(dumps(word_report(new, trace, command="move", result=serialize_word(new), delta=trace.total_delta)))
        return OK
    for st in trace.steps:
        print(f"exchange at {st.site}: delta {st.recomputed:+d}")
    print(f"total delta {trace.total_delta:+d}, width {width(word)} -> {width(new)}")
    print(serialize_word(new), end="")
    return OK


def cmd_orbit(args) -> int:
    word, path = _source(args, "word")
    res = orbit_min_width(word, args.budget)
    witness = serialize_word(res.witness)
    written = None
    if path is not None:
        name = path.name[: -len(".morse")] if path.name.endswith(".morse") else path.name
        written = path.with_name(name + ".min.morse")
        written.write_text(witness, encoding="utf-8")
    if args.json:
        rep = word_report(
            res.witness,
            command="orbit",
            min_width=res.min_width,
            exhausted=res.exhausted,
            states=res.states,
            witness=witness,
            bound="upper bound: exchanges do not generate every isotopy",
        )
        print(dumps(rep))
        return OK
    print(f"min width {res.min_width} ({'exhausted' if res.exhausted else 'budget reached'}, {res.states} states)")
    if written:
        print(f"witness written to {written}")
    print(witness, end="")
    return OK


def _schematic_levels(s) -> list[dict]:
    levels = cd.alternating_levels(s)
    lw = cd.level_widths(s)
    return [{"index": i, "gap": g, "width": lw[g], "r": i == levels.r} for i, g in enumerate(levels.gaps)]


def cmd_cdisk(args) -> int:
    s, _ = _source(args, "schematic")
    cd._require_valid(s)
    normalized = cd.normalize(s)
    meta = {"command": "cdisk", "normalized": normalized != s, "relative_width": True}
    if normalized != s:
        meta["schematic"] = serialize_schematic(normalized)
    s = normalized
    levels = _schematic_levels(s)
    code = OK
    certificate = None
    moves = None
    lines = [f"relative width {cd.relative_width(s)}"]
    lines += [f"S_{lv['index']} at critical gap {lv['gap']}: width {lv['width']}" + ("  (r)" if lv["r"] else "")
              for lv in levels]
    if args.facts:
        facts = []
        for fact_id, i in cd.applicable_facts(s):
            try:
                rep = cd.fact_delta(s, fact_id, i)
            except (cd.IllegalMove, cd.IllegalPipe) as exc:
                facts.append({"fact": fact_id, "region": i, "error": str(exc)})
                lines.append(f"Fact {fact_id}, region {i}: move unavailable ({exc})")
                continue
            facts.append(rep.to_json())
            lines.append(f"Fact {fact_id}, region {i}: predicted {rep.predicted_delta:+d}, recomputed {rep.recomputed_delta:+d}")
        meta["facts"] = facts
    elif args.theorem or args.chain:
        rep = cd.check_theorem(s) if args.theorem else cd.check_width_chain(s)
        meta["theorem" if args.theorem else "chain"] = rep.to_json()
        if args.theorem:
            lines.append(f"case {rep.case}")
            for c in rep.conclusions:
                if c.applies:
                    lines.append(f"conclusion ({c.number}): {'holds' if c.holds else 'FAILS'} {c.detail}".rstrip())
        else:
            for st in rep.steps:
                lines.append(f"w(S_{st.i - 1})={st.upper} {st.required} w(S_{st.i})={st.lower}: "
                             f"{'ok' if st.holds else 'FAILS'}; identity {'ok' if st.identity else 'FAILS'}")
        if not rep.holds:
            cert = cd.thinness_certificate(s)
            if cert is not None:
                certificate = cert.to_json()
                moves = cert.trace
                code = CERTIFICATE
                lines.append(f"certificate: Fact {cert.fact.fact_id} at region {cert.fact.i}, delta {cert.total_delta}")
    elif args.certify:
        cert = cd.thinness_certificate(s)
        meta["possibly_fake"] = cd.possibly_fake(s)
        if cert is None:
            lines.append("no certificate")
        else:
            certificate = cert.to_json()
            moves = cert.trace
            code = CERTIFICATE
            lines.append(f"certificate: Fact {cert.fact.fact_id} at region {cert.fact.i}, "
                         f"total delta {cert.total_delta}")
            for st in cert.trace.steps:
                lines.append(f"  swap {st.site}: {st.recomputed:+d}")
        if meta["possibly_fake"]:
            lines.append("possibly fake cut-disk")
    if args.json:
        print(dumps(make_report(cd.relative_width(s), levels, [], moves, certificate, **meta)))
    else:
        print("\n".join(lines))
    return code


def cmd_presets(args) -> int:
    if args.json:
        items = [{"name": p.name, "kind": "word", "width": p.expected_width, "note": p.note}
                 for p in presets.WORDS.values()]
        items += [{"name": p.name, "kind": "schematic", "width": cd.relative_width(p.schematic), "note": p.note}
                  for p in presets.SCHEMATICS.values()]
        items.sort(key=lambda d: d["name"])
        print(dumps(make_report(None, command="presets", presets=items)))
        return OK
    for name in presets.names():
        p = presets.get(name)
        if isinstance(p, presets.Preset):
            print(f"{name:<22} word       width {p.expected_width:<3} {p.note}")
        else:
            print(f"{name:<22} schematic  width {cd.relative_width(p.schematic):<3} {p.note}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", nargs="?", help=".morse or .cdisk input")
    common.add_argument("--preset", metavar="NAME")
    common.add_argument("--json", action="store_true", help="print the JSON report")

    parser = argparse.ArgumentParser(prog="widthlab", description="Width calculus for Morse presentations.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("width", parents=[common], help="width and level table").set_defaults(func=cmd_width)
    sub.add_parser("levels", parents=[common], help="thin/thick classification").set_defaults(func=cmd_levels)
    sub.add_parser("boxes", parents=[common], help="braid boxes").set_defaults(func=cmd_boxes)

    mv = sub.add_parser("move", parents=[common], help="apply an exchange or a block push")
    group = mv.add_mutually_exclusive_group(required=True)
    group.add_argument("--exchange", type=int, metavar="K")
    group.add_argument("--push", nargs=3, metavar=("A..B", "DIR", "L"))
    mv.set_defaults(func=cmd_move)

    orb = sub.add_parser("orbit", parents=[common], help="exhaustive exchange-orbit minimum")
    orb.add_argument("--budget", type=int, default=100_000, metavar="N")
    orb.set_defaults(func=cmd_orbit)

    cdp = sub.add_parser("cdisk", parents=[common], help="c-disk schematic checks")
    group = cdp.add_mutually_exclusive_group()
    group.add_argument("--facts", action="store_true")
    group.add_argument("--theorem", action="store_true")
    group.add_argument("--chain", action="store_true")
    group.add_argument("--certify", action="store_true")
    cdp.set_defaults(func=cmd_cdisk)

    pre = sub.add_parser("presets", help="list bundled presets")
    pre.add_argument("--json", action="store_true")
    pre.set_defaults(func=cmd_presets, preset=None, file=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, InvalidWord, IllegalExchange, cd.SchematicError) as exc:
        if getattr(args, "json", False):
            print(dumps(make_report(None, command=args.command, error=str(exc), error_type=type(exc).__name__)))
        print(f"error: {exc}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
