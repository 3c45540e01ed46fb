"""``symdyn`` command-line front end.

Exit codes: 0 success, 1 property failure under ``--strict``, 2 usage or
parse error, 3 an Unknown verdict under ``--strict``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .block_codes import (
    ConjugacyPair,
    TransportError,
    apply_to_word,
    fischer_transport_check,
    higher_block_code,
    identity_pair,
    lemma3_transport,
    lemma4_transport,
    lemma6_transport,
)
from .covers import (
    CoverError,
    determinize,
    fischer_cover,
    higher_block_presentation,
    krieger_cover,
    presentation,
    standard_growth,
)
from .formats import SpecFileError, format_graph, parse_block_maps, parse_spec, to_dot
from .shannon import is_irreducible, is_right_resolving, trim
from .subshift import Coded, Sofic, language
from .synchronization import (
    enumerate_sync_words,
    is_a_synchronizing_word,
    is_s_synchronizing_word,
    lemma5_return_word,
    reports_csv,
)
from .words import InputError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3

CODED_CAVEAT = (
    "# coded system: counts come from a truncated concatenation window; "
    "code lists are taken literally, including families suspected to be misprinted"
)


class UsageError(Exception):
    pass


def _load_spec(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_spec(text)


def _depths(text, defaults):
    if not text:
        return defaults
    try:
        values = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--depths must be comma-separated integers, got {text!r}") from None
    if len(values) > len(defaults):
        raise UsageError(f"--depths takes at most {len(defaults)} values")
    return values + defaults[len(values):]


def _fmt_witness(w) -> str:
    return "(" + ",".join(str(x) for x in w) + ")"


def cmd_check(args, out) -> int:
    spec = _load_spec(args.spec)
    if not isinstance(spec, Sofic):
        raise UsageError("check needs a sofic spec (a graph)")
    g = spec.graph
    selected = args.shannon or args.irreducible or args.trim
    failed = False
    if args.shannon or not selected:
        v = is_right_resolving(g)
        failed |= v.no
        print("right-resolving: yes" if v.yes else f"right-resolving: no, witness {_fmt_witness(v.witness)}", file=out)
    core = trim(g)
    if args.trim or not selected:
        if not core.vertices:
            print("trim: trimmed to empty", file=out)
        else:
            print(f"trim: kept {len(core)} of {len(g)} vertices", file=out)
    if args.irreducible or not selected:
        if not core.vertices:
            print("irreducible: no, graph is empty after trimming", file=out)
            failed = True
        else:
            v = is_irreducible(core)
            failed |= v.no
            print("irreducible: yes" if v.yes else f"irreducible: no, witness {_fmt_witness(v.witness)}", file=out)
    return EXIT_FAIL if failed and args.strict else EXIT_OK


def cmd_cover(args, out) -> int:
    spec = _load_spec(args.spec)
    if args.kind == "krieger":
        cover = krieger_cover(spec, args.history, args.depth)
    elif args.kind == "fischer":
        cover = fischer_cover(spec, args.history, args.depth, args.sync_depth)
    elif args.kind == "determinize":
        cover = determinize(presentation(spec))
    else:
        k = args.k if args.k is not None else max(getattr(spec, "max_len", 2) - 1, 1)
        cover = higher_block_presentation(spec, k)
    text = to_dot(cover.graph) if args.out == "dot" else format_graph(cover.graph)
    if args.output:
        prefix = Path(args.output)
        graph_path = prefix.with_name(prefix.name + (".dot" if args.out == "dot" else ".txt"))
        meta_path = prefix.with_name(prefix.name + ".states.csv")
        prefix.parent.mkdir(parents=True, exist_ok=True)
        graph_path.write_text(text, encoding="utf-8")
        meta_path.write_text(cover.meta_csv(), encoding="utf-8")
        print(f"states: {len(cover.graph)}", file=out)
        print(f"wrote {graph_path}", file=out)
        print(f"wrote {meta_path}", file=out)
    else:
        out.write(text)
    if cover.approximate or cover.stable is False:
        print(f"# warning: {cover.kind} cover not certified at these depths "
              f"(stable={cover.stable}, approximate={cover.approximate})", file=sys.stderr)
        if args.strict:
            return EXIT_UNKNOWN
    return EXIT_OK


def cmd_sync(args, out) -> int:
    spec = _load_spec(args.spec)
    if args.kind == "synchro":
        (depth,) = _depths(args.depths, (6,))
        reports = enumerate_sync_words(spec, args.max_len, depth)
    else:
        if args.kind == "s":
            depths = _depths(args.depths, (4, 4, 4))
            check = is_s_synchronizing_word
        else:
            depths = _depths(args.depths, (3, 3, 3, 3, 3))
            check = is_a_synchronizing_word
        reports = [check(spec, w, *depths)
                   for n in range(1, args.max_len + 1) for w in language(spec, n).words]
    if isinstance(spec, Coded):
        print(CODED_CAVEAT, file=out)
    out.write(reports_csv(reports, spec.alphabet))
    if args.strict and any(r.verdict.unknown for r in reports):
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_growth(args, out) -> int:
    spec = _load_spec(args.spec)
    table = standard_growth(spec, args.m_max, args.depth)
    if isinstance(spec, Coded):
        print(CODED_CAVEAT, file=out)
    if table.approximate:
        print("# some words were undecided inside the truncation window", file=out)
    out.write(table.to_csv())
    return EXIT_UNKNOWN if args.strict and table.approximate else EXIT_OK


def _pair(args, spec) -> ConjugacyPair:
    if args.map and args.higher_block is not None:
        raise UsageError("give either --map or --higher-block, not both")
    if args.higher_block is not None:
        return higher_block_code(spec, args.higher_block)
    if not args.map:
        return identity_pair(spec)
    try:
        text = Path(args.map).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.map}: {exc.strerror}") from None
    forward, backward = parse_block_maps(text, spec.alphabet)
    if backward is None and args.action in ("transport-l3", "theorem1"):
        raise UsageError(f"{args.action} needs a [backward] section in the map file")
    return ConjugacyPair(forward, backward, spec)


def _need(value, flag, action):
    if value is None:
        raise UsageError(f"{action} needs {flag}")
    return value


def cmd_code(args, out) -> int:
    spec = _load_spec(args.spec)
    pair = _pair(args, spec)
    fmt_in, fmt_out = spec.alphabet.format, pair.forward.out_alphabet.format
    action = args.action
    if action == "apply":
        word = spec.alphabet.parse(_need(args.word, "--word", action))
        print(fmt_out(apply_to_word(pair.forward, word)), file=out)
        return EXIT_OK
    if action == "theorem1":
        depths = _depths(args.depths, (6, 6, 6))
        v = fischer_transport_check(pair, *depths)
        print(f"isomorphic: {'yes' if v.yes else 'no'}", file=out)
        return EXIT_FAIL if v.no and args.strict else EXIT_OK
    b = spec.alphabet.parse(_need(args.word, "--word", action))
    if action == "transport-l3":
        result = lemma3_transport(pair, b, *_depths(args.depths, (6,)))
        image_fmt = pair.backward.in_alphabet.format
    elif action == "transport-l4":
        d = spec.alphabet.parse(_need(args.d, "--d", action))
        result = lemma4_transport(pair, b, d, *_depths(args.depths, (4, 4, 4)))
        image_fmt = fmt_out
    else:
        depths = _depths(args.depths, (3, 3, 3, 3, 3))
        if args.d is not None:
            d = spec.alphabet.parse(args.d)
        else:
            d = lemma5_return_word(spec, b)
            if d is None:
                raise UsageError("no return word found; pass --d")
        result = lemma6_transport(pair, b, d, *depths)
        image_fmt = fmt_out
    print(f"source word: {fmt_in(result.source_word)}", file=out)
    if action != "transport-l3":
        print(f"construction: {fmt_in(result.construction)}", file=out)
    print(f"image word: {image_fmt(result.image_word)}", file=out)
    print(f"image verdict: {result.report.verdict.label()}", file=out)
    if args.strict and result.report.verdict.unknown:
        return EXIT_UNKNOWN
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symdyn", description="Presentations of subshifts.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("spec", help="spec file")
        p.add_argument("--strict", action="store_true",
                       help="exit 1 on a failed property, 3 on an undecided one")

    p = sub.add_parser("check", help="Shannon graph checks")
    common(p)
    p.add_argument("--shannon", action="store_true", help="right-resolving check")
    p.add_argument("--irreducible", action="store_true", help="irreducibility of the trimmed graph")
    p.add_argument("--trim", action="store_true", help="report the trimmed core")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("cover", help="build a cover")
    common(p)
    p.add_argument("--kind", choices=["krieger", "fischer", "determinize", "higher-block"],
                   default="krieger")
    p.add_argument("--history", type=int, default=6, help="history length m")
    p.add_argument("--depth", type=int, default=6, help="context depth n")
    p.add_argument("--sync-depth", type=int, default=6)
    p.add_argument("--k", type=int, default=None, help="block length for higher-block")
    p.add_argument("--out", choices=["dot", "text"], default="dot")
    p.add_argument("--output", help="file prefix; writes PREFIX.dot|.txt and PREFIX.states.csv")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("sync", help="classify words by synchronization")
    common(p)
    p.add_argument("--max-len", type=int, default=3)
    p.add_argument("--kind", choices=["synchro", "s", "a"], default="synchro")
    p.add_argument("--depths", help="comma-separated depths (synchro: d; s: c,d,m; a: c,d,n,m,ext)")
    p.set_defaults(func=cmd_sync)

    p = sub.add_parser("growth", help="count follower sets by history length")
    common(p)
    p.add_argument("--m-max", type=int, default=10)
    p.add_argument("--depth", type=int, default=6)
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("code", help="apply or check a sliding block code")
    common(p)
    p.add_argument("action", choices=["apply", "transport-l3", "transport-l4",
                                      "transport-l6", "theorem1"])
    p.add_argument("--map", help="block map file")
    p.add_argument("--higher-block", type=int, metavar="K", help="use the K-block recoding")
    p.add_argument("--word", help="source word")
    p.add_argument("--d", help="connecting word for transport-l4/l6")
    p.add_argument("--depths", help="comma-separated depths for the verdicts")
    p.set_defaults(func=cmd_code)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except SpecFileError as exc:
        print(f"{args.spec}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CoverError, TransportError) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
