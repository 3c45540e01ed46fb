"""Line-oriented spec files, block map files, and graph emitters.

Spec file::

    # even shift
    type = sofic
    alphabet = 0 1
    vertices = E O
    edge = E 1 E
    edge = E 0 O
    edge = O 0 E

``type`` is one of ``full``, ``sft``, ``sofic``, ``coded``.  ``forbidden`` and
``code`` take whitespace-separated words and may repeat.  Block map files
hold ``radius``, optional ``in_alphabet``/``out_alphabet`` and entries
``block -> symbol``; a ``[backward]`` section holds the inverse map.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .shannon import LabelledGraph
from .subshift import Coded, FullShift, Sft, Sofic, SubshiftSpec
from .words import Alphabet, InputError


class SpecFileError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


SPEC_KEYS = {"type", "alphabet", "forbidden", "vertices", "edge", "code", "truncation"}
REPEATABLE = {"forbidden", "edge", "code"}
MAP_KEYS = {"radius", "in_alphabet", "out_alphabet"}
SECTIONS = {"main", "forward", "backward"}


@dataclass
class Section:
    name: str
    values: dict = field(default_factory=dict)  # key -> list of (lineno, value)
    entries: list = field(default_factory=list)  # (lineno, block, symbol)


def parse_sections(text: str, keys, allow_entries=False) -> dict:
    sections = {"main": Section("main")}
    current = sections["main"]
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in SECTIONS or not allow_entries:
                raise SpecFileError(f"unknown section [{name}]", lineno)
            current = sections.setdefault(name, Section(name))
            continue
        if "->" in line and allow_entries:
            block, _, sym = line.partition("->")
            block, sym = block.strip(), sym.strip()
            if not block or not sym:
                raise SpecFileError("entry must look like 'block -> symbol'", lineno)
            current.entries.append((lineno, block, sym))
            continue
        if "=" not in line:
            raise SpecFileError(f"expected 'key = value', got {line!r}", lineno)
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in keys:
            raise SpecFileError(f"unknown key {key!r}", lineno)
        if key in current.values and key not in REPEATABLE:
            raise SpecFileError(f"duplicate key {key!r}", lineno)
        current.values.setdefault(key, []).append((lineno, value))
    return sections


def _one(section, key, required=True):
    entries = section.values.get(key)
    if not entries:
        if required:
            raise SpecFileError(f"missing key {key!r}")
        return None, None
    lineno, value = entries[0]
    return lineno, value


def _alphabet(value, lineno):
    try:
        return Alphabet(tuple(value.replace(",", " ").split()))
    except InputError as exc:
        raise SpecFileError(str(exc), lineno) from None


def _words(section, key, alphabet):
    words = []
    for lineno, value in section.values.get(key, []):
        for token in value.split():
            try:
                words.append(alphabet.parse(token))
            except InputError as exc:
                raise SpecFileError(str(exc), lineno) from None
    return words


def parse_spec(text: str) -> SubshiftSpec:
    section = parse_sections(text, SPEC_KEYS)["main"]
    tline, kind = _one(section, "type")
    aline, avalue = _one(section, "alphabet")
    alphabet = _alphabet(avalue, aline)
    allowed = {
        "full": {"type", "alphabet"},
        "sft": {"type", "alphabet", "forbidden"},
        "sofic": {"type", "alphabet", "vertices", "edge"},
        "coded": {"type", "alphabet", "code", "truncation"},
    }
    if kind not in allowed:
        raise SpecFileError(f"unknown type {kind!r}", tline)
    for key, entries in section.values.items():
        if key not in allowed[kind]:
            raise SpecFileError(f"key {key!r} not valid for type {kind}", entries[0][0])
    try:
        if kind == "full":
            return FullShift(alphabet)
        if kind == "sft":
            return Sft(alphabet, frozenset(_words(section, "forbidden", alphabet)))
        if kind == "coded":
            lineno, trunc = _one(section, "truncation")
            try:
                truncation = int(trunc)
            except ValueError:
                raise SpecFileError(f"truncation must be an integer, got {trunc!r}", lineno) from None
            return Coded(alphabet, tuple(_words(section, "code", alphabet)), truncation)
        return Sofic(_graph(section, alphabet))
    except SpecFileError:
        raise
    except InputError as exc:
        raise SpecFileError(str(exc)) from None


def _graph(section, alphabet) -> LabelledGraph:
    vline, vvalue = _one(section, "vertices")
    vertices = tuple(vvalue.split())
    edges = set()
    for lineno, value in section.values.get("edge", []):
        parts = value.split()
        if len(parts) != 3:
            raise SpecFileError("edge must be 'src label dst'", lineno)
        edges.add(tuple(parts))
        try:
            LabelledGraph(alphabet, vertices, {tuple(parts)})
        except InputError as exc:
            raise SpecFileError(str(exc), lineno) from None
    return LabelledGraph(alphabet, vertices, frozenset(edges))


def format_graph(g: LabelledGraph) -> str:
    lines = [
        "type = sofic",
        "alphabet = " + " ".join(g.alphabet.symbols),
        "vertices = " + " ".join(str(v) for v in g.vertices),
    ]
    lines += [f"edge = {s} {a} {d}" for s, a, d in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def format_spec(spec: SubshiftSpec) -> str:
    alpha = "alphabet = " + " ".join(spec.alphabet.symbols)
    fmt = spec.alphabet.format
    if isinstance(spec, FullShift):
        return f"type = full\n{alpha}\n"
    if isinstance(spec, Sft):
        words = " ".join(fmt(w) for w in spec.alphabet.sort(spec.forbidden))
        return f"type = sft\n{alpha}\nforbidden = {words}\n"
    if isinstance(spec, Coded):
        codes = "".join(f"code = {fmt(w)}\n" for w in spec.codewords)
        return f"type = coded\n{alpha}\n{codes}truncation = {spec.truncation}\n"
    return format_graph(spec.graph)


def _quote(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: LabelledGraph, name: str = "G") -> str:
    """DOT text; edges sorted by (src, label, dst)."""
    lines = [f"digraph {name} {{",
             "  // alphabet: " + " ".join(g.alphabet.symbols),
             "  rankdir=LR;"]
    for v in g.vertices:
        lines.append(f"  {_quote(v)} [label={_quote(v)}];")
    for s, a, d in g.sorted_edges():
        lines.append(f"  {_quote(s)} -> {_quote(d)} [label={_quote(a)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


_Q = r'"((?:[^"\\]|\\.)*)"'
_NODE = re.compile(r"^\s*" + _Q + r"\s*\[label=" + _Q + r"\];\s*$")
_EDGE = re.compile(r"^\s*" + _Q + r"\s*->\s*" + _Q + r"\s*\[label=" + _Q + r"\];\s*$")


def _unquote(s: str) -> str:
    return re.sub(r"\\(.)", r"\1", s)


def read_dot(text: str) -> LabelledGraph:
    """Read back graphs written by :func:`to_dot`."""
    symbols = None
    vertices, edges, labels = [], set(), []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if stripped.startswith("// alphabet:"):
            symbols = tuple(stripped.split(":", 1)[1].split())
            continue
        m = _EDGE.match(line)
        if m:
            s, d, a = (_unquote(x) for x in m.groups())
            edges.add((s, a, d))
            if a not in labels:
                labels.append(a)
            continue
        m = _NODE.match(line)
        if m:
            vertices.append(_unquote(m.group(1)))
            continue
        if stripped and not (stripped.startswith("digraph") or stripped in ("}", "rankdir=LR;")):
            raise SpecFileError(f"unrecognised DOT line {stripped!r}", lineno)
    return LabelledGraph(Alphabet(symbols or tuple(labels)), tuple(vertices), frozenset(edges))


def parse_block_maps(text: str, source_alphabet: Alphabet):
    """Return ``(forward, backward_or_None)`` block maps from a map file."""
    from .block_codes import BlockMap

    sections = parse_sections(text, MAP_KEYS, allow_entries=True)
    main = sections["main"]
    if "forward" in sections:
        if main.entries or main.values:
            raise SpecFileError("put forward entries either in [forward] or at top level, not both")
        main = sections["forward"]
    maps = []
    for section, default_in in ((main, source_alphabet), (sections.get("backward"), None)):
        if section is None:
            maps.append(None)
            continue
        lineno, radius = _one(section, "radius", required=False)
        try:
            r = int(radius) if radius is not None else 0
        except ValueError:
            raise SpecFileError(f"radius must be an integer, got {radius!r}", lineno) from None
        if default_in is None:
            default_in = maps[0].out_alphabet
        line_in, in_value = _one(section, "in_alphabet", required=False)
        in_alpha = _alphabet(in_value, line_in) if in_value else default_in
        line_out, out_value = _one(section, "out_alphabet", required=False)
        if out_value:
            out_alpha = _alphabet(out_value, line_out)
        else:
            seen = []
            for _, _, sym in section.entries:
                if sym not in seen:
                    seen.append(sym)
            if section.name == "backward":
                seen = list(source_alphabet.symbols)
            out_alpha = Alphabet(tuple(seen))
        table = {}
        for entry_line, block, sym in section.entries:
            try:
                key = in_alpha.parse(block)
            except InputError as exc:
                raise SpecFileError(str(exc), entry_line) from None
            if key in table:
                raise SpecFileError(f"duplicate block {block!r}", entry_line)
            table[key] = sym
        try:
            maps.append(BlockMap(in_alpha, out_alpha, r, table))
        except InputError as exc:
            raise SpecFileError(str(exc)) from None
    return maps[0], maps[1]


def format_block_map(f) -> str:
    lines = [f"radius = {f.radius}",
             "in_alphabet = " + " ".join(f.in_alphabet.symbols),
             "out_alphabet = " + " ".join(f.out_alphabet.symbols)]
    for block in sorted(f.table, key=f.in_alphabet.key):
        lines.append(f"{f.in_alphabet.format(block)} -> {f.table[block]}")
    return "\n".join(lines) + "\n"
