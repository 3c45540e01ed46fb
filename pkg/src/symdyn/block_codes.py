"""Sliding block codes and transport of synchronizing words.

A :class:`BlockMap` of radius ``L`` reads windows of ``2L + 1`` symbols and
writes one symbol, so a word of length ``n`` maps to one of length
``n - 2L``.  Higher-block codes use an asymmetric window ``[0, k-1]``; it is
centred by taking radius ``ceil((k-1)/2)`` and ignoring the rightmost
window position when ``k`` is even.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .context import BACKWARD, FORWARD
from .covers import Cover, determinize, fischer_cover, presentation
from .shannon import (
    LabelledGraph,
    as_shannon,
    forward_separate,
    graphs_isomorphic,
    is_irreducible,
    is_right_resolving,
    terminal_components,
    trim,
)
from .subshift import (
    YES,
    FullShift,
    Sft,
    Sofic,
    SubshiftSpec,
    language,
    omega,
    omega_contains,
    outcome,
)
from .synchronization import (
    SyncReport,
    is_a_synchronizing_word,
    is_s_synchronizing_word,
    is_synchronizing_word,
)
from .verdict import Verdict
from .words import Alphabet, InputError, block_symbol


class TransportError(Exception):
    """A transport construction failed or produced a NO on the image."""


@dataclass(frozen=True, eq=False)
class BlockMap:
    in_alphabet: Alphabet
    out_alphabet: Alphabet
    radius: int
    table: dict

    def __post_init__(self):
        if self.radius < 0:
            raise InputError("radius must be non-negative")
        width = 2 * self.radius + 1
        for block, sym in self.table.items():
            if len(block) != width:
                raise InputError(f"block {block} does not have width {width}")
            self.in_alphabet.check(block)
            if sym not in self.out_alphabet:
                raise InputError(f"output symbol {sym!r} not in output alphabet")

    @property
    def width(self) -> int:
        return 2 * self.radius + 1


def apply_to_word(f: BlockMap, a) -> tuple:
    a = f.in_alphabet.check(a)
    if len(a) < f.width:
        raise InputError(f"word of length {len(a)} shorter than window {f.width}")
    out = []
    for i in range(len(a) - f.width + 1):
        block = a[i:i + f.width]
        try:
            out.append(f.table[block])
        except KeyError:
            raise InputError(
                f"block {f.in_alphabet.format(block)!r} outside the map's domain") from None
    return tuple(out)


@dataclass(eq=False)
class ConjugacyPair:
    forward: BlockMap
    backward: Optional[BlockMap]
    source: SubshiftSpec
    image_spec: Optional[SubshiftSpec] = None

    @property
    def radius(self) -> int:
        back = self.backward.radius if self.backward is not None else 0
        return max(self.forward.radius, back)

    @cached_property
    def image(self) -> SubshiftSpec:
        if self.image_spec is not None:
            return self.image_spec
        return Sofic(transported_graph(self.forward, presentation(self.source)))

    def round_trip_ok(self, w) -> bool:
        """backward(forward(w)) equals the middle of ``w``."""
        if self.backward is None:
            raise InputError("pair has no backward map")
        there = apply_to_word(self.forward, w)
        back = apply_to_word(self.backward, there)
        cut = self.forward.radius + self.backward.radius
        return back == tuple(w)[cut:len(w) - cut]


def identity_pair(spec: SubshiftSpec) -> ConjugacyPair:
    table = {(a,): a for a in spec.alphabet}
    f = BlockMap(spec.alphabet, spec.alphabet, 0, table)
    return ConjugacyPair(f, f, spec, spec)


def _image_sft(spec: SubshiftSpec, k: int, blocks, names) -> Sft:
    alphabet = Alphabet(tuple(names[b] for b in blocks))
    allowed = set()
    for u in blocks:
        for a in spec.alphabet:
            v = u[1:] + (a,)
            if v in names and outcome(spec, u + (a,)) is YES:
                allowed.add((names[u], names[v]))
    forbidden = frozenset(
        (x, y) for x in alphabet for y in alphabet if (x, y) not in allowed)
    return Sft(alphabet, forbidden)


def _image_sofic(spec: SubshiftSpec, k: int, blocks, names) -> Sofic:
    alphabet = Alphabet(tuple(names[b] for b in blocks))
    g = presentation(spec)
    paths = {(v, ()) for v in g.vertices}
    for _ in range(k - 1):
        paths = {
            (d, w + (a,))
            for v, w in paths
            for a, targets in g.out[v].items()
            for d in targets
        }
    fmt = spec.alphabet.format

    def vname(v, w):
        return f"{v}:{fmt(w)}" if w else str(v)

    vertices = sorted(paths, key=lambda p: (g.index[p[0]], spec.alphabet.key(p[1])))
    edges = set()
    for v, w in vertices:
        for a, targets in g.out[v].items():
            for d in targets:
                nxt = (w + (a,))[1:] if k > 1 else ()
                edges.add((vname(v, w), names[w + (a,)], vname(d, nxt)))
    graph = LabelledGraph(alphabet, tuple(vname(v, w) for v, w in vertices), frozenset(edges))
    return Sofic(trim(graph))


def higher_block_code(spec: SubshiftSpec, k: int) -> ConjugacyPair:
    """Recoding onto ``k``-blocks together with its inverse.

    The image symbol at ``i`` is the block ``x[i-r .. i-r+k-1]`` with
    ``r = ceil((k-1)/2)``; the inverse reads the first coordinate of the
    block ``r`` places to the right.
    """
    if k < 1:
        raise InputError("block length must be at least 1")
    if not spec.finitely_presented:
        raise InputError("higher block codes need a finitely presented shift")
    r = k // 2
    blocks = language(spec, k).words
    names = {b: block_symbol(b) for b in blocks}
    if isinstance(spec, (Sft, FullShift)) and k >= max(getattr(spec, "max_len", 1) - 1, 1):
        image = _image_sft(spec, k, blocks, names)
    else:
        image = _image_sofic(spec, k, blocks, names)
    forward_table = {w: names[w[:k]] for w in language(spec, 2 * r + 1).words}
    forward = BlockMap(spec.alphabet, image.alphabet, r, forward_table)
    coords = {names[b]: b for b in blocks}
    backward_table = {w: coords[w[-1]][0] for w in language(image, 2 * r + 1).words}
    backward = BlockMap(image.alphabet, spec.alphabet, r, backward_table)
    return ConjugacyPair(forward, backward, spec, image)


def transported_graph(f: BlockMap, g: LabelledGraph) -> LabelledGraph:
    """Relabel a ``2L``-step refinement of ``g`` through the block map.

    Vertices are pairs (vertex, last ``2L`` labels read into it); the edge
    reading ``a`` carries ``f`` applied to the window ending in ``a``.
    """
    g = trim(g)
    span = 2 * f.radius
    paths = {(v, ()) for v in g.vertices}
    for _ in range(span):
        paths = {
            (d, w + (a,))
            for v, w in paths
            for a, targets in g.out[v].items()
            for d in targets
        }
    fmt = f.in_alphabet.format

    def vname(v, w):
        return f"{v}:{fmt(w)}" if w else str(v)

    ordered = sorted(paths, key=lambda p: (g.index[p[0]], f.in_alphabet.key(p[1])))
    edges = set()
    for v, w in ordered:
        for a, targets in g.out[v].items():
            window = w + (a,)
            if window not in f.table:
                raise InputError(f"window {fmt(window)!r} outside the map's domain")
            for d in targets:
                edges.add((vname(v, w), f.table[window], vname(d, window[1:])))
    return trim(LabelledGraph(f.out_alphabet, tuple(vname(v, w) for v, w in ordered),
                              frozenset(edges)))


def image_language(pair: ConjugacyPair, n: int) -> set:
    """Image of the source language under the forward map, at length ``n``."""
    L = pair.forward.radius
    return {apply_to_word(pair.forward, w) for w in language(pair.source, n + 2 * L).words}


def apply_to_presentation(pair: ConjugacyPair, cover: Cover, check_depth: int = 8) -> Cover:
    """Push a cover of the source through the forward map.

    The refined, relabelled graph is made right-resolving (by subset
    construction when needed) and forward separated.  For a Fischer cover
    the unique terminal component is kept.  The result's language is
    compared with the image of the source language up to ``check_depth``.
    """
    g = transported_graph(pair.forward, cover.graph)
    if is_right_resolving(g).no:
        g = determinize(g).graph
    g = forward_separate(as_shannon(g))
    if cover.kind == "fischer" and g.vertices and is_irreducible(g).no:
        terminal = terminal_components(g)
        if len(terminal) != 1:
            raise TransportError("transported Fischer cover has no unique terminal component")
        g = forward_separate(as_shannon(trim(g.restrict(terminal[0]))))
    result = Sofic(g)
    for n in range(1, check_depth + 1):
        got = set(language(result, n).words)
        want = image_language(pair, n)
        if got != want:
            raise RuntimeError(f"transported cover disagrees with the image language at length {n}")
    meta = {v: v for v in g.vertices}
    return Cover(g, cover.kind, meta, params=dict(cover.params, transported=True))


@dataclass
class TransportResult:
    report: SyncReport
    source_word: tuple
    construction: tuple
    image_word: tuple
    radius: int
    length: Optional[int] = None
    extras: dict = field(default_factory=dict)


def _check_not_no(report: SyncReport):
    if report.verdict.no:
        raise TransportError(
            f"transported word is not {report.kind} on the image: witness {report.witness}")


def lemma3_transport(pair: ConjugacyPair, b, depth: int = 6) -> TransportResult:
    """Lift a synchronizing word through the inverse map and test it on the image."""
    source, image = pair.source, pair.image
    b = source.alphabet.check(b)
    if pair.backward is None:
        raise InputError("lifting a word needs the backward map")
    if not is_synchronizing_word(source, b, depth).verdict.yes:
        raise InputError("word is not synchronizing in the source")
    width = len(b) + 2 * pair.backward.radius
    lift = None
    for cand in language(image, width).words:
        if apply_to_word(pair.backward, cand) == b:
            lift = cand
            break
    if lift is None:
        raise TransportError(f"no image word of length {width} maps back onto the word")
    report = is_synchronizing_word(image, lift, depth)
    _check_not_no(report)
    return TransportResult(report, b, lift, lift, pair.radius)


def lemma4_transport(pair: ConjugacyPair, b, d, c_len: int = 4, d_len: int = 4,
                     m: int = 4) -> TransportResult:
    """Test the forward image of ``b (d b)^(4L)`` for s-synchronization."""
    source, image = pair.source, pair.image
    b, d = source.alphabet.check(b), source.alphabet.check(d)
    L = pair.radius
    word = b + (d + b) * (4 * L)
    if outcome(source, word) is not YES:
        raise InputError("construction word is not admissible")
    if omega_contains(source, b, b + d, BACKWARD, m) is not YES:
        raise InputError("b d is not in the backward omega set of b")
    if is_s_synchronizing_word(source, b, c_len, d_len, m).verdict.no:
        raise InputError("word is not s-synchronizing in the source")
    image_word = apply_to_word(pair.forward, word)
    report = is_s_synchronizing_word(image, image_word, c_len, d_len, m)
    _check_not_no(report)
    return TransportResult(report, b, word, image_word, L, length=len(b + d))


def lemma6_transport(pair: ConjugacyPair, b, d, c_len: int = 3, d_len: int = 3,
                     n: int = 3, m: int = 3, ext: int = 3) -> TransportResult:
    """Test the forward image of ``(b d)^(4L) b`` for a-synchronization."""
    source, image = pair.source, pair.image
    b, d = source.alphabet.check(b), source.alphabet.check(d)
    L = pair.radius
    db = d + b
    if omega_contains(source, b, db, FORWARD, m) is not YES:
        raise InputError("d b is not in the forward omega set of b")
    if omega(source, b + db, FORWARD, n, m).as_set != omega(source, b, FORWARD, n, m).as_set:
        raise InputError("omega set of b d b differs from that of b")
    if is_a_synchronizing_word(source, b, c_len, d_len, n, m, ext).verdict.no:
        raise InputError("word is not a-synchronizing in the source")
    word = (b + d) * (4 * L) + b
    if outcome(source, word) is not YES:
        raise InputError("construction word is not admissible")
    image_word = apply_to_word(pair.forward, word)
    report = is_a_synchronizing_word(image, image_word, c_len, d_len, n, m, ext)
    _check_not_no(report)
    return TransportResult(report, b, word, image_word, L, length=len(db))


def fischer_transport_check(pair: ConjugacyPair, m: int = 6, n: int = 6,
                            sync_depth: int = 6) -> Verdict:
    """Compare the pushed-forward Fischer cover of the source with the image's own."""
    source_cover = fischer_cover(pair.source, m, n, sync_depth)
    pushed = apply_to_presentation(pair, source_cover)
    direct = fischer_cover(pair.image, m, n, sync_depth)
    return graphs_isomorphic(pushed.graph, direct.graph)
