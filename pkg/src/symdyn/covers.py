"""Canonical right-resolving presentations.

``krieger_cover`` fingerprints states by depth-``n`` follower sets of
length-``m`` histories.  Transitions follow the derivative of a follower
set: reading ``a`` from the state with follower set ``F`` leads to the state
whose follower set, cut to depth ``n - 1``, is ``{w : a w in F}``.  That rule
depends on ``F`` alone, so the result is right-resolving by construction.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .context import FORWARD
from .shannon import (
    LabelledGraph,
    ShannonGraph,
    as_shannon,
    forward_context,
    forward_separate,
    is_irreducible,
    is_right_resolving,
    transition,
    trim,
)
from .subshift import (
    YES,
    FullShift,
    Sft,
    Sofic,
    SubshiftSpec,
    gamma,
    language,
    outcome,
)
from .words import InputError


class CoverError(Exception):
    """A cover could not be built within the requested bounds."""


@dataclass
class Cover:
    graph: ShannonGraph
    kind: str
    state_meta: dict
    params: dict = field(default_factory=dict)
    stable: Optional[bool] = None
    approximate: bool = False
    histories: dict = field(default_factory=dict)
    ambiguous: bool = False

    @property
    def states(self):
        return self.graph.vertices

    def meta_rows(self):
        for v in self.graph.vertices:
            yield v, self.state_meta.get(v, "")

    def meta_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["state", "meta"])
        for v, meta in self.meta_rows():
            writer.writerow([v, meta])
        return buf.getvalue()


def _subset_name(members) -> str:
    return "{" + ",".join(str(v) for v in members) + "}"


def determinize(g: LabelledGraph) -> Cover:
    """Right-resolving presentation of the same shift.

    A graph that is already right-resolving is returned as is (trimmed);
    otherwise see :func:`subset_cover`.
    """
    g = trim(g)
    if not g.vertices:
        raise InputError("cannot determinize an empty graph")
    if is_right_resolving(g).yes:
        return Cover(as_shannon(g), "determinized", {v: str(v) for v in g.vertices})
    return subset_cover(g)


def subset_cover(g: LabelledGraph) -> Cover:
    """Subset construction started from the set of all vertices, then trimmed.

    Unlike :func:`determinize` this always runs, so a deterministic input
    gains states for pasts that do not pin down a vertex.
    """
    g = trim(g)
    if not g.vertices:
        raise InputError("cannot determinize an empty graph")
    order = g.index
    start = frozenset(g.vertices)
    names = {}
    members = {}

    def name(s):
        if s not in names:
            ms = tuple(sorted(s, key=order.__getitem__))
            names[s] = _subset_name(ms)
            members[names[s]] = ms
        return names[s]

    name(start)
    queue = [start]
    seen = {start}
    edges = set()
    while queue:
        s = queue.pop(0)
        for a in g.alphabet:
            t = g.successors(s, a)
            if not t:
                continue
            edges.add((name(s), a, name(t)))
            if t not in seen:
                seen.add(t)
                queue.append(t)
    vertices = tuple(names[s] for s in names)
    graph = trim(ShannonGraph(g.alphabet, vertices, frozenset(edges)))
    meta = {v: " ".join(str(x) for x in members[v]) for v in graph.vertices}
    return Cover(graph, "determinized", meta)


def higher_block_presentation(spec: SubshiftSpec, k: int) -> Cover:
    """De Bruijn style presentation of a shift of finite type.

    Vertices are the admissible ``k``-blocks; ``u -> v`` carries the last
    symbol of ``v`` whenever the blocks overlap and the joined
    ``(k+1)``-block is admissible.
    """
    if isinstance(spec, FullShift):
        spec = Sft(spec.alphabet, frozenset())
    if not isinstance(spec, Sft):
        raise InputError("higher block presentations need a shift of finite type")
    need = max(spec.max_len - 1, 1)
    if k < need:
        raise InputError(f"block length {k} too small; need k >= {need}")
    fmt = spec.alphabet.format
    blocks = language(spec, k).words
    names = {b: fmt(b) for b in blocks}
    edges = set()
    for u in blocks:
        for a in spec.alphabet:
            v = u[1:] + (a,)
            if v in names and language_contains(spec, u + (a,)):
                edges.add((names[u], a, names[v]))
    graph = trim(ShannonGraph(spec.alphabet, tuple(names[b] for b in blocks), frozenset(edges)))
    meta = {v: v for v in graph.vertices}
    return Cover(graph, "higher_block", meta, params={"k": k})


def language_contains(spec, word) -> bool:
    return outcome(spec, tuple(word)) is YES


@lru_cache(maxsize=None)
def presentation(spec: SubshiftSpec) -> LabelledGraph:
    """A finite graph whose bi-infinite label paths form ``spec``."""
    if isinstance(spec, FullShift):
        v = "*"
        return ShannonGraph(spec.alphabet, (v,), frozenset((v, a, v) for a in spec.alphabet))
    if isinstance(spec, Sft):
        return higher_block_presentation(spec, max(spec.max_len - 1, 1)).graph
    if isinstance(spec, Sofic):
        return spec.core
    raise InputError("coded systems have no exact finite presentation here")


@lru_cache(maxsize=None)
def exact_cover(spec: SubshiftSpec) -> ShannonGraph:
    """Exact future cover: determinize, trim, and merge equal follower sets.

    Its vertices correspond one-to-one to the follower sets of left-infinite
    rays, with exact transitions.
    """
    g = presentation(spec)
    if not g.vertices:
        return ShannonGraph(spec.alphabet, (), frozenset())
    return forward_separate(subset_cover(g).graph)


def ray_states_after(cover: ShannonGraph, word) -> frozenset:
    """States reached by reading ``word`` from every state of ``cover``."""
    ends = (transition(cover, v, word) for v in cover.vertices)
    return frozenset(e for e in ends if e is not None)


def common_words(cover: ShannonGraph, states, n: int) -> set:
    """Length-``n`` words readable from every state in ``states``."""
    states = list(states)
    if not states:
        return set()
    result = set(forward_context(cover, states[0], n).words)
    for s in states[1:]:
        result &= set(forward_context(cover, s, n).words)
    return result


def exact_omega(spec: SubshiftSpec, a, direction: str = FORWARD, n: int = 1) -> tuple:
    """Intrinsic extension set computed from the exact cover."""
    a = tuple(a)
    if direction == FORWARD:
        cover = exact_cover(spec)
        words = common_words(cover, ray_states_after(cover, a), n)
    else:
        cover = exact_cover(spec.reversed())
        words = {w[::-1] for w in common_words(cover, ray_states_after(cover, a[::-1]), n)}
    return spec.alphabet.sort(words)


def _krieger_raw(spec: SubshiftSpec, m: int, n: int):
    hist = language(spec, m)
    approximate = bool(hist.unknown)
    fingerprint = {}
    for h in hist.words:
        ctx = gamma(spec, h, FORWARD, n)
        approximate = approximate or bool(ctx.unknown)
        fingerprint[h] = frozenset(ctx.words)

    classes = {}
    for h in hist.words:
        classes.setdefault(fingerprint[h], []).append(h)
    fmt = spec.alphabet.format
    name = {fp: fmt(hs[0]) for fp, hs in classes.items()}

    by_trunc = {}
    for fp in classes:
        by_trunc.setdefault(frozenset(w[:n - 1] for w in fp), []).append(fp)

    edges = set()
    ambiguous = False
    for fp, hs in classes.items():
        rep = hs[0]
        for a in spec.alphabet:
            deriv = frozenset(w[1:] for w in fp if w[0] == a)
            if not deriv:
                continue
            cands = by_trunc.get(deriv, [])
            if len(cands) == 1:
                target = cands[0]
            else:
                ambiguous = True
                suffix = (rep + (a,))[1:]
                fallback = fingerprint.get(suffix)
                if fallback is not None and (fallback in cands or not cands):
                    target = fallback
                elif cands:
                    target = cands[0]
                else:
                    continue
            edges.add((name[fp], a, name[target]))

    vertices = tuple(name[fp] for fp in classes)
    graph = trim(ShannonGraph(spec.alphabet, vertices, frozenset(edges)))
    members = {name[fp]: tuple(hs) for fp, hs in classes.items()}
    fps = {name[fp]: fp for fp in classes}
    return graph, members, fps, ambiguous, approximate


def _same_structure(small, large, n) -> bool:
    g1, _, fp1, amb1, _ = small
    g2, _, fp2, amb2, _ = large
    if amb1 or amb2 or len(g1) != len(g2) or len(g1.edges) != len(g2.edges):
        return False
    match = {}
    for v2 in g2.vertices:
        cut = frozenset(w[:n] for w in fp2[v2])
        hits = [v1 for v1 in g1.vertices if fp1[v1] == cut]
        if len(hits) != 1:
            return False
        match[v2] = hits[0]
    if len(set(match.values())) != len(g1):
        return False
    return {(match[s], a, match[d]) for s, a, d in g2.edges} == set(g1.edges)


def krieger_cover(spec: SubshiftSpec, m: int = 6, n: int = 6) -> Cover:
    """Finite approximation of the cover by follower sets of left rays.

    ``stable`` is set when the construction at ``(m+1, n+1)`` has the same
    states and transitions; for sofic inputs that certifies the exact cover.
    """
    if m < 1 or n < 1:
        raise InputError("history and depth must be at least 1")
    raw = _krieger_raw(spec, m, n)
    graph, members, fps, ambiguous, approximate = raw
    stable = _same_structure(raw, _krieger_raw(spec, m + 1, n + 1), n)
    fmt = spec.alphabet.format
    meta = {
        v: " ".join(fmt(w) for w in spec.alphabet.sort(fps[v]))
        for v in graph.vertices
    }
    return Cover(graph, "krieger", meta, params={"m": m, "n": n},
                 stable=stable and not approximate, approximate=approximate,
                 histories={v: members[v] for v in graph.vertices},
                 ambiguous=ambiguous)


def fischer_cover(spec: SubshiftSpec, m: int = 6, n: int = 6, sync_depth: int = 6) -> Cover:
    """Restriction of the Krieger cover to states reached by synchronizing words."""
    from .synchronization import is_synchronizing_word

    krieger = krieger_cover(spec, m, n)
    keep = {}
    for v in krieger.graph.vertices:
        for h in krieger.histories[v]:
            if is_synchronizing_word(spec, h, sync_depth).verdict.yes:
                keep[v] = h
                break
    graph = trim(krieger.graph.restrict(keep))
    if not graph.vertices:
        raise CoverError(
            f"no synchronizing word among histories of length {m} (sync depth {sync_depth})")
    if is_irreducible(graph).no:
        raise CoverError("synchronized part is not irreducible; is the shift transitive?")
    fmt = spec.alphabet.format
    meta = {v: fmt(keep[v]) for v in graph.vertices}
    return Cover(as_shannon(graph), "fischer", meta,
                 params={"m": m, "n": n, "sync_depth": sync_depth},
                 stable=krieger.stable, approximate=krieger.approximate)


@dataclass
class GrowthTable:
    rows: list
    depth: int
    approximate: bool = False

    def counts(self):
        return [c for _, c in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["m", "count"])
        writer.writerows(self.rows)
        return buf.getvalue()


def standard_growth(spec: SubshiftSpec, m_max: int, n: int = 6) -> GrowthTable:
    """Number of distinct depth-``n`` follower sets over histories of length 1..m_max.

    Bounded counts hint at, but do not prove, a finite standard cover.
    """
    if m_max < 2:
        raise InputError("m_max must be at least 2")
    rows = []
    approximate = False
    for m in range(1, m_max + 1):
        hist = language(spec, m)
        approximate = approximate or bool(hist.unknown)
        sets = set()
        for h in hist.words:
            ctx = gamma(spec, h, FORWARD, n)
            approximate = approximate or bool(ctx.unknown)
            sets.add(ctx.words)
        rows.append((m, len(sets)))
    return GrowthTable(rows, n, approximate)

