"""Labelled directed graphs and Shannon (right-resolving) graphs.

Graphs are immutable.  Every operation returns a new graph and keeps the
vertex ids of its input wherever a vertex survives.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Optional

from .context import FORWARD, ContextSet
from .verdict import Verdict, no, yes
from .words import Alphabet, InputError, Word


@dataclass(frozen=True)
class LabelledGraph:
    alphabet: Alphabet
    vertices: tuple
    edges: frozenset

    def __post_init__(self):
        vertices = tuple(self.vertices)
        edges = frozenset(tuple(e) for e in self.edges)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        if len(set(vertices)) != len(vertices):
            raise InputError("duplicate vertex ids")
        known = set(vertices)
        for src, label, dst in edges:
            if src not in known or dst not in known:
                raise InputError(f"edge {src} -{label}-> {dst} has an undeclared endpoint")
            if label not in self.alphabet:
                raise InputError(f"edge label {label!r} not in alphabet")

    def __len__(self):
        return len(self.vertices)

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = hash((self.alphabet, self.vertices, self.edges))
            object.__setattr__(self, "_hash", h)
            return h

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def out(self) -> dict:
        """vertex -> label -> tuple of successors (in vertex order)."""
        table = {v: {} for v in self.vertices}
        for src, label, dst in self.edges:
            table[src].setdefault(label, []).append(dst)
        order = self.index
        return {
            v: {a: tuple(sorted(ds, key=order.__getitem__)) for a, ds in labels.items()}
            for v, labels in table.items()
        }

    @cached_property
    def into(self) -> dict:
        """vertex -> label -> tuple of predecessors."""
        table = {v: {} for v in self.vertices}
        for src, label, dst in self.edges:
            table[dst].setdefault(label, []).append(src)
        order = self.index
        return {
            v: {a: tuple(sorted(ss, key=order.__getitem__)) for a, ss in labels.items()}
            for v, labels in table.items()
        }

    def sorted_edges(self) -> list:
        """Edges sorted by (src, label, dst) in vertex and alphabet order."""
        vi, ai = self.index, self.alphabet.index
        return sorted(self.edges, key=lambda e: (vi[e[0]], ai(e[1]), vi[e[2]]))

    def restrict(self, keep: Iterable[Hashable]) -> "LabelledGraph":
        keep = set(keep)
        vertices = tuple(v for v in self.vertices if v in keep)
        edges = frozenset(e for e in self.edges if e[0] in keep and e[2] in keep)
        return type(self)(self.alphabet, vertices, edges)

    def reversed(self) -> "LabelledGraph":
        edges = frozenset((d, a, s) for s, a, d in self.edges)
        return LabelledGraph(self.alphabet, self.vertices, edges)

    def successors(self, states: Iterable[Hashable], label: str) -> frozenset:
        out = self.out
        result = set()
        for v in states:
            result.update(out[v].get(label, ()))
        return frozenset(result)


@dataclass(frozen=True, eq=False)
class ShannonGraph(LabelledGraph):
    """A labelled graph with at most one edge per (vertex, label)."""

    def __post_init__(self):
        super().__post_init__()
        seen = set()
        for src, label, _ in self.edges:
            if (src, label) in seen:
                raise InputError(f"not right-resolving at ({src}, {label})")
            seen.add((src, label))

    @cached_property
    def tau(self) -> dict:
        return {(src, label): dst for src, label, dst in self.edges}

    def step(self, v, label) -> Optional[Hashable]:
        return self.tau.get((v, label))


def as_shannon(g: LabelledGraph) -> ShannonGraph:
    if isinstance(g, ShannonGraph):
        return g
    return ShannonGraph(g.alphabet, g.vertices, g.edges)


def is_right_resolving(g: LabelledGraph) -> Verdict:
    for v in g.vertices:
        for a in g.alphabet:
            if len(g.out[v].get(a, ())) > 1:
                return no((v, a))
    return yes(exact=True)


def trim(g: LabelledGraph) -> LabelledGraph:
    """Remove, to a fixed point, vertices without incoming or outgoing edges.

    What remains is the largest subgraph in which every vertex lies on a
    bi-infinite path.  The result may be empty.
    """
    alive = set(g.vertices)
    indeg = {v: 0 for v in alive}
    outdeg = {v: 0 for v in alive}
    for src, _, dst in g.edges:
        outdeg[src] += 1
        indeg[dst] += 1
    queue = deque(v for v in g.vertices if indeg[v] == 0 or outdeg[v] == 0)
    while queue:
        v = queue.popleft()
        if v not in alive:
            continue
        alive.discard(v)
        for preds in g.into[v].values():
            for u in preds:
                if u in alive and u != v:
                    outdeg[u] -= 1
                    if outdeg[u] == 0:
                        queue.append(u)
        for succs in g.out[v].values():
            for w in succs:
                if w in alive and w != v:
                    indeg[w] -= 1
                    if indeg[w] == 0:
                        queue.append(w)
    if len(alive) == len(g.vertices):
        return g
    return g.restrict(alive)


def reachable(g: LabelledGraph, start, reverse: bool = False) -> set:
    adj = g.into if reverse else g.out
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for targets in adj[v].values():
            for w in targets:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return seen


def is_irreducible(g: LabelledGraph) -> Verdict:
    """Strong connectivity; a NO carries an ordered pair ``(u, v)`` with no path u -> v."""
    if not g.vertices:
        raise InputError("irreducibility of the empty graph is undefined")
    root = g.vertices[0]
    fwd = reachable(g, root)
    for v in g.vertices:
        if v not in fwd:
            return no((root, v))
    bwd = reachable(g, root, reverse=True)
    for v in g.vertices:
        if v not in bwd:
            return no((v, root))
    return yes(exact=True)


def strong_components(g: LabelledGraph) -> list:
    """Strongly connected components as tuples, ordered by first vertex."""
    seen = set()
    comps = []
    for v in g.vertices:
        if v in seen:
            continue
        comp = reachable(g, v) & reachable(g, v, reverse=True)
        seen |= comp
        comps.append(tuple(u for u in g.vertices if u in comp))
    return comps


def terminal_components(g: LabelledGraph) -> list:
    """Components with no edge leaving them."""
    result = []
    for comp in strong_components(g):
        members = set(comp)
        if all(e[2] in members for e in g.edges if e[0] in members):
            result.append(comp)
    return result


def transition(g: ShannonGraph, v, w: Word):
    """Follow the labels of ``w`` from ``v``; ``None`` once a step is undefined."""
    if v not in g.index:
        raise InputError(f"unknown vertex {v!r}")
    g = as_shannon(g)
    for a in w:
        v = g.step(v, a)
        if v is None:
            return None
    return v


def forward_context(g: LabelledGraph, v, n: int) -> ContextSet:
    """Label sequences of the length-``n`` paths leaving ``v``."""
    if v not in g.index:
        raise InputError(f"unknown vertex {v!r}")
    layer = {((), v)}
    for _ in range(n):
        layer = {
            (w + (a,), d)
            for w, u in layer
            for a, targets in g.out[u].items()
            for d in targets
        }
    words = g.alphabet.sort({w for w, _ in layer})
    return ContextSet(FORWARD, "gamma", n, words, exact=True)


def separating_word(g: ShannonGraph, u, v) -> Optional[Word]:
    """Shortest word readable from exactly one of ``u`` and ``v``; None if their contexts agree."""
    g = as_shannon(g)
    seen = {(u, v)}
    queue = deque([(u, v, ())])
    while queue:
        x, y, w = queue.popleft()
        for a in g.alphabet:
            nx, ny = g.step(x, a), g.step(y, a)
            if (nx is None) != (ny is None):
                return w + (a,)
            if nx is not None and (nx, ny) not in seen:
                seen.add((nx, ny))
                queue.append((nx, ny, w + (a,)))
    return None


def merged_name(members) -> str:
    members = list(members)
    if len(members) == 1:
        return members[0]
    return "|".join(str(m) for m in members)


def separation_partition(g: ShannonGraph) -> dict:
    """Coarsest partition with equal forward contexts (Moore refinement).

    Returns vertex -> block number, blocks numbered by first appearance.
    """
    g = as_shannon(g)
    sigma = g.alphabet.symbols

    def renumber(keys):
        ids = {}
        return {v: ids.setdefault(keys[v], len(ids)) for v in g.vertices}

    block = renumber({v: tuple(a in g.out[v] for a in sigma) for v in g.vertices})
    while True:
        keys = {
            v: (block[v],) + tuple(
                block[g.tau[(v, a)]] if (v, a) in g.tau else -1 for a in sigma
            )
            for v in g.vertices
        }
        refined = renumber(keys)
        if len(set(refined.values())) == len(set(block.values())):
            return refined
        block = refined


def forward_separate(g: ShannonGraph) -> ShannonGraph:
    """Merge vertices with identical forward contexts."""
    g = as_shannon(g)
    block = separation_partition(g)
    members = {}
    for v in g.vertices:
        members.setdefault(block[v], []).append(v)
    if len(members) == len(g.vertices):
        return g
    name = {b: merged_name(ms) for b, ms in members.items()}
    vertices = tuple(name[b] for b in sorted(members))
    edges = frozenset((name[block[s]], a, name[block[d]]) for s, a, d in g.edges)
    return ShannonGraph(g.alphabet, vertices, edges)


def _check_canonical(g: LabelledGraph, which: str) -> ShannonGraph:
    if is_right_resolving(g).no:
        raise InputError(f"{which} is not right-resolving")
    g = as_shannon(g)
    if not g.vertices:
        raise InputError(f"{which} is empty")
    if len(trim(g)) != len(g):
        raise InputError(f"{which} is not trimmed")
    if len(forward_separate(g)) != len(g):
        raise InputError(f"{which} is not forward separated")
    if is_irreducible(g).no:
        raise InputError(f"{which} is not irreducible")
    return g


def graphs_isomorphic(g1: LabelledGraph, g2: LabelledGraph, relabel: Optional[dict] = None) -> Verdict:
    """Label-preserving isomorphism test for canonical Shannon graphs.

    Both graphs must be trimmed, right-resolving, forward separated and
    irreducible; then an isomorphism is fixed by the image of one vertex.
    ``relabel`` maps labels of ``g1`` to labels of ``g2``.
    """
    g1 = _check_canonical(g1, "first graph")
    g2 = _check_canonical(g2, "second graph")
    rl = relabel or {}
    if len(g1) != len(g2) or len(g1.edges) != len(g2.edges):
        return no(("size", (len(g1), len(g1.edges)), (len(g2), len(g2.edges))))
    anchor = g1.vertices[0]
    for target in g2.vertices:
        mapping = _propagate(g1, g2, anchor, target, rl)
        if mapping is not None:
            return yes(exact=True, certificate=mapping)
    return no(("no anchor image", anchor))


def _propagate(g1, g2, v1, v2, rl):
    mapping = {v1: v2}
    used = {v2}
    queue = deque([v1])
    while queue:
        u = queue.popleft()
        img = mapping[u]
        labels1 = {rl.get(a, a) for a in g1.out[u]}
        if labels1 != set(g2.out[img]):
            return None
        for a, (d,) in g1.out[u].items():
            d2 = g2.out[img][rl.get(a, a)][0]
            if d in mapping:
                if mapping[d] != d2:
                    return None
            else:
                if d2 in used:
                    return None
                mapping[d] = d2
                used.add(d2)
                queue.append(d)
    if len(mapping) != len(g1):
        return None
    return mapping
