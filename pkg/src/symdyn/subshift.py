"""Subshift sources, admissibility, and finite-depth context sets.

Four kinds of source are supported: the full shift, a shift of finite type
given by forbidden words, a sofic shift given by a labelled graph, and a
coded system given by a finite list of code words.  The coded case is only
decided inside a truncation window, so its admissibility answers are
three-valued.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache, wraps
from typing import Iterable

from .context import BACKWARD, FORWARD, ContextSet
from .shannon import LabelledGraph, trim
from .verdict import Outcome, Verdict, no, unknown, yes
from .words import Alphabet, InputError, Word

YES, NO, UNKNOWN = Outcome.YES, Outcome.NO, Outcome.UNKNOWN


class SubshiftSpec:
    alphabet: Alphabet

    def _outcome(self, word: Word) -> Outcome:
        raise NotImplementedError

    def reversed(self) -> "SubshiftSpec":
        """The time-reversed subshift."""
        raise NotImplementedError

    @property
    def finitely_presented(self) -> bool:
        """True when an exact finite graph presentation is available."""
        return True


@dataclass(frozen=True)
class FullShift(SubshiftSpec):
    alphabet: Alphabet

    def _outcome(self, word):
        return YES

    def reversed(self):
        return self


@dataclass(frozen=True)
class Sft(SubshiftSpec):
    alphabet: Alphabet
    forbidden: frozenset

    def __post_init__(self):
        forbidden = frozenset(self.alphabet.check(w) for w in self.forbidden)
        if any(len(w) == 0 for w in forbidden):
            raise InputError("forbidden words must be non-empty")
        object.__setattr__(self, "forbidden", forbidden)

    @cached_property
    def max_len(self) -> int:
        return max((len(w) for w in self.forbidden), default=1)

    @cached_property
    def _lengths(self):
        return sorted({len(w) for w in self.forbidden})

    def _outcome(self, word):
        for k in self._lengths:
            for i in range(len(word) - k + 1):
                if word[i:i + k] in self.forbidden:
                    return NO
        return YES

    def reversed(self):
        return Sft(self.alphabet, frozenset(w[::-1] for w in self.forbidden))


@dataclass(frozen=True)
class Sofic(SubshiftSpec):
    """Sofic shift presented by the bi-infinite label paths of ``graph``.

    The graph need not be right-resolving; admissibility runs the subset
    simulation over its trimmed core, memoizing subset transitions as they
    are first met.
    """

    graph: LabelledGraph

    @property
    def alphabet(self):
        return self.graph.alphabet

    @cached_property
    def core(self) -> LabelledGraph:
        return trim(self.graph)

    @cached_property
    def _subsets(self):
        # subset id -> members, members -> id, (id, symbol) -> id; id 0 is the empty set
        start = frozenset(self.core.vertices)
        return [frozenset(), start], {frozenset(): 0, start: 1}, {}

    def _outcome(self, word):
        members, ids, step = self._subsets
        state = 1
        for a in word:
            nxt = step.get((state, a))
            if nxt is None:
                target = self.core.successors(members[state], a)
                nxt = ids.get(target)
                if nxt is None:
                    nxt = ids[target] = len(members)
                    members.append(target)
                step[(state, a)] = nxt
            state = nxt
            if not state:
                return NO
        return YES if members[state] or not word else NO

    def reversed(self):
        return Sofic(self.graph.reversed())


@dataclass(frozen=True)
class Coded(SubshiftSpec):
    """Closure of the bi-infinite concatenations of ``codewords``.

    A word is admissible when it is a factor of a concatenation; the search
    only accepts concatenations of total length at most ``truncation``.
    """

    alphabet: Alphabet
    codewords: tuple
    truncation: int

    def __post_init__(self):
        codes = tuple(self.alphabet.check(w) for w in self.codewords)
        if not codes or any(len(w) == 0 for w in codes):
            raise InputError("code words must be non-empty")
        object.__setattr__(self, "codewords", codes)
        if self.truncation < 2 * self.longest:
            raise InputError(
                f"truncation {self.truncation} below twice the longest code word ({self.longest})")

    @property
    def longest(self) -> int:
        return max(len(w) for w in self.codewords)

    @property
    def finitely_presented(self):
        return False

    def min_cover(self, word: Word):
        """Shortest concatenation of code words having ``word`` as a factor, or None."""
        n = len(word)
        inf = float("inf")
        best = [inf] * (n + 1)
        finish = inf
        for u in self.codewords:
            for o in range(len(u)):
                span = min(n, len(u) - o)
                if word[:span] != u[o:o + span]:
                    continue
                if len(u) - o >= n:
                    finish = min(finish, len(u))
                else:
                    p = len(u) - o
                    best[p] = min(best[p], len(u))
        for p in range(1, n):
            if best[p] == inf:
                continue
            for u in self.codewords:
                span = min(len(u), n - p)
                if word[p:p + span] != u[:span]:
                    continue
                cost = best[p] + len(u)
                if len(u) >= n - p:
                    finish = min(finish, cost)
                else:
                    best[p + len(u)] = min(best[p + len(u)], cost)
        return None if finish == inf else finish

    def _outcome(self, word):
        if not word:
            return YES
        cost = self.min_cover(word)
        if cost is None:
            return NO
        return YES if cost <= self.truncation else UNKNOWN

    def reversed(self):
        return Coded(self.alphabet, tuple(w[::-1] for w in self.codewords), self.truncation)


def _word_cache(fn):
    cached = lru_cache(maxsize=1 << 16)(fn)

    @wraps(fn)
    def wrapper(spec, a, *args, **kwargs):
        return cached(spec, tuple(a), *args, **kwargs)

    wrapper.cache_clear = cached.cache_clear
    return wrapper


@lru_cache(maxsize=1 << 20)
def outcome(spec: SubshiftSpec, word: Word) -> Outcome:
    """Cached admissibility outcome; ``word`` must already be a valid tuple."""
    return spec._outcome(word)


def is_admissible(spec: SubshiftSpec, w: Iterable[str]) -> Verdict:
    w = spec.alphabet.check(w)
    result = outcome(spec, w)
    if result is YES:
        return yes(depth=len(w), exact=True)
    if result is NO:
        return no(w)
    return unknown(depth=len(w))


def _extend(spec, prefix: Word, suffix: Word, direction: str, n: int):
    """Length-``n`` words ``b`` with ``prefix+b`` (forward) or ``b+suffix`` (backward) admissible."""
    sigma = spec.alphabet.symbols
    sure, unsure = [()], []
    for _ in range(n):
        next_sure, next_unsure = [], []
        for pool, is_sure in ((sure, True), (unsure, False)):
            for w in pool:
                for a in sigma:
                    cand = w + (a,) if direction == FORWARD else (a,) + w
                    full = prefix + cand if direction == FORWARD else cand + suffix
                    res = outcome(spec, full)
                    if res is YES and is_sure:
                        next_sure.append(cand)
                    elif res is not NO:
                        next_unsure.append(cand)
        sure, unsure = next_sure, next_unsure
    order = spec.alphabet
    return order.sort(sure), order.sort(unsure)


@lru_cache(maxsize=1 << 16)
def language(spec: SubshiftSpec, n: int) -> ContextSet:
    """All admissible words of length ``n``; undecided coded words go to ``unknown``."""
    if n < 0:
        raise InputError("length must be non-negative")
    words, unsure = _extend(spec, (), (), FORWARD, n)
    return ContextSet(FORWARD, "gamma", n, words, unknown=unsure,
                      exact=not unsure)


def _require_admissible(spec, a):
    a = spec.alphabet.check(a)
    if outcome(spec, a) is not YES:
        raise InputError(f"word {spec.alphabet.format(a)!r} is not admissible")
    return a


@_word_cache
def gamma(spec: SubshiftSpec, a: Word, direction: str = FORWARD, n: int = 1) -> ContextSet:
    """Words of length ``n`` that extend ``a`` on the given side."""
    a = _require_admissible(spec, a)
    if n < 0:
        raise InputError("depth must be non-negative")
    if direction == FORWARD:
        words, unsure = _extend(spec, a, (), FORWARD, n)
    elif direction == BACKWARD:
        words, unsure = _extend(spec, (), a, BACKWARD, n)
    else:
        raise InputError(f"bad direction {direction!r}")
    return ContextSet(direction, "gamma", n, words, unknown=unsure, exact=not unsure)


def _opposite(direction):
    return BACKWARD if direction == FORWARD else FORWARD


@_word_cache
def omega(spec: SubshiftSpec, a: Word, direction: str = FORWARD, n: int = 1,
          m: int = 1) -> ContextSet:
    """Extensions of ``a`` that stay admissible after every history of length ``m``.

    Forward: words ``b`` of length ``n`` with ``c a b`` admissible for every
    ``c`` in the backward gamma set of ``a`` at depth ``m``.  This
    over-approximates the intrinsic follower set and shrinks as ``m`` grows.
    For finitely presented shifts the result is compared with the exact set
    read off the canonical cover and ``exact`` records the agreement.
    """
    a = _require_admissible(spec, a)
    if m < 0:
        raise InputError("history must be non-negative")
    base = gamma(spec, a, direction, n)
    histories = gamma(spec, a, _opposite(direction), m)
    keep, unsure = [], list(base.unknown)
    for b in base.words:
        verdicts = {
            outcome(spec, c + a + b) if direction == FORWARD else outcome(spec, b + a + c)
            for c in histories.words
        }
        if NO in verdicts:
            continue
        if UNKNOWN in verdicts or histories.unknown:
            unsure.append(b)
        else:
            keep.append(b)
    words = tuple(keep)
    exact = False
    if spec.finitely_presented and not unsure:
        from .covers import exact_omega

        exact = set(words) == set(exact_omega(spec, a, direction, n))
    return ContextSet(direction, "omega", n, words, history=m,
                      unknown=spec.alphabet.sort(unsure), exact=exact)


def omega_contains(spec: SubshiftSpec, a: Word, w: Word, direction: str = FORWARD,
                   m: int = 1) -> Outcome:
    """Membership of ``w`` in the omega set of ``a`` without building the whole set.

    YES exactly when ``w`` would be listed in ``omega(spec, a, direction, len(w), m).words``.
    """
    a = _require_admissible(spec, a)
    w = spec.alphabet.check(w)
    joined = a + w if direction == FORWARD else w + a
    first = outcome(spec, joined)
    if first is not YES:
        return first
    histories = gamma(spec, a, _opposite(direction), m)
    result = UNKNOWN if histories.unknown else YES
    for c in histories.words:
        res = outcome(spec, c + joined if direction == FORWARD else joined + c)
        if res is NO:
            return NO
        if res is UNKNOWN:
            result = UNKNOWN
    return result


@_word_cache
def omega_circ(spec: SubshiftSpec, b: Word, n: int = 1, m: int = 1, ext: int = 1) -> ContextSet:
    """Members of the forward omega set of ``b`` that extend ``ext`` more steps inside it."""
    short = omega(spec, b, FORWARD, n, m)
    longer = omega(spec, b, FORWARD, n + ext, m)
    prefixes = {w[:n] for w in longer.words}
    words = tuple(w for w in short.words if w in prefixes)
    return ContextSet(FORWARD, "omega", n, words, history=m,
                      unknown=short.unknown)
