"""Depth-bounded detection of synchronizing, s-synchronizing and a-synchronizing words.

For finitely presented shifts some questions are settled exactly on the
exact future cover (see :func:`symdyn.covers.exact_cover`):

* ``b`` is synchronizing iff reading ``b`` from every state ends in a single
  state (a focusing word);
* "some ``d`` with ``d c`` in the forward omega set of ``b``" holds iff, in the
  subset system where every tracked state must follow each symbol, some set
  reachable from the states after ``b`` can read ``c``.  The backward
  variant runs the same test on the cover of the reversed shift.

Everything else is checked up to the requested depths and reported as
"yes at depth" rather than an exact yes.
"""

from __future__ import annotations

import csv
import io
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .context import BACKWARD, FORWARD
from .covers import exact_cover, ray_states_after
from .shannon import transition
from .subshift import (
    NO,
    YES,
    FullShift,
    SubshiftSpec,
    gamma,
    language,
    omega,
    omega_circ,
    omega_contains,
    outcome,
)
from .verdict import Verdict, no, unknown, yes
from .words import InputError

SYNCHRO = "synchro"
S_SYNCHRO = "s_synchro"
A_SYNCHRO = "a_synchro"


@dataclass(frozen=True)
class SyncReport:
    word: tuple
    kind: str
    verdict: Verdict
    depths: tuple
    witness: Optional[tuple] = None

    def row(self, alphabet) -> list:
        fmt = alphabet.format
        witness = "" if self.witness is None else " ".join(fmt(w) for w in self.witness)
        return [fmt(self.word), self.kind, self.verdict.label(),
                "/".join(str(d) for d in self.depths), witness]


CSV_HEADER = ["word", "kind", "verdict", "depths", "witness"]


def reports_csv(reports, alphabet) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in reports:
        writer.writerow(r.row(alphabet))
    return buf.getvalue()


def _admissible_word(spec, b):
    b = spec.alphabet.check(b)
    if outcome(spec, b) is not YES:
        raise InputError(f"word {spec.alphabet.format(b)!r} is not admissible")
    return b


def _sync_witness(spec, b, max_k):
    """Least ``(c, d)`` with ``c b`` and ``b d`` admissible but ``c b d`` not."""
    for k in range(1, max_k + 1):
        cs = gamma(spec, b, BACKWARD, k).words
        ds = gamma(spec, b, FORWARD, k).words
        for c in cs:
            for d in ds:
                if outcome(spec, c + b + d) is NO:
                    return c, d
    return None


def is_synchronizing_word(spec: SubshiftSpec, b, depth: int = 6) -> SyncReport:
    b = _admissible_word(spec, b)
    depths = (depth,)
    if isinstance(spec, FullShift):
        return SyncReport(b, SYNCHRO, yes(depth, exact=True, certificate="full shift"), depths)
    if spec.finitely_presented:
        cover = exact_cover(spec)
        ends = ray_states_after(cover, b)
        if len(ends) == 1:
            (state,) = ends
            return SyncReport(b, SYNCHRO, yes(depth, exact=True, certificate=state), depths)
        witness = _sync_witness(spec, b, max(depth, 2 * len(cover) + 2))
        if witness is None:
            return SyncReport(b, SYNCHRO, unknown(depth), depths)
        return SyncReport(b, SYNCHRO, no(witness, depth), depths, witness)
    witness = _sync_witness(spec, b, depth)
    if witness is not None:
        return SyncReport(b, SYNCHRO, no(witness, depth), depths, witness)
    return SyncReport(b, SYNCHRO, yes(depth), depths)


def enumerate_sync_words(spec: SubshiftSpec, max_len: int, depth: int = 6) -> list:
    """Reports for every admissible word of length 1..max_len in shortlex order.

    A word whose prefix is exactly synchronizing is synchronizing too, so
    such words are not re-checked.
    """
    if max_len < 1:
        raise InputError("max_len must be at least 1")
    reports = []
    exact_sync = set()
    for n in range(1, max_len + 1):
        for w in language(spec, n).words:
            prefix = w[:-1]
            if prefix in exact_sync:
                report = SyncReport(
                    w, SYNCHRO,
                    yes(depth, exact=True, certificate=("prefix", prefix)), (depth,))
            else:
                report = is_synchronizing_word(spec, w, depth)
            if report.verdict.yes and report.verdict.exact:
                exact_sync.add(w)
            reports.append(report)
    return reports


def _reaches_reader(cover, start, word) -> bool:
    """Is there a set reachable from ``start`` (all members moving together) reading ``word``?"""
    start = frozenset(start)
    if not start:
        return False
    seen = {start}
    queue = deque([start])
    sigma = cover.alphabet.symbols
    while queue:
        s = queue.popleft()
        if all(transition(cover, v, word) is not None for v in s):
            return True
        for a in sigma:
            nxt = [cover.step(v, a) for v in s]
            if any(t is None for t in nxt):
                continue
            t = frozenset(nxt)
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return False


def _prefix_into_omega_exact(spec, b, c) -> bool:
    """Exact: is there ``d`` with ``d c`` in the forward omega set of ``b``?"""
    cover = exact_cover(spec)
    return _reaches_reader(cover, ray_states_after(cover, b), c)


def _suffix_into_omega_exact(spec, b, c) -> bool:
    """Exact: is there ``d`` with ``c d`` in the backward omega set of ``b``?"""
    cover = exact_cover(spec.reversed())
    return _reaches_reader(cover, ray_states_after(cover, b[::-1]), c[::-1])


def _words_upto(spec, k_max):
    for k in range(1, k_max + 1):
        yield from language(spec, k).words


def _find_suffix(spec, b, c, d_len, m):
    for j in range(d_len + 1):
        for d in gamma(spec, c, FORWARD, j).words:
            cd = c + d
            if omega_contains(spec, b, cd, BACKWARD, m) is YES:
                return d
    return None


def is_s_synchronizing_word(spec: SubshiftSpec, b, c_len: int = 4, d_len: int = 4,
                            m: int = 4) -> SyncReport:
    """Every ``c`` up to ``c_len`` must find ``d`` up to ``d_len`` with ``c d`` in the backward omega set of ``b``."""
    b = _admissible_word(spec, b)
    depths = (c_len, d_len, m)
    for c in _words_upto(spec, c_len):
        if _find_suffix(spec, b, c, d_len, m) is not None:
            continue
        if spec.finitely_presented and not _suffix_into_omega_exact(spec, b, c):
            return SyncReport(b, S_SYNCHRO, no((c,), c_len), depths, (c,))
        return SyncReport(b, S_SYNCHRO, unknown(c_len, witness=(c,)), depths, (c,))
    return SyncReport(b, S_SYNCHRO, yes(max(depths)), depths)


def _find_prefix(spec, b, c, d_len, m):
    for j in range(d_len + 1):
        for d in gamma(spec, c, BACKWARD, j).words:
            dc = d + c
            if omega_contains(spec, b, dc, FORWARD, m) is YES:
                return d
    return None


def _find_return(spec, b, c, d_len, n, m):
    """Least ``d`` with ``c d b`` admissible, in omega(b), and omega(b c d b) equal to omega(b)."""
    target = omega(spec, b, FORWARD, n, m).as_set
    for j in range(d_len + 1):
        for d in gamma(spec, c, FORWARD, j).words:
            cdb = c + d + b
            if outcome(spec, cdb) is not YES:
                continue
            if omega_contains(spec, b, cdb, FORWARD, m) is not YES:
                continue
            if omega(spec, b + cdb, FORWARD, n, m).as_set == target:
                return d
    return None


def is_a_synchronizing_word(spec: SubshiftSpec, b, c_len: int = 3, d_len: int = 3,
                            n: int = 3, m: int = 3, ext: int = 3) -> SyncReport:
    """Both a-synchronization conditions, each checked up to the given depths.

    The second condition asks for equality of infinite omega sets; here the
    depth-``n`` sets (with history ``m``) are compared instead, so a positive
    answer is never exact.
    """
    b = _admissible_word(spec, b)
    depths = (c_len, d_len, n, m, ext)
    for c in _words_upto(spec, c_len):
        if _find_prefix(spec, b, c, d_len, m) is not None:
            continue
        if spec.finitely_presented and not _prefix_into_omega_exact(spec, b, c):
            return SyncReport(b, A_SYNCHRO, no((c,), c_len), depths, (c,))
        return SyncReport(b, A_SYNCHRO, unknown(c_len, witness=(c,)), depths, (c,))
    for k in range(1, c_len + 1):
        for c in omega_circ(spec, b, k, m, ext).words:
            if _find_return(spec, b, c, d_len, n, m) is None:
                return SyncReport(b, A_SYNCHRO, unknown(c_len, witness=(c,)), depths, (c,))
    return SyncReport(b, A_SYNCHRO, yes(max(depths)), depths)


def lemma5_return_word(spec: SubshiftSpec, b, search_len: int = 4, n: int = 3,
                       m: int = 3):
    """A word ``d`` with ``d b`` in omega(b) and omega(b d b) equal to omega(b).

    Built in two steps: first ``d1`` with ``d1 b`` in omega(b), then ``d2``
    returning from ``d1 b`` to ``b`` without changing omega; the answer is
    ``d1 b d2``.  Returns None when either search exhausts ``search_len``.
    """
    b = _admissible_word(spec, b)
    first = _find_prefix(spec, b, b, search_len, m)
    if first is None:
        return None
    second = _find_return(spec, b, first + b, search_len, n, m)
    if second is None:
        return None
    return first + b + second
