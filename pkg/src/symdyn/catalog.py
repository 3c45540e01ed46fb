"""Small named shifts used in tests, docs and the CLI."""

from __future__ import annotations

from .shannon import LabelledGraph
from .subshift import Coded, FullShift, Sft, Sofic
from .words import Alphabet

BINARY = Alphabet(("0", "1"))


def golden_mean() -> Sft:
    """No two consecutive 1s."""
    return Sft(BINARY, frozenset({("1", "1")}))


def even_shift() -> Sofic:
    """Blocks of 0s between 1s have even length."""
    edges = {("E", "1", "E"), ("E", "0", "O"), ("O", "0", "E")}
    return Sofic(LabelledGraph(BINARY, ("E", "O"), frozenset(edges)))


def even_sft(max_len: int = 9) -> Sft:
    """Even shift approximated by forbidding ``1 0^(2j+1) 1`` up to ``max_len``."""
    forbidden = frozenset(
        ("1",) + ("0",) * k + ("1",) for k in range(1, max_len - 1, 2))
    return Sft(BINARY, forbidden)


def full_shift(symbols=("0", "1")) -> FullShift:
    return FullShift(Alphabet(tuple(symbols)))


CODED_ALPHABET = Alphabet(("g", "0"))


def coded_pairs(count: int = 4, truncation: int = 24) -> Coded:
    """Code words ``g 0^(2l)`` for ``l = 1..count``.

    This is the literal reading of the family ``g 0^l 0^l``; a missing
    middle symbol is suspected, so results are provisional.
    """
    words = tuple(("g",) + ("0",) * (2 * l) for l in range(1, count + 1))
    return Coded(CODED_ALPHABET, words, max(truncation, 2 * len(words[-1])))


def coded_quads(count: int = 3, truncation: int = 26) -> Coded:
    """Code words ``g 0^(4l)`` for ``l = 1..count``; literal reading of ``g 0^(2l) 0^(2l)``."""
    words = tuple(("g",) + ("0",) * (4 * l) for l in range(1, count + 1))
    return Coded(CODED_ALPHABET, words, max(truncation, 2 * len(words[-1])))


BUNDLED = {
    "golden_mean": golden_mean,
    "even_shift": even_shift,
    "even_sft9": even_sft,
    "full_shift": full_shift,
    "coded_pairs": coded_pairs,
    "coded_quads": coded_quads,
}
