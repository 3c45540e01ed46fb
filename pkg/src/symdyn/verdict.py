from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Optional


class Outcome(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """Three-valued answer of a depth-bounded semi-decision.

    ``exact`` is set when a YES is backed by a finite certificate (for
    instance a focusing state in a sofic cover); a YES without it means
    "verified up to ``depth``".  A NO always carries a witness.
    """

    outcome: Outcome
    witness: Any = None
    depth: Optional[int] = None
    exact: bool = False
    certificate: Any = None

    def __post_init__(self):
        if self.outcome is Outcome.NO and self.witness is None:
            raise ValueError("a NO verdict needs a witness")

    @property
    def yes(self) -> bool:
        return self.outcome is Outcome.YES

    @property
    def no(self) -> bool:
        return self.outcome is Outcome.NO

    @property
    def unknown(self) -> bool:
        return self.outcome is Outcome.UNKNOWN

    def label(self) -> str:
        if self.outcome is Outcome.YES:
            if self.exact:
                return "yes(exact)"
            return f"yes(depth={self.depth})" if self.depth is not None else "yes"
        return self.outcome.value


def yes(depth=None, exact=False, certificate=None, witness=None) -> Verdict:
    return Verdict(Outcome.YES, witness=witness, depth=depth, exact=exact,
                   certificate=certificate)


def no(witness, depth=None) -> Verdict:
    return Verdict(Outcome.NO, witness=witness, depth=depth, exact=True)


def unknown(depth=None, witness=None) -> Verdict:
    return Verdict(Outcome.UNKNOWN, witness=witness, depth=depth)
