from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

FORWARD = "forward"
BACKWARD = "backward"


@dataclass(frozen=True)
class ContextSet:
    """Finite-depth approximation of a follower or predecessor set.

    ``kind`` is ``"gamma"`` for plain extension sets and ``"omega"`` for the
    intrinsic ones (extensions valid after every history).  ``unknown``
    holds words whose admissibility could not be settled; they are never
    part of ``words``.
    """

    direction: str
    kind: str
    depth: int
    words: tuple
    history: Optional[int] = None
    unknown: tuple = ()
    exact: bool = False

    def __post_init__(self):
        if self.direction not in (FORWARD, BACKWARD):
            raise ValueError(f"bad direction {self.direction!r}")
        if any(len(w) != self.depth for w in self.words):
            raise ValueError("context words must all have length depth")

    def __contains__(self, word):
        return tuple(word) in self.as_set

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)

    @property
    def as_set(self) -> frozenset:
        try:
            return self.__dict__["_set"]
        except KeyError:
            s = frozenset(self.words)
            object.__setattr__(self, "_set", s)
            return s

    @property
    def approximate(self) -> bool:
        return bool(self.unknown)
