"""Hitting-set route to SURs.

Each bicoloring contributes its plus side and its minus side as two sets to
hit.  If ``H = (h_1, h_2, ...)`` hits all of them then the pairs
``{h_1, h_q}`` form a SUR: ``h_1`` lies on one side of every bicoloring and
some ``h_q`` lies on the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import (
    BicoloringFamily,
    PreconditionError,
    SurFamily,
    TrivialBicoloringError,
)


@dataclass(frozen=True)
class HittingInstance:
    n: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        for s in self.sets:
            if not s:
                raise PreconditionError("hitting instances may not contain the empty set")
            if min(s) < 1 or max(s) > self.n:
                raise PreconditionError(f"set {sorted(s)} not within [1, {self.n}]")

    def is_complement_closed(self) -> bool:
        universe = frozenset(range(1, self.n + 1))
        present = set(self.sets)
        return all(universe - s in present for s in self.sets)

    def is_hit_by(self, elements: Iterable[int]) -> bool:
        chosen = set(elements)
        return all(s & chosen for s in self.sets)

    def as_lists(self) -> list[list[int]]:
        return [sorted(s) for s in self.sets]


@dataclass(frozen=True)
class HittingSet:
    elements: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)


def bicolorings_to_setfamily(bicolorings: BicoloringFamily) -> HittingInstance:
    sets = []
    for idx, b in enumerate(bicolorings):
        if b.is_trivial:
            raise TrivialBicoloringError(f"bicoloring #{idx} ({b}) is monochromatic")
        sets.append(frozenset(b.plus_points))
        sets.append(frozenset(b.minus_points))
    return HittingInstance(bicolorings.n, tuple(sets))


def greedy_hitting_set(instance: HittingInstance) -> HittingSet:
    """Pick the element hitting the most un-hit sets until all are hit (ties: smallest)."""
    pending = list(instance.sets)
    picked: list[int] = []
    while pending:
        counts = [0] * (instance.n + 1)
        for s in pending:
            for e in s:
                counts[e] += 1
        best = max(range(1, instance.n + 1), key=lambda e: (counts[e], -e))
        picked.append(best)
        pending = [s for s in pending if best not in s]
    return HittingSet(tuple(picked))


def sur_from_hitting_set(h: HittingSet | Iterable[int], n: int) -> SurFamily:
    """Pairs ``{h_1, h_q}`` for ``q > 1``."""
    elements = tuple(h.elements if isinstance(h, HittingSet) else h)
    if len(elements) < 2:
        raise PreconditionError(
            "a hitting set of a nonempty bicoloring family has at least two elements"
        )
    if len(set(elements)) != len(elements):
        raise PreconditionError("hitting set elements must be distinct")
    first = elements[0]
    return SurFamily.of(n, [(first, q) for q in elements[1:]])


def hitting_sur(bicolorings: BicoloringFamily) -> tuple[SurFamily, HittingSet]:
    """Greedy hitting set of both sides of every bicoloring, turned into pairs."""
    h = greedy_hitting_set(bicolorings_to_setfamily(bicolorings))
    return sur_from_hitting_set(h, bicolorings.n), h


def complement_close(sets: Iterable[Iterable[int]], n: int) -> HittingInstance:
    """Add element ``n + 1`` and the ``[n+1]``-complement of every set."""
    base = [frozenset(s) for s in sets]
    for s in base:
        if not s:
            raise PreconditionError("complement_close needs non-empty sets")
        if min(s) < 1 or max(s) > n:
            raise PreconditionError(f"set {sorted(s)} not within [1, {n}]")
    universe = frozenset(range(1, n + 2))
    return HittingInstance(n + 1, tuple(base + [universe - s for s in base]))
