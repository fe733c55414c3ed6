"""Bicolorings, index sets, inner products and SUR verification.

A bicoloring of ``[n]`` is stored as the bitmask of its ``+1`` points (bit
``i - 1`` set means ``B(i) = +1``); an index set is stored as the bitmask of
its members.  Python integers are arbitrary width, so the same code path
serves every ``n``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

DEFAULT_CAP = 5_000_000


class SurError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class DimensionMismatch(SurError, ValueError):
    pass


class CapExceeded(SurError):
    pass


class TrivialBicoloringError(SurError, ValueError):
    pass


class PreconditionError(SurError, ValueError):
    pass


class InfeasibleError(SurError):
    pass


class Infeasible(enum.Enum):
    """Sentinel for bounds that do not exist (no set can cover anything)."""

    INFEASIBLE = "INFEASIBLE"

    def __repr__(self) -> str:
        return "INFEASIBLE"


INFEASIBLE = Infeasible.INFEASIBLE


def _full_mask(n: int) -> int:
    return (1 << n) - 1


def _members_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _mask_of(members: Iterable[int]) -> int:
    m = 0
    for i in members:
        m |= 1 << (i - 1)
    return m


@dataclass(frozen=True, order=True)
class Bicoloring:
    """A map ``[n] -> {-1, +1}`` held as the bitmask of its ``+1`` points."""

    n: int
    plus: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise PreconditionError(f"n must be positive, got {self.n}")
        if self.plus < 0 or self.plus >> self.n:
            raise PreconditionError("plus mask has bits outside [n]")

    @classmethod
    def from_colors(cls, colors: Sequence[int]) -> "Bicoloring":
        mask = 0
        for i, c in enumerate(colors):
            if c == 1:
                mask |= 1 << i
            elif c != -1:
                raise PreconditionError(f"color must be +1 or -1, got {c!r}")
        return cls(len(colors), mask)

    @classmethod
    def from_string(cls, text: str) -> "Bicoloring":
        text = text.strip()
        if not text or set(text) - {"+", "-"}:
            raise PreconditionError(f"bad bicoloring string {text!r}")
        return cls.from_colors([1 if ch == "+" else -1 for ch in text])

    @classmethod
    def from_plus_set(cls, n: int, plus: Iterable[int]) -> "Bicoloring":
        plus = list(plus)
        if any(not 1 <= i <= n for i in plus):
            raise PreconditionError("plus points must lie in [n]")
        return cls(n, _mask_of(plus))

    @property
    def minus(self) -> int:
        return _full_mask(self.n) & ~self.plus

    @property
    def colors(self) -> tuple[int, ...]:
        return tuple(1 if (self.plus >> i) & 1 else -1 for i in range(self.n))

    @property
    def plus_count(self) -> int:
        return self.plus.bit_count()

    @property
    def plus_points(self) -> tuple[int, ...]:
        return _members_of(self.plus)

    @property
    def minus_points(self) -> tuple[int, ...]:
        return _members_of(self.minus)

    @property
    def is_trivial(self) -> bool:
        return self.plus_count in (0, self.n)

    def flip(self) -> "Bicoloring":
        return Bicoloring(self.n, self.minus)

    def to_string(self) -> str:
        return "".join("+" if c == 1 else "-" for c in self.colors)

    def to_record(self) -> dict:
        return {"n": self.n, "colors": list(self.colors)}

    def __str__(self) -> str:
        return self.to_string()


@dataclass(frozen=True, order=True)
class IndexSet:
    """A subset of ``[n]`` held as a bitmask of its 1-based members."""

    n: int
    mask: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise PreconditionError(f"n must be positive, got {self.n}")
        if self.mask < 0 or self.mask >> self.n:
            raise PreconditionError("index set has members outside [n]")

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "IndexSet":
        members = list(members)
        if len(set(members)) != len(members):
            raise PreconditionError(f"duplicate members in {members}")
        if any(not 1 <= i <= n for i in members):
            raise PreconditionError(f"members {members} not within [1, {n}]")
        return cls(n, _mask_of(members))

    @classmethod
    def from_string(cls, n: int, text: str) -> "IndexSet":
        parts = [p.strip() for p in text.split(",") if p.strip()]
        try:
            return cls.of(n, [int(p) for p in parts])
        except ValueError as exc:
            raise PreconditionError(f"bad index set {text!r}: {exc}") from None

    @property
    def members(self) -> tuple[int, ...]:
        return _members_of(self.mask)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, i: object) -> bool:
        return isinstance(i, int) and 1 <= i <= self.n and bool(self.mask >> (i - 1) & 1)

    def sort_key(self) -> tuple[int, ...]:
        return self.members

    def to_string(self) -> str:
        return ",".join(map(str, self.members))

    def to_record(self) -> dict:
        return {"n": self.n, "members": list(self.members)}

    def __str__(self) -> str:
        return "{" + self.to_string() + "}"


@dataclass(frozen=True)
class BicoloringFamily:
    n: int
    items: tuple[Bicoloring, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(self.items))
        for b in self.items:
            if b.n != self.n:
                raise DimensionMismatch(f"bicoloring on [{b.n}] in family over [{self.n}]")

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[Bicoloring]:
        return iter(self.items)

    def __getitem__(self, i: int) -> Bicoloring:
        return self.items[i]

    def require_nontrivial(self) -> None:
        for idx, b in enumerate(self.items):
            if b.is_trivial:
                raise TrivialBicoloringError(
                    f"bicoloring #{idx} ({b}) is monochromatic and has no unbiased representative"
                )

    def is_flip_closed(self) -> bool:
        masks = {b.plus for b in self.items}
        return all(b.minus in masks for b in self.items)

    def to_text(self) -> str:
        return "\n".join([str(self.n)] + [b.to_string() for b in self.items]) + "\n"

    def to_records(self) -> list[dict]:
        return [b.to_record() for b in self.items]


@dataclass(frozen=True)
class SurFamily:
    """An ordered family of index sets proposed as a SUR.

    Exact families hold distinct, non-empty, even-sized sets.  ``biased``
    families (tolerance-based output of the random sampler) may contain odd
    sizes and repeats.
    """

    n: int
    sets: tuple[IndexSet, ...]
    biased: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "sets", tuple(self.sets))
        seen = set()
        for a in self.sets:
            if a.n != self.n:
                raise DimensionMismatch(f"set on [{a.n}] in family over [{self.n}]")
            if a.size == 0:
                raise PreconditionError("SUR members must be non-empty")
            if self.biased:
                continue
            if a.size % 2:
                raise PreconditionError(f"SUR member {a} has odd cardinality")
            if a.mask in seen:
                raise PreconditionError(f"duplicate SUR member {a}")
            seen.add(a.mask)

    @classmethod
    def of(cls, n: int, sets: Iterable[Iterable[int]], biased: bool = False) -> "SurFamily":
        return cls(n, tuple(IndexSet.of(n, s) for s in sets), biased=biased)

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[IndexSet]:
        return iter(self.sets)

    def __getitem__(self, i: int) -> IndexSet:
        return self.sets[i]

    def as_lists(self) -> list[list[int]]:
        return [list(a.members) for a in self.sets]

    def to_record(self) -> dict:
        return {"n": self.n, "size": len(self.sets), "sets": self.as_lists()}

    def to_text(self) -> str:
        return "\n".join([str(self.n)] + [a.to_string() for a in self.sets]) + "\n"


@dataclass(frozen=True)
class Witness:
    index: int
    value: int


UNCOVERED = None


@dataclass(frozen=True)
class Certificate:
    """Per-bicoloring witnesses; an entry is ``None`` when uncovered."""

    entries: tuple[Witness | None, ...]
    delta: int = 0

    @property
    def complete(self) -> bool:
        return all(e is not None for e in self.entries)

    @property
    def uncovered(self) -> list[int]:
        return [i for i, e in enumerate(self.entries) if e is None]

    def max_abs_value(self) -> int:
        return max((abs(e.value) for e in self.entries if e is not None), default=0)

    def to_record(self, bicolorings: BicoloringFamily | None = None) -> dict:
        rec: dict = {
            "delta": self.delta,
            "covered": len(self.entries) - len(self.uncovered),
            "total": len(self.entries),
            "valid": self.complete,
            "entries": [
                None if e is None else {"witness": e.index, "value": e.value}
                for e in self.entries
            ],
        }
        if bicolorings is not None:
            rec["uncovered"] = [bicolorings[i].to_string() for i in self.uncovered]
        return rec


def _check_dims(a: IndexSet, b: Bicoloring) -> None:
    if a.n != b.n:
        raise DimensionMismatch(f"index set over [{a.n}] vs bicoloring over [{b.n}]")


def inner_product(a: IndexSet, b: Bicoloring) -> int:
    """``<X_A, Y_B>``: plus points of B in A minus minus points of B in A."""
    _check_dims(a, b)
    return 2 * (a.mask & b.plus).bit_count() - a.mask.bit_count()


def is_unbiased_rep(a: IndexSet, b: Bicoloring) -> bool:
    if a.size == 0:
        raise PreconditionError("an unbiased representative must be non-empty")
    return inner_product(a, b) == 0


def verify_sur(family: SurFamily, bicolorings: BicoloringFamily, delta: int = 0) -> Certificate:
    """Record, for each bicoloring, the first family set within ``delta``."""
    if family.n != bicolorings.n:
        raise DimensionMismatch(f"family over [{family.n}] vs bicolorings over [{bicolorings.n}]")
    if delta < 0:
        raise PreconditionError("delta must be non-negative")
    masks = [(a.mask, a.mask.bit_count()) for a in family.sets]
    entries: list[Witness | None] = []
    for b in bicolorings.items:
        plus = b.plus
        found = None
        for idx, (m, size) in enumerate(masks):
            value = 2 * (m & plus).bit_count() - size
            if -delta <= value <= delta:
                found = Witness(idx, value)
                break
        entries.append(found)
    return Certificate(tuple(entries), delta)


def _check_cap(count: int, cap: int, what: str) -> None:
    if count > cap:
        raise CapExceeded(f"{what}: {count} objects exceeds enumeration cap {cap}")


def enumerate_k_bicolorings(n: int, k: int, cap: int = DEFAULT_CAP) -> BicoloringFamily:
    if n < 1 or not 0 <= k <= n:
        raise PreconditionError(f"need 0 <= k <= n and n >= 1, got n={n}, k={k}")
    _check_cap(comb(n, k), cap, f"k-bicolorings of [{n}] with k={k}")
    items = tuple(Bicoloring(n, _mask_of(c)) for c in combinations(range(1, n + 1), k))
    return BicoloringFamily(n, items)


def enumerate_nontrivial_bicolorings(n: int, cap: int = DEFAULT_CAP) -> BicoloringFamily:
    """All ``2^n - 2`` non-monochromatic bicolorings, grouped by plus count."""
    if n < 2:
        raise PreconditionError("[n] has no nontrivial bicoloring for n < 2")
    _check_cap(2**n - 2, cap, f"nontrivial bicolorings of [{n}]")
    items: list[Bicoloring] = []
    for k in range(1, n):
        items.extend(enumerate_k_bicolorings(n, k, cap).items)
    return BicoloringFamily(n, tuple(items))


def enumerate_even_subsets(n: int, r_min: int, r_max: int, cap: int = DEFAULT_CAP) -> list[IndexSet]:
    if r_min % 2 or r_max % 2 or not 2 <= r_min <= r_max <= n:
        raise PreconditionError(f"need even 2 <= r_min <= r_max <= n, got ({r_min}, {r_max}, n={n})")
    _check_cap(sum(comb(n, r) for r in range(r_min, r_max + 1, 2)), cap, "even subsets")
    tuples = [c for r in range(r_min, r_max + 1, 2) for c in combinations(range(1, n + 1), r)]
    tuples.sort()
    return [IndexSet(n, _mask_of(c)) for c in tuples]


def enumerate_r_subsets(n: int, r: int, cap: int = DEFAULT_CAP) -> list[IndexSet]:
    if not 0 <= r <= n:
        raise PreconditionError(f"need 0 <= r <= n, got r={r}, n={n}")
    _check_cap(comb(n, r), cap, f"{r}-subsets of [{n}]")
    return [IndexSet(n, _mask_of(c)) for c in combinations(range(1, n + 1), r)]


# text / structured formats


def parse_bicolorings(text: str, allow_trivial: bool = False) -> BicoloringFamily:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise PreconditionError("empty bicoloring file")
    try:
        n = int(lines[0])
    except ValueError:
        raise PreconditionError(f"first line must be n, got {lines[0]!r}") from None
    items = []
    for ln in lines[1:]:
        b = Bicoloring.from_string(ln)
        if b.n != n:
            raise DimensionMismatch(f"line {ln!r} has length {b.n}, expected {n}")
        items.append(b)
    fam = BicoloringFamily(n, tuple(items))
    if not allow_trivial:
        fam.require_nontrivial()
    return fam


def parse_family(text: str, biased: bool = False) -> SurFamily:
    """Read a family from JSON (record, run record, or member list) or text.

    Text format: first line ``n``, then one comma-separated index set per line.
    """
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        data = json.loads(stripped)
        if isinstance(data, dict) and "outputs" in data:
            data = data["outputs"].get("family", data["outputs"])
        if isinstance(data, dict):
            biased = biased or bool(data.get("biased", False))
            return SurFamily.of(int(data["n"]), data["sets"], biased=biased)
        if not data:
            raise PreconditionError("empty family list; n unknown")
        n = int(data[0]["n"])
        return SurFamily.of(n, [rec["members"] for rec in data], biased=biased)
    lines = [ln.strip() for ln in stripped.splitlines() if ln.strip()]
    if not lines:
        raise PreconditionError("empty family file")
    n = int(lines[0])
    return SurFamily(n, tuple(IndexSet.from_string(n, ln) for ln in lines[1:]), biased=biased)
