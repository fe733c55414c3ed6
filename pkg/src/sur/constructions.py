"""Explicit deterministic SUR constructions."""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Bicoloring,
    IndexSet,
    PreconditionError,
    SurFamily,
    _mask_of,
    _members_of,
    inner_product,
)


def star(n: int) -> SurFamily:
    """Pairs ``{1, j}`` for ``j = 2..n``; covers every nontrivial bicoloring."""
    if n < 2:
        raise PreconditionError(f"star needs n >= 2, got {n}")
    return SurFamily.of(n, [(1, j) for j in range(2, n + 1)])


def dyadic(n: int) -> SurFamily:
    """Union of the consecutive partitions of ``[n]`` into blocks of size 2, 4, ..., n."""
    if n < 2 or n & (n - 1):
        raise PreconditionError(f"dyadic needs n to be a power of two >= 2, got {n}")
    sets = []
    width = 2
    while width <= n:
        for start in range(1, n + 1, width):
            sets.append(range(start, start + width))
        width *= 2
    return SurFamily.of(n, sets)


def _check_window_n(n: int) -> None:
    if n < 4 or n % 4:
        raise PreconditionError(f"sliding window needs n >= 4 with n/2 even, got {n}")


def sliding_window(n: int) -> SurFamily:
    """Windows ``{i, ..., i + n/2 - 1}`` for ``i = 1..n/2``.

    Covers every bicoloring with exactly ``n/2`` plus points.
    """
    _check_window_n(n)
    h = n // 2
    return SurFamily.of(n, [range(i, i + h) for i in range(1, h + 1)])


@dataclass(frozen=True)
class WindowProfile:
    values: tuple[int, ...]

    def zero_index(self) -> int | None:
        """1-based index of the first zero window, or None."""
        for i, c in enumerate(self.values, start=1):
            if c == 0:
                return i
        return None

    def check(self) -> list[str]:
        """Names of violated invariants (empty when all hold)."""
        bad = []
        vals = self.values
        if any(c % 2 for c in vals):
            bad.append("even")
        if any(abs(a - b) not in (0, 2) for a, b in zip(vals, vals[1:])):
            bad.append("step")
        if vals[0] * vals[-1] > 0:
            bad.append("sign-change")
        if 0 not in vals:
            bad.append("zero")
        return bad


def window_profile(n: int, b: Bicoloring) -> WindowProfile:
    _check_window_n(n)
    if b.n != n:
        raise PreconditionError(f"bicoloring over [{b.n}] but n={n}")
    if b.plus_count != n // 2:
        raise PreconditionError(f"window profile needs a balanced bicoloring, got {b.plus_count} plus points")
    return WindowProfile(tuple(inner_product(a, b) for a in sliding_window(n)))


def singleton_edge_cover(n: int) -> SurFamily:
    """Edge cover of the complete graph on ``[n]`` with ``ceil(n/2)`` pairs.

    A SUR for the bicolorings with a single plus point.
    """
    if n < 2:
        raise PreconditionError(f"edge cover needs n >= 2, got {n}")
    pairs = [(i, i + 1) for i in range(1, n, 2)]
    if n % 2:
        pairs.append((n - 1, n))
    return SurFamily.of(n, pairs)


def recursive_lift(base: SurFamily, n: int, r: int) -> SurFamily:
    """Lift a SUR of ``(r-2)``-sets for (k-1)-bicolorings to ``r``-sets for k-bicolorings.

    Each base set A with complement ``x_1 < x_2 < ...`` yields
    ``A | {x_1, x_j}`` for every ``j >= 2``.  Repeats are dropped.
    """
    if r % 2:
        raise PreconditionError(f"r must be even, got {r}")
    if r < 4 or r > n:
        raise PreconditionError(f"need 4 <= r <= n, got r={r}, n={n}")
    if base.n != n:
        raise PreconditionError(f"base family over [{base.n}] but n={n}")
    full = (1 << n) - 1
    seen: set[int] = set()
    out: list[IndexSet] = []
    for a in base.sets:
        if a.size != r - 2:
            raise PreconditionError(f"base set {a} has size {a.size}, expected {r - 2}")
        rest = _members_of(full & ~a.mask)
        x1 = rest[0]
        for xj in rest[1:]:
            m = a.mask | _mask_of((x1, xj))
            if m not in seen:
                seen.add(m)
                out.append(IndexSet(n, m))
    return SurFamily(n, tuple(out))
