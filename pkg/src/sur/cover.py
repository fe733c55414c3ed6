"""Covering view of fixed-size SURs: incidence degrees, closed-form bounds, greedy cover.

Points are the k-bicolorings of ``[n]``; each r-subset A covers the points it
represents without bias.  Every r-set covers ``a = C(r, r/2) C(n-r, k-r/2)``
points and every point is covered by ``v = C(k, r/2) C(n-k, r/2)`` sets.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .core import (
    DEFAULT_CAP,
    INFEASIBLE,
    Bicoloring,
    CapExceeded,
    IndexSet,
    Infeasible,
    InfeasibleError,
    PreconditionError,
    SurFamily,
    _mask_of,
    enumerate_k_bicolorings,
    enumerate_r_subsets,
    inner_product,
)


def _binom(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def _in_range(n: int, k: int, r: int) -> bool:
    return r % 2 == 0 and 2 <= r <= n and 0 <= k <= n


def cover_degree_a(n: int, k: int, r: int) -> int:
    """Number of k-bicolorings a fixed r-set represents without bias."""
    if not _in_range(n, k, r):
        return 0
    return _binom(r, r // 2) * _binom(n - r, k - r // 2)


def cover_degree_v(n: int, k: int, r: int) -> int:
    """Number of r-sets representing a fixed k-bicoloring without bias."""
    if not _in_range(n, k, r):
        return 0
    return _binom(k, r // 2) * _binom(n - k, r // 2)


def double_counting_check(n: int, k: int, r: int) -> bool:
    return comb(n, k) * cover_degree_v(n, k, r) == _binom(n, r) * cover_degree_a(n, k, r)


def averaging_lower_bound(n: int, k: int, r: int) -> int | Infeasible:
    a = cover_degree_a(n, k, r)
    if a == 0:
        return INFEASIBLE
    return -(-comb(n, k) // a)


def nkr1_lower_bound(n: int, k: int, r: int) -> int:
    """``max(ceil((n-k)/r), ceil(k/r))``: a smaller family leaves a side untouched."""
    if not 1 <= k <= n - 1:
        raise PreconditionError(f"need 1 <= k <= n-1, got k={k}, n={n}")
    if r < 1:
        raise PreconditionError(f"r must be positive, got {r}")
    return max(-(-(n - k) // r), -(-k // r))


def lovasz_stein_bound(n: int, k: int, r: int) -> float | Infeasible:
    """``(C(n, r) / v) * (1 + ln a)``, rounded to 6 significant digits."""
    v = cover_degree_v(n, k, r)
    if v == 0:
        return INFEASIBLE
    ratio = Fraction(comb(n, r), v)
    value = float(ratio) * (1.0 + math.log(cover_degree_a(n, k, r)))
    return float(f"{value:.6g}")


def simplified_upper_bound(n: int, k: int, r: int) -> float | Infeasible:
    """The simplified form ``C(n,k)/a * (1 + 0.7 r + ln C(n-r, k-r/2))``.

    Uses ``ln C(r, r/2) <= 0.7 r``; never smaller than :func:`lovasz_stein_bound`.
    """
    a = cover_degree_a(n, k, r)
    if a == 0:
        return INFEASIBLE
    value = comb(n, k) / a * (1.0 + 0.7 * r + math.log(_binom(n - r, k - r // 2)))
    return float(f"{value:.6g}")


@dataclass(frozen=True)
class BoundsReport:
    n: int
    k: int
    r: int
    a: int
    v: int
    lovasz_stein_upper: float | Infeasible
    averaging_lower: int | Infeasible
    nkr1_lower: int
    combined_lower: int | Infeasible

    @property
    def feasible(self) -> bool:
        return self.combined_lower is not INFEASIBLE

    def to_record(self) -> dict:
        rec = asdict(self)
        for key, val in rec.items():
            if val is INFEASIBLE:
                rec[key] = "INFEASIBLE"
        return rec


def bounds_report(n: int, k: int, r: int) -> BoundsReport:
    avg = averaging_lower_bound(n, k, r)
    nkr1 = nkr1_lower_bound(n, k, r)
    combined = INFEASIBLE if avg is INFEASIBLE else max(avg, nkr1)
    return BoundsReport(
        n=n,
        k=k,
        r=r,
        a=cover_degree_a(n, k, r),
        v=cover_degree_v(n, k, r),
        lovasz_stein_upper=lovasz_stein_bound(n, k, r),
        averaging_lower=avg,
        nkr1_lower=nkr1,
        combined_lower=combined,
    )


@dataclass
class CoverInstance:
    """Construction 1 incidence: k-bicolorings as points, r-sets as covering sets.

    ``coverage[j]`` is the bitmask (over point indices) of points covered by
    ``sets[j]``; it is built by generating each set's covered points directly,
    so the cost is proportional to the number of incidences.
    """

    n: int
    k: int
    r: int
    points: list[Bicoloring]
    sets: list[IndexSet]
    coverage: list[int]

    @classmethod
    def build(cls, n: int, k: int, r: int, cap: int = DEFAULT_CAP) -> "CoverInstance":
        if r % 2 or not 2 <= r <= n or not 0 <= k <= n:
            raise PreconditionError(f"need even 2 <= r <= n and 0 <= k <= n, got ({n},{k},{r})")
        if comb(n, r) * cover_degree_a(n, k, r) > cap:
            raise CapExceeded(f"cover instance ({n},{k},{r}) has more than {cap} incidences")
        points = enumerate_k_bicolorings(n, k, cap).items
        sets = enumerate_r_subsets(n, r, cap)
        index = {b.plus: i for i, b in enumerate(points)}
        h = r // 2
        rest = k - h
        coverage = []
        for a in sets:
            members = a.members
            outside = [i for i in range(1, n + 1) if a.mask >> (i - 1) & 1 == 0]
            cov = 0
            if 0 <= rest <= len(outside):
                outer = [_mask_of(c) for c in combinations(outside, rest)]
                for inner in combinations(members, h):
                    im = _mask_of(inner)
                    for om in outer:
                        cov |= 1 << index[im | om]
            coverage.append(cov)
        return cls(n, k, r, list(points), sets, coverage)

    def brute_force_coverage(self, j: int) -> int:
        """Points covered by set ``j``, by testing every point."""
        a = self.sets[j]
        return sum(1 for b in self.points if inner_product(a, b) == 0)

    def brute_force_degree(self, i: int) -> int:
        """Sets covering point ``i``, by testing every set."""
        b = self.points[i]
        return sum(1 for a in self.sets if inner_product(a, b) == 0)


def greedy_set_cover(universe_size: int, coverage: list[int]) -> list[int]:
    """Greedy cover of ``range(universe_size)`` by bitmasks; ties go to the lowest index.

    Lazy evaluation: stale gains are upper bounds, so a popped candidate whose
    refreshed gain still beats the heap top is a true maximiser.
    """
    uncovered = (1 << universe_size) - 1
    heap = [(-c.bit_count(), j) for j, c in enumerate(coverage) if c]
    heapq.heapify(heap)
    chosen: list[int] = []
    while uncovered:
        if not heap:
            raise InfeasibleError("some points are covered by no candidate set")
        _, j = heapq.heappop(heap)
        gain = (coverage[j] & uncovered).bit_count()
        if gain == 0:
            continue
        if heap and (-gain, j) > heap[0]:
            heapq.heappush(heap, (-gain, j))
            continue
        chosen.append(j)
        uncovered &= ~coverage[j]
    return chosen


def greedy_cover(n: int, k: int, r: int, cap: int = DEFAULT_CAP) -> SurFamily:
    """Lovasz-Stein greedy SUR of r-sets for all k-bicolorings of ``[n]``."""
    if cover_degree_v(n, k, r) == 0:
        raise InfeasibleError(f"no {r}-set represents a {k}-bicoloring of [{n}]")
    inst = CoverInstance.build(n, k, r, cap)
    chosen = greedy_set_cover(len(inst.points), inst.coverage)
    return SurFamily(n, tuple(inst.sets[j] for j in chosen))


def v_pair_formula(n: int, k: int, r: int, x: int) -> int:
    """Number of r-sets representing both of two k-bicolorings whose plus sets share x points."""
    if r % 2:
        raise PreconditionError(f"r must be even, got {r}")
    if not 0 <= x <= k:
        raise PreconditionError(f"need 0 <= x <= k, got x={x}, k={k}")
    total = 0
    h = r // 2
    for j in range(0, min(x, h) + 1):
        i = h - j
        if i > k - x:
            continue
        total += _binom(x, j) * _binom(n - 2 * k + x, j) * _binom(k - x, i) ** 2
    return total


def v_pair_bruteforce(b: Bicoloring, d: Bicoloring, r: int, cap: int = DEFAULT_CAP) -> int:
    if b.n != d.n:
        raise PreconditionError("bicolorings must share n")
    if b.plus_count != d.plus_count:
        raise PreconditionError("bicolorings must have the same number of plus points")
    if b == d:
        raise PreconditionError("v_pair needs two distinct bicolorings")
    return sum(
        1
        for a in enumerate_r_subsets(b.n, r, cap)
        if inner_product(a, b) == 0 and inner_product(a, d) == 0
    )


def v_pair_ratio(n: int, k: int) -> Fraction:
    """``v_pair / v`` for ``r = 2k`` as an exact rational."""
    r = 2 * k
    return Fraction(_binom(n - k - 1, r // 2 - 1), cover_degree_v(n, k, r))
