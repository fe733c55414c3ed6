"""Exact minimum SUR by branch and bound over a candidate pool.

The universe is the bicoloring family; each candidate set is reduced to the
bitmask of bicolorings it represents without bias, so the search is a plain
minimum set cover.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Iterable

from .core import (
    DEFAULT_CAP,
    INFEASIBLE,
    BicoloringFamily,
    IndexSet,
    InfeasibleError,
    PreconditionError,
    SurFamily,
    enumerate_even_subsets,
    enumerate_k_bicolorings,
    enumerate_nontrivial_bicolorings,
    enumerate_r_subsets,
)
from .cover import bounds_report, greedy_set_cover

PROVED_OPTIMAL = "PROVED_OPTIMAL"
BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"


@dataclass(frozen=True)
class SearchConfig:
    """Candidate pool and budgets.

    ``r`` set means FIXED_R(r); otherwise ALL_EVEN(r_min, r_max), where
    ``r_max=None`` stands for the largest even size ``<= n``.
    """

    r: int | None = None
    r_min: int = 2
    r_max: int | None = None
    node_budget: int = 10**8
    time_budget: float = 300.0

    def __post_init__(self) -> None:
        if self.r is not None and (self.r < 2 or self.r % 2):
            raise PreconditionError(f"fixed r must be even and >= 2, got {self.r}")
        if self.r_min < 2 or self.r_min % 2:
            raise PreconditionError(f"r_min must be even and >= 2, got {self.r_min}")
        if self.r_max is not None and (self.r_max % 2 or self.r_max < self.r_min):
            raise PreconditionError(f"r_max must be even and >= r_min, got {self.r_max}")
        if self.node_budget <= 0 or self.time_budget <= 0:
            raise PreconditionError("budgets must be positive")

    @classmethod
    def fixed(cls, r: int, **kw) -> "SearchConfig":
        return cls(r=r, **kw)

    def pool(self, n: int, cap: int = DEFAULT_CAP) -> list[IndexSet]:
        if self.r is not None:
            if self.r > n:
                return []
            return enumerate_r_subsets(n, self.r, cap)
        hi = self.r_max if self.r_max is not None else n - n % 2
        hi = min(hi, n - n % 2)
        if hi < self.r_min:
            return []
        return enumerate_even_subsets(n, self.r_min, hi, cap)

    def describe(self) -> str:
        if self.r is not None:
            return f"FIXED_R({self.r})"
        return f"ALL_EVEN({self.r_min}, {self.r_max if self.r_max is not None else 'n'})"


@dataclass(frozen=True)
class OptimalResult:
    family: SurFamily
    size: int
    status: str
    lower_bound: int
    nodes: int = 0
    elapsed: float = field(default=0.0, compare=False)

    @property
    def proved(self) -> bool:
        return self.status == PROVED_OPTIMAL

    def to_record(self) -> dict:
        return {
            "status": self.status,
            "size": self.size,
            "lower_bound": self.lower_bound,
            "nodes": self.nodes,
            "family": self.family.to_record(),
        }


class _Budget(Exception):
    pass


def _coverage_masks(points: list[int], pool: list[IndexSet]) -> list[int]:
    masks = []
    for a in pool:
        m, size = a.mask, a.mask.bit_count()
        cov = 0
        for i, plus in enumerate(points):
            if 2 * (m & plus).bit_count() == size:
                cov |= 1 << i
        masks.append(cov)
    return masks


def _reduce_pool(coverage: list[int]) -> list[int]:
    """Indices of candidates whose coverage is not contained in another's.

    Among identical masks the lowest index survives, so the reduced pool keeps
    the lexicographically earliest representative.
    """
    order = sorted(range(len(coverage)), key=lambda j: (-coverage[j].bit_count(), j))
    kept: list[int] = []
    for j in order:
        c = coverage[j]
        if c == 0:
            continue
        if any(c & ~coverage[i] == 0 for i in kept):
            continue
        kept.append(j)
    return sorted(kept)


def optimal_sur(
    bicolorings: BicoloringFamily,
    config: SearchConfig | None = None,
    cap: int = DEFAULT_CAP,
) -> OptimalResult:
    """Minimum-cardinality subfamily of the candidate pool covering every bicoloring."""
    config = config or SearchConfig()
    bicolorings.require_nontrivial()
    n = bicolorings.n
    t0 = time.monotonic()

    # flip(B) has exactly the same representatives as B, keep one of each pair
    points: list[int] = []
    seen: set[int] = set()
    for b in bicolorings:
        if b.plus in seen or b.minus in seen:
            continue
        seen.add(b.plus)
        points.append(b.plus)

    pool = config.pool(n, cap)
    if not pool:
        raise InfeasibleError(f"candidate pool {config.describe()} is empty for n={n}")
    coverage_all = _coverage_masks(points, pool)
    universe = (1 << len(points)) - 1
    union = 0
    for c in coverage_all:
        union |= c
    if union != universe:
        missing = (universe & ~union).bit_length() - 1
        raise InfeasibleError(f"no candidate in {config.describe()} represents {points[missing]:b}")

    keep = _reduce_pool(coverage_all)
    cands = [pool[j] for j in keep]
    cov = [coverage_all[j] for j in keep]
    coverers = [[j for j, c in enumerate(cov) if c >> i & 1] for i in range(len(points))]

    incumbent = greedy_set_cover(len(points), cov)
    best = sorted(incumbent)
    best_size = len(best)
    max_cov = max(c.bit_count() for c in cov)
    root_lb = -(-len(points) // max_cov)

    nodes = 0
    deadline = t0 + config.time_budget
    chosen: list[int] = []

    def search(uncovered: int) -> None:
        nonlocal nodes, best, best_size
        nodes += 1
        if nodes > config.node_budget or (nodes & 1023 == 0 and time.monotonic() > deadline):
            raise _Budget
        depth = len(chosen)
        if not uncovered:
            if depth < best_size:
                best, best_size = sorted(chosen), depth
            return
        remaining = uncovered.bit_count()
        top = 0
        for c in cov:
            g = (c & uncovered).bit_count()
            if g > top:
                top = g
        if depth + -(-remaining // top) >= best_size:
            return
        # most constrained uncovered point
        pick, pick_count = -1, 1 << 60
        u = uncovered
        while u:
            low = u & -u
            i = low.bit_length() - 1
            cnt = 0
            for j in coverers[i]:
                if cov[j] & uncovered:
                    cnt += 1
            if cnt < pick_count:
                pick, pick_count = i, cnt
                if cnt <= 1:
                    break
            u ^= low
        for j in coverers[pick]:
            chosen.append(j)
            search(uncovered & ~cov[j])
            chosen.pop()
            if best_size <= max(root_lb, depth + 1):
                return

    status = PROVED_OPTIMAL
    lower = root_lb
    if best_size > root_lb:
        try:
            search(universe)
        except _Budget:
            status = BUDGET_EXHAUSTED
    if status == PROVED_OPTIMAL:
        lower = best_size
    fam_sets = sorted((cands[j] for j in best), key=IndexSet.sort_key)
    return OptimalResult(
        family=SurFamily(n, tuple(fam_sets)),
        size=best_size,
        status=status,
        lower_bound=lower,
        nodes=nodes,
        elapsed=time.monotonic() - t0,
    )


@dataclass(frozen=True)
class TableCell:
    n: int
    k: int | None
    r: int | None
    gamma: int | None
    status: str
    best: int | None
    lower_bound: int | None
    combined_lower: int | None
    lovasz_stein_upper: float | None

    @property
    def within_bounds(self) -> bool:
        if self.gamma is None or self.combined_lower is None:
            return True
        return self.combined_lower <= self.gamma <= math.ceil(self.lovasz_stein_upper)

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "k": "all" if self.k is None else self.k,
            "r": "all-even" if self.r is None else self.r,
            "gamma": self.gamma,
            "status": self.status,
            "best": self.best,
            "lower_bound": self.lower_bound,
            "combined_lower": self.combined_lower,
            "lovasz_stein_upper": self.lovasz_stein_upper,
        }


def gamma_table(
    n_range: Iterable[int],
    k_spec: Iterable[int] | str = "all",
    r_spec: Iterable[int] | str = "all-even",
    node_budget: int = 10**8,
    time_budget: float = 300.0,
    cap: int = DEFAULT_CAP,
) -> list[TableCell]:
    """Exact gamma per (n, k, r) cell next to the closed-form bounds.

    ``k_spec="all"`` uses every nontrivial bicoloring; ``r_spec="all-even"``
    allows every even set size.  Infeasible or out-of-range cells are skipped.
    """
    cells: list[TableCell] = []
    for n in n_range:
        ks = [None] if k_spec == "all" else [k for k in k_spec if 1 <= k <= n - 1]
        rs = [None] if r_spec == "all-even" else [r for r in r_spec if r % 2 == 0 and 2 <= r <= n]
        for k in ks:
            fam = enumerate_nontrivial_bicolorings(n, cap) if k is None else enumerate_k_bicolorings(n, k, cap)
            for r in rs:
                lower = upper = None
                if k is not None and r is not None:
                    rep = bounds_report(n, k, r)
                    if rep.combined_lower is INFEASIBLE:
                        continue
                    lower, upper = rep.combined_lower, rep.lovasz_stein_upper
                config = SearchConfig(r=r, node_budget=node_budget, time_budget=time_budget)
                try:
                    res = optimal_sur(fam, config, cap)
                except InfeasibleError:
                    continue
                cells.append(
                    TableCell(
                        n=n,
                        k=k,
                        r=r,
                        gamma=res.size if res.proved else None,
                        status=res.status,
                        best=res.size,
                        lower_bound=res.lower_bound,
                        combined_lower=lower,
                        lovasz_stein_upper=upper,
                    )
                )
    return cells


def format_table(cells: list[TableCell]) -> str:
    header = f"{'n':>3} {'k':>4} {'r':>8} {'gamma':>6} {'lower':>6} {'LS':>10}  status"
    lines = [header, "-" * len(header)]
    for c in cells:
        k = "all" if c.k is None else str(c.k)
        r = "even" if c.r is None else str(c.r)
        g = str(c.gamma) if c.gamma is not None else f"<={c.best}"
        lo = "-" if c.combined_lower is None else str(c.combined_lower)
        ls = "-" if c.lovasz_stein_upper is None else f"{c.lovasz_stein_upper:.6g}"
        lines.append(f"{c.n:>3} {k:>4} {r:>8} {g:>6} {lo:>6} {ls:>10}  {c.status}")
    return "\n".join(lines)
