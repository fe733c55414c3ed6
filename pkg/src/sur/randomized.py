"""Randomized SUR constructions.

``biased_sur`` samples sets with every element included independently with
probability ``r/n`` and accepts a group of ``t = ceil(ln |B|)`` of them when
each bicoloring has a set with ``|<X_A, Y_B>| <= e*sqrt(r) + d*r/n``.

``sampled_exact_sur`` draws ``t`` uniform r-subsets, with ``t`` sized so that
the union bound leaves every bicoloring covered with zero bias.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .core import (
    Bicoloring,
    BicoloringFamily,
    Certificate,
    IndexSet,
    PreconditionError,
    SurError,
    SurFamily,
    _mask_of,
    verify_sur,
)

DRAWS_PER_TARGET = 100


class NoGroupFound(SurError):
    def __init__(self, message: str, trace: "SampleTrace") -> None:
        super().__init__(message)
        self.trace = trace


class ResampleShortfall(SurError):
    def __init__(self, message: str, trace: "SampleTrace") -> None:
        super().__init__(message)
        self.trace = trace


class SamplingFailure(SurError):
    """Every restart produced a family that left some bicoloring uncovered."""

    def __init__(self, message: str, failures: int, trace: "SampleTrace") -> None:
        super().__init__(message)
        self.failures = failures
        self.trace = trace


@dataclass(frozen=True)
class SampleTrace:
    seed: int
    rounds_drawn: int
    groups_tested: int
    winning_group: int | None

    def to_record(self) -> dict:
        return asdict(self)


def bias_tolerance(n: int, r: int, d: int) -> float:
    if not n >= r >= 1 or d < 0:
        raise PreconditionError(f"need n >= r >= 1 and d >= 0, got n={n}, r={r}, d={d}")
    return math.e * math.sqrt(r) + d * r / n


@dataclass(frozen=True)
class BiasParams:
    n: int
    r: int
    d: int
    t: int
    delta: float
    size_window: tuple[int, int]

    @classmethod
    def build(cls, n: int, r: int, d: int, family_size: int) -> "BiasParams":
        if r < 8:
            raise PreconditionError(f"biased sampling needs r >= 8, got {r}")
        if r > n:
            raise PreconditionError(f"need r <= n, got r={r}, n={n}")
        if family_size < 2:
            raise PreconditionError("biased sampling needs at least two bicolorings")
        half = -(-r // 2)
        return cls(
            n=n,
            r=r,
            d=d,
            t=math.ceil(math.log(family_size)),
            delta=bias_tolerance(n, r, d),
            size_window=(r - half, r + half),
        )

    @property
    def int_delta(self) -> int:
        return math.floor(self.delta)


def _sign_matrix(bicolorings: BicoloringFamily) -> np.ndarray:
    return np.array([b.colors for b in bicolorings], dtype=np.float64)


def _rows_to_sets(n: int, rows: np.ndarray) -> list[IndexSet]:
    return [IndexSet(n, _mask_of((np.flatnonzero(row) + 1).tolist())) for row in rows]


def biased_sur(
    bicolorings: BicoloringFamily,
    r: int,
    d: int,
    seed: int,
    draws_per_target: int = DRAWS_PER_TARGET,
) -> tuple[SurFamily, Certificate, SampleTrace]:
    """Return the first sampled group of ``t`` sets that is a biased SUR.

    Repeated sets inside the winning group are kept; the guarantee is on the
    count ``t``.
    """
    n = bicolorings.n
    params = BiasParams.build(n, r, d, len(bicolorings))
    for idx, b in enumerate(bicolorings):
        imbalance = abs(2 * b.plus_count - n)
        if imbalance > d:
            raise PreconditionError(f"bicoloring #{idx} has imbalance {imbalance} > d={d}")

    rng = np.random.default_rng(seed)
    draws = draws_per_target * params.t
    sample = rng.random((draws, n)) < r / n
    sizes = sample.sum(axis=1)
    lo, hi = params.size_window
    kept = sample[(sizes >= lo) & (sizes <= hi)]
    t = params.t
    groups = len(kept) // t
    if groups == 0:
        trace = SampleTrace(seed, draws, 0, None)
        raise ResampleShortfall(f"only {len(kept)} window-sized sets for t={t}", trace)

    signs = _sign_matrix(bicolorings)
    limit = params.int_delta
    for g in range(groups):
        block = kept[g * t : (g + 1) * t].astype(np.float64)
        products = np.abs(signs @ block.T)
        if (products <= limit).any(axis=1).all():
            family = SurFamily(n, tuple(_rows_to_sets(n, kept[g * t : (g + 1) * t])), biased=True)
            cert = verify_sur(family, bicolorings, limit)
            return family, cert, SampleTrace(seed, draws, g + 1, g)
    trace = SampleTrace(seed, draws, groups, None)
    raise NoGroupFound(f"none of {groups} groups is a {limit}-biased SUR", trace)


def sampled_sur_size(r: int, alpha: float, family_size: int) -> int:
    """``ceil(sqrt(pi r) / (2^r alpha^(r/2) (1-alpha)^(r/2)) * ln |B|)``."""
    h = r / 2
    return math.ceil(
        math.sqrt(math.pi * r) / (2**r * alpha**h * (1 - alpha) ** h) * math.log(family_size)
    )


def sampled_exact_sur(
    bicolorings: BicoloringFamily,
    r: int,
    alpha: float,
    seed: int,
    max_restarts: int = 20,
) -> tuple[SurFamily, SampleTrace]:
    """Draw uniform r-subsets until they form an exact SUR, restarting on failure.

    Each attempt draws ``sampled_sur_size`` sets (at least one); repeated
    draws are merged, so the family may be smaller than that count.
    """
    n = bicolorings.n
    if r % 2 or not 2 <= r <= n:
        raise PreconditionError(f"r must be even with 2 <= r <= n, got r={r}")
    if not 0 < alpha <= 0.5:
        raise PreconditionError(f"alpha must lie in (0, 1/2], got {alpha}")
    if len(bicolorings) == 0:
        raise PreconditionError("empty bicoloring family")
    eps = 1e-9
    for idx, b in enumerate(bicolorings):
        k = b.plus_count
        if k < alpha * n - eps or k > (1 - alpha) * n + eps:
            raise PreconditionError(f"bicoloring #{idx} has {k} plus points, outside [{alpha}n, {1 - alpha}n]")

    t = max(1, sampled_sur_size(r, alpha, len(bicolorings)))
    rng = np.random.default_rng(seed)
    attempts = max_restarts + 1
    for attempt in range(attempts):
        seen: dict[int, IndexSet] = {}
        for _ in range(t):
            members = np.sort(rng.choice(n, size=r, replace=False)) + 1
            a = IndexSet(n, _mask_of(members.tolist()))
            seen.setdefault(a.mask, a)
        family = SurFamily(n, tuple(seen.values()))
        if verify_sur(family, bicolorings, 0).complete:
            return family, SampleTrace(seed, attempt + 1, attempt + 1, attempt)
    trace = SampleTrace(seed, attempts, attempts, None)
    raise SamplingFailure(f"no exact SUR after {attempts} attempts of {t} draws", attempts, trace)


def random_bounded_family(n: int, m: int, d: int, seed: int) -> BicoloringFamily:
    """``m`` random bicolorings with ``|plus - minus| <= d`` (plus count uniform over the allowed range)."""
    ks = [k for k in range(1, n) if abs(2 * k - n) <= d]
    if not ks:
        raise PreconditionError(f"no nontrivial plus count within imbalance {d} for n={n}")
    rng = np.random.default_rng(seed)
    items = []
    for _ in range(m):
        k = int(rng.choice(ks))
        plus = rng.choice(n, size=k, replace=False) + 1
        items.append(Bicoloring(n, _mask_of(plus.tolist())))
    return BicoloringFamily(n, tuple(items))
