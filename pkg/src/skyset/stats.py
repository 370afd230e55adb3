"""Comprehension-timing analysis: group summaries and Tukey HSD.

The studentized range distribution is evaluated directly: the range CDF of
k standard normals, compounded with the scaled-chi density of the pooled
standard deviation estimate, both by Gauss-Legendre quadrature. Quantiles
invert the CDF by bisection.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np
from scipy.special import gammaln, ndtr

__all__ = [
    "CensoredValue",
    "ExperimentData",
    "GroupSummary",
    "PairComparison",
    "TukeyResult",
    "bundled_experiment",
    "censoring_report",
    "load_experiment_csv",
    "mean_ratio",
    "pooled_mse",
    "studentized_range_cdf",
    "studentized_range_quantile",
    "studentized_range_sf",
    "summarize",
    "tukey_hsd",
]


@dataclass(frozen=True)
class ExperimentData:
    """Balanced timing measurements: one value per participant per group."""

    groups: tuple[str, ...]
    participants: tuple[str, ...]
    values: dict[str, tuple[float, ...]]

    def __post_init__(self) -> None:
        if len(self.groups) < 2:
            raise ValueError("need at least two groups")
        if len(self.participants) < 2:
            raise ValueError("need at least two participants")
        for g in self.groups:
            vals = self.values.get(g)
            if vals is None or len(vals) != len(self.participants):
                raise ValueError(
                    f"group {g!r} needs {len(self.participants)} values")

    @property
    def k(self) -> int:
        return len(self.groups)

    @property
    def n(self) -> int:
        return len(self.participants)

    @property
    def df(self) -> int:
        return self.k * (self.n - 1)


def load_experiment_csv(path: str | os.PathLike) -> ExperimentData:
    """Read "participant,<group>,<group>,..." with one row per participant."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        records = [row for row in reader if row and any(f.strip() for f in row)]
    if len(records) < 3:
        raise ValueError(f"{path}: need a header and at least two rows")
    header = [f.strip() for f in records[0]]
    if len(header) < 3:
        raise ValueError(f"{path}: need a participant column and two groups")
    groups = tuple(header[1:])
    participants: list[str] = []
    columns: list[list[float]] = [[] for _ in groups]
    for n, rec in enumerate(records[1:], 2):
        if len(rec) != len(header):
            raise ValueError(f"{path}:{n}: expected {len(header)} fields")
        participants.append(rec[0].strip())
        for j, field in enumerate(rec[1:]):
            try:
                columns[j].append(float(field))
            except ValueError:
                raise ValueError(
                    f"{path}:{n}: bad number {field!r}") from None
    values = {g: tuple(col) for g, col in zip(groups, columns)}
    return ExperimentData(groups, tuple(participants), values)


def bundled_experiment() -> ExperimentData:
    """The packaged four-quarter comprehension timing data set."""
    ref = resources.files("skyset").joinpath("data/timing_experiment.csv")
    with resources.as_file(ref) as path:
        return load_experiment_csv(path)


@dataclass(frozen=True)
class GroupSummary:
    group: str
    n: int
    mean: float
    std: float  # sample standard deviation, n-1 denominator


def summarize(data: ExperimentData) -> list[GroupSummary]:
    out = []
    for g in data.groups:
        arr = np.asarray(data.values[g], dtype=float)
        out.append(GroupSummary(
            g, len(arr), float(arr.mean()), float(arr.std(ddof=1))))
    return out


def pooled_mse(data: ExperimentData) -> float:
    """Mean squared error pooled across groups (balanced: plain average)."""
    variances = [
        float(np.asarray(data.values[g], dtype=float).var(ddof=1))
        for g in data.groups
    ]
    return float(np.mean(variances))


def mean_ratio(data: ExperimentData, slow: str, fast: str) -> float:
    """How many times longer the slow group's mean is than the fast one's."""
    for g in (slow, fast):
        if g not in data.values:
            raise KeyError(f"no group {g!r}")
    return float(np.mean(data.values[slow]) / np.mean(data.values[fast]))


# ----------------------------------------------- studentized range

_U_NODES = 160  # normal-range integral
_S_NODES = 96  # chi compounding integral


@lru_cache(maxsize=16)
def _gauss_legendre(n: int, lo: float, hi: float):
    x, w = np.polynomial.legendre.leggauss(n)
    mid, half = (hi + lo) / 2.0, (hi - lo) / 2.0
    return mid + half * x, half * w


def _range_cdf(r: np.ndarray, k: int) -> np.ndarray:
    """P(range of k standard normals < r), elementwise over r >= 0."""
    u, w = _gauss_legendre(_U_NODES, -12.5, 12.5)
    phi = np.exp(-0.5 * u * u) / math.sqrt(2.0 * math.pi)
    # (len(r), len(u)) grid of Phi(u + r) - Phi(u)
    inner = ndtr(u[None, :] + r[:, None]) - ndtr(u)[None, :]
    np.clip(inner, 0.0, 1.0, out=inner)
    return np.clip(k * ((inner ** (k - 1)) * phi * w).sum(axis=1), 0.0, 1.0)


def _scaled_chi_log_density(s: np.ndarray, df: int) -> np.ndarray:
    # density of chi(df)/sqrt(df)
    half = df / 2.0
    const = half * math.log(df) - gammaln(half) - (half - 1.0) * math.log(2.0)
    return const + (df - 1.0) * np.log(s) - df * s * s / 2.0


def studentized_range_cdf(q: float, k: int, df: int) -> float:
    """P(Q < q) for the range of k group means over a pooled scale with
    df degrees of freedom."""
    if k < 2 or df < 1:
        raise ValueError("need k >= 2 groups and df >= 1")
    if q <= 0.0:
        return 0.0
    spread = 12.0 / math.sqrt(2.0 * df)
    lo, hi = max(1e-9, 1.0 - spread), 1.0 + spread
    s, w = _gauss_legendre(_S_NODES, lo, hi)
    density = np.exp(_scaled_chi_log_density(s, df))
    return float(np.clip((_range_cdf(q * s, k) * density * w).sum(), 0.0, 1.0))


def studentized_range_sf(q: float, k: int, df: int) -> float:
    return 1.0 - studentized_range_cdf(q, k, df)


def studentized_range_quantile(p: float, k: int, df: int) -> float:
    """Smallest q with CDF(q) >= p, by bisection."""
    if not 0.0 < p < 1.0:
        raise ValueError("p must be strictly between 0 and 1")
    lo, hi = 0.0, 8.0
    while studentized_range_cdf(hi, k, df) < p:
        hi *= 2.0
        if hi > 1e6:
            raise ArithmeticError("quantile search diverged")
    for _ in range(80):
        mid = (lo + hi) / 2.0
        if studentized_range_cdf(mid, k, df) < p:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


# ----------------------------------------------------------- Tukey HSD

@dataclass(frozen=True)
class PairComparison:
    first: str  # earlier group of the pair as listed in the data
    second: str  # later group; diff = mean(second) - mean(first)
    diff: float
    lower: float
    upper: float
    p_value: float
    reject: bool


@dataclass(frozen=True)
class TukeyResult:
    alpha: float
    df: int
    mse: float
    se: float
    q_critical: float
    comparisons: tuple[PairComparison, ...]


def tukey_hsd(data: ExperimentData, *, alpha: float = 0.05) -> TukeyResult:
    """All pairwise mean comparisons with familywise error held at alpha.

    Pairs are ordered (g1,g2), (g1,g3), ... following the group order of the
    data; each difference is the later group's mean minus the earlier's.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must be strictly between 0 and 1")
    k, n, df = data.k, data.n, data.df
    mse = pooled_mse(data)
    se = math.sqrt(mse / n)
    q_crit = studentized_range_quantile(1.0 - alpha, k, df)
    half_width = q_crit * se

    means = {g: float(np.mean(data.values[g])) for g in data.groups}
    comparisons = []
    for i in range(k):
        for j in range(i + 1, k):
            a, b = data.groups[i], data.groups[j]
            diff = means[b] - means[a]
            p = studentized_range_sf(abs(diff) / se, k, df)
            comparisons.append(PairComparison(
                first=a,
                second=b,
                diff=diff,
                lower=diff - half_width,
                upper=diff + half_width,
                p_value=p,
                reject=p < alpha,
            ))
    return TukeyResult(alpha, df, mse, se, q_crit, tuple(comparisons))


# ----------------------------------------------------------- censoring

@dataclass(frozen=True)
class CensoredValue:
    group: str
    participant: str
    value: float


def censoring_report(
    data: ExperimentData, limit: float
) -> list[CensoredValue]:
    """Observations that hit the measurement ceiling; their true values are
    at least the limit, so group means involving them are understated."""
    out = []
    for g in data.groups:
        for participant, value in zip(data.participants, data.values[g]):
            if value >= limit:
                out.append(CensoredValue(g, participant, value))
    return out
