"""Monte Carlo SNR-boost campaigns, empirical CDFs and solver timing."""
from __future__ import annotations

import csv
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .channel import ChannelModelConfig, generate, realization_seed
from .errors import ConfigError
from .oracle import DEFAULT_LIMIT
from .phasecore import PhaseAlphabet
from .sweep import ALGORITHMS, BRUTE_FORCE, solve, solve_sweep

CDF_HEADER = ["algorithm", "K", "N", "boost_linear", "boost_db", "cdf"]
SUMMARY_HEADER = ["algorithm", "K", "N", "mean_db", "median_db", "min_db", "max_db", "median_solve_us"]


@dataclass(frozen=True)
class BenchRun:
    alphabet_sizes: tuple
    element_counts: tuple
    realizations: int
    algorithms: tuple
    master_seed: int = 0
    direct_scale: float = 1.0
    reflect_scale: float | None = None
    oracle_limit: int = DEFAULT_LIMIT

    def __post_init__(self):
        for name in ("alphabet_sizes", "element_counts", "algorithms"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if self.realizations < 1:
            raise ConfigError(f"realizations must be >= 1, got {self.realizations}")
        if not self.alphabet_sizes or any(K < 2 for K in self.alphabet_sizes):
            raise ConfigError(f"every K must be >= 2, got {self.alphabet_sizes}")
        if not self.element_counts or any(N < 1 for N in self.element_counts):
            raise ConfigError(f"every N must be >= 1, got {self.element_counts}")
        if not self.algorithms:
            raise ConfigError("at least one algorithm is required")
        unknown = set(self.algorithms) - set(ALGORITHMS)
        if unknown:
            raise ConfigError(f"unknown algorithms {sorted(unknown)}; expected {ALGORITHMS}")
        if not 0 <= self.master_seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.master_seed}")
        if BRUTE_FORCE in self.algorithms:
            for K in self.alphabet_sizes:
                for N in self.element_counts:
                    if K**N > self.oracle_limit:
                        raise ConfigError(
                            f"brute_force needs K**N <= {self.oracle_limit}, got {K}**{N}"
                        )
        try:
            for N in self.element_counts:
                self.channel_config(N, 0)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def channel_config(self, N: int, r: int) -> ChannelModelConfig:
        # K is deliberately not mixed in: every alphabet sees the same channels
        return ChannelModelConfig(
            n_elements=N,
            direct_scale=self.direct_scale,
            reflect_scale=self.reflect_scale,
            seed=realization_seed(self.master_seed, N, r),
        )


def empirical_cdf(samples) -> list:
    """``[(value, P(X <= value)), ...]`` over the sorted unique sample values."""
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ValueError("empirical_cdf needs at least one sample")
    if not np.all(np.isfinite(x)):
        raise ValueError("samples must be finite")
    values, counts = np.unique(x, return_counts=True)
    cum = np.cumsum(counts)
    return [(float(v), int(c) / x.size) for v, c in zip(values, cum)]


@dataclass
class CdfSeries:
    """Boost samples of one algorithm at one (K, N), in realization order."""

    algorithm: str
    K: int
    N: int
    boosts: np.ndarray
    solve_seconds: np.ndarray = field(repr=False)

    @property
    def boosts_db(self) -> np.ndarray:
        return 10.0 * np.log10(self.boosts)

    @property
    def sorted_linear(self) -> np.ndarray:
        return np.sort(self.boosts)

    @property
    def sorted_db(self) -> np.ndarray:
        return np.sort(self.boosts_db)

    def cdf(self) -> list:
        return empirical_cdf(self.boosts)

    def summary(self) -> dict:
        db = self.boosts_db
        return {
            "mean_db": float(np.mean(db)),
            "median_db": float(np.median(db)),
            "min_db": float(np.min(db)),
            "max_db": float(np.max(db)),
            "median_solve_us": float(np.median(self.solve_seconds) * 1e6),
        }


@dataclass
class CdfTable:
    run: BenchRun
    series: dict

    def __getitem__(self, key) -> CdfSeries:
        return self.series[key]

    def keys(self):
        return self.series.keys()

    def cdf_rows(self) -> list:
        rows = []
        for (alg, K, N), s in self.series.items():
            for value, p in s.cdf():
                rows.append([alg, K, N, repr(value), repr(float(10.0 * np.log10(value))), repr(p)])
        return rows

    def summary_rows(self) -> list:
        rows = []
        for (alg, K, N), s in self.series.items():
            st = s.summary()
            rows.append([alg, K, N] + [f"{st[k]:.6f}" for k in SUMMARY_HEADER[3:-1]]
                        + [f"{st['median_solve_us']:.1f}"])
        return rows

    def write(self, out_dir) -> tuple[Path, Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        cdf_path, summary_path = out / "cdf.csv", out / "summary.csv"
        for path, header, rows in (
            (cdf_path, CDF_HEADER, self.cdf_rows()),
            (summary_path, SUMMARY_HEADER, self.summary_rows()),
        ):
            with open(path, "w", newline="", encoding="utf-8") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(header)
                w.writerows(rows)
        return cdf_path, summary_path


def run(bench: BenchRun) -> CdfTable:
    """Solve every realization with every selected algorithm.

    All algorithms of a realization see the identical channel. Series are
    ordered by (algorithm, K, N) in the order given by ``bench``.
    """
    R = bench.realizations
    boosts = {}
    times = {}
    for K in bench.alphabet_sizes:
        alphabet = PhaseAlphabet(K)
        for N in bench.element_counts:
            for alg in bench.algorithms:
                boosts[alg, K, N] = np.empty(R)
                times[alg, K, N] = np.empty(R)
            for r in range(R):
                instance = generate(bench.channel_config(N, r))
                for alg in bench.algorithms:
                    kwargs = {"limit": bench.oracle_limit} if alg == BRUTE_FORCE else {}
                    t0 = time.perf_counter()
                    sol = solve(instance, alphabet, alg, **kwargs)
                    times[alg, K, N][r] = time.perf_counter() - t0
                    boosts[alg, K, N][r] = sol.boost
    series = {}
    for alg in bench.algorithms:
        for K in bench.alphabet_sizes:
            for N in bench.element_counts:
                series[alg, K, N] = CdfSeries(alg, K, N, boosts[alg, K, N], times[alg, K, N])
    return CdfTable(bench, series)


def timing_scan(alphabet: PhaseAlphabet, element_counts, repeats: int, seed: int = 0) -> list:
    """Median wall time of :func:`solve_sweep` for each ``N``, as ``[(N, seconds)]``."""
    if repeats <= 0:
        return []
    counts = list(element_counts)
    if counts != sorted(counts):
        raise ValueError("element_counts must be ascending")
    out = []
    for N in counts:
        instance = generate(ChannelModelConfig(N, seed=realization_seed(seed, N, 0)))
        solve_sweep(instance, alphabet)  # warm-up
        samples = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            solve_sweep(instance, alphabet)
            samples.append(time.perf_counter() - t0)
        out.append((N, statistics.median(samples)))
    return out
