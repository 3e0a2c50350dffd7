"""Breakpoint sweep for the globally optimal discrete phase configuration.

Given a direct coefficient ``h0`` and reflected coefficients ``h[n]``, the
objective is ``|h0 + sum_n h[n] * exp(j k[n] w)|`` over integer indices
``k[n] in {0, ..., K-1}``.

For a fixed reference direction ``mu_phase`` the best index of every element
is the cosine-quantized one (see :func:`phasecore.quantize_cosine`). As
``mu_phase`` turns once around the circle, element ``n`` changes its index
only at the breakpoints ``alpha[n] + (k - 1/2) w``. Visiting the
configuration of every arc between consecutive breakpoints therefore covers
the optimum, and ``g`` can be carried from arc to arc by adding the change
of the elements that cross.

Element indices ``n`` are 0-based throughout the Python API.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import InvalidArgumentError, UndefinedBoostError
from .phasecore import (
    TWO_PI,
    PhaseAlphabet,
    phase,
    quantize_cosine_many,
    quantize_gap_many,
    wrap_2pi,
)

SWEEP_OPTIMAL = "sweep_optimal"
LEMMA1_BASELINE = "lemma1_baseline"
BRUTE_FORCE = "brute_force"
ALGORITHMS = (SWEEP_OPTIMAL, LEMMA1_BASELINE, BRUTE_FORCE)

#: Breakpoint angles closer than this (radians) are merged.
DEDUP_TOL = 1e-12
#: The incrementally carried ``g`` is recomputed from indices this often.
RESYNC_EVERY = 4096


@dataclass(frozen=True, eq=False)
class ChannelInstance:
    """Direct coefficient ``h0`` and the ``N`` reflected coefficients ``h``."""

    h0: complex
    h: np.ndarray

    def __post_init__(self):
        try:
            h0 = complex(self.h0)
            h = np.array(self.h, dtype=np.complex128).reshape(-1)
        except (TypeError, ValueError) as exc:
            raise InvalidArgumentError(f"coefficients must be complex numbers: {exc}")
        if h.size < 1:
            raise InvalidArgumentError("N must be >= 1")
        if not np.isfinite(h0.real) or not np.isfinite(h0.imag):
            raise InvalidArgumentError(f"h0 must be finite, got {h0!r}")
        if not np.all(np.isfinite(h.view(np.float64))):
            bad = int(np.flatnonzero(~np.isfinite(h))[0])
            raise InvalidArgumentError(f"h[{bad}] must be finite, got {h[bad]!r}")
        h.setflags(write=False)
        object.__setattr__(self, "h0", h0)
        object.__setattr__(self, "h", h)

    @classmethod
    def from_pairs(cls, h0, h) -> "ChannelInstance":
        """Build from ``[re, im]`` pairs."""
        return cls(complex(*h0), [complex(*p) for p in h])

    @property
    def N(self) -> int:
        return self.h.size

    @property
    def alpha(self) -> np.ndarray:
        return phase(self.h)

    @property
    def beta(self) -> np.ndarray:
        return np.abs(self.h)

    @property
    def alpha0(self) -> float:
        return phase(self.h0)

    @property
    def beta0(self) -> float:
        return abs(self.h0)

    def scaled(self, factor: complex) -> "ChannelInstance":
        """Every coefficient multiplied by the same complex factor."""
        return ChannelInstance(self.h0 * factor, self.h * factor)

    def __eq__(self, other):
        if not isinstance(other, ChannelInstance):
            return NotImplemented
        return self.h0 == other.h0 and np.array_equal(self.h, other.h)

    def __hash__(self):
        return hash((self.h0, self.h.tobytes()))

    def __repr__(self):
        return f"ChannelInstance(h0={self.h0!r}, N={self.N})"


@dataclass(frozen=True)
class BeamformingSolution:
    """A phase configuration together with its directly evaluated composite ``g``."""

    indices: tuple
    g: complex
    K: int
    h0_abs: float
    algorithm: str
    examined: int = 0

    @property
    def g_abs(self) -> float:
        return abs(self.g)

    @property
    def mu_phase(self) -> float:
        return phase(self.g)

    @property
    def phases(self) -> np.ndarray:
        return PhaseAlphabet(self.K).phase(np.asarray(self.indices))

    @property
    def boost(self) -> float:
        """Linear SNR boost ``|g|^2 / |h0|^2``."""
        if self.h0_abs == 0.0:
            raise UndefinedBoostError("SNR boost is undefined when |h0| = 0")
        return (self.g_abs / self.h0_abs) ** 2

    @property
    def boost_db(self) -> float:
        return 10.0 * np.log10(self.boost)


@dataclass(frozen=True)
class BreakpointSchedule:
    """Sorted, deduplicated breakpoint angles and who crosses at each.

    The raw arrays hold all ``N*K`` breakpoints in sweep order (angle, then
    element). ``starts[l]`` is the offset of the l-th merged angle in the raw
    arrays; crossing raw breakpoint ``i`` sets element ``elements[i]`` to
    index ``targets[i]``.
    """

    angles: np.ndarray
    elements: np.ndarray
    targets: np.ndarray
    starts: np.ndarray
    K: int = field(default=2)

    @property
    def L(self) -> int:
        return self.starts.size

    @property
    def lambdas(self) -> np.ndarray:
        return self.angles[self.starts]

    @property
    def members(self) -> list:
        """Element indices crossing at each merged angle, sorted by element."""
        bounds = np.append(self.starts, self.angles.size)
        return [tuple(int(n) for n in self.elements[a:b]) for a, b in zip(bounds[:-1], bounds[1:])]


def build_schedule(instance: ChannelInstance, alphabet: PhaseAlphabet) -> BreakpointSchedule:
    """All ``N*K`` breakpoints ``alpha[n] + (k - 0.5) w`` sorted on ``[0, 2pi)``."""
    K, w = alphabet.K, alphabet.omega
    N = instance.N
    k = np.arange(1, K + 1)
    raw = wrap_2pi((instance.alpha[:, None] + (k - 0.5) * w).reshape(-1))
    elements = np.repeat(np.arange(N), K)
    targets = np.tile(k % K, N)
    order = np.lexsort((elements, raw))
    angles = raw[order]
    new_group = np.empty(angles.size, dtype=bool)
    new_group[0] = True
    new_group[1:] = np.diff(angles) > DEDUP_TOL
    return BreakpointSchedule(
        angles=angles,
        elements=elements[order],
        targets=targets[order],
        starts=np.flatnonzero(new_group),
        K=K,
    )


def initial_assignment(
    instance: ChannelInstance, alphabet: PhaseAlphabet, mu_phase: float = 0.0
) -> np.ndarray:
    """Cosine-quantized index of every element for reference direction ``mu_phase``."""
    return quantize_cosine_many(instance.alpha, mu_phase, alphabet)


def composite(instance: ChannelInstance, indices, alphabet: PhaseAlphabet) -> complex:
    """Direct evaluation of ``h0 + sum_n h[n] exp(j k[n] w)``."""
    indices = np.asarray(indices)
    if indices.shape != (instance.N,):
        raise InvalidArgumentError(
            f"expected {instance.N} indices, got shape {indices.shape}"
        )
    return complex(instance.h0 + np.dot(instance.h, alphabet.phasor(indices)))


def evaluate(instance: ChannelInstance, indices, alphabet: PhaseAlphabet):
    """Return ``(g, |g|, boost)`` for the given index vector.

    Raises
    ------
    UndefinedBoostError
        If ``|h0| = 0``.
    """
    g = composite(instance, indices, alphabet)
    if instance.beta0 == 0.0:
        raise UndefinedBoostError("SNR boost is undefined when |h0| = 0")
    return g, abs(g), (abs(g) / instance.beta0) ** 2


def make_solution(
    instance: ChannelInstance, indices, alphabet: PhaseAlphabet, algorithm: str, examined: int = 0
) -> BeamformingSolution:
    indices = np.asarray(indices, dtype=np.int64)
    return BeamformingSolution(
        indices=tuple(int(k) for k in indices),
        g=composite(instance, indices, alphabet),
        K=alphabet.K,
        h0_abs=instance.beta0,
        algorithm=algorithm,
        examined=examined,
    )


def _crossing_terms(instance, alphabet, schedule, start):
    """Per-raw-breakpoint change of ``g`` when the element crosses.

    The state an element leaves is its previous target, or its starting index
    for its first crossing in the sweep.
    """
    K = alphabet.K
    P = alphabet.phasors()
    n, tgt = schedule.elements, schedule.targets
    prev = np.mod(tgt - 1, K)
    _, first = np.unique(n, return_index=True)
    prev[first] = start[n[first]]
    return instance.h[n] * (P[tgt] - P[prev])


def _apply_crossings(state, elements, targets):
    """Set each element to its last target within the given raw slice."""
    if elements.size == 0:
        return
    rev_n = elements[::-1]
    uniq, pos = np.unique(rev_n, return_index=True)
    state[uniq] = targets[::-1][pos]


def solve_sweep(
    instance: ChannelInstance,
    alphabet: PhaseAlphabet,
    *,
    verify: bool = False,
    resync_every: int = RESYNC_EVERY,
) -> BeamformingSolution:
    """Globally optimal configuration by sweeping all breakpoint arcs.

    Starts from the cosine-quantized configuration at ``mu_phase = 0`` and
    crosses every merged breakpoint in ascending order, so each of the ``L``
    arcs is examined once in addition to the starting configuration. The
    composite ``g`` is carried incrementally and recomputed from the indices
    every ``resync_every`` crossings; the returned solution is always
    re-evaluated directly.

    With ``verify=True`` the sweep is replayed crossing by crossing and the
    incremental ``g`` is checked against direct evaluation after each step.
    """
    if verify:
        _verify_sweep(instance, alphabet)
    sched = build_schedule(instance, alphabet)
    start = initial_assignment(instance, alphabet, 0.0)
    terms = _crossing_terms(instance, alphabet, sched, start)
    group_delta = np.add.reduceat(terms, sched.starts)
    bounds = np.append(sched.starts, sched.angles.size)

    state = start.copy()
    g = composite(instance, state, alphabet)
    best_abs = abs(g)
    best_indices = state.copy()
    L = sched.L
    for b in range(0, L, resync_every):
        e = min(b + resync_every, L)
        path = g + np.cumsum(group_delta[b:e])
        mags = np.abs(path)
        i = int(np.argmax(mags))
        if mags[i] > best_abs:
            best_abs = mags[i]
            best_indices = state.copy()
            lo, hi = bounds[b], bounds[b + i + 1]
            _apply_crossings(best_indices, sched.elements[lo:hi], sched.targets[lo:hi])
        lo, hi = bounds[b], bounds[e]
        _apply_crossings(state, sched.elements[lo:hi], sched.targets[lo:hi])
        g = composite(instance, state, alphabet)
    return make_solution(instance, best_indices, alphabet, SWEEP_OPTIMAL, examined=L + 1)


def sweep_configurations(
    instance: ChannelInstance, alphabet: PhaseAlphabet
) -> Iterator[tuple]:
    """Replay the sweep one crossing at a time.

    Yields ``(l, indices, g)`` where ``l = 0`` is the starting configuration,
    ``indices`` a fresh copy of the configuration after crossing merged angle
    ``l`` and ``g`` the incrementally carried composite.
    """
    sched = build_schedule(instance, alphabet)
    P = alphabet.phasors()
    state = initial_assignment(instance, alphabet, 0.0)
    g = composite(instance, state, alphabet)
    yield 0, state.copy(), g
    bounds = np.append(sched.starts, sched.angles.size)
    for l in range(sched.L):
        for i in range(bounds[l], bounds[l + 1]):
            n, t = sched.elements[i], sched.targets[i]
            g += instance.h[n] * (P[t] - P[state[n]])
            state[n] = t
        yield l + 1, state.copy(), g


def _verify_sweep(instance, alphabet, rtol=1e-9):
    sched = build_schedule(instance, alphabet)
    scale = instance.beta0 + instance.beta.sum()
    prev = None
    for l, idx, g in sweep_configurations(instance, alphabet):
        direct = composite(instance, idx, alphabet)
        if abs(g - direct) > rtol * max(scale, 1e-300):
            raise RuntimeError(f"incremental g drifted at crossing {l}: {g} vs {direct}")
        if prev is not None:
            moved = tuple(int(n) for n in np.flatnonzero(idx != prev))
            members = sched.members[l - 1]
            if not set(moved) <= set(members):
                raise RuntimeError(f"crossing {l} moved {moved}, expected subset of {members}")
        prev = idx


def baseline_arcs(instance: ChannelInstance, alphabet: PhaseAlphabet):
    """Arc midpoints and gap-quantized assignments visited by the baseline.

    The first arc is the one containing ``mu_phase = 0`` (between the last
    and first breakpoints); the rest follow in ascending order.
    """
    lam = build_schedule(instance, alphabet).lambdas
    ends = np.append(lam, lam[0] + TWO_PI)
    wrap_mid = wrap_2pi(0.5 * (lam[-1] + lam[0] + TWO_PI))
    mids = np.concatenate(([wrap_mid], 0.5 * (ends[:-1] + ends[1:])[:-1]))
    return wrap_2pi(mids), quantize_gap_many(instance.alpha[None, :], mids[:, None], alphabet)


def solve_lemma1_baseline(instance: ChannelInstance, alphabet: PhaseAlphabet) -> BeamformingSolution:
    """Suboptimal baseline: gap-quantize every element at each arc midpoint.

    Uses the same arcs as :func:`solve_sweep` but assigns phases with the
    one-sided gap rule and evaluates every arc's ``|g|`` directly. It
    searches a subset of the sweep's configurations and is not guaranteed
    to reach the optimum.
    """
    _, assign = baseline_arcs(instance, alphabet)
    P = alphabet.phasors()
    rows = max(1, (1 << 20) // instance.N)
    mags = np.concatenate([
        np.abs(instance.h0 + P[assign[i:i + rows]] @ instance.h)
        for i in range(0, len(assign), rows)
    ])
    best = int(np.argmax(mags))
    return make_solution(instance, assign[best], alphabet, LEMMA1_BASELINE, examined=len(mags))


def solve(instance: ChannelInstance, alphabet: PhaseAlphabet, algorithm: str, **kwargs):
    """Dispatch on an algorithm tag from :data:`ALGORITHMS`."""
    if algorithm == SWEEP_OPTIMAL:
        return solve_sweep(instance, alphabet)
    if algorithm == LEMMA1_BASELINE:
        return solve_lemma1_baseline(instance, alphabet)
    if algorithm == BRUTE_FORCE:
        from .oracle import solve_brute_force

        return solve_brute_force(instance, alphabet, **kwargs)
    raise InvalidArgumentError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")
