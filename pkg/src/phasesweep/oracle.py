"""Exhaustive enumeration of all ``K**N`` phase configurations.

Configurations are visited in lexicographic order of the index vector (the
last element varies fastest). The table of partial sums for the trailing
elements is built by nested outer sums (one complex addition per entry), and
each configuration of the leading elements adds a single offset to it.
"""
from __future__ import annotations

import itertools

import numpy as np

from .errors import SizeLimitError
from .sweep import BRUTE_FORCE, ChannelInstance, make_solution
from .phasecore import PhaseAlphabet

DEFAULT_LIMIT = 10**7
_INNER_MAX = 1 << 16


def _check_size(instance, alphabet, limit):
    if limit < 1:
        raise SizeLimitError(f"limit must be positive, got {limit}")
    total = alphabet.K ** instance.N
    if total > limit:
        raise SizeLimitError(
            f"K**N = {alphabet.K}**{instance.N} = {total} exceeds the limit of {limit}"
        )
    return total


def _split(instance, alphabet):
    m = 1
    while m < instance.N and alphabet.K ** (m + 1) <= _INNER_MAX:
        m += 1
    return m


def _inner_table(h, P):
    # C-order ravel over axes (k[N-m], ..., k[N-1]) keeps the last index fastest
    table = np.zeros(1, dtype=np.complex128)
    for hn in h:
        table = (table[:, None] + hn * P[None, :]).reshape(-1)
    return table


def _blocks(instance: ChannelInstance, alphabet: PhaseAlphabet):
    """Yield ``(outer_indices, values)``; concatenated values are all ``g`` in order."""
    P = alphabet.phasors()
    m = _split(instance, alphabet)
    split = instance.N - m
    inner = _inner_table(instance.h[split:], P)
    outer_h = instance.h[:split]
    for outer in itertools.product(range(alphabet.K), repeat=split):
        offset = instance.h0 + sum(hn * P[k] for hn, k in zip(outer_h, outer))
        yield outer, inner + offset


def _unravel(flat, K, m):
    return [(flat // K ** (m - 1 - i)) % K for i in range(m)]


def solve_brute_force(
    instance: ChannelInstance, alphabet: PhaseAlphabet, limit: int = DEFAULT_LIMIT
):
    """Best configuration by full enumeration; the lexicographically first wins ties.

    Raises
    ------
    SizeLimitError
        If ``K**N`` exceeds ``limit``.
    """
    total = _check_size(instance, alphabet, limit)
    m = _split(instance, alphabet)
    best_abs = -1.0
    best = None
    for outer, values in _blocks(instance, alphabet):
        mags = np.abs(values)
        i = int(np.argmax(mags))
        if mags[i] > best_abs:
            best_abs = mags[i]
            best = list(outer) + _unravel(i, alphabet.K, m)
    return make_solution(instance, best, alphabet, BRUTE_FORCE, examined=total)


def enumerate_boosts(
    instance: ChannelInstance, alphabet: PhaseAlphabet, limit: int = DEFAULT_LIMIT
) -> list:
    """Every configuration with its ``|g|``, as ``[(indices, g_abs), ...]``."""
    _check_size(instance, alphabet, limit)
    m = _split(instance, alphabet)
    rows = []
    for outer, values in _blocks(instance, alphabet):
        for i, v in enumerate(np.abs(values)):
            rows.append((tuple(outer) + tuple(_unravel(i, alphabet.K, m)), float(v)))
    return rows
