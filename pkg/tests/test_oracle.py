import itertools

import numpy as np
import pytest
from conftest import random_instance

from phasesweep.errors import SizeLimitError
from phasesweep.oracle import enumerate_boosts, solve_brute_force
from phasesweep.phasecore import PhaseAlphabet
from phasesweep.sweep import ChannelInstance, composite, solve_lemma1_baseline, solve_sweep


def test_golden_optimum(golden, k2):
    sol = solve_brute_force(golden.instance, k2)
    assert sol.indices == (1, 1)
    assert sol.g_abs == pytest.approx(3.9377e-7, rel=1e-4)


def test_golden_table(golden, k2):
    rows = enumerate_boosts(golden.instance, k2)
    assert [r[0] for r in rows] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert [r[1] for r in rows] == pytest.approx([3.9324e-7, 3.9359e-7, 3.9341e-7, 3.9377e-7], rel=1e-4)


def test_single_element_alignment():
    sol = solve_brute_force(ChannelInstance(1.0, [1j]), PhaseAlphabet(4))
    assert sol.indices == (3,)
    assert sol.g_abs == pytest.approx(2.0)


def test_no_direct_path_is_phase_invariant(k2):
    rows = enumerate_boosts(ChannelInstance(0.0, [1.0]), k2)
    assert [r[1] for r in rows] == pytest.approx([1.0, 1.0])


def test_three_unit_elements(k2):
    # hand enumeration: equal signs give 3, any mixed-sign vector gives 1
    rows = enumerate_boosts(ChannelInstance(0.0, [1.0, 1.0, 1.0]), k2)
    assert [r[1] for r in rows] == pytest.approx([3, 1, 1, 1, 1, 1, 1, 3])
    assert solve_brute_force(ChannelInstance(0.0, [1.0, 1.0, 1.0]), k2).indices == (0, 0, 0)


@pytest.mark.parametrize("N, K", [(1, 5), (3, 3), (6, 4), (9, 4), (17, 2)])
def test_enumeration_matches_direct_evaluation(N, K):
    rng = np.random.default_rng(N * 10 + K)
    inst = random_instance(rng, N)
    A = PhaseAlphabet(K)
    rows = enumerate_boosts(inst, A)
    assert len(rows) == K**N
    assert [r[0] for r in rows[:50]] == list(itertools.islice(itertools.product(range(K), repeat=N), 50))
    for idx, v in rows[:: max(1, len(rows) // 200)]:
        assert v == pytest.approx(abs(composite(inst, idx, A)), rel=1e-12)
    best = max(range(len(rows)), key=lambda i: rows[i][1])
    assert solve_brute_force(inst, A).indices == rows[best][0]


def test_cross_agreement_with_sweep():
    rng = np.random.default_rng(6)
    inst = random_instance(rng, 6)
    A = PhaseAlphabet(4)
    brute, sweep = solve_brute_force(inst, A), solve_sweep(inst, A)
    assert brute.g_abs == pytest.approx(sweep.g_abs, rel=1e-9)
    assert brute.g_abs >= solve_lemma1_baseline(inst, A).g_abs


def test_deterministic_tie_rule(k2):
    inst = ChannelInstance(0.0, [1.0, 1.0])
    assert solve_brute_force(inst, k2).indices == (0, 0)
    assert solve_brute_force(inst, k2).indices == solve_brute_force(inst, k2).indices


def test_size_limit():
    inst = ChannelInstance(1.0, np.ones(10))
    with pytest.raises(SizeLimitError):
        solve_brute_force(inst, PhaseAlphabet(4), limit=1000)
    with pytest.raises(SizeLimitError):
        enumerate_boosts(inst, PhaseAlphabet(2), limit=1023)
    assert len(enumerate_boosts(inst, PhaseAlphabet(2), limit=1024)) == 1024
