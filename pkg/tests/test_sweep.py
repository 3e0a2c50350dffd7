import math

import numpy as np
import pytest
from conftest import random_instance

from phasesweep.errors import InvalidArgumentError, UndefinedBoostError
from phasesweep.oracle import solve_brute_force
from phasesweep.phasecore import TWO_PI, PhaseAlphabet
from phasesweep.sweep import (
    ChannelInstance,
    baseline_arcs,
    build_schedule,
    composite,
    evaluate,
    initial_assignment,
    solve_lemma1_baseline,
    solve_sweep,
    sweep_configurations,
)

# Breakpoints of the golden instance, hand-computed from
# alpha1 = 6.187647514, alpha2 = 4.666422510 and alpha + pi/2, alpha + 3pi/2.
GOLDEN_LAMBDAS = [1.475258534, 3.095626183, 4.616851187, 6.237218837]
GOLDEN_MEMBERS = [(0,), (1,), (0,), (1,)]


# --- schedule ---------------------------------------------------------------

def test_schedule_single_element(k2):
    s = build_schedule(ChannelInstance(1.0, [1.0]), k2)
    assert s.lambdas == pytest.approx([math.pi / 2, 3 * math.pi / 2])
    assert s.members == [(0,), (0,)]


def test_schedule_golden(golden, k2):
    s = build_schedule(golden.instance, k2)
    assert s.L == 4
    assert s.lambdas == pytest.approx(GOLDEN_LAMBDAS, abs=1e-8)
    assert s.members == GOLDEN_MEMBERS


def test_schedule_merges_coincident_angles():
    h = np.exp(1j * 1.0) * np.ones(2)
    s = build_schedule(ChannelInstance(1.0, h), PhaseAlphabet(4))
    assert s.L == 4
    assert s.members == [(0, 1)] * 4


def test_schedule_invariants():
    rng = np.random.default_rng(11)
    for _ in range(50):
        N, K = int(rng.integers(1, 20)), int(rng.integers(2, 9))
        inst = random_instance(rng, N)
        s = build_schedule(inst, PhaseAlphabet(K))
        assert s.angles.size == N * K
        assert s.L <= N * K
        assert np.all(np.diff(s.lambdas) > 0)
        assert np.all((s.lambdas >= 0) & (s.lambdas < TWO_PI))
        # every element crosses K times, once into each index
        for n in range(N):
            assert sorted(s.targets[s.elements == n]) == list(range(K))


# --- initial assignment -----------------------------------------------------

def test_initial_assignment_golden(golden, k2):
    # cos(alpha1) = 0.995 beats -0.995; cos(alpha2 + pi) = 0.046 beats -0.046
    assert list(initial_assignment(golden.instance, k2, 0.0)) == [0, 1]


def test_initial_assignment_trivial(k2):
    assert list(initial_assignment(ChannelInstance(1.0, [1.0, 2.0, 0.5]), PhaseAlphabet(4))) == [0, 0, 0]
    assert list(initial_assignment(ChannelInstance(1.0, [-1.0]), k2)) == [1]


# --- evaluate ---------------------------------------------------------------

def test_evaluate_golden(golden, k2):
    g, g_abs, _ = evaluate(golden.instance, (0, 0), k2)
    assert g.real == pytest.approx(-2.8257e-7, rel=1e-4)
    assert g.imag == pytest.approx(2.7348e-7, rel=1e-4)
    assert g_abs == pytest.approx(3.9324e-7, rel=1e-4)
    assert evaluate(golden.instance, (0, 1), k2)[1] == pytest.approx(3.9359e-7, rel=1e-4)
    boost = evaluate(golden.instance, (1, 1), k2)[2]
    # exact coefficients give 1.0013338; the rounded printed magnitudes give 1.00137
    assert boost == pytest.approx(1.0013338, rel=1e-7)
    assert boost == pytest.approx((3.9377 / 3.9350) ** 2, rel=1e-4)


def test_evaluate_errors(k2):
    inst = ChannelInstance(0.0, [1.0, 1.0])
    with pytest.raises(UndefinedBoostError):
        evaluate(inst, (0, 0), k2)
    with pytest.raises(InvalidArgumentError):
        composite(inst, (0,), k2)


# --- sweep ------------------------------------------------------------------

def test_sweep_golden(golden, k2):
    sol = solve_sweep(golden.instance, k2, verify=True)
    assert sol.indices == (1, 1)
    assert sol.g_abs == pytest.approx(3.9377e-7, rel=1e-4)
    assert sol.mu_phase == pytest.approx(2.3719, abs=1e-3)
    assert sol.algorithm == "sweep_optimal"


def test_sweep_aligned_pair(k2):
    sol = solve_sweep(ChannelInstance(1.0, [1.0]), k2)
    assert sol.indices == (0,)
    assert sol.g_abs == pytest.approx(2.0)
    assert sol.boost == pytest.approx(4.0)


def test_sweep_without_direct_path(k2):
    sol = solve_sweep(ChannelInstance(0.0, [1.0, -1.0]), k2)
    assert sol.g_abs == pytest.approx(2.0)
    with pytest.raises(UndefinedBoostError):
        sol.boost


def test_sweep_matches_oracle_random():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        N, K = int(rng.integers(2, 9)), int(rng.choice([2, 3, 4, 8]))
        if K**N > 100_000:
            continue
        inst = random_instance(rng, N)
        A = PhaseAlphabet(K)
        assert solve_sweep(inst, A).g_abs == pytest.approx(solve_brute_force(inst, A).g_abs, rel=1e-9)


@pytest.mark.parametrize("block", [1, 2, 3, 7])
def test_resync_blocks_do_not_change_result(block):
    rng = np.random.default_rng(block)
    for _ in range(30):
        inst = random_instance(rng, int(rng.integers(1, 12)))
        A = PhaseAlphabet(int(rng.integers(2, 6)))
        a = solve_sweep(inst, A)
        b = solve_sweep(inst, A, resync_every=block)
        assert a.indices == b.indices


def test_sweep_visits_every_arc_once():
    rng = np.random.default_rng(5)
    for _ in range(20):
        inst = random_instance(rng, int(rng.integers(1, 10)))
        A = PhaseAlphabet(int(rng.integers(2, 7)))
        s = build_schedule(inst, A)
        steps = list(sweep_configurations(inst, A))
        assert len(steps) == s.L + 1
        for (l, idx, g), (_, prev, _) in zip(steps[1:], steps[:-1]):
            moved = np.flatnonzero(idx != prev)
            assert tuple(moved) == s.members[l - 1]
            # crossing moves each member up by one index
            assert np.all(idx[moved] == (prev[moved] + 1) % A.K)
            assert g == pytest.approx(composite(inst, idx, A), rel=1e-9, abs=1e-12)
        # one full turn restores the starting configuration
        assert np.array_equal(steps[-1][1], steps[0][1])


def test_arc_configuration_is_cosine_quantized():
    rng = np.random.default_rng(8)
    inst = random_instance(rng, 6)
    A = PhaseAlphabet(4)
    lam = build_schedule(inst, A).lambdas
    mids = np.append(0.5 * (lam[:-1] + lam[1:]), 0.5 * (lam[-1] + lam[0] + TWO_PI))
    steps = list(sweep_configurations(inst, A))
    for l, mid in enumerate(mids, start=1):
        assert np.array_equal(steps[l][1], initial_assignment(inst, A, mid))


def test_sweep_verify_mode_large():
    rng = np.random.default_rng(9)
    inst = random_instance(rng, 300)
    sol = solve_sweep(inst, PhaseAlphabet(8), verify=True)
    assert sol.examined == build_schedule(inst, PhaseAlphabet(8)).L + 1


def test_boost_bounds():
    rng = np.random.default_rng(10)
    for _ in range(100):
        inst = random_instance(rng, int(rng.integers(1, 30)))
        b0, sb = inst.beta0, inst.beta.sum()
        boost = solve_sweep(inst, PhaseAlphabet(int(rng.integers(2, 9)))).boost
        assert boost <= (b0 + sb) ** 2 / b0**2 * (1 + 1e-12)
        assert boost >= max(b0 - sb, 0.0) ** 2 / b0**2 * (1 - 1e-12)


def test_invalid_instances():
    with pytest.raises(InvalidArgumentError):
        ChannelInstance(1.0, [])
    with pytest.raises(InvalidArgumentError):
        ChannelInstance(1.0, [complex(math.nan, 0)])
    with pytest.raises(InvalidArgumentError):
        ChannelInstance(math.inf, [1.0])


# --- rotation, scaling and refinement --------------------------------------

def test_rotation_and_scaling_invariance():
    rng = np.random.default_rng(12)
    for _ in range(100):
        inst = random_instance(rng, int(rng.integers(1, 16)))
        A = PhaseAlphabet(int(rng.integers(2, 9)))
        base = solve_sweep(inst, A)
        rot = solve_sweep(inst.scaled(np.exp(1j * rng.uniform(0, TWO_PI))), A)
        assert rot.g_abs == pytest.approx(base.g_abs, rel=1e-9)
        scaled = solve_sweep(inst.scaled(3.7), A)
        assert scaled.g_abs == pytest.approx(3.7 * base.g_abs, rel=1e-12)
        assert scaled.boost == pytest.approx(base.boost, rel=1e-12)


def test_alphabet_refinement():
    rng = np.random.default_rng(13)
    for _ in range(100):
        inst = random_instance(rng, int(rng.integers(1, 20)))
        K = int(rng.integers(2, 6))
        assert solve_sweep(inst, PhaseAlphabet(2 * K)).boost >= solve_sweep(inst, PhaseAlphabet(K)).boost * (1 - 1e-12)


# --- baseline ---------------------------------------------------------------

def test_baseline_golden_arc(golden, k2):
    mids, assign = baseline_arcs(golden.instance, k2)
    arc = int(np.flatnonzero((mids > GOLDEN_LAMBDAS[0]) & (mids < GOLDEN_LAMBDAS[1]))[0])
    assert tuple(assign[arc]) == (1, 0)
    g_abs = evaluate(golden.instance, assign[arc], k2)[1]
    assert g_abs == pytest.approx(3.9341e-7, rel=1e-4)
    assert g_abs < solve_sweep(golden.instance, k2).g_abs


def test_baseline_on_aligned_channel_equals_sweep():
    inst = ChannelInstance(1.0, np.ones(5))
    A = PhaseAlphabet(2)
    assert solve_lemma1_baseline(inst, A).indices == solve_sweep(inst, A).indices
    assert solve_lemma1_baseline(inst, A).g_abs == pytest.approx(6.0)


def test_baseline_dominated_and_sometimes_strictly():
    rng = np.random.default_rng(14)
    A = PhaseAlphabet(2)
    strict = 0
    for _ in range(300):
        inst = random_instance(rng, 16, reflect=1 / math.sqrt(32))
        opt = solve_sweep(inst, A).boost
        base = solve_lemma1_baseline(inst, A).boost
        assert base <= opt * (1 + 1e-12)
        strict += base < opt * (1 - 1e-12)
    assert strict > 0


def test_baseline_examines_one_config_per_arc():
    rng = np.random.default_rng(15)
    inst = random_instance(rng, 7)
    A = PhaseAlphabet(3)
    assert solve_lemma1_baseline(inst, A).examined == build_schedule(inst, A).L
