import dataclasses

import numpy as np
import pytest

from risharvest import (
    Allocation,
    FEASIBLE,
    INFEASIBLE,
    TIME_SPLITTING,
    UC_SPLITTING,
    ScenarioConfig,
    avg_harvest_power,
    draw_trials,
    estimate_averages,
    optimize_time_splitting,
    optimize_uc_splitting,
    run_frame_time_splitting,
    run_frame_uc_splitting,
    sample_channel,
    smallest_feasible,
)

from conftest import oracle_full_surface_snr


def exhaustive_best(protocol, p_static, cfg, trials):
    """Scan every allocation value; keep the feasible rate maximizer.

    Ties break toward the smaller value because the scan ascends.
    """
    vmax = cfg.frame_slots - cfg.preamble_slots if protocol == TIME_SPLITTING else cfg.m_s
    best = None
    for v in range(vmax + 1):
        est = estimate_averages(protocol, v, p_static, cfg, trials=trials)
        if est.avg_harvest_power >= est.avg_consumed_power:
            if best is None or est.avg_rate > best[1]:
                best = (v, est.avg_rate)
    return best


def test_smallest_feasible_matches_linear_scan():
    rng = np.random.default_rng(3)
    for _ in range(300):
        hi = int(rng.integers(0, 50))
        threshold = int(rng.integers(0, hi + 2))  # may exceed hi: all-infeasible
        pred = lambda v: v >= threshold
        expected = threshold if threshold <= hi else None
        assert smallest_feasible(0, hi, pred) == expected


def test_estimate_averages_deterministic(cfg):
    fast = dataclasses.replace(cfg, mc_trials=64)
    a = estimate_averages(TIME_SPLITTING, 100, 1e-5, fast, rng=np.random.default_rng(9))
    b = estimate_averages(TIME_SPLITTING, 100, 1e-5, fast, rng=np.random.default_rng(9))
    assert a == b


def test_estimate_averages_zero_variance_at_infinite_k(los_cfg):
    fast = dataclasses.replace(los_cfg, mc_trials=16)
    est = estimate_averages(TIME_SPLITTING, 0, 0.0, fast, rng=np.random.default_rng(1))
    expected = 0.9 * fast.bandwidth * np.log2(1.0 + oracle_full_surface_snr(fast))
    assert est.avg_rate == pytest.approx(expected, rel=1e-9)
    assert est.rate_ci_halfwidth == pytest.approx(0.0, abs=1e-3)


def test_estimate_averages_ci_small_at_default_trials(cfg):
    est = estimate_averages(TIME_SPLITTING, 0, 0.0, cfg, rng=np.random.default_rng(2))
    assert est.rate_ci_halfwidth / est.avg_rate < 0.01


def test_estimate_averages_matches_frame_engine(cfg):
    """Dual route: vectorized candidate evaluation vs. per-frame reports."""
    n = 50
    fast = dataclasses.replace(cfg, mc_trials=n)
    seed = 555
    trials = draw_trials(fast, np.random.default_rng(seed))
    replay = np.random.default_rng(seed)
    channels = [sample_channel(fast, replay) for _ in range(n)]
    p_static = 3e-6

    eh = 1234
    est = estimate_averages(TIME_SPLITTING, eh, p_static, fast, trials=trials)
    reports = [
        run_frame_time_splitting(ch, Allocation.time_split(eh), p_static, fast)
        for ch in channels
    ]
    assert est.avg_rate == pytest.approx(np.mean([r.rate for r in reports]), rel=1e-10)
    frame_duration = fast.frame_slots * fast.slot_duration
    assert est.avg_harvest_power == pytest.approx(
        np.mean([r.harvested_energy for r in reports]) / frame_duration, rel=1e-10
    )
    assert est.avg_consumed_power == pytest.approx(
        reports[0].consumed_energy / frame_duration, rel=1e-10
    )

    k = 37
    est = estimate_averages(UC_SPLITTING, k, p_static, fast, trials=trials)
    reports = [
        run_frame_uc_splitting(ch, Allocation.uc_split(k), p_static, fast)
        for ch in channels
    ]
    assert est.avg_rate == pytest.approx(np.mean([r.rate for r in reports]), rel=1e-10)
    assert est.avg_harvest_power == pytest.approx(
        np.mean([r.harvested_energy for r in reports]) / frame_duration, rel=1e-10
    )


def test_unconstrained_case_allocates_nothing(cfg):
    free = dataclasses.replace(cfg, e_rec=0.0, mc_trials=32)
    rng = np.random.default_rng(4)
    ts = optimize_time_splitting(0.0, free, rng=rng)
    assert ts.status == FEASIBLE and ts.optimal_allocation == 0
    uc = optimize_uc_splitting(0.0, free, rng=np.random.default_rng(4))
    assert uc.status == FEASIBLE and uc.optimal_allocation == 0
    assert ts.average_rate == pytest.approx(uc.average_rate, rel=1e-12)


def test_absurd_static_power_is_infeasible(cfg):
    fast = dataclasses.replace(cfg, mc_trials=32)
    result = optimize_time_splitting(1.0, fast, rng=np.random.default_rng(5))
    assert result.status == INFEASIBLE
    assert result.optimal_allocation == fast.frame_slots - fast.preamble_slots
    assert result.avg_harvested_power < result.avg_consumed_power


def test_feasible_result_satisfies_constraint(cfg):
    fast = dataclasses.replace(cfg, mc_trials=32)
    result = optimize_uc_splitting(5e-4, fast, rng=np.random.default_rng(6))
    assert result.status == FEASIBLE
    assert result.avg_harvested_power >= result.avg_consumed_power


def test_harvest_power_monotone_in_allocation(rng):
    # feasibility bisection rests on this monotonicity
    for _ in range(30):
        cfg = ScenarioConfig(
            ris_cols=int(rng.integers(2, 8)),
            ris_rows=int(rng.integers(2, 8)),
            frame_slots=200,
            preamble_slots=20,
            chain_size=int(rng.integers(1, 12)),
            rf_combining_loss_db=float(rng.uniform(0.0, 6.0)),
        )
        for protocol, vmax in (
            (TIME_SPLITTING, cfg.frame_slots - cfg.preamble_slots),
            (UC_SPLITTING, cfg.m_s),
        ):
            values = [avg_harvest_power(protocol, v, cfg) for v in range(vmax + 1)]
            assert all(b >= a - 1e-18 for a, b in zip(values, values[1:]))


def test_bisection_matches_exhaustive_scan(small_cfg):
    trials = draw_trials(small_cfg, np.random.default_rng(99))
    prng = np.random.default_rng(7)
    for _ in range(20):
        p_static = float(10 ** prng.uniform(-6, -3))
        for protocol, optimize in (
            (TIME_SPLITTING, optimize_time_splitting),
            (UC_SPLITTING, optimize_uc_splitting),
        ):
            result = optimize(p_static, small_cfg, trials=trials)
            scan = exhaustive_best(protocol, p_static, small_cfg, trials)
            if result.status == FEASIBLE:
                assert scan is not None
                assert scan[0] == result.optimal_allocation
                assert scan[1] == pytest.approx(result.average_rate, rel=1e-12)
            else:
                assert scan is None


def test_uc_splitting_dominates_at_common_static_power(cfg):
    fast = dataclasses.replace(cfg, mc_trials=500)
    trials = draw_trials(fast, np.random.default_rng(8))
    for p_static in (1e-6, 1e-4, 8e-4):
        ts = optimize_time_splitting(p_static, fast, trials=trials)
        uc = optimize_uc_splitting(p_static, fast, trials=trials)
        assert ts.status == uc.status == FEASIBLE
        assert uc.average_rate >= ts.average_rate


def test_feasibility_range_ordering(cfg):
    # max harvest is identical at full allocation while UC splitting spends
    # less dynamic power, so its feasible static-power range extends at
    # least as far
    fast = dataclasses.replace(cfg, mc_trials=16)
    trials = draw_trials(fast, np.random.default_rng(10))
    max_harvest_ts = avg_harvest_power(TIME_SPLITTING, 9000, fast)
    max_harvest_uc = avg_harvest_power(UC_SPLITTING, fast.m_s, fast)
    assert max_harvest_uc == pytest.approx(max_harvest_ts, rel=1e-12)
    for p_static in np.linspace(1e-4, 3e-3, 13):
        ts = optimize_time_splitting(float(p_static), fast, trials=trials)
        uc = optimize_uc_splitting(float(p_static), fast, trials=trials)
        if ts.status == FEASIBLE:
            assert uc.status == FEASIBLE


def test_same_seed_same_result(cfg):
    fast = dataclasses.replace(cfg, mc_trials=128)
    a = optimize_uc_splitting(1e-4, fast, rng=np.random.default_rng(77))
    b = optimize_uc_splitting(1e-4, fast, rng=np.random.default_rng(77))
    assert a == b


def test_allocation_value_bounds_checked(cfg):
    fast = dataclasses.replace(cfg, mc_trials=8)
    trials = draw_trials(fast, np.random.default_rng(1))
    with pytest.raises(ValueError):
        estimate_averages(TIME_SPLITTING, 9001, 0.0, fast, trials=trials)
    with pytest.raises(ValueError):
        estimate_averages(UC_SPLITTING, 226, 0.0, fast, trials=trials)
    with pytest.raises(ValueError):
        estimate_averages(TIME_SPLITTING, 0, 0.0, fast)  # no rng, no trials
