"""Average-rate maximization under the harvested-vs-consumed power constraint.

For either protocol the average rate is monotone decreasing and the average
harvested power monotone nondecreasing in the allocation value, so the
optimum is the smallest feasible value; it is located by integer bisection
on the feasibility predicate. One set of channel draws (common random
numbers) is reused across every candidate inside an optimization, which
keeps the sample-average feasibility predicate exactly monotone at finite
trial counts. The TX-side absorption is deterministic, so harvested power
does not vary across draws at all; only the rate is averaged.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .channel import free_space_uc_gain, sample_channel
from .harvesting import harvest
from .power import TIME_SPLITTING, UC_SPLITTING, total_consumption
from .scenario import ScenarioConfig, derived_quantities

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class AllocationResult:
    protocol: str
    optimal_allocation: int      # eh_slots (time splitting) or k (UC splitting)
    average_rate: float          # bits/s
    rate_ci_halfwidth: float     # bits/s, 95% normal-approximation half-width
    avg_harvested_power: float   # W
    avg_consumed_power: float    # W
    status: str                  # FEASIBLE or INFEASIBLE


@dataclass(frozen=True)
class AverageEstimate:
    avg_rate: float              # bits/s
    rate_ci_halfwidth: float     # bits/s
    avg_harvest_power: float     # W
    avg_consumed_power: float    # W


@dataclass(frozen=True)
class TrialChannels:
    """Amplitude sums of a fixed set of channel draws, shared across candidates.

    ``amp_prefix[t, k]`` holds sum_{i<k} |h_i||g_i| for draw t in row-major UC
    order, so the coherent amplitude over the complement of the first k UCs is
    ``amp_prefix[:, m_s] - amp_prefix[:, k]``.
    """

    amp_prefix: np.ndarray  # (n_trials, m_s + 1)

    @property
    def n_trials(self) -> int:
        return self.amp_prefix.shape[0]

    @property
    def m_s(self) -> int:
        return self.amp_prefix.shape[1] - 1

    @property
    def amp_total(self) -> np.ndarray:
        return self.amp_prefix[:, -1]


def draw_trials(
    cfg: ScenarioConfig, rng: np.random.Generator, n_trials: Optional[int] = None
) -> TrialChannels:
    """Draw the Monte-Carlo channel set once (deterministic for a fixed seed)."""
    n = cfg.mc_trials if n_trials is None else int(n_trials)
    if n < 1:
        raise ValueError(f"trial count must be >= 1, got {n}")
    m_s = cfg.m_s
    prefix = np.zeros((n, m_s + 1))
    for t in range(n):
        ch = sample_channel(cfg, rng)
        amp = np.abs(ch.h) * np.abs(ch.g)
        np.cumsum(amp, out=prefix[t, 1:])
    return TrialChannels(amp_prefix=prefix)


def _uniform_absorbed_power(cfg: ScenarioConfig, n_ucs: int) -> np.ndarray:
    # TX side is deterministic free space: every UC absorbs the same power.
    return np.full(n_ucs, cfg.tx_power * free_space_uc_gain(cfg))


def _allocation_bounds(protocol: str, cfg: ScenarioConfig) -> int:
    if protocol == TIME_SPLITTING:
        return cfg.frame_slots - cfg.preamble_slots
    if protocol == UC_SPLITTING:
        return cfg.m_s
    raise ValueError(f"unknown protocol {protocol!r}")


def _trial_rates(
    protocol: str, value: int, cfg: ScenarioConfig, trials: TrialChannels
) -> np.ndarray:
    noise = derived_quantities(cfg).noise_power
    if protocol == TIME_SPLITTING:
        payload_slots = cfg.frame_slots - cfg.preamble_slots - value
        amplitude = trials.amp_total
    else:
        payload_slots = cfg.frame_slots - cfg.preamble_slots
        amplitude = trials.amp_total - trials.amp_prefix[:, value]
    snr = cfg.tx_power * amplitude**2 / noise
    return (payload_slots / cfg.frame_slots) * cfg.bandwidth * np.log2(1.0 + snr)


def avg_harvest_power(protocol: str, value: int, cfg: ScenarioConfig) -> float:
    """Frame-averaged DC harvest for an allocation value (deterministic)."""
    frame_duration = derived_quantities(cfg).frame_duration
    if protocol == TIME_SPLITTING:
        absorbed = _uniform_absorbed_power(cfg, cfg.m_s)
        duration = value * cfg.slot_duration
    else:
        absorbed = _uniform_absorbed_power(cfg, value)
        duration = (cfg.frame_slots - cfg.preamble_slots) * cfg.slot_duration
    return harvest(absorbed, duration, cfg).harvested_energy / frame_duration


def estimate_averages(
    protocol: str,
    value: int,
    p_static: float,
    cfg: ScenarioConfig,
    rng: Optional[np.random.Generator] = None,
    trials: Optional[TrialChannels] = None,
) -> AverageEstimate:
    """Monte-Carlo averages for one allocation value.

    Pass ``trials`` to reuse an existing draw set (common random numbers);
    otherwise ``rng`` is consumed to draw ``cfg.mc_trials`` fresh channels.
    """
    if not 0 <= value <= _allocation_bounds(protocol, cfg):
        raise ValueError(
            f"allocation value must lie in [0, {_allocation_bounds(protocol, cfg)}], got {value}"
        )
    if trials is None:
        if rng is None:
            raise ValueError("either rng or trials must be provided")
        trials = draw_trials(cfg, rng)
    rates = _trial_rates(protocol, value, cfg, trials)
    avg_rate = float(rates.mean())
    if trials.n_trials > 1:
        ci = 1.96 * float(rates.std(ddof=1)) / math.sqrt(trials.n_trials)
    else:
        ci = 0.0
    return AverageEstimate(
        avg_rate=avg_rate,
        rate_ci_halfwidth=ci,
        avg_harvest_power=avg_harvest_power(protocol, value, cfg),
        avg_consumed_power=total_consumption(p_static, protocol, cfg).total,
    )


def smallest_feasible(lo: int, hi: int, predicate: Callable[[int], bool]) -> Optional[int]:
    """Smallest v in [lo, hi] with predicate(v) true, assuming monotonicity.

    Returns None when even hi fails. The predicate must be False below some
    threshold and True at and above it.
    """
    if predicate(lo):
        return lo
    if not predicate(hi):
        return None
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _optimize(
    protocol: str,
    p_static: float,
    cfg: ScenarioConfig,
    rng: Optional[np.random.Generator],
    trials: Optional[TrialChannels],
) -> AllocationResult:
    if trials is None:
        if rng is None:
            raise ValueError("either rng or trials must be provided")
        trials = draw_trials(cfg, rng)
    vmax = _allocation_bounds(protocol, cfg)
    consumed = total_consumption(p_static, protocol, cfg).total

    def feasible(v: int) -> bool:
        return avg_harvest_power(protocol, v, cfg) >= consumed

    best = smallest_feasible(0, vmax, feasible)
    status = FEASIBLE if best is not None else INFEASIBLE
    value = best if best is not None else vmax
    est = estimate_averages(protocol, value, p_static, cfg, trials=trials)
    return AllocationResult(
        protocol=protocol,
        optimal_allocation=value,
        average_rate=est.avg_rate,
        rate_ci_halfwidth=est.rate_ci_halfwidth,
        avg_harvested_power=est.avg_harvest_power,
        avg_consumed_power=est.avg_consumed_power,
        status=status,
    )


def optimize_time_splitting(
    p_static: float,
    cfg: ScenarioConfig,
    rng: Optional[np.random.Generator] = None,
    trials: Optional[TrialChannels] = None,
) -> AllocationResult:
    """Best number of harvesting slots: the smallest one meeting the constraint.

    The rate falls linearly in eh_slots while the harvest grows, so the
    smallest feasible slot count maximizes the average rate. Reports the
    boundary allocation with INFEASIBLE status when even the full
    post-preamble interval cannot cover consumption.
    """
    return _optimize(TIME_SPLITTING, p_static, cfg, rng, trials)


def optimize_uc_splitting(
    p_static: float,
    cfg: ScenarioConfig,
    rng: Optional[np.random.Generator] = None,
    trials: Optional[TrialChannels] = None,
) -> AllocationResult:
    """Best number of harvesting UCs: the smallest one meeting the constraint."""
    return _optimize(UC_SPLITTING, p_static, cfg, rng, trials)
