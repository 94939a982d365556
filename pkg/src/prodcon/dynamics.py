"""Exact continuous-time dynamics of the two-type producer-consumer spin system.

Every site holds an individual of type 1 or 2 and is updated at rate one.
At an update of a type-j site, the new type is i with probability

    (1 - a_j) f_i / (a_j f_j + (1 - a_j) f_i)

where f_i, f_j count neighbors of each type and (a1, a2) are the reduced
consumption parameters.  A vanishing denominator is resolved by continuity:
the probability is 0 when there is no type-i neighbor and 1 when the whole
neighborhood is type i.  Simulation uses uniform-site Gillespie steps at
total rate n with a fixed draw order (site, holding time, flip threshold),
so a seed pins the trajectory bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels
from ._rng import py_uniform, seed_state
from .lattice import Lattice, ParameterError, count_types


def reduce_params(a11: float, a12: float, a21: float, a22: float) -> tuple[float, float]:
    """Reduce the four consumption abilities to (a1, a2).

    a1 = a11 / (a11 + a21) and a2 = a22 / (a12 + a22); the flip
    probabilities depend on the ability matrix only through this pair.
    """
    if min(a11, a12, a21, a22) < 0:
        raise ParameterError("abilities must be nonnegative")
    if a11 + a21 <= 0 or a12 + a22 <= 0:
        raise ParameterError("each resource must be consumable: a1j + a2j > 0")
    return a11 / (a11 + a21), a22 / (a12 + a22)


@dataclass(frozen=True)
class ModelParams:
    """Reduced parameter pair; both values lie in [0, 1]."""

    a1: float
    a2: float

    def __post_init__(self):
        if not (0.0 <= self.a1 <= 1.0 and 0.0 <= self.a2 <= 1.0):
            raise ParameterError("reduced parameters must lie in [0, 1]")

    @classmethod
    def from_abilities(cls, a11, a12, a21, a22) -> "ModelParams":
        a1, a2 = reduce_params(a11, a12, a21, a22)
        return cls(a1, a2)

    @property
    def excluded_regime(self) -> bool:
        """a1 = a2 = 1 admits infinitely many absorbing states."""
        return self.a1 == 1.0 and self.a2 == 1.0


def flip_probability(j: int, f_i, f_j, params: ModelParams) -> float:
    """Probability that an updated type-j site becomes the other type.

    Invariant to rescaling the counts (fractions work equally well).
    """
    if j not in (1, 2):
        raise ParameterError("current type must be 1 or 2")
    if f_i < 0 or f_j < 0 or f_i + f_j == 0:
        raise ParameterError("need a nonempty neighborhood")
    aj = params.a2 if j == 2 else params.a1
    return float(_kernels.flip_prob(aj, float(f_i), float(f_j)))


@dataclass
class SimClock:
    """Continuous clock plus the RNG stream position of a single replica."""

    t: float = 0.0
    rng_state: int = 0
    event_count: int = 0

    @classmethod
    def from_seed(cls, seed: int) -> "SimClock":
        return cls(t=0.0, rng_state=int(seed_state(seed)), event_count=0)


@dataclass
class Trajectory:
    """Sampled observables of one run.

    `interfaces` is filled only for one-dimensional nearest-neighbor runs;
    `update_counts` holds per-site event counts over the applied events.
    Fixation fields stay None while both types persist at the horizon.
    """

    times: np.ndarray
    density1: np.ndarray
    density2: np.ndarray
    interfaces: Optional[np.ndarray]
    final_config: np.ndarray
    update_counts: Optional[np.ndarray] = None
    events: int = 0
    fixation_time: Optional[float] = None
    fixated_to: Optional[int] = None
    excluded_regime: bool = False
    snapshots: Optional[list] = None

    @property
    def fixated(self) -> bool:
        return self.fixation_time is not None


def _sample_grid(t_max: float, sample_interval: float) -> np.ndarray:
    if t_max < 0:
        raise ParameterError("t_max must be nonnegative")
    if sample_interval <= 0:
        raise ParameterError("sample_interval must be positive")
    k = int(math.floor(t_max / sample_interval + 1e-12))
    times = np.arange(k + 1, dtype=np.float64) * sample_interval
    if times[-1] < t_max - 1e-12:
        times = np.append(times, t_max)
    return times


def step(lat: Lattice, cfg: np.ndarray, params: ModelParams, clock: SimClock):
    """Apply one update event in place; returns (cfg, clock).

    Consumes exactly three stream draws in fixed order: uniform site,
    exponential holding time at total rate n, flip threshold.
    """
    n = lat.n
    u, s = py_uniform(clock.rng_state)
    x = min(int(u * n), n - 1)
    u, s = py_uniform(s)
    dt = -math.log1p(-u) / n
    u, s = py_uniform(s)
    f1, f2 = count_types(lat, cfg, x)
    j = int(cfg[x])
    p = flip_probability(j, f2 if j == 1 else f1, f1 if j == 1 else f2, params)
    if u < p:
        cfg[x] = 3 - j
    clock.t += dt
    clock.rng_state = s
    clock.event_count += 1
    return cfg, clock


def simulate(lat: Lattice, cfg0: np.ndarray, params: ModelParams, t_max: float,
             sample_interval: float, seed: int) -> Trajectory:
    """Run the spin system to t_max, sampling at the requested cadence.

    The recorded state at sample time s is the configuration just before
    the first event past s; events beyond t_max are not applied.  A
    homogeneous configuration is absorbing, so once fixation is reached the
    remaining samples are filled without further event processing.
    """
    if cfg0.shape[0] != lat.n:
        raise ParameterError("configuration does not match lattice")
    times = _sample_grid(t_max, sample_interval)
    types = cfg0.astype(np.int8).copy()
    want_if = lat.d == 1 and lat.M == 1
    den1, interf, counts, events, fix_time, fix_to = _kernels.spin_run(
        types, lat.neighbor_table, float(params.a1), float(params.a2),
        float(t_max), times, want_if, seed_state(seed))
    return Trajectory(
        times=times,
        density1=den1,
        density2=1.0 - den1,
        interfaces=interf if want_if else None,
        final_config=types,
        update_counts=counts,
        events=int(events),
        fixation_time=None if fix_time < 0 else float(fix_time),
        fixated_to=None if fix_time < 0 else int(fix_to),
        excluded_regime=params.excluded_regime,
    )


@dataclass
class CoupledRun:
    """Paired sampled densities from a two-process coupling."""

    times: np.ndarray
    density1_a: np.ndarray
    density1_b: np.ndarray
    containment_ok: bool
    final_a: np.ndarray = field(default=None, repr=False)
    final_b: np.ndarray = field(default=None, repr=False)


def coupled_simulate_ordered(lat: Lattice, cfg_a: np.ndarray, cfg_b: np.ndarray,
                             params: ModelParams, t_max: float, seed: int,
                             sample_interval: Optional[float] = None) -> CoupledRun:
    """Drive two ordered copies through one event stream and check containment.

    Requires {A = 2} to contain {B = 2} initially.  Both copies see the same
    site choices, holding times and uniform thresholds (compared against the
    probability of becoming type 2).  Sites where the copies agree update
    jointly; a site where they differ is updated in one copy per event slot,
    which is what makes the attractive coupling order-preserving for every
    parameter choice.  `containment_ok` reports whether {A = 2} contained
    {B = 2} after every event.
    """
    if cfg_a.shape != cfg_b.shape or cfg_a.shape[0] != lat.n:
        raise ParameterError("configurations do not match lattice")
    if np.any((cfg_b == 2) & (cfg_a != 2)):
        raise ParameterError("initial configurations are not ordered: need {A=2} >= {B=2}")
    if sample_interval is None:
        sample_interval = max(t_max, 1e-9)
    times = _sample_grid(t_max, sample_interval)
    ta = cfg_a.astype(np.int8).copy()
    tb = cfg_b.astype(np.int8).copy()
    d1a, d1b, ok, _ = _kernels.ordered_coupled_run(
        ta, tb, lat.neighbor_table, float(params.a1), float(params.a2),
        float(t_max), times, seed_state(seed))
    return CoupledRun(times, d1a, d1b, bool(ok), ta, tb)


def domination_region_ok(params: ModelParams, rho: float) -> bool:
    """Parameter region in which the voter-perturbation bound applies."""
    return params.a1 < (1.0 - rho) / 2.0 and params.a2 > (1.0 + rho) / 2.0


def coupled_simulate_domination(lat: Lattice, cfg0: np.ndarray, params: ModelParams,
                                rho: float, t_max: float, seed: int,
                                sample_interval: Optional[float] = None) -> CoupledRun:
    """Couple the spin system over the voter perturbation from one start.

    Requires nearest-neighbor range and parameters with a1 < (1-rho)/2 and
    a2 > (1+rho)/2; then the spin system's type-2 set dominates the voter
    perturbation's pathwise under the shared-threshold coupling.
    """
    from .processes import epsilon_from_rho

    if lat.M != 1:
        raise ParameterError("domination coupling is defined for range M=1")
    if not 0.0 < rho < 1.0:
        raise ParameterError("rho must lie in (0, 1)")
    if not domination_region_ok(params, rho):
        raise ParameterError(
            f"need a1 < (1-rho)/2 and a2 > (1+rho)/2; got a1={params.a1}, "
            f"a2={params.a2}, rho={rho}")
    eps = epsilon_from_rho(rho, lat.d)
    if sample_interval is None:
        sample_interval = max(t_max, 1e-9)
    times = _sample_grid(t_max, sample_interval)
    te = cfg0.astype(np.int8).copy()
    tx = cfg0.astype(np.int8).copy()
    d1e, d1x, ok, _ = _kernels.domination_coupled_run(
        te, tx, lat.neighbor_table, float(params.a1), float(params.a2),
        float(eps), float(t_max), times, seed_state(seed))
    return CoupledRun(times, d1e, d1x, bool(ok), te, tx)


def run_until_count2_hits(lat: Lattice, cfg0: np.ndarray, params: ModelParams,
                          lo: int, hi: int, t_cap: float, seed: int) -> tuple[str, float]:
    """Run until the type-2 population reaches lo or hi.

    Returns ("lo" | "hi" | "timeout", time).  Useful for first-passage
    experiments such as the 1D interval survival check.
    """
    types = cfg0.astype(np.int8).copy()
    res, t = _kernels.spin_hit_run(types, lat.neighbor_table, float(params.a1),
                                   float(params.a2), int(lo), int(hi),
                                   float(t_cap), seed_state(seed))
    return ("lo", "hi", "timeout")[int(res)], float(t)
