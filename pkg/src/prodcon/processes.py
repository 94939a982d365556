"""Comparison processes bracketing the producer-consumer dynamics.

Four auxiliary systems, each exact in its own right:

* voter-model perturbation: copy a uniform nearest neighbor with
  probability 1 - eps, otherwise become type 1 only on a unanimously
  type-1 neighborhood, with eps = rho / (d (1 - rho) + rho);
* growth-reduced process (a2 = 1): type 2 is immortal wherever it has a
  type-2 neighbor, so connected type-2 pairs only spread;
* threshold contact process: death at rate 1, birth at rate alpha onto an
  empty site with at least one occupied neighbor;
* 1D interface walk: the domain boundaries of the neutral (a1 = a2 = a)
  chain perform annihilating random walks with hop rate 1 - a, which gives
  closed-form gambler's-ruin survival probabilities.

The first two are defined for nearest-neighbor range only and reject M > 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from ._rng import seed_state
from .dynamics import ModelParams, Trajectory, _sample_grid, simulate
from .lattice import Lattice, ParameterError


def epsilon_from_rho(rho: float, d: int) -> float:
    """Perturbation weight eps = rho / (d (1 - rho) + rho)."""
    if not 0.0 < rho < 1.0:
        raise ParameterError("rho must lie in (0, 1)")
    if d < 1:
        raise ParameterError("d must be a positive integer")
    return rho / (d * (1.0 - rho) + rho)


@dataclass(frozen=True)
class VoterPerturbParams:
    rho: float
    d: int

    @property
    def eps(self) -> float:
        return epsilon_from_rho(self.rho, self.d)


def _require_nearest_neighbor(lat: Lattice, what: str) -> None:
    if lat.M != 1:
        raise ParameterError(f"{what} is defined for nearest-neighbor range M=1 only")


def simulate_voter_perturbation(lat: Lattice, cfg0: np.ndarray, eps: float,
                                t_max: float, seed: int,
                                sample_interval: Optional[float] = None) -> Trajectory:
    """Voter perturbation run; eps = 0 recovers the plain voter model."""
    _require_nearest_neighbor(lat, "the voter perturbation")
    if not 0.0 <= eps < 1.0:
        raise ParameterError("eps must lie in [0, 1)")
    if cfg0.shape[0] != lat.n:
        raise ParameterError("configuration does not match lattice")
    if sample_interval is None:
        sample_interval = max(t_max, 1e-9)
    times = _sample_grid(t_max, sample_interval)
    types = cfg0.astype(np.int8).copy()
    want_if = lat.d == 1
    den1, interf, events = _kernels.voter_run(
        types, lat.neighbor_table, float(eps), float(t_max), times, want_if,
        seed_state(seed))
    return Trajectory(times=times, density1=den1, density2=1.0 - den1,
                      interfaces=interf if want_if else None,
                      final_config=types, events=int(events))


def simulate_richardson_reduced(lat: Lattice, cfg0: np.ndarray, a1: float,
                                t_max: float, seed: int,
                                sample_interval: Optional[float] = None) -> Trajectory:
    """The a2 = 1 process: pure type-2 growth off any connected type-2 pair.

    A type-2 site flips only when it has no type-2 neighbor, so the update
    rule is the general one at (a1, 1).
    """
    _require_nearest_neighbor(lat, "the growth-reduced process")
    if not 0.0 <= a1 < 1.0:
        raise ParameterError("a1 must lie in [0, 1)")
    if sample_interval is None:
        sample_interval = max(t_max, 1e-9)
    return simulate(lat, cfg0, ModelParams(a1, 1.0), t_max, sample_interval, seed)


def richardson_flip_lower_bound(a1: float, d: int) -> float:
    """Worst-case probability that a type-1 site with a type-2 neighbor flips."""
    if not 0.0 <= a1 < 1.0:
        raise ParameterError("a1 must lie in [0, 1)")
    return (1.0 - a1) / (a1 * (2 * d - 1) + (1.0 - a1))


@dataclass(frozen=True)
class ThresholdContactParams:
    alpha: float

    def __post_init__(self):
        if self.alpha <= 0:
            raise ParameterError("alpha must be positive")


@dataclass
class OccupancyTrajectory:
    times: np.ndarray
    density: np.ndarray
    final_config: np.ndarray
    events: int = 0


def simulate_threshold_contact(lat: Lattice, occ0: np.ndarray, alpha: float,
                               t_max: float, seed: int,
                               sample_interval: Optional[float] = None) -> OccupancyTrajectory:
    """Threshold contact process; the empty configuration is absorbing.

    alpha = 0 degenerates to pure death with independent rate-1 clocks.
    """
    if alpha < 0:
        raise ParameterError("alpha must be nonnegative")
    if occ0.shape[0] != lat.n:
        raise ParameterError("occupancy does not match lattice")
    if set(np.unique(occ0)) - {0, 1}:
        raise ParameterError("occupancy must be 0/1 valued")
    if sample_interval is None:
        sample_interval = max(t_max, 1e-9)
    times = _sample_grid(t_max, sample_interval)
    occ = occ0.astype(np.int8).copy()
    dens, events = _kernels.contact_run(occ, lat.neighbor_table, float(alpha),
                                        float(t_max), times, seed_state(seed))
    return OccupancyTrajectory(times=times, density=dens, final_config=occ,
                               events=int(events))


def coupled_contact_containment(lat: Lattice, occ0: np.ndarray, alpha_lo: float,
                                alpha_hi: float, t_max: float, seed: int) -> bool:
    """Pathwise monotonicity check of the contact process in alpha.

    Shared deaths plus thinned births keep the high-alpha copy's occupied
    set containing the low-alpha copy's; returns whether that held at every
    event.
    """
    if not 0 < alpha_lo <= alpha_hi:
        raise ParameterError("need 0 < alpha_lo <= alpha_hi")
    lo = occ0.astype(np.int8).copy()
    hi = occ0.astype(np.int8).copy()
    return bool(_kernels.coupled_contact_run(lo, hi, lat.neighbor_table,
                                             float(alpha_lo), float(alpha_hi),
                                             float(t_max), seed_state(seed)))


def alpha_lower_bound(rho: float, M: int, d: int) -> float:
    """Birth rate dominated by the type-1 set at parameters (0, rho).

    alpha(rho) = (1 - rho) / (1 + ((2M+1)^d - 2) rho).
    """
    if not 0.0 <= rho < 1.0:
        raise ParameterError("rho must lie in [0, 1)")
    if M < 1 or d < 1:
        raise ParameterError("M and d must be positive integers")
    return (1.0 - rho) / (1.0 + ((2 * M + 1) ** d - 2) * rho)


def interface_from_config(cfg: np.ndarray) -> np.ndarray:
    """Midpoint occupancy of a 1D ring configuration.

    Entry v is 1 exactly when ring sites v and v+1 carry different types;
    the number of occupied midpoints is even.
    """
    cfg = np.asarray(cfg)
    if cfg.ndim != 1:
        raise ParameterError("interface extraction requires a 1D configuration")
    return (cfg != np.roll(cfg, -1)).astype(np.int8)


@dataclass
class InterfaceTrajectory:
    times: np.ndarray
    counts: np.ndarray
    final_state: np.ndarray


def simulate_interface(state0: np.ndarray, a: float, t_max: float, seed: int,
                       sample_interval: Optional[float] = None) -> InterfaceTrajectory:
    """Annihilating-walk dynamics of the 1D interface midpoints.

    Particles hop onto empty nearest midpoints at rate c+ = 1 - a and
    adjacent pairs annihilate at rate one; the particle count never
    increases and drops by exactly 2 per annihilation.
    """
    if a == 1.0:
        raise ParameterError("a = 1 is the excluded regime (frozen interfaces)")
    if not 0.0 <= a < 1.0:
        raise ParameterError("a must lie in [0, 1)")
    state0 = np.asarray(state0)
    if set(np.unique(state0)) - {0, 1}:
        raise ParameterError("interface state must be 0/1 valued")
    if sample_interval is None:
        sample_interval = max(t_max, 1e-9)
    times = _sample_grid(t_max, sample_interval)
    occ = state0.astype(np.int8).copy()
    counts = _kernels.interface_run(occ, 1.0 - float(a), float(t_max), times,
                                    seed_state(seed))
    return InterfaceTrajectory(times=times, counts=counts, final_state=occ)


def gambler_ruin_hit_prob(N: int, K: int, a1: float, a2: float) -> float:
    """P(interval size hits 1 before K) for the 1D type-2 interval walk.

    The interval length jumps up at rate 2(1 - a1) and down at rate
    2(1 - a2), started from N + 1.  With c0 = (1 - a2)/(1 - a1) != 1 the
    probability is (c0^N - c0^(K-1)) / (1 - c0^(K-1)), which tends to c0^N
    as K grows; the symmetric case uses the linear ruin formula.
    """
    if not (0.0 <= a1 < 1.0 and 0.0 <= a2 < 1.0):
        raise ParameterError("a1 and a2 must lie in [0, 1)")
    if N < 0 or K <= N + 1:
        raise ParameterError("need 0 <= N and N + 1 < K")
    if N == 0:
        return 1.0
    c0 = (1.0 - a2) / (1.0 - a1)
    if c0 == 1.0:
        return (K - 1.0 - N) / (K - 1.0)
    return (c0 ** N - c0 ** (K - 1)) / (1.0 - c0 ** (K - 1))


def _rate_bound_concave(z: float, rho: float) -> float:
    # Concave side of the domination bound; equals 1 at z = 1.
    return (1.0 + rho) * z / ((1.0 - rho) + 2.0 * rho * z)


def _rate_bound_linear(z: float, rho: float, d: int) -> float:
    # Linear side; agrees with the concave side at z = 1/(2d) and z = 1.
    return (d * (1.0 - rho) * z + rho) / (d * (1.0 - rho) + rho)


def rate_inequality_violations(nu_max: int = 12, n_rho: int = 20,
                               n_pairs: int = 20, tol: float = 1e-12) -> int:
    """Exhaustive check of the voter-perturbation rate bounds.

    For every even neighborhood size nu = 2d <= nu_max, every split with
    both types present and a grid of (rho, a1, a2) inside the region
    a1 < (1-rho)/2 < (1+rho)/2 < a2, verifies that the spin system's
    probability toward 1 is at most (1-eps) f1/nu and toward 2 at least
    (1-eps) f2/nu + eps.  Returns the number of violations (expected 0).
    """
    bad = 0
    for d in range(1, nu_max // 2 + 1):
        nu = 2 * d
        for i in range(n_rho):
            rho = (i + 0.5) / n_rho
            eps = epsilon_from_rho(rho, d)
            for jj in range(n_pairs):
                frac = (jj + 0.5) / n_pairs
                a1 = frac * (1.0 - rho) / 2.0
                a2 = (1.0 + rho) / 2.0 + frac * (1.0 - (1.0 + rho) / 2.0)
                for f1 in range(1, nu):
                    f2 = nu - f1
                    to1 = _kernels.flip_prob(a2, float(f1), float(f2))
                    to2 = _kernels.flip_prob(a1, float(f2), float(f1))
                    if to1 > (1.0 - eps) * f1 / nu + tol:
                        bad += 1
                    if to2 < (1.0 - eps) * f2 / nu + eps - tol:
                        bad += 1
    return bad
