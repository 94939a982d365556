"""Well-mixed deterministic approximation of the two-type model.

With u1 the density of type 1 (and u2 = 1 - u1), the density obeys

    du1/dt = (1-a2) u1 u2 / (a2 u2 + (1-a2) u1)
           - (1-a1) u1 u2 / (a1 u1 + (1-a1) u2),

the same two quotients as the spatial flip probabilities with counts
replaced by densities, including the degenerate-denominator rules.  The
boundary states u1 = 0, 1 are always equilibria; the interior fixed point

    e* = (1-a1)(a2 - 1/2) / ((1-a2)(a1 - 1/2) + (1-a1)(a2 - 1/2))

exists in (0, 1) exactly when a1 and a2 sit strictly on the same side of
1/2 and splits the dynamics into three regimes: a selfish type (a > 1/2)
beats an altruistic one, two selfish types are bistable, two altruistic
types coexist at e*.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .lattice import ParameterError


def mf_derivative(u1: float, a1: float, a2: float) -> float:
    """du1/dt at density u1."""
    if not 0.0 <= u1 <= 1.0:
        raise ParameterError("u1 must lie in [0, 1]")
    return float(_kernels.mf_rhs(float(u1), float(a1), float(a2)))


def sign_expression(u1: float, a1: float, a2: float) -> float:
    """Expression whose sign matches du1/dt on (0, 1)."""
    return (1 - a2) * (a1 - 0.5) * u1 - (1 - a1) * (a2 - 0.5) * (1 - u1)


def interior_fixed_point(a1: float, a2: float) -> Optional[float]:
    """The interior equilibrium, or None when no fixed point lies in (0, 1).

    Returns None both when the parameters straddle 1/2 (no interior root)
    and on the degenerate boundary a_i = 1/2 (a continuum of roots or a
    boundary-crossing case, reported as absent).
    """
    s1 = a1 - 0.5
    s2 = a2 - 0.5
    if s1 == 0.0 or s2 == 0.0:
        return None
    if (s1 > 0) != (s2 > 0):
        return None
    num = (1 - a1) * s2
    den = (1 - a2) * s1 + num
    if den == 0.0:
        return None
    return float(num / den)


@dataclass(frozen=True)
class RegimeClass:
    """Mean-field regime label plus the interior fixed point when it exists."""

    label: str
    e_star: Optional[float]


def classify_regime(a1: float, a2: float) -> RegimeClass:
    """One of selfish-wins, bistable, coexistence, neutral-boundary."""
    if a1 == 0.5 or a2 == 0.5:
        return RegimeClass("neutral-boundary", None)
    if (a1 > 0.5) != (a2 > 0.5):
        return RegimeClass("selfish-wins", None)
    label = "bistable" if a1 > 0.5 else "coexistence"
    return RegimeClass(label, interior_fixed_point(a1, a2))


def predicted_limit(a1: float, a2: float, u1_0: float) -> Optional[float]:
    """Long-time limit of the density from a given start, when determined.

    Returns None on the bistable separatrix and in neutral cases where the
    limit is the initial condition itself is not generally a single point.
    """
    if u1_0 in (0.0, 1.0):
        return u1_0
    reg = classify_regime(a1, a2)
    if reg.label == "selfish-wins":
        return 1.0 if a1 > 0.5 else 0.0
    if reg.label == "coexistence":
        return reg.e_star
    if reg.label == "bistable":
        if u1_0 > reg.e_star:
            return 1.0
        if u1_0 < reg.e_star:
            return 0.0
        return None
    return None


@dataclass
class MeanFieldPath:
    times: np.ndarray
    u1: np.ndarray

    @property
    def final(self) -> float:
        return float(self.u1[-1])


def mf_integrate(u1_0: float, a1: float, a2: float, t_max: float,
                 dt: float = 1e-3, sample_interval: Optional[float] = None) -> MeanFieldPath:
    """Integrate the density ODE with fixed-step RK4.

    The scalar field is smooth away from the degenerate corners, so a fixed
    step is enough; the run aborts if the state escapes [-1e-9, 1 + 1e-9]
    and machine-epsilon excursions are clamped back into [0, 1].
    """
    if not 0.0 <= u1_0 <= 1.0:
        raise ParameterError("u1_0 must lie in [0, 1]")
    if dt <= 0 or t_max < 0:
        raise ParameterError("need dt > 0 and t_max >= 0")
    n_steps = int(round(t_max / dt))
    if sample_interval is None:
        stride = max(n_steps, 1)
    else:
        stride = max(int(round(sample_interval / dt)), 1)
    samples, ok = _kernels.rk4_integrate(float(u1_0), float(a1), float(a2),
                                         float(dt), n_steps, stride)
    if not ok:
        raise ParameterError("integrator state left [-1e-9, 1+1e-9]; step rejected")
    times = np.minimum(np.arange(samples.shape[0]) * (stride * dt), n_steps * dt)
    if samples.shape[0] >= 2:
        times[-1] = n_steps * dt
    return MeanFieldPath(times=times, u1=samples)
