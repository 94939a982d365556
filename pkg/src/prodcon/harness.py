"""Replica orchestration, outcome classification and phase-diagram sweeps.

Long-run behaviors (a type winning, clustering, coexistence) are limits and
cannot be observed directly, so the harness uses declared finite-horizon
surrogates: fixation within t_max, both densities staying inside a
[delta, 1 - delta] band, and nearest-displacement pair correlation above
1 - delta.  The thresholds are part of SweepSpec so their sensitivity can
be studied.  Replicas draw seeds through a stable XOR-hash of (cell,
replica) indices, which makes whole sweep CSVs byte-reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from ._rng import derive_seed, seed_state
from .dynamics import ModelParams, Trajectory, simulate
from .lattice import Lattice, ParameterError, random_configuration

SWEEP_COLUMNS = "a1,a2,replicas,frac_fix1,frac_fix2,mean_density1,pair_corr_d1,label"


def pair_correlation(lat: Lattice, cfg: np.ndarray, displacement=None) -> float:
    """Empirical P(type at x equals type at x + displacement) over all x."""
    if displacement is None:
        displacement = (1,) + (0,) * (lat.d - 1)
    grid = cfg.reshape((lat.L,) * lat.d)
    shifted = grid
    for axis, delta in enumerate(displacement):
        if delta:
            shifted = np.roll(shifted, -int(delta), axis=axis)
    return float(np.mean(grid == shifted))


@dataclass
class ReplicaSummary:
    final_density1: float
    fixated: bool
    fixated_to: Optional[int]
    time: float            # fixation time, or the censoring horizon
    pair_corr_d1: float

    def __post_init__(self):
        if self.fixated and self.final_density1 not in (0.0, 1.0):
            raise ParameterError("fixation implies a homogeneous final state")


def summarize_replica(lat: Lattice, traj: Trajectory, t_max: float) -> ReplicaSummary:
    d1 = float(traj.density1[-1])
    return ReplicaSummary(
        final_density1=d1,
        fixated=traj.fixated,
        fixated_to=traj.fixated_to,
        time=traj.fixation_time if traj.fixated else t_max,
        pair_corr_d1=pair_correlation(lat, traj.final_config),
    )


def classify_outcome(summaries: Sequence[ReplicaSummary], delta: float = 0.05,
                     decision_fraction: float = 0.95,
                     min_replicas: int = 30) -> str:
    """Label a parameter cell from replica summaries.

    type-i-wins when at least 95% of replicas fixate to i; coexistence when
    at least 95% keep both densities inside [delta, 1-delta] at the
    horizon; clustering when the mean displacement-1 pair correlation
    exceeds 1 - delta while neither type wins; undecided otherwise (always
    undecided below 30 replicas).
    """
    m = len(summaries)
    if m < min_replicas:
        return "undecided"
    fix1 = sum(1 for s in summaries if s.fixated and s.fixated_to == 1) / m
    fix2 = sum(1 for s in summaries if s.fixated and s.fixated_to == 2) / m
    if fix1 >= decision_fraction:
        return "type1-wins"
    if fix2 >= decision_fraction:
        return "type2-wins"
    banded = sum(1 for s in summaries
                 if delta <= s.final_density1 <= 1.0 - delta) / m
    if banded >= decision_fraction:
        return "coexistence"
    mean_corr = sum(s.pair_corr_d1 for s in summaries) / m
    if mean_corr > 1.0 - delta:
        return "clustering"
    return "undecided"


@dataclass
class OutcomeRecord:
    a1: float
    a2: float
    replicas: int
    frac_fix1: float
    frac_fix2: float
    mean_density1: float
    pair_corr_d1: float
    label: str
    summaries: list = field(default_factory=list, repr=False)


@dataclass
class SweepSpec:
    """Grid specification for a phase sweep; JSON keys mirror these names."""

    a1_values: Sequence[float]
    a2_values: Sequence[float]
    d: int = 2
    M: int = 1
    L: int = 30
    replicas: int = 30
    t_max: float = 200.0
    delta: float = 0.05
    init_density1: float = 0.5
    base_seed: int = 0

    def __post_init__(self):
        if any(not 0.0 <= a <= 1.0 for a in list(self.a1_values) + list(self.a2_values)):
            raise ParameterError("grid values must lie in [0, 1]")
        if self.replicas < 1:
            raise ParameterError("need at least one replica")

    @classmethod
    def from_json(cls, path) -> "SweepSpec":
        with open(path) as fh:
            return cls(**json.load(fh))

    def lattice(self) -> Lattice:
        return Lattice(self.d, self.M, self.L)


def run_cell(lat: Lattice, params: ModelParams, replicas: int, t_max: float,
             delta: float, init_density1: float, base_seed: int,
             cell_index: int = 0) -> OutcomeRecord:
    """Simulate one parameter cell; replicas are independent seeded runs."""
    summaries = []
    for r in range(replicas):
        seed = derive_seed(base_seed, cell_index, r)
        cfg0 = random_configuration(lat, init_density1, derive_seed(seed, 1))
        traj = simulate(lat, cfg0, params, t_max, sample_interval=t_max or 1.0,
                        seed=seed)
        summaries.append(summarize_replica(lat, traj, t_max))
    m = len(summaries)
    return OutcomeRecord(
        a1=params.a1,
        a2=params.a2,
        replicas=m,
        frac_fix1=sum(1 for s in summaries if s.fixated and s.fixated_to == 1) / m,
        frac_fix2=sum(1 for s in summaries if s.fixated and s.fixated_to == 2) / m,
        mean_density1=sum(s.final_density1 for s in summaries) / m,
        pair_corr_d1=sum(s.pair_corr_d1 for s in summaries) / m,
        label=classify_outcome(summaries, delta),
        summaries=summaries,
    )


def phase_sweep(spec: SweepSpec) -> list[OutcomeRecord]:
    """One OutcomeRecord per (a1, a2) grid cell, in row-major grid order.

    Cells are independent; seed derivation is per (cell, replica), so the
    records do not depend on execution order and may be computed
    concurrently before the deterministic merge.
    """
    lat = spec.lattice()
    records = []
    cell = 0
    for a1 in spec.a1_values:
        for a2 in spec.a2_values:
            records.append(run_cell(lat, ModelParams(a1, a2), spec.replicas,
                                    spec.t_max, spec.delta, spec.init_density1,
                                    spec.base_seed, cell_index=cell))
            cell += 1
    return records


def _open_out(path):
    if hasattr(path, "write"):
        return path, False
    return open(path, "w"), True


def write_sweep_csv(records: Sequence[OutcomeRecord], path) -> None:
    fh, close = _open_out(path)
    try:
        fh.write("# schema=1\n")
        fh.write(SWEEP_COLUMNS + "\n")
        for r in records:
            fh.write(f"{r.a1:.10g},{r.a2:.10g},{r.replicas},{r.frac_fix1:.10g},"
                     f"{r.frac_fix2:.10g},{r.mean_density1:.10g},"
                     f"{r.pair_corr_d1:.10g},{r.label}\n")
    finally:
        if close:
            fh.close()


def write_trajectory_csv(traj: Trajectory, path) -> None:
    """Columns t,density1,density2,interfaces (last empty off the 1D ring)."""
    fh, close = _open_out(path)
    try:
        fh.write("t,density1,density2,interfaces\n")
        for i, t in enumerate(traj.times):
            tail = ""
            if traj.interfaces is not None and traj.interfaces[i] >= 0:
                tail = f"{int(traj.interfaces[i])}"
            fh.write(f"{t:.10g},{traj.density1[i]:.10g},{traj.density2[i]:.10g},{tail}\n")
    finally:
        if close:
            fh.close()


# --- good-block statistics ------------------------------------------------

@dataclass
class GoodSiteStats:
    N: int
    T: float
    replicas: int
    freq_block: float       # all 2d displaced blocks all-2 at time T
    freq_sustained: float   # ... and throughout [T, 2T]

    def __post_init__(self):
        if not (0.0 <= self.freq_block <= 1.0 and 0.0 <= self.freq_sustained <= 1.0):
            raise ParameterError("frequencies must lie in [0, 1]")


def _good_block_mask(lat: Lattice, N: int) -> np.ndarray:
    """Union of the 2d blocks N z + (-N, N]^d for unit displacements z."""
    folded = lat.fold(lat.all_coords())
    mask = np.zeros(lat.n, bool)
    for axis in range(lat.d):
        for sign in (1, -1):
            center = np.zeros(lat.d, np.int64)
            center[axis] = sign * N
            rel = folded - center
            inside = np.all((rel > -N) & (rel <= N), axis=1)
            mask |= inside
    return mask


def good_site_frequency(kind: str, lat: Lattice, params: dict, N: int,
                        T_scale: float, replicas: int, seed: int) -> GoodSiteStats:
    """Spread statistics of an all-2 block under a chosen process.

    Starts with the centered block (-N, N]^d all type 2 and everything else
    type 1, runs to T = T_scale * N, and measures how often the 2d
    neighboring blocks are entirely type 2 at T (block event) and stay so
    throughout [T, 2T] (sustained event).  `kind` selects the process:
    "producer-consumer" (params a1, a2), "richardson" (a1; a2 = 1), or
    "voter-perturbation" (eps).
    """
    if lat.L <= 8 * N:
        raise ParameterError("torus must satisfy L > 8N for the block layout")
    T = float(T_scale) * N
    folded = lat.fold(lat.all_coords())
    start_block = np.all((folded > -N) & (folded <= N), axis=1)
    mask = _good_block_mask(lat, N).astype(np.uint8)
    cfg0 = np.where(start_block, 2, 1).astype(np.int8)
    hits_block = 0
    hits_sustained = 0
    for r in range(replicas):
        types = cfg0.copy()
        s = seed_state(derive_seed(seed, r))
        if kind == "producer-consumer":
            ok_b, ok_s = _kernels.spin_monitor_run(
                types, lat.neighbor_table, float(params["a1"]),
                float(params["a2"]), T, mask, s)
        elif kind == "richardson":
            ok_b, ok_s = _kernels.spin_monitor_run(
                types, lat.neighbor_table, float(params["a1"]), 1.0, T, mask, s)
        elif kind == "voter-perturbation":
            if lat.M != 1:
                raise ParameterError("the voter perturbation needs range M=1")
            ok_b, ok_s = _kernels.voter_monitor_run(
                types, lat.neighbor_table, float(params["eps"]), T, mask, s)
        else:
            raise ParameterError(f"unknown process kind {kind!r}")
        hits_block += bool(ok_b)
        hits_sustained += bool(ok_s)
    return GoodSiteStats(N=N, T=T, replicas=replicas,
                         freq_block=hits_block / replicas,
                         freq_sustained=hits_sustained / replicas)


# --- pair-correlation decay ------------------------------------------------

def correlation_decay(lat: Lattice, params: ModelParams, displacements,
                      t_samples, replicas: int, seed: int,
                      init_density1: float = 0.5) -> dict:
    """P(equal types at displacement) estimated at several times.

    Returns {displacement: array over t_samples}; the estimate averages
    over all base sites and over replicas started from the product measure.
    """
    t_samples = sorted(float(t) for t in t_samples)
    if not t_samples:
        raise ParameterError("need at least one sample time")
    acc = {tuple(np.atleast_1d(dv).tolist()): np.zeros(len(t_samples))
           for dv in displacements}
    for r in range(replicas):
        rseed = derive_seed(seed, r)
        cfg = random_configuration(lat, init_density1, derive_seed(rseed, 1))
        t_prev = 0.0
        for i, t in enumerate(t_samples):
            if t > t_prev:
                traj = simulate(lat, cfg, params, t - t_prev,
                                sample_interval=t - t_prev,
                                seed=derive_seed(rseed, 2, i))
                cfg = traj.final_config
                t_prev = t
            for dv in acc:
                acc[dv][i] += pair_correlation(lat, cfg, dv)
    return {dv: vals / replicas for dv, vals in acc.items()}
