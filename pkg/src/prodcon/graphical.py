"""Poisson arrow constructions, dual walks and breaking points.

Two space-time representations on a finite window (0, T], both for
nearest-neighbor range:

* voter-perturbation kind: each directed edge (x, y) carries arrow times
  Lambda(x, y) at rate (1 - eps)/(2d) (x copies y), and each site carries
  all-neighbor event times Delta(x) at rate eps (x becomes 1 only if its
  whole neighborhood is 1);
* breaking-arrow kind: each directed edge carries arrow times at rate
  1/(2d); at such a time a type-2 target copies the source while a type-1
  target turns 2 as soon as any neighbor is 2.

Forward reconstruction applies events in time order.  Walking the arrows
backward gives branching-coalescing dual sets; for the voter kind the
forward type at (x, T) is 1 exactly when the initial configuration is 1 on
the whole dual set.  A breaking point is an arrow event whose most recent
predecessor pointing at either endpoint is the reversed arrow of the same
edge; at such events the target is type 1 if and only if its whole
neighborhood is.  All event times within a representation are strictly
distinct by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._rng import derive_seed, py_uniform, seed_state
from .lattice import Lattice, ParameterError

LAM = 0
DEL = 1

VOTER_KIND = "voter-perturbation"
BREAKING_KIND = "breaking-arrow"


@dataclass
class GraphicalRep:
    """Sampled arrow system; immutable once sampled."""

    lattice: Lattice
    kind: str
    window_T: float
    eps: Optional[float]
    times: np.ndarray    # (m,) strictly increasing event times in (0, T]
    kinds: np.ndarray    # (m,) LAM or DEL
    targets: np.ndarray  # (m,) flat site index the arrows point at
    sources: np.ndarray  # (m,) arrow tail for LAM events, -1 for DEL

    @property
    def n_events(self) -> int:
        return int(self.times.shape[0])


def _distinct_sorted(times, kinds, targets, sources):
    order = np.argsort(times, kind="stable")
    times = times[order]
    kinds = kinds[order]
    targets = targets[order]
    sources = sources[order]
    if times.size:
        times[times <= 0.0] = np.nextafter(0.0, 1.0)
        while True:
            clash = np.nonzero(np.diff(times) <= 0.0)[0]
            if clash.size == 0:
                break
            times[clash + 1] = np.nextafter(times[clash], np.inf)
    return times, kinds, targets, sources


def sample_graphical(lat: Lattice, kind: str, window_T: float, seed: int,
                     eps: Optional[float] = None) -> GraphicalRep:
    """Exact Poisson sampling of a representation; deterministic given seed."""
    if lat.M != 1:
        raise ParameterError("graphical representations are defined for range M=1")
    if window_T < 0:
        raise ParameterError("window_T must be nonnegative")
    if kind == VOTER_KIND:
        if eps is None or not 0.0 < eps < 1.0:
            raise ParameterError("voter-perturbation kind needs eps in (0, 1)")
        edge_rate = (1.0 - eps) / lat.nu
        site_rate = eps
    elif kind == BREAKING_KIND:
        if eps is not None:
            raise ParameterError("breaking-arrow kind takes no eps")
        edge_rate = 1.0 / lat.nu
        site_rate = 0.0
    else:
        raise ParameterError(f"unknown representation kind {kind!r}")
    rng = np.random.Generator(np.random.PCG64(seed))
    tgt_edges = np.repeat(np.arange(lat.n, dtype=np.int32), lat.nu)
    src_edges = lat.neighbor_table.ravel().astype(np.int32)
    lam_counts = rng.poisson(edge_rate * window_T, size=tgt_edges.shape[0])
    m_lam = int(lam_counts.sum())
    lam_t = rng.uniform(0.0, window_T, size=m_lam)
    lam_tgt = np.repeat(tgt_edges, lam_counts)
    lam_src = np.repeat(src_edges, lam_counts)
    if site_rate > 0.0:
        del_counts = rng.poisson(site_rate * window_T, size=lat.n)
        m_del = int(del_counts.sum())
        del_t = rng.uniform(0.0, window_T, size=m_del)
        del_tgt = np.repeat(np.arange(lat.n, dtype=np.int32), del_counts)
    else:
        del_t = np.empty(0)
        del_tgt = np.empty(0, np.int32)
    times = np.concatenate([lam_t, del_t])
    kinds = np.concatenate([np.full(m_lam, LAM, np.int8),
                            np.full(del_t.shape[0], DEL, np.int8)])
    targets = np.concatenate([lam_tgt, del_tgt])
    sources = np.concatenate([lam_src, np.full(del_t.shape[0], -1, np.int32)])
    times, kinds, targets, sources = _distinct_sorted(times, kinds, targets, sources)
    return GraphicalRep(lat, kind, float(window_T), eps, times, kinds,
                        targets.astype(np.int32), sources.astype(np.int32))


def _apply_event(lat: Lattice, rep: GraphicalRep, cfg: np.ndarray, k: int) -> None:
    tgt = int(rep.targets[k])
    if rep.kinds[k] == LAM:
        src = int(rep.sources[k])
        if rep.kind == VOTER_KIND:
            cfg[tgt] = cfg[src]
        else:
            if cfg[tgt] == 2:
                cfg[tgt] = cfg[src]
            elif np.any(cfg[lat.neighbor_table[tgt]] == 2):
                cfg[tgt] = 2
    else:
        nbr_vals = cfg[lat.neighbor_table[tgt]]
        cfg[tgt] = 1 if np.all(nbr_vals == 1) else 2


def forward_from_graphical(lat: Lattice, rep: GraphicalRep,
                           cfg0: np.ndarray) -> np.ndarray:
    """Configuration at the top of the window, built by replaying all events."""
    if cfg0.shape[0] != lat.n:
        raise ParameterError("configuration does not match lattice")
    cfg = cfg0.astype(np.int8).copy()
    for k in range(rep.n_events):
        _apply_event(lat, rep, cfg, k)
    return cfg


def forward_states(lat: Lattice, rep: GraphicalRep, cfg0: np.ndarray) -> np.ndarray:
    """(m+1, n) array; row k is the configuration after the first k events."""
    cfg = cfg0.astype(np.int8).copy()
    out = np.empty((rep.n_events + 1, lat.n), np.int8)
    out[0] = cfg
    for k in range(rep.n_events):
        _apply_event(lat, rep, cfg, k)
        out[k + 1] = cfg
    return out


def dual_set(lat: Lattice, rep: GraphicalRep, x: int, s: float) -> np.ndarray:
    """Backward branching-coalescing set of (x, T) at dual time s.

    Walking down from the window top, an arrow into an active site moves it
    to the arrow's tail, and an all-neighbor event replaces an active site
    by its whole neighborhood; co-located particles coalesce.
    """
    if rep.kind != VOTER_KIND:
        raise ParameterError("dual_set is defined for the voter-perturbation kind")
    if not 0.0 <= s <= rep.window_T:
        raise ParameterError("dual time s must lie in [0, window_T]")
    x = int(x)
    if x < 0 or x >= lat.n:
        raise ParameterError("invalid base site")
    active = {x}
    cutoff = rep.window_T - s
    for k in range(rep.n_events - 1, -1, -1):
        if rep.times[k] <= cutoff:
            break
        tgt = int(rep.targets[k])
        if tgt not in active:
            continue
        active.discard(tgt)
        if rep.kinds[k] == LAM:
            active.add(int(rep.sources[k]))
        else:
            active.update(int(z) for z in lat.neighbor_table[tgt])
    return np.array(sorted(active), dtype=np.int64)


@dataclass(frozen=True)
class BreakingPoint:
    """Arrow event (partner -> site at time t) satisfying the reversal rule."""

    site: int
    time: float
    partner: int
    event_index: int


def breaking_flags(rep: GraphicalRep) -> np.ndarray:
    """Boolean flag per event: is it a breaking point?

    An arrow event into x from y at time t qualifies when the most recent
    earlier arrow pointing at x or y exists and is an arrow from x to y.
    Linear scan keeping each site's last incoming arrow.
    """
    if rep.kind != BREAKING_KIND:
        raise ParameterError("breaking points live on the breaking-arrow kind")
    n = rep.lattice.n
    last_t = np.full(n, -1.0)
    last_src = np.full(n, -1, np.int64)
    flags = np.zeros(rep.n_events, bool)
    for k in range(rep.n_events):
        x = int(rep.targets[k])
        y = int(rep.sources[k])
        if last_t[y] > last_t[x] and last_src[y] == x:
            flags[k] = True
        last_t[x] = rep.times[k]
        last_src[x] = y
    return flags


def detect_breaking_points(lat: Lattice, rep: GraphicalRep) -> list[BreakingPoint]:
    flags = breaking_flags(rep)
    return [BreakingPoint(int(rep.targets[k]), float(rep.times[k]),
                          int(rep.sources[k]), k)
            for k in np.nonzero(flags)[0]]


def check_breaking_lemma(lat: Lattice, rep: GraphicalRep, cfg0: np.ndarray) -> int:
    """Count violations of the breaking-point biconditional along one run.

    Replays the forward process and, at every breaking point (x, t), checks
    that x is type 1 right after the event exactly when all its neighbors
    are type 1 at t.  Expected to return 0 on every run.
    """
    flags = breaking_flags(rep)
    cfg = cfg0.astype(np.int8).copy()
    violations = 0
    for k in range(rep.n_events):
        _apply_event(lat, rep, cfg, k)
        if flags[k]:
            x = int(rep.targets[k])
            unanimity = bool(np.all(cfg[lat.neighbor_table[x]] == 1))
            if (cfg[x] == 1) != unanimity:
                violations += 1
    return violations


def dual_set_breaking(lat: Lattice, rep: GraphicalRep, x: int, s: float,
                      flags: Optional[np.ndarray] = None) -> np.ndarray:
    """Dual set of the breaking-arrow construction at dual time s.

    Ordinary arrows move an active site to the arrow's tail; at a breaking
    point the active site branches to its whole neighborhood.
    """
    if rep.kind != BREAKING_KIND:
        raise ParameterError("dual_set_breaking needs the breaking-arrow kind")
    if not 0.0 <= s <= rep.window_T:
        raise ParameterError("dual time s must lie in [0, window_T]")
    if flags is None:
        flags = breaking_flags(rep)
    active = {int(x)}
    cutoff = rep.window_T - s
    for k in range(rep.n_events - 1, -1, -1):
        if rep.times[k] <= cutoff:
            break
        tgt = int(rep.targets[k])
        if tgt not in active:
            continue
        active.discard(tgt)
        if flags[k]:
            active.update(int(z) for z in lat.neighbor_table[tgt])
        else:
            active.add(int(rep.sources[k]))
    return np.array(sorted(active), dtype=np.int64)


def check_one_sided_duality(lat: Lattice, rep: GraphicalRep,
                            cfg0: np.ndarray) -> int:
    """Violations of: forward 1 at the top forces 1 on the whole dual history.

    For every site whose forward state at the window top is 1, walks the
    breaking-arrow dual down and demands type 1 from every member of the
    dual set at the matching forward time.  Returns the violation count
    (expected 0).
    """
    flags = breaking_flags(rep)
    states = forward_states(lat, rep, cfg0)
    m = rep.n_events
    violations = 0
    for x in range(lat.n):
        if states[m][x] != 1:
            continue
        active = {x}
        for k in range(m - 1, -1, -1):
            tgt = int(rep.targets[k])
            if tgt in active:
                active.discard(tgt)
                if flags[k]:
                    active.update(int(z) for z in lat.neighbor_table[tgt])
                else:
                    active.add(int(rep.sources[k]))
            for y in active:
                if states[k][y] != 1:
                    violations += 1
    return violations


# --- selected dual paths -------------------------------------------------

def drift_schedule(N: int, eps: float, d: int) -> np.ndarray:
    """Axis-switch times T_i = i * (4/eps) * N for i = 1..d."""
    if N < 1 or d < 1 or not 0.0 < eps < 1.0:
        raise ParameterError("need N >= 1, d >= 1 and eps in (0, 1)")
    c = 4.0 / eps
    return np.array([(i + 1) * c * N for i in range(d)])


def _drift_step(c: int, L: int) -> int:
    """Unit step of coordinate c toward the folded hyperplane through 0.

    Folded coordinates live in (-L/2, L/2].  Ties (already on the
    hyperplane, or exactly at the antipode) are broken toward the neighbor
    with the smaller raw coordinate.
    """
    f = c if 2 * c <= L else c - L
    if f > 0 and 2 * f != L:
        return -1
    if f < 0:
        return 1
    if f == 0:
        # raw neighbors are L-1 and 1; 1 is the smaller coordinate
        return 1
    return -1  # antipode: c-1 < c+1


@dataclass
class SelectedPath:
    """Piecewise-constant dual path extracted from a representation."""

    start: int
    dual_times: np.ndarray   # jump times, increasing dual time
    sites: np.ndarray        # site after each jump
    schedule: np.ndarray

    def site_at(self, s: float) -> int:
        idx = int(np.searchsorted(self.dual_times, s, side="right"))
        if idx == 0:
            return self.start
        return int(self.sites[idx - 1])


def _axis_for(s: float, schedule: np.ndarray) -> Optional[int]:
    for i, ti in enumerate(schedule):
        if s <= ti:
            return i
    return None


def selected_path(lat: Lattice, rep: GraphicalRep, x: int,
                  schedule: np.ndarray, mode: str, seed: int = 0) -> SelectedPath:
    """Single-particle dual path with a drift toward coordinate hyperplanes.

    Voter mode follows arrows tip-to-tail; at an all-neighbor event during
    the i-th schedule leg the path steps toward the hyperplane z_i = 0
    (folded torus distance), and past the last leg it steps to a uniformly
    random neighbor drawn from the path's own seeded stream.  Breaking mode
    follows arrows except at breaking points inside the schedule, where it
    crosses toward the hyperplane instead.  Identical (rep, seed) give an
    identical path.
    """
    if mode == "voter":
        if rep.kind != VOTER_KIND:
            raise ParameterError("voter mode needs a voter-perturbation representation")
        flags = None
    elif mode == "breaking":
        if rep.kind != BREAKING_KIND:
            raise ParameterError("breaking mode needs a breaking-arrow representation")
        flags = breaking_flags(rep)
    else:
        raise ParameterError(f"unknown path mode {mode!r}")
    schedule = np.asarray(schedule, dtype=np.float64)
    if schedule.size and np.any(np.diff(schedule) <= 0):
        raise ParameterError("schedule times must increase")
    cur = int(x)
    if cur < 0 or cur >= lat.n:
        raise ParameterError("invalid start site")
    rng_state = int(seed_state(seed))
    jump_s = []
    jump_site = []

    def drift_to(site: int, axis: int) -> int:
        coords = list(lat.site_coords(site))
        coords[axis] = (coords[axis] + _drift_step(coords[axis], lat.L)) % lat.L
        return lat.site_index(coords)

    for k in range(rep.n_events - 1, -1, -1):
        if int(rep.targets[k]) != cur:
            continue
        s = rep.window_T - rep.times[k]
        axis = _axis_for(s, schedule)
        if mode == "voter":
            if rep.kinds[k] == LAM:
                cur = int(rep.sources[k])
            elif axis is not None:
                cur = drift_to(cur, axis)
            else:
                u, rng_state = py_uniform(rng_state)
                pick = min(int(u * lat.nu), lat.nu - 1)
                cur = int(lat.neighbor_table[cur][pick])
        else:
            if flags[k] and axis is not None:
                cur = drift_to(cur, axis)
            else:
                cur = int(rep.sources[k])
        jump_s.append(s)
        jump_site.append(cur)
    return SelectedPath(start=int(x), dual_times=np.array(jump_s),
                        sites=np.array(jump_site, dtype=np.int64),
                        schedule=schedule)


# --- breaking-time pattern ----------------------------------------------

def breaking_time_probability(d: int) -> float:
    """Closed-form frequency of the breaking-time pattern: 2d (1-e^{-1/2})^2 e^{-(2d-1)}."""
    if d < 1:
        raise ParameterError("d must be a positive integer")
    return 2.0 * d * (1.0 - math.exp(-0.5)) ** 2 * math.exp(-(2.0 * d - 1.0))


def breaking_time_frequency(lat: Lattice, rep: GraphicalRep,
                            site_stride: int = 2,
                            time_stride: float = 2.0) -> tuple[float, int]:
    """Empirical frequency of the breaking-time pattern on a 1D ring.

    For a site v and a window (tau - 2, tau], the pattern requires some
    neighbor y with an arrow y -> v in the later unit, an arrow v -> y in
    the earlier unit, and no arrows into v from any other neighbor over the
    whole window.  In one dimension the pattern probability equals the
    closed form of :func:`breaking_time_probability` exactly; windows are
    spaced so that distinct (site, window) cells touch disjoint edge-time
    regions and are therefore independent.
    """
    if rep.kind != BREAKING_KIND:
        raise ParameterError("breaking-time pattern lives on the breaking-arrow kind")
    if lat.d != 1:
        raise ParameterError("the pattern estimator is defined for d=1")
    if site_stride < 2 or time_stride < 2.0:
        raise ParameterError("need site_stride >= 2 and time_stride >= 2 for independence")
    L = lat.L
    # per-directed-edge sorted time arrays
    edge_times: dict[tuple[int, int], np.ndarray] = {}
    order = np.lexsort((rep.times, rep.sources, rep.targets))
    tgt = rep.targets[order]
    src = rep.sources[order]
    tms = rep.times[order]
    start = 0
    for k in range(1, len(order) + 1):
        if k == len(order) or tgt[k] != tgt[start] or src[k] != src[start]:
            edge_times[(int(tgt[start]), int(src[start]))] = tms[start:k]
            start = k
    empty = np.empty(0)

    def cnt(arr, a, b):
        return (np.searchsorted(arr, b, side="right")
                - np.searchsorted(arr, a, side="right"))

    taus = np.arange(2.0, rep.window_T + 1e-9, time_stride)
    hits = 0
    total = 0
    for v in range(0, L, site_stride):
        left, right = (v - 1) % L, (v + 1) % L
        in_l = edge_times.get((v, left), empty)
        in_r = edge_times.get((v, right), empty)
        out_l = edge_times.get((left, v), empty)
        out_r = edge_times.get((right, v), empty)
        for tau in taus:
            lo, mid = tau - 2.0, tau - 1.0
            pat_l = (cnt(in_l, mid, tau) >= 1 and cnt(out_l, lo, mid) >= 1
                     and cnt(in_r, lo, tau) == 0)
            pat_r = (cnt(in_r, mid, tau) >= 1 and cnt(out_r, lo, mid) >= 1
                     and cnt(in_l, lo, tau) == 0)
            hits += 1 if (pat_l or pat_r) else 0
            total += 1
    if total == 0:
        raise ParameterError("window too short for any pattern cell")
    return hits / total, total


# --- path containment statistics ----------------------------------------

def _outside_box(c: int, L: int, half: int) -> bool:
    # outside the centered box (-half, half] in folded coordinates
    f = c if 2 * c <= L else c - L
    return f > half or f <= -half


def _lazy_voter_walk(d: int, N: int, C: float, eps: float, rng,
                     schedule: np.ndarray, L: int) -> tuple[bool, bool]:
    """One selected-path trajectory sampled directly from its jump law."""
    horizon = C * N
    coords = [int(rng.integers(-2 * N + 1, 2 * N + 1)) % L for _ in range(d)]
    t = 0.0
    exited = False
    while True:
        t += rng.exponential(1.0)
        if t >= horizon:
            break
        if rng.random() < 1.0 - eps:
            axis = int(rng.integers(0, d))
            step = 1 if rng.random() < 0.5 else -1
            coords[axis] = (coords[axis] + step) % L
        else:
            axis = _axis_for(t, schedule)
            if axis is None:
                axis = int(rng.integers(0, d))
                step = 1 if rng.random() < 0.5 else -1
            else:
                step = _drift_step(coords[axis], L)
            coords[axis] = (coords[axis] + step) % L
        if any(_outside_box(c, L, 4 * N) for c in coords):
            exited = True
            break
    landed_out = any(_outside_box(c, L, N) for c in coords)
    return exited, (not exited) and landed_out


class _LazyArrowStreams:
    """Per-site incoming-arrow realizations generated on demand.

    Equivalent in law to sampling a breaking-arrow representation: each
    site receives arrows at rate 1 with uniformly random neighbor sources,
    independently across sites.
    """

    def __init__(self, lat: Lattice, window_T: float, rng):
        self.lat = lat
        self.T = window_T
        self.rng = rng
        self._streams: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def stream(self, site: int) -> tuple[np.ndarray, np.ndarray]:
        got = self._streams.get(site)
        if got is None:
            m = self.rng.poisson(self.T)
            t = np.sort(self.rng.uniform(0.0, self.T, m))
            picks = self.rng.integers(0, self.lat.nu, m)
            src = self.lat.neighbor_table[site][picks].astype(np.int64)
            got = (t, src)
            self._streams[site] = got
        return got

    def next_below(self, site: int, r: float) -> tuple[float, int]:
        """Most recent arrow into site strictly before real time r."""
        t, src = self.stream(site)
        k = int(np.searchsorted(t, r, side="left")) - 1
        if k < 0:
            return -1.0, -1
        return float(t[k]), int(src[k])


def _lazy_breaking_walk(lat: Lattice, N: int, C: float, rng,
                        schedule: np.ndarray) -> tuple[bool, bool]:
    horizon = C * N
    streams = _LazyArrowStreams(lat, horizon, rng)
    L, d = lat.L, lat.d
    coords = [int(rng.integers(-2 * N + 1, 2 * N + 1)) % L for _ in range(d)]
    cur = lat.site_index(coords)
    r = horizon  # real time, walks downward
    exited = False
    while True:
        t_ev, y = streams.next_below(cur, r)
        if t_ev < 0:
            break
        s = horizon - t_ev
        if s >= horizon:
            break
        prev_t_cur, _ = streams.next_below(cur, t_ev)
        prev_t_y, prev_src_y = streams.next_below(y, t_ev)
        is_bp = prev_t_y > prev_t_cur and prev_src_y == cur
        axis = _axis_for(s, schedule)
        if is_bp and axis is not None:
            coords = list(lat.site_coords(cur))
            coords[axis] = (coords[axis] + _drift_step(coords[axis], L)) % L
            cur = lat.site_index(coords)
        else:
            cur = y
        r = t_ev
        coords = list(lat.site_coords(cur))
        if any(_outside_box(c, L, 4 * N) for c in coords):
            exited = True
            break
    coords = lat.site_coords(cur)
    landed_out = any(_outside_box(c, L, N) for c in coords)
    return exited, (not exited) and landed_out


@dataclass
class ContainmentStats:
    N: int
    trials: int
    exit_frequency: float
    landing_frequency: float

    @property
    def bad_frequency(self) -> float:
        return self.exit_frequency + self.landing_frequency


def path_containment_stats(d: int, box_sizes, C: float, trials: int, seed: int,
                           mode: str = "voter", eps: Optional[float] = None) -> list[ContainmentStats]:
    """Frequencies of paths escaping the 8N-box or missing the N-box landing.

    Paths start uniformly in (-2N, 2N]^d and run to dual time C*N with the
    schedule T_i = i*(4/eps)*N.  They are sampled directly from the
    selected-path jump law on a torus wide enough for the 8N-box, which is
    equivalent to extracting them from a full representation but avoids
    materializing one.  The bad-event frequency should decay with N.
    """
    if mode == "voter":
        if eps is None or not 0.0 < eps < 1.0:
            raise ParameterError("voter mode needs eps in (0, 1)")
        leg_eps = eps
    elif mode == "breaking":
        if eps is not None:
            raise ParameterError("breaking mode derives its own drift constant")
        leg_eps = breaking_time_probability(d)
    else:
        raise ParameterError(f"unknown mode {mode!r}")
    if C * 1.0 <= 4.0 * d / leg_eps:
        raise ParameterError(f"need C > 4d/eps = {4.0 * d / leg_eps:.1f}")
    out = []
    for N in box_sizes:
        N = int(N)
        if N < 1:
            raise ParameterError("box sizes must be positive")
        L = 16 * N + 3  # 8N-box embeds with margin; folded coords stay faithful
        schedule = drift_schedule(N, leg_eps, d)
        lat = Lattice(d, 1, L) if mode == "breaking" else None
        exits = 0
        lands = 0
        for j in range(trials):
            rng = np.random.Generator(np.random.PCG64(derive_seed(seed, N, j)))
            if mode == "voter":
                ex, ld = _lazy_voter_walk(d, N, C, leg_eps, rng, schedule, L)
            else:
                ex, ld = _lazy_breaking_walk(lat, N, C, rng, schedule)
            exits += ex
            lands += ld
        out.append(ContainmentStats(N, trials, exits / trials, lands / trials))
    return out


# --- event dump ----------------------------------------------------------

def dump_rep(rep: GraphicalRep, path) -> None:
    """Write one line per event: ``LAM x y t`` or ``DEL x t`` (flat indices)."""
    with open(path, "w") as fh:
        for k in range(rep.n_events):
            if rep.kinds[k] == LAM:
                fh.write(f"LAM {int(rep.targets[k])} {int(rep.sources[k])} "
                         f"{float(rep.times[k])!r}\n")
            else:
                fh.write(f"DEL {int(rep.targets[k])} {float(rep.times[k])!r}\n")


def load_rep_events(path):
    """Parse a dump back into (times, kinds, targets, sources) arrays."""
    times, kinds, targets, sources = [], [], [], []
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "LAM":
                _, x, y, t = parts
                kinds.append(LAM)
                targets.append(int(x))
                sources.append(int(y))
                times.append(float(t))
            elif parts[0] == "DEL":
                _, x, t = parts
                kinds.append(DEL)
                targets.append(int(x))
                sources.append(-1)
                times.append(float(t))
            else:
                raise ParameterError(f"bad dump line: {line!r}")
    return (np.array(times), np.array(kinds, np.int8),
            np.array(targets, np.int32), np.array(sources, np.int32))
