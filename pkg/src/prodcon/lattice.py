"""Finite periodic lattices with L1-ball neighborhoods.

Sites live on a d-dimensional torus with ``L`` sites per axis and interact
with every site at torus L1 distance at most ``M`` (the interaction range).
Requiring ``L > 2M`` keeps all neighbors distinct under wraparound and keeps
a site out of its own neighborhood, so every site has the same neighborhood
size ``nu``.

Configurations assign type 1 or type 2 to every site and are stored as flat
int8 arrays in C (row-major) index order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class ParameterError(ValueError):
    """Invalid model parameters or geometry."""


def _l1_offsets(d: int, M: int) -> np.ndarray:
    """All nonzero integer vectors with L1 norm <= M, in lexicographic order."""
    rng = np.arange(-M, M + 1)
    grids = np.meshgrid(*([rng] * d), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    norm = np.abs(pts).sum(axis=1)
    keep = (norm > 0) & (norm <= M)
    offs = pts[keep]
    order = np.lexsort(offs.T[::-1])
    return np.ascontiguousarray(offs[order], dtype=np.int64)


@dataclass(frozen=True)
class Lattice:
    """Torus geometry plus precomputed flat-index neighbor tables.

    Immutable after construction and safe to share across replicas; the
    neighbor table lookup dominates the inner simulation loop, so it is
    built once here.
    """

    d: int
    M: int
    L: int

    def __post_init__(self):
        if self.d < 1 or self.M < 1 or self.L < 1:
            raise ParameterError("d, M and L must be positive integers")
        if self.L <= 2 * self.M:
            raise ParameterError(f"need L > 2M, got L={self.L}, M={self.M}")
        offsets = _l1_offsets(self.d, self.M)
        object.__setattr__(self, "_offsets", offsets)
        coords = self.all_coords()
        nbr = (coords[:, None, :] + offsets[None, :, :]) % self.L
        flat = np.zeros(nbr.shape[:2], dtype=np.int64)
        for axis in range(self.d):
            flat = flat * self.L + nbr[:, :, axis]
        object.__setattr__(self, "_neighbors", np.ascontiguousarray(flat.astype(np.int32)))

    @property
    def n(self) -> int:
        return self.L ** self.d

    @property
    def nu(self) -> int:
        """Neighborhood size, identical for every site."""
        return self._offsets.shape[0]

    @property
    def offsets(self) -> np.ndarray:
        return self._offsets

    @property
    def neighbor_table(self) -> np.ndarray:
        """(n, nu) int32 array; row x lists neighbors of x in offset order."""
        return self._neighbors

    def all_coords(self) -> np.ndarray:
        """(n, d) coordinate array in flat-index order."""
        idx = np.arange(self.n)
        out = np.empty((self.n, self.d), dtype=np.int64)
        for axis in range(self.d - 1, -1, -1):
            out[:, axis] = idx % self.L
            idx = idx // self.L
        return out

    def site_index(self, coords) -> int:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.d or any(c < 0 or c >= self.L for c in coords):
            raise ParameterError(f"invalid coordinates {coords} for d={self.d}, L={self.L}")
        flat = 0
        for c in coords:
            flat = flat * self.L + c
        return flat

    def site_coords(self, x: int) -> tuple[int, ...]:
        x = int(x)
        if x < 0 or x >= self.n:
            raise ParameterError(f"site index {x} out of range [0, {self.n})")
        out = []
        for _ in range(self.d):
            out.append(x % self.L)
            x //= self.L
        return tuple(reversed(out))

    def neighbors(self, x) -> np.ndarray:
        """Flat indices of the nu neighbors of x, in canonical offset order."""
        if not np.isscalar(x) and not isinstance(x, (int, np.integer)):
            x = self.site_index(x)
        x = int(x)
        if x < 0 or x >= self.n:
            raise ParameterError(f"site index {x} out of range [0, {self.n})")
        return self._neighbors[x]

    def fold(self, coords) -> np.ndarray:
        """Map raw coordinates in [0, L) to centered ones in (-L/2, L/2]."""
        c = np.asarray(coords)
        return np.where(2 * c <= self.L, c, c - self.L)


def count_types(lat: Lattice, cfg: np.ndarray, x) -> tuple[int, int]:
    """(f1, f2): numbers of type-1 and type-2 neighbors of x; f1 + f2 = nu."""
    nbr = lat.neighbors(x)
    vals = cfg[nbr]
    f1 = int(np.count_nonzero(vals == 1))
    return f1, lat.nu - f1


def homogeneous_configuration(lat: Lattice, site_type: int) -> np.ndarray:
    if site_type not in (1, 2):
        raise ParameterError("site type must be 1 or 2")
    return np.full(lat.n, site_type, dtype=np.int8)


def random_configuration(lat: Lattice, density1: float, seed: int) -> np.ndarray:
    """Product-measure configuration with P(type 1) = density1 per site."""
    if not 0.0 <= density1 <= 1.0:
        raise ParameterError("density1 must lie in [0, 1]")
    rng = np.random.Generator(np.random.PCG64(seed))
    return np.where(rng.random(lat.n) < density1, 1, 2).astype(np.int8)


def density_of(cfg: np.ndarray, site_type: int) -> float:
    return float(np.count_nonzero(cfg == site_type)) / cfg.size


def save_snapshot(path, lat: Lattice, cfg: np.ndarray, t: float, seed: int,
                  a1: float, a2: float) -> None:
    """Write a configuration snapshot.

    Format: one header line ``d=<d> M=<M> L=<L> t=<time> seed=<seed>
    a1=<a1> a2=<a2>`` followed by n characters '1'/'2' in flat-index order,
    wrapped every L characters.
    """
    chars = "".join(str(int(v)) for v in cfg)
    lines = [chars[i:i + lat.L] for i in range(0, len(chars), lat.L)]
    header = (f"d={lat.d} M={lat.M} L={lat.L} t={float(t)!r} "
              f"seed={int(seed)} a1={float(a1)!r} a2={float(a2)!r}")
    with open(path, "w") as fh:
        fh.write(header + "\n")
        fh.write("\n".join(lines) + "\n")


def load_snapshot(path) -> tuple[Lattice, np.ndarray, dict]:
    """Read a snapshot written by :func:`save_snapshot`."""
    with open(path) as fh:
        header = fh.readline().strip()
        body = fh.read().replace("\n", "")
    meta = {}
    for tok in header.split():
        key, val = tok.split("=", 1)
        meta[key] = val
    lat = Lattice(d=int(meta["d"]), M=int(meta["M"]), L=int(meta["L"]))
    if len(body) != lat.n or set(body) - {"1", "2"}:
        raise ParameterError("snapshot body does not match header geometry")
    cfg = np.frombuffer(body.encode(), dtype=np.uint8).astype(np.int8) - ord("0")
    info = {
        "t": float(meta["t"]),
        "seed": int(meta["seed"]),
        "a1": float(meta["a1"]),
        "a2": float(meta["a2"]),
    }
    return lat, cfg, info
