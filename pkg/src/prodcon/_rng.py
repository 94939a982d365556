"""Deterministic 64-bit random stream shared by all event-driven engines.

Every simulation loop in this package consumes randomness from a splitmix64
stream, so a seed plus the documented per-event draw order fully determines a
trajectory.  The compiled kernels inline the same update; ``py_uniform`` is a
bit-exact Python mirror used by the single-step reference path and by tests
that hand-trace an event.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1
_INV53 = 1.0 / float(1 << 53)


@njit(cache=True, inline="always")
def next_u64(state):
    """Advance the stream; returns (64-bit draw, new state)."""
    s = state + _GOLDEN
    z = s
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    z = z ^ (z >> np.uint64(31))
    return z, s


@njit(cache=True, inline="always")
def next_uniform(state):
    """Uniform draw on [0, 1) with 53 random bits; returns (u, new state)."""
    z, s = next_u64(state)
    return (z >> np.uint64(11)) * _INV53, s


def seed_state(seed: int) -> np.uint64:
    """Initial stream state for a 64-bit seed."""
    return np.uint64(int(seed) & _MASK64)


@njit(cache=True)
def uniform_stream(seed, n):
    """First n uniforms of the stream; the compiled-side reference for tests."""
    out = np.empty(n, np.float64)
    s = seed
    for i in range(n):
        out[i], s = next_uniform(s)
    return out


def py_next_u64(state: int) -> tuple[int, int]:
    s = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = s
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    z = z ^ (z >> 31)
    return z, s


def py_uniform(state: int) -> tuple[float, int]:
    z, s = py_next_u64(state)
    return (z >> 11) * _INV53, s


def mix64(x: int) -> int:
    z, _ = py_next_u64(int(x) & _MASK64)
    return z


def derive_seed(base_seed: int, *indices: int) -> int:
    """Stable XOR-hash seed derivation for independent replicas.

    ``derive_seed(base, cell, replica)`` gives each (cell, replica) pair its
    own stream without coordination between workers.  Unlike Python's
    ``hash`` this is process-stable.
    """
    h = 0
    for ix in indices:
        h = mix64(h ^ mix64(int(ix) & _MASK64))
    return (int(base_seed) ^ h) & _MASK64
