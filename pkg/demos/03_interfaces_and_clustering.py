"""One-dimensional interfaces: annihilating walks and the ruin formula.

On a ring with nearest-neighbor interactions the domain boundaries of the
neutral model (a1 = a2 = a) are particles that hop at rate 1 - a and kill
each other in adjacent pairs, so interface statistics have closed forms.

1. clustering: the interface density of the spin system decays like the
   annihilating walk predicts, and the standalone walk matches the spin
   system in law;
2. the type-2 interval walk: an interval of 2s grows at rate 2(1 - a1)
   and shrinks at rate 2(1 - a2), giving a gambler's-ruin formula for the
   chance it dies before spreading.
"""

import numpy as np

from prodcon import (Lattice, ModelParams, derive_seed, gambler_ruin_hit_prob,
                     interface_from_config, random_configuration,
                     run_until_count2_hits, simulate, simulate_interface)

print("=== interface decay in the neutral model (a = 0.7) ===")
lat = Lattice(1, 1, 1000)
cfg0 = random_configuration(lat, 0.5, seed=5)
traj = simulate(lat, cfg0, ModelParams(0.7, 0.7), t_max=500.0,
                sample_interval=100.0, seed=6)
for t, k in zip(traj.times, traj.interfaces):
    print(f"  t = {t:5.0f}  interfaces = {int(k):4d}")
print("  domains coarsen; the walk-based prediction is a t^(-1/2) tail")

print("\n=== the walk reproduces the spin system's interface law ===")
reps = 2000
spin = np.empty(reps)
walk = np.empty(reps)
small = Lattice(1, 1, 50)
for r in range(reps):
    c0 = random_configuration(small, 0.5, derive_seed(1, r))
    spin[r] = simulate(small, c0, ModelParams(0.5, 0.5), 20.0, 20.0,
                       seed=derive_seed(2, r)).interfaces[-1]
    c1 = random_configuration(small, 0.5, derive_seed(3, r))
    walk[r] = simulate_interface(interface_from_config(c1), 0.5, 20.0,
                                 seed=derive_seed(4, r)).counts[-1]
print(f"  mean interface count at t=20: spin {spin.mean():.3f}, walk {walk.mean():.3f}")

print("\n=== interval survival vs the ruin formula (a1=0.2, a2=0.5) ===")
ring = Lattice(1, 1, 200)
cfg0 = np.ones(ring.n, dtype=np.int8)
cfg0[:7] = 2
params = ModelParams(0.2, 0.5)
hits = sum(run_until_count2_hits(ring, cfg0, params, 1, 40, 1e9,
                                 derive_seed(9, r))[0] == "lo"
           for r in range(2000))
exact = gambler_ruin_hit_prob(6, 40, 0.2, 0.5)
print(f"  P(interval of 7 shrinks to 1 before reaching 40):")
print(f"  simulated {hits / 2000:.4f} vs exact {exact:.4f}")
