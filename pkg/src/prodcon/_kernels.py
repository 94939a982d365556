"""Numba kernels for the event-driven engines.

All kernels consume randomness from the splitmix64 stream in `_rng` with a
fixed per-event draw order (documented on each kernel), so trajectories are
bit-reproducible from a seed.  Configurations are flat int8 arrays with
values 1/2 (spin processes) or 0/1 (occupancy processes); `nbr` is the
(n, nu) int32 neighbor table of the lattice.

Sampling convention shared by every kernel: the state recorded at sample
time s is the configuration just before the first event with time > s, and
events falling beyond the horizon are not applied.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from ._rng import next_uniform


@njit(cache=True, inline="always")
def flip_prob(aj, fi, fj):
    """Probability that a type-j site becomes type i, from neighbor counts.

    fi, fj are the numbers of type-i and type-j neighbors (any common
    scaling).  A vanishing denominator falls back to the two degenerate
    rules: no type-i neighbor gives 0, a unanimously type-i neighborhood
    gives 1.
    """
    num = (1.0 - aj) * fi
    den = aj * fj + num
    if den == 0.0:
        if fi == 0.0:
            return 0.0
        return 1.0
    return num / den


@njit(cache=True, inline="always")
def _p2_spin(cur, f1, f2, a1, a2):
    # Probability that the updated site ends up type 2 given its current type.
    if cur == 2:
        return 1.0 - flip_prob(a2, f1, f2)
    return flip_prob(a1, f2, f1)


@njit(cache=True, inline="always")
def _p2_voter(f2, nu, eps):
    # Voter-perturbation update: copy a uniform neighbor w.p. 1 - eps, else
    # become 1 only on a unanimously type-1 neighborhood.  The resulting
    # P(new type = 2) does not depend on the current type.
    p = (1.0 - eps) * f2 / nu
    if f2 > 0:
        p += eps
    return p


@njit(cache=True, inline="always")
def _count_f1(types, nbr, x):
    f1 = 0
    for k in range(nbr.shape[1]):
        if types[nbr[x, k]] == 1:
            f1 += 1
    return f1


@njit(cache=True, inline="always")
def _ring_interfaces(types):
    L = types.shape[0]
    c = 0
    for i in range(L):
        j = i + 1 if i + 1 < L else 0
        if types[i] != types[j]:
            c += 1
    return c


@njit(cache=True, inline="always")
def _pick_site(u, n):
    x = int(u * n)
    if x >= n:
        x = n - 1
    return x


@njit(cache=True)
def spin_run(types, nbr, a1, a2, t_max, sample_times, want_interfaces, seed):
    """Producer-consumer spin system; uniform-site Gillespie at total rate n.

    Draw order per event: site, holding time, flip threshold.
    Returns (density1 samples, interface samples, per-site update counts,
    applied events, fixation time, fixated type); fixation time is -1.0
    while both types persist.
    """
    n = types.shape[0]
    S = sample_times.shape[0]
    den1 = np.empty(S, np.float64)
    interf = np.full(S, -1.0)
    counts = np.zeros(n, np.int64)
    state = seed
    t = 0.0
    si = 0
    events = 0
    fix_time = -1.0
    fix_to = 0
    count2 = 0
    for i in range(n):
        if types[i] == 2:
            count2 += 1
    if (count2 == 0 or count2 == n) and fix_time < 0.0:
        fix_time = 0.0
        fix_to = 1 if count2 == 0 else 2
    while si < S:
        if count2 == 0 or count2 == n:
            while si < S:
                den1[si] = (n - count2) / n
                if want_interfaces:
                    interf[si] = _ring_interfaces(types)
                si += 1
            break
        u, state = next_uniform(state)
        x = _pick_site(u, n)
        u, state = next_uniform(state)
        tn = t + (-np.log1p(-u) / n)
        while si < S and sample_times[si] < tn:
            den1[si] = (n - count2) / n
            if want_interfaces:
                interf[si] = _ring_interfaces(types)
            si += 1
        if tn > t_max:
            break
        u, state = next_uniform(state)
        cur = types[x]
        f1 = _count_f1(types, nbr, x)
        f2 = nbr.shape[1] - f1
        if cur == 2:
            p = flip_prob(a2, f1, f2)
        else:
            p = flip_prob(a1, f2, f1)
        if u < p:
            types[x] = 3 - cur
            if cur == 1:
                count2 += 1
            else:
                count2 -= 1
            if (count2 == 0 or count2 == n) and fix_time < 0.0:
                fix_time = tn
                fix_to = 1 if count2 == 0 else 2
        counts[x] += 1
        events += 1
        t = tn
    while si < S:
        den1[si] = (n - count2) / n
        if want_interfaces:
            interf[si] = _ring_interfaces(types)
        si += 1
    return den1, interf, counts, events, fix_time, fix_to


@njit(cache=True)
def spin_hit_run(types, nbr, a1, a2, lo, hi, t_cap, seed):
    """Run until the type-2 count reaches lo or hi (or t_cap).

    Same draw order as spin_run.  Returns (result, time) with result 0 when
    the count hits lo first, 1 for hi first, 2 on timeout.
    """
    n = types.shape[0]
    state = seed
    t = 0.0
    count2 = 0
    for i in range(n):
        if types[i] == 2:
            count2 += 1
    while True:
        if count2 <= lo:
            return 0, t
        if count2 >= hi:
            return 1, t
        u, state = next_uniform(state)
        x = _pick_site(u, n)
        u, state = next_uniform(state)
        tn = t + (-np.log1p(-u) / n)
        if tn > t_cap:
            return 2, t
        u, state = next_uniform(state)
        cur = types[x]
        f1 = _count_f1(types, nbr, x)
        f2 = nbr.shape[1] - f1
        if cur == 2:
            p = flip_prob(a2, f1, f2)
        else:
            p = flip_prob(a1, f2, f1)
        if u < p:
            types[x] = 3 - cur
            count2 += 1 if cur == 1 else -1
        t = tn


@njit(cache=True)
def spin_monitor_run(types, nbr, a1, a2, T, mask, seed):
    """Good-block statistics for the spin system.

    Runs to time T, tests whether every masked site is type 2 (the block
    event), then keeps running to 2T watching for any masked site turning
    type 1 (the sustained event).  Returns (block_ok, sustained_ok).
    """
    n = types.shape[0]
    state = seed
    t = 0.0
    count2 = 0
    for i in range(n):
        if types[i] == 2:
            count2 += 1
    while t <= T:
        if count2 == 0 or count2 == n:
            break
        u, state = next_uniform(state)
        x = _pick_site(u, n)
        u, state = next_uniform(state)
        tn = t + (-np.log1p(-u) / n)
        if tn > T:
            break
        u, state = next_uniform(state)
        cur = types[x]
        f1 = _count_f1(types, nbr, x)
        f2 = nbr.shape[1] - f1
        p = flip_prob(a2, f1, f2) if cur == 2 else flip_prob(a1, f2, f1)
        if u < p:
            types[x] = 3 - cur
            count2 += 1 if cur == 1 else -1
        t = tn
    block_ok = True
    for i in range(n):
        if mask[i] == 1 and types[i] != 2:
            block_ok = False
            break
    sustained_ok = block_ok
    t = T
    while sustained_ok:
        if count2 == 0 or count2 == n:
            break
        u, state = next_uniform(state)
        x = _pick_site(u, n)
        u, state = next_uniform(state)
        tn = t + (-np.log1p(-u) / n)
        if tn > 2.0 * T:
            break
        u, state = next_uniform(state)
        cur = types[x]
        f1 = _count_f1(types, nbr, x)
        f2 = nbr.shape[1] - f1
        p = flip_prob(a2, f1, f2) if cur == 2 else flip_prob(a1, f2, f1)
        if u < p:
            types[x] = 3 - cur
            count2 += 1 if cur == 1 else -1
            if mask[x] == 1 and types[x] == 1:
                sustained_ok = False
        t = tn
    return block_ok, sustained_ok


@njit(cache=True)
def voter_run(types, nbr, eps, t_max, sample_times, want_interfaces, seed):
    """Voter-model perturbation; draw order per event: site, holding, threshold."""
    n = types.shape[0]
    nu = nbr.shape[1]
    S = sample_times.shape[0]
    den1 = np.empty(S, np.float64)
    interf = np.full(S, -1.0)
    state = seed
    t = 0.0
    si = 0
    events = 0
    count2 = 0
    for i in range(n):
        if types[i] == 2:
            count2 += 1
    while si < S:
        if count2 == 0 or count2 == n:
            while si < S:
                den1[si] = (n - count2) / n
                if want_interfaces:
                    interf[si] = _ring_interfaces(types)
                si += 1
            break
        u, state = next_uniform(state)
        x = _pick_site(u, n)
        u, state = next_uniform(state)
        tn = t + (-np.log1p(-u) / n)
        while si < S and sample_times[si] < tn:
            den1[si] = (n - count2) / n
            if want_interfaces:
                interf[si] = _ring_interfaces(types)
            si += 1
        if tn > t_max:
            break
        u, state = next_uniform(state)
        f1 = _count_f1(types, nbr, x)
        new = 2 if u < _p2_voter(nu - f1, nu, eps) else 1
        if new != types[x]:
            count2 += 1 if new == 2 else -1
            types[x] = new
        events += 1
        t = tn
    while si < S:
        den1[si] = (n - count2) / n
        if want_interfaces:
            interf[si] = _ring_interfaces(types)
        si += 1
    return den1, interf, events


@njit(cache=True)
def voter_monitor_run(types, nbr, eps, T, mask, seed):
    """Good-block statistics for the voter perturbation (see spin_monitor_run)."""
    n = types.shape[0]
    nu = nbr.shape[1]
    state = seed
    t = 0.0
    count2 = 0
    for i in range(n):
        if types[i] == 2:
            count2 += 1
    while t <= T:
        if count2 == 0 or count2 == n:
            break
        u, state = next_uniform(state)
        x = _pick_site(u, n)
        u, state = next_uniform(state)
        tn = t + (-np.log1p(-u) / n)
        if tn > T:
            break
        u, state = next_uniform(state)
        f1 = _count_f1(types, nbr, x)
        new = 2 if u < _p2_voter(nu - f1, nu, eps) else 1
        if new != types[x]:
            count2 += 1 if new == 2 else -1
            types[x] = new
        t = tn
    block_ok = True
    for i in range(n):
        if mask[i] == 1 and types[i] != 2:
            block_ok = False
            break
    sustained_ok = block_ok
    t = T
    while sustained_ok:
        if count2 == 0 or count2 == n:
            break
        u, state = next_uniform(state)
        x = _pick_site(u, n)
        u, state = next_uniform(state)
        tn = t + (-np.log1p(-u) / n)
        if tn > 2.0 * T:
            break
        u, state = next_uniform(state)
        f1 = _count_f1(types, nbr, x)
        new = 2 if u < _p2_voter(nu - f1, nu, eps) else 1
        if new != types[x]:
            count2 += 1 if new == 2 else -1
            types[x] = new
            if mask[x] == 1 and new == 1:
                sustained_ok = False
        t = tn
    return block_ok, sustained_ok


@njit(cache=True)
def contact_run(occ, nbr, alpha, t_max, sample_times, seed):
    """Threshold contact process on 0/1 occupancy.

    Each site carries rate 1 death attempts and rate alpha birth attempts;
    a birth succeeds only on an empty site with at least one occupied
    neighbor.  Draw order per event: site, holding time, branch uniform.
    """
    n = occ.shape[0]
    nu = nbr.shape[1]
    S = sample_times.shape[0]
    dens = np.empty(S, np.float64)
    state = seed
    t = 0.0
    si = 0
    events = 0
    total_rate = n * (1.0 + alpha)
    occupied = 0
    for i in range(n):
        if occ[i] == 1:
            occupied += 1
    while si < S:
        if occupied == 0:
            while si < S:
                dens[si] = 0.0
                si += 1
            break
        u, state = next_uniform(state)
        x = _pick_site(u, n)
        u, state = next_uniform(state)
        tn = t + (-np.log1p(-u) / total_rate)
        while si < S and sample_times[si] < tn:
            dens[si] = occupied / n
            si += 1
        if tn > t_max:
            break
        u, state = next_uniform(state)
        if u * (1.0 + alpha) < 1.0:
            if occ[x] == 1:
                occ[x] = 0
                occupied -= 1
        else:
            if occ[x] == 0:
                has_nbr = False
                for k in range(nu):
                    if occ[nbr[x, k]] == 1:
                        has_nbr = True
                        break
                if has_nbr:
                    occ[x] = 1
                    occupied += 1
        events += 1
        t = tn
    while si < S:
        dens[si] = occupied / n
        si += 1
    return dens, events


@njit(cache=True)
def coupled_contact_run(lo_occ, hi_occ, nbr, alpha_lo, alpha_hi, t_max, seed):
    """Common-event coupling of two threshold contact processes.

    Deaths are shared; births are thinned so the low-alpha copy accepts a
    subset of the high-alpha copy's birth attempts.  Returns True when
    hi never lost containment of lo.
    """
    n = lo_occ.shape[0]
    nu = nbr.shape[1]
    state = seed
    t = 0.0
    total_rate = n * (1.0 + alpha_hi)
    while True:
        u, state = next_uniform(state)
        x = _pick_site(u, n)
        u, state = next_uniform(state)
        tn = t + (-np.log1p(-u) / total_rate)
        if tn > t_max:
            break
        u, state = next_uniform(state)
        v = u * (1.0 + alpha_hi)
        if v < 1.0:
            lo_occ[x] = 0
            hi_occ[x] = 0
        else:
            if hi_occ[x] == 0:
                has_nbr = False
                for k in range(nu):
                    if hi_occ[nbr[x, k]] == 1:
                        has_nbr = True
                        break
                if has_nbr:
                    hi_occ[x] = 1
            if v - 1.0 < alpha_lo and lo_occ[x] == 0:
                has_nbr = False
                for k in range(nu):
                    if lo_occ[nbr[x, k]] == 1:
                        has_nbr = True
                        break
                if has_nbr:
                    lo_occ[x] = 1
        for_ok = True
        if lo_occ[x] == 1 and hi_occ[x] == 0:
            for_ok = False
        if not for_ok:
            return False
        t = tn
    return True


@njit(cache=True)
def interface_run(occ, c_plus, t_max, sample_times, seed):
    """Annihilating random walk on ring midpoints (Gillespie direct method).

    A particle hops onto each empty nearest midpoint at rate c_plus; each
    adjacent particle pair annihilates at rate 1.  Draw order per event:
    holding time, event selection.
    """
    L = occ.shape[0]
    S = sample_times.shape[0]
    counts_out = np.empty(S, np.float64)
    state = seed
    t = 0.0
    si = 0
    particles = 0
    for i in range(L):
        if occ[i] == 1:
            particles += 1
    while si < S:
        total = 0.0
        for v in range(L):
            if occ[v] == 1:
                left = v - 1 if v > 0 else L - 1
                right = v + 1 if v + 1 < L else 0
                if occ[left] == 0:
                    total += c_plus
                if occ[right] == 0:
                    total += c_plus
                if occ[right] == 1:
                    total += 1.0
        if total == 0.0:
            while si < S:
                counts_out[si] = particles
                si += 1
            break
        u, state = next_uniform(state)
        tn = t + (-np.log1p(-u) / total)
        while si < S and sample_times[si] < tn:
            counts_out[si] = particles
            si += 1
        if tn > t_max:
            break
        u, state = next_uniform(state)
        r = u * total
        acc = 0.0
        done = False
        for v in range(L):
            if done:
                break
            if occ[v] == 1:
                left = v - 1 if v > 0 else L - 1
                right = v + 1 if v + 1 < L else 0
                if occ[left] == 0:
                    acc += c_plus
                    if r < acc:
                        occ[v] = 0
                        occ[left] = 1
                        done = True
                        continue
                if occ[right] == 0:
                    acc += c_plus
                    if r < acc:
                        occ[v] = 0
                        occ[right] = 1
                        done = True
                        continue
                if occ[right] == 1:
                    acc += 1.0
                    if r < acc:
                        occ[v] = 0
                        occ[right] = 0
                        particles -= 2
                        done = True
                        continue
        t = tn
    while si < S:
        counts_out[si] = particles
        si += 1
    return counts_out


@njit(cache=True)
def ordered_coupled_run(types_a, types_b, nbr, a1, a2, t_max, sample_times, seed):
    """Monotone coupling of two ordered copies of the spin system.

    Each site carries two update slots at rate 1 each (global event rate 2n).
    Where the copies agree, slot 0 updates both through one threshold
    compared against the probability of becoming type 2 and slot 1 idles;
    where they differ, slot 0 updates copy A alone and slot 1 copy B alone,
    so a differing site can only be pulled back into agreement.  Draw order
    per event: site, slot, holding time, threshold.

    Returns (density1 of A, density1 of B, containment_ok, events); the run
    stops early if containment of {A = 2} over {B = 2} ever fails.
    """
    n = types_a.shape[0]
    nu = nbr.shape[1]
    S = sample_times.shape[0]
    d1a = np.empty(S, np.float64)
    d1b = np.empty(S, np.float64)
    state = seed
    t = 0.0
    si = 0
    events = 0
    ok = True
    count2a = 0
    count2b = 0
    for i in range(n):
        if types_a[i] == 2:
            count2a += 1
        if types_b[i] == 2:
            count2b += 1
    total_rate = 2.0 * n
    while si < S:
        frozen_a = count2a == 0 or count2a == n
        frozen_b = count2b == 0 or count2b == n
        if (frozen_a and frozen_b) or not ok:
            while si < S:
                d1a[si] = (n - count2a) / n
                d1b[si] = (n - count2b) / n
                si += 1
            break
        u, state = next_uniform(state)
        x = _pick_site(u, n)
        u, state = next_uniform(state)
        slot = 0 if u < 0.5 else 1
        u, state = next_uniform(state)
        tn = t + (-np.log1p(-u) / total_rate)
        while si < S and sample_times[si] < tn:
            d1a[si] = (n - count2a) / n
            d1b[si] = (n - count2b) / n
            si += 1
        if tn > t_max:
            break
        u, state = next_uniform(state)
        cura = types_a[x]
        curb = types_b[x]
        if cura == curb:
            if slot == 0:
                f1a = _count_f1(types_a, nbr, x)
                f1b = _count_f1(types_b, nbr, x)
                newa = 2 if u < _p2_spin(cura, f1a, nu - f1a, a1, a2) else 1
                newb = 2 if u < _p2_spin(curb, f1b, nu - f1b, a1, a2) else 1
                if newa != cura:
                    count2a += 1 if newa == 2 else -1
                    types_a[x] = newa
                if newb != curb:
                    count2b += 1 if newb == 2 else -1
                    types_b[x] = newb
        else:
            if slot == 0:
                f1a = _count_f1(types_a, nbr, x)
                newa = 2 if u < _p2_spin(cura, f1a, nu - f1a, a1, a2) else 1
                if newa != cura:
                    count2a += 1 if newa == 2 else -1
                    types_a[x] = newa
            else:
                f1b = _count_f1(types_b, nbr, x)
                newb = 2 if u < _p2_spin(curb, f1b, nu - f1b, a1, a2) else 1
                if newb != curb:
                    count2b += 1 if newb == 2 else -1
                    types_b[x] = newb
        if types_b[x] == 2 and types_a[x] == 1:
            ok = False
        events += 1
        t = tn
    while si < S:
        d1a[si] = (n - count2a) / n
        d1b[si] = (n - count2b) / n
        si += 1
    return d1a, d1b, ok, events


@njit(cache=True)
def domination_coupled_run(types_e, types_x, nbr, a1, a2, eps, t_max,
                           sample_times, seed):
    """Common-threshold coupling of the spin system over the voter perturbation.

    Both processes see the same site, holding time and uniform threshold;
    each becomes type 2 exactly when the threshold falls below its own
    probability of becoming type 2.  In the parameter region where the
    spin system's rate toward 1 is bounded by the voter perturbation's and
    its rate toward 2 dominates it, this preserves {spin = 2} containing
    {voter = 2} pathwise.  Draw order per event: site, holding, threshold.

    Returns (density1 spin, density1 voter, containment_ok, events).
    """
    n = types_e.shape[0]
    nu = nbr.shape[1]
    S = sample_times.shape[0]
    d1e = np.empty(S, np.float64)
    d1x = np.empty(S, np.float64)
    state = seed
    t = 0.0
    si = 0
    events = 0
    ok = True
    count2e = 0
    count2x = 0
    for i in range(n):
        if types_e[i] == 2:
            count2e += 1
        if types_x[i] == 2:
            count2x += 1
    while si < S:
        frozen_e = count2e == 0 or count2e == n
        frozen_x = count2x == 0 or count2x == n
        if (frozen_e and frozen_x) or not ok:
            while si < S:
                d1e[si] = (n - count2e) / n
                d1x[si] = (n - count2x) / n
                si += 1
            break
        u, state = next_uniform(state)
        x = _pick_site(u, n)
        u, state = next_uniform(state)
        tn = t + (-np.log1p(-u) / n)
        while si < S and sample_times[si] < tn:
            d1e[si] = (n - count2e) / n
            d1x[si] = (n - count2x) / n
            si += 1
        if tn > t_max:
            break
        u, state = next_uniform(state)
        cure = types_e[x]
        f1e = _count_f1(types_e, nbr, x)
        newe = 2 if u < _p2_spin(cure, f1e, nu - f1e, a1, a2) else 1
        if newe != cure:
            count2e += 1 if newe == 2 else -1
            types_e[x] = newe
        curx = types_x[x]
        f1x = _count_f1(types_x, nbr, x)
        newx = 2 if u < _p2_voter(nu - f1x, nu, eps) else 1
        if newx != curx:
            count2x += 1 if newx == 2 else -1
            types_x[x] = newx
        if types_x[x] == 2 and types_e[x] == 1:
            ok = False
        events += 1
        t = tn
    while si < S:
        d1e[si] = (n - count2e) / n
        d1x[si] = (n - count2x) / n
        si += 1
    return d1e, d1x, ok, events


@njit(cache=True)
def mf_rhs(u1, a1, a2):
    """Density derivative of the well-mixed two-type model."""
    u2 = 1.0 - u1
    inflow = u2 * flip_prob(a2, u1, u2)
    outflow = u1 * flip_prob(a1, u2, u1)
    return inflow - outflow


@njit(cache=True)
def rk4_integrate(u0, a1, a2, dt, n_steps, stride):
    """Fixed-step RK4 for the mean-field density.

    Records every `stride` steps (step 0 included) plus the final step.
    Returns (samples, ok); ok is False if the state ever left
    [-1e-9, 1 + 1e-9], and sub-epsilon excursions are clamped back.
    """
    n_rec = n_steps // stride + 1
    if n_steps % stride != 0:
        n_rec += 1
    out = np.empty(n_rec, np.float64)
    u = u0
    out[0] = u
    ri = 1
    ok = True
    for k in range(1, n_steps + 1):
        k1 = mf_rhs(u, a1, a2)
        k2 = mf_rhs(u + 0.5 * dt * k1, a1, a2)
        k3 = mf_rhs(u + 0.5 * dt * k2, a1, a2)
        k4 = mf_rhs(u + dt * k3, a1, a2)
        u = u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if u < 0.0:
            if u < -1e-9:
                ok = False
                break
            u = 0.0
        elif u > 1.0:
            if u > 1.0 + 1e-9:
                ok = False
                break
            u = 1.0
        if k % stride == 0 or k == n_steps:
            out[ri] = u
            ri += 1
    return out[:ri], ok
