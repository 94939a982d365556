"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s``.  Every tolerance is
pinned here: exact identities admit zero violations, Monte Carlo surrogates
use binomial or two-sample 3-sigma bands at the stated replica counts.
"""

import math

import numpy as np
import pytest

from prodcon import (BREAKING_KIND, VOTER_KIND, Lattice, ModelParams,
                     breaking_time_frequency, breaking_time_probability,
                     check_breaking_lemma, coupled_simulate_domination,
                     coupled_simulate_ordered, derive_seed, dual_set,
                     epsilon_from_rho, forward_from_graphical,
                     gambler_ruin_hit_prob, interface_from_config,
                     interior_fixed_point, mf_integrate,
                     random_configuration, rate_inequality_violations,
                     run_until_count2_hits, sample_graphical, simulate,
                     simulate_interface, simulate_threshold_contact)


def report(num, name, ok, detail):
    print(f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, f"criterion {num} ({name}): {detail}"


def test_01_gamblers_ruin_law():
    # d=1, M=1, a1=0.2, a2=0.5, interval of length 7 on a ring of 200;
    # frequency of the type-2 interval hitting size 1 before 40
    lat = Lattice(1, 1, 200)
    cfg0 = np.ones(lat.n, dtype=np.int8)
    cfg0[:7] = 2
    params = ModelParams(0.2, 0.5)
    reps = 10_000
    hits = 0
    for r in range(reps):
        which, _ = run_until_count2_hits(lat, cfg0, params, 1, 40, 1e12,
                                         derive_seed(0xA1, r))
        hits += which == "lo"
    p_hat = hits / reps
    p = gambler_ruin_hit_prob(6, 40, 0.2, 0.5)
    band = 3 * math.sqrt(p * (1 - p) / reps)
    report(1, "gamblers-ruin law", abs(p_hat - p) < band,
           f"empirical {p_hat:.5f} vs exact {p:.5f}, 3-sigma {band:.5f}")


def test_02_mean_field_regimes():
    checks = []
    final = mf_integrate(0.5, 0.3, 0.7, 1000.0).final
    checks.append(("selfish-altruistic to 0", abs(final - 0.0) < 1e-6))
    e = interior_fixed_point(0.8, 0.9)
    up = mf_integrate(e + 0.05, 0.8, 0.9, 1000.0).final
    down = mf_integrate(e - 0.05, 0.8, 0.9, 1000.0).final
    checks.append(("bistable up to 1", abs(up - 1.0) < 1e-6))
    checks.append(("bistable down to 0", abs(down - 0.0) < 1e-6))
    e2 = interior_fixed_point(0.1, 0.2)
    for u0 in (0.2, 0.8):
        got = mf_integrate(u0, 0.1, 0.2, 1000.0).final
        checks.append((f"coexistence from {u0}", abs(got - e2) < 1e-6))
    ok = all(c[1] for c in checks)
    report(2, "mean-field regimes", ok,
           "; ".join(f"{n}={'ok' if v else 'BAD'}" for n, v in checks))


def test_03_duality_oracle():
    # d=2, L=6, T=3, eps=1/9: 100 reps x 10 configurations x all 36 sites
    lat = Lattice(2, 1, 6)
    eps = epsilon_from_rho(0.2, 2)
    assert eps == pytest.approx(1 / 9)
    checks = 0
    bad = 0
    for t in range(100):
        rep = sample_graphical(lat, VOTER_KIND, 3.0, derive_seed(0xD, t), eps=eps)
        duals = [dual_set(lat, rep, x, rep.window_T) for x in range(lat.n)]
        for c in range(10):
            cfg0 = random_configuration(lat, 0.5, derive_seed(0xC, t, c))
            fwd = forward_from_graphical(lat, rep, cfg0)
            for x in range(lat.n):
                expect = 1 if np.all(cfg0[duals[x]] == 1) else 2
                checks += 1
                bad += fwd[x] != expect
    report(3, "duality oracle", bad == 0, f"{bad} mismatches in {checks} checks")


def test_04_breaking_point_lemma():
    bad = 0
    runs = 0
    for d, L, T in [(1, 20, 50.0), (2, 8, 20.0)]:
        lat = Lattice(d, 1, L)
        for t in range(100):
            rep = sample_graphical(lat, BREAKING_KIND, T, derive_seed(0xB, d, t))
            cfg0 = random_configuration(lat, 0.5, derive_seed(0xB2, d, t))
            bad += check_breaking_lemma(lat, rep, cfg0)
            runs += 1
    report(4, "breaking-point lemma", bad == 0,
           f"{bad} violations over {runs} runs")


def test_05_breaking_time_probability():
    lat = Lattice(1, 1, 200)
    rep = sample_graphical(lat, BREAKING_KIND, 2002.0, seed=0xBEEF)
    freq, n = breaking_time_frequency(lat, rep)
    p = breaking_time_probability(1)
    band = 3 * math.sqrt(p * (1 - p) / n)
    report(5, "breaking-time probability",
           n >= 100_000 and abs(freq - p) < band,
           f"frequency {freq:.5f} vs {p:.5f} over {n} windows, 3-sigma {band:.5f}")


def test_06_monotone_couplings():
    lat1 = Lattice(1, 1, 50)
    ordered_ok = 0
    for t in range(100):
        cfg_b = random_configuration(lat1, 0.5, derive_seed(0xE1, t))
        extra = random_configuration(lat1, 0.5, derive_seed(0xE2, t))
        cfg_a = np.where((cfg_b == 2) | (extra == 2), 2, 1).astype(np.int8)
        run = coupled_simulate_ordered(lat1, cfg_a, cfg_b, ModelParams(0.2, 0.6),
                                       50.0, seed=derive_seed(0xE3, t))
        ordered_ok += run.containment_ok
    lat2 = Lattice(2, 1, 20)
    dom_ok = 0
    for t in range(100):
        cfg0 = random_configuration(lat2, 0.5, derive_seed(0xE4, t))
        run = coupled_simulate_domination(lat2, cfg0, ModelParams(0.3, 0.7),
                                          0.2, 50.0, seed=derive_seed(0xE5, t))
        dom_ok += run.containment_ok
    report(6, "monotone couplings", ordered_ok == 100 and dom_ok == 100,
           f"ordered {ordered_ok}/100, domination {dom_ok}/100 pathwise")


def test_07_rate_inequalities():
    bad = rate_inequality_violations(nu_max=12, n_rho=20, n_pairs=20)
    report(7, "rate inequalities", bad == 0,
           f"{bad} violations over all splits with nu <= 12 and a 20x20 grid")


def test_08_selfish_type_wins_2d():
    lat = Lattice(2, 1, 50)
    params = ModelParams(0.3, 0.7)
    fixed2 = 0
    for r in range(100):
        cfg0 = random_configuration(lat, 0.5, derive_seed(0xF1, r))
        traj = simulate(lat, cfg0, params, 1e4, 1e4, seed=derive_seed(0xF2, r))
        fixed2 += traj.fixated_to == 2
    report(8, "selfish type wins (2D surrogate)", fixed2 >= 95,
           f"{fixed2}/100 replicas fixated to type 2")


def test_09_clustering_1d():
    lat = Lattice(1, 1, 1000)
    params = ModelParams(0.7, 0.7)
    start = []
    end = []
    for r in range(50):
        cfg0 = random_configuration(lat, 0.5, derive_seed(0x91, r))
        traj = simulate(lat, cfg0, params, 500.0, 500.0, seed=derive_seed(0x92, r))
        start.append(traj.interfaces[0])
        end.append(traj.interfaces[-1])
    ratio = np.mean(end) / np.mean(start)
    report(9, "clustering (1D surrogate)", ratio < 0.5,
           f"interface density ratio t=500 vs t=0: {ratio:.4f}")


def test_10_threshold_contact_supercritical():
    lat = Lattice(2, 1, 100)
    dens = []
    for r in range(20):
        occ0 = np.ones(lat.n, dtype=np.int8)
        traj = simulate_threshold_contact(lat, occ0, 1.0, 200.0,
                                          seed=derive_seed(0xCC, r),
                                          sample_interval=200.0)
        dens.append(traj.density[-1])
    mean = float(np.mean(dens))
    report(10, "threshold contact supercritical", mean > 0.05,
           f"mean occupied density at t=200: {mean:.4f}")


def test_11_interface_process_equivalence():
    lat = Lattice(1, 1, 50)
    params = ModelParams(0.5, 0.5)
    reps = 10_000
    spin = np.empty(reps)
    walk = np.empty(reps)
    for r in range(reps):
        cfg0 = random_configuration(lat, 0.5, derive_seed(0x1A, r))
        traj = simulate(lat, cfg0, params, 20.0, 20.0, seed=derive_seed(0x1B, r))
        spin[r] = traj.interfaces[-1]
        cfg0b = random_configuration(lat, 0.5, derive_seed(0x2A, r))
        st0 = interface_from_config(cfg0b)
        itr = simulate_interface(st0, 0.5, 20.0, seed=derive_seed(0x2B, r),
                                 sample_interval=20.0)
        walk[r] = itr.counts[-1]
    diff = abs(spin.mean() - walk.mean())
    band = 3 * math.sqrt(spin.var(ddof=1) / reps + walk.var(ddof=1) / reps)
    report(11, "interface-process equivalence", diff < band,
           f"means {spin.mean():.4f} vs {walk.mean():.4f}, diff {diff:.4f}, "
           f"3-sigma {band:.4f}")
