import numpy as np
import pytest

from prodcon import (BREAKING_KIND, VOTER_KIND, GraphicalRep, Lattice,
                     ParameterError, breaking_flags,
                     breaking_time_frequency, breaking_time_probability,
                     check_breaking_lemma, check_one_sided_duality,
                     derive_seed, detect_breaking_points, drift_schedule,
                     dual_set, dual_set_breaking, dump_rep,
                     forward_from_graphical, load_rep_events,
                     path_containment_stats, random_configuration,
                     sample_graphical, selected_path,
                     simulate_voter_perturbation)
from prodcon.graphical import DEL, LAM


def manual_rep(lat, kind, window_T, events, eps=None):
    """Build a representation from explicit (time, kind, target, source)."""
    events = sorted(events)
    times = np.array([e[0] for e in events], dtype=np.float64)
    kinds = np.array([e[1] for e in events], dtype=np.int8)
    targets = np.array([e[2] for e in events], dtype=np.int32)
    sources = np.array([e[3] for e in events], dtype=np.int32)
    return GraphicalRep(lat, kind, window_T, eps, times, kinds, targets, sources)


class TestSampling:
    def test_zero_window_empty(self):
        lat = Lattice(1, 1, 6)
        rep = sample_graphical(lat, BREAKING_KIND, 0.0, seed=1)
        assert rep.n_events == 0

    def test_times_distinct_sorted_in_window(self):
        lat = Lattice(2, 1, 5)
        rep = sample_graphical(lat, VOTER_KIND, 4.0, seed=3, eps=0.2)
        assert np.all(np.diff(rep.times) > 0)
        assert rep.times[0] > 0 and rep.times[-1] <= 4.0 + 1e-12

    def test_arrow_rate_matches_intensity(self):
        # mean count per directed edge is (1-eps)/(2d) * T
        lat = Lattice(2, 1, 8)
        eps, T, trials = 0.25, 5.0, 40
        total = 0
        for r in range(trials):
            rep = sample_graphical(lat, VOTER_KIND, T, seed=derive_seed(5, r), eps=eps)
            total += int(np.sum(rep.kinds == LAM))
        edges = lat.n * lat.nu
        mean_per_edge = total / (trials * edges)
        expect = (1 - eps) / lat.nu * T
        sig = np.sqrt(expect / (trials * edges))
        assert abs(mean_per_edge - expect) < 3 * sig

    def test_breaking_kind_per_site_rate(self):
        # every site is the head of 2d directed edges at rate 1/(2d) each
        lat = Lattice(1, 1, 30)
        T, trials = 8.0, 30
        total = 0
        for r in range(trials):
            rep = sample_graphical(lat, BREAKING_KIND, T, seed=derive_seed(6, r))
            total += rep.n_events
        mean_per_site = total / (trials * lat.n)
        sig = np.sqrt(T / (trials * lat.n))
        assert abs(mean_per_site - T) < 3 * sig

    def test_deterministic_and_validated(self):
        lat = Lattice(2, 1, 5)
        r1 = sample_graphical(lat, VOTER_KIND, 2.0, seed=9, eps=0.1)
        r2 = sample_graphical(lat, VOTER_KIND, 2.0, seed=9, eps=0.1)
        assert np.array_equal(r1.times, r2.times)
        assert np.array_equal(r1.targets, r2.targets)
        with pytest.raises(ParameterError):
            sample_graphical(lat, VOTER_KIND, 2.0, seed=1)  # missing eps
        with pytest.raises(ParameterError):
            sample_graphical(Lattice(1, 2, 7), BREAKING_KIND, 2.0, seed=1)


class TestForward:
    def test_empty_rep_is_identity(self):
        lat = Lattice(1, 1, 6)
        rep = manual_rep(lat, VOTER_KIND, 1.0, [], eps=0.1)
        cfg0 = random_configuration(lat, 0.5, 2)
        assert np.array_equal(forward_from_graphical(lat, rep, cfg0), cfg0)

    def test_single_arrow_copies_source(self):
        lat = Lattice(1, 1, 6)
        cfg0 = np.array([1, 2, 1, 2, 1, 2], dtype=np.int8)
        rep = manual_rep(lat, VOTER_KIND, 1.0, [(0.5, LAM, 0, 1)], eps=0.1)
        out = forward_from_graphical(lat, rep, cfg0)
        assert out[0] == cfg0[1]
        assert np.array_equal(out[1:], cfg0[1:])

    def test_all_neighbor_event_rule(self):
        lat = Lattice(1, 1, 6)
        cfg0 = np.array([2, 1, 1, 1, 1, 1], dtype=np.int8)
        rep = manual_rep(lat, VOTER_KIND, 1.0, [(0.5, DEL, 2, -1)], eps=0.1)
        assert forward_from_graphical(lat, rep, cfg0)[2] == 1
        rep2 = manual_rep(lat, VOTER_KIND, 1.0, [(0.5, DEL, 1, -1)], eps=0.1)
        assert forward_from_graphical(lat, rep2, cfg0)[1] == 2

    def test_breaking_rules(self):
        lat = Lattice(1, 1, 6)
        cfg0 = np.array([2, 1, 1, 2, 1, 1], dtype=np.int8)
        # type-2 target mimics the source
        rep = manual_rep(lat, BREAKING_KIND, 1.0, [(0.3, LAM, 0, 1)])
        assert forward_from_graphical(lat, rep, cfg0)[0] == 1
        # type-1 target turns 2 when any neighbor is 2
        rep2 = manual_rep(lat, BREAKING_KIND, 1.0, [(0.3, LAM, 4, 5)])
        assert forward_from_graphical(lat, rep2, cfg0)[4] == 2
        # ... but stays 1 on an all-1 neighborhood
        cfg1 = np.array([1, 1, 1, 1, 1, 2], dtype=np.int8)
        rep3 = manual_rep(lat, BREAKING_KIND, 1.0, [(0.3, LAM, 2, 3)])
        assert forward_from_graphical(lat, rep3, cfg1)[2] == 1

    def test_voter_law_matches_direct_simulation(self):
        # two constructions of the same process agree in distribution
        lat = Lattice(1, 1, 5)
        eps, T, reps = 0.3, 2.0, 3000
        cfg0 = random_configuration(lat, 0.5, 123)
        a = np.empty(reps)
        b = np.empty(reps)
        for r in range(reps):
            tr = simulate_voter_perturbation(lat, cfg0, eps, T,
                                             seed=derive_seed(1, r),
                                             sample_interval=T)
            a[r] = tr.density1[-1]
            rep = sample_graphical(lat, VOTER_KIND, T, derive_seed(2, r), eps=eps)
            b[r] = np.mean(forward_from_graphical(lat, rep, cfg0) == 1)
        se = np.sqrt(a.var(ddof=1) / reps + b.var(ddof=1) / reps)
        assert abs(a.mean() - b.mean()) < 3 * se


class TestDualSet:
    def test_no_events_base_point(self):
        lat = Lattice(2, 1, 5)
        rep = manual_rep(lat, VOTER_KIND, 2.0, [], eps=0.2)
        assert dual_set(lat, rep, 7, 2.0).tolist() == [7]

    def test_single_branch_event_gives_neighborhood(self):
        lat = Lattice(2, 1, 5)
        rep = manual_rep(lat, VOTER_KIND, 2.0, [(1.5, DEL, 0, -1)], eps=0.2)
        got = dual_set(lat, rep, 0, 2.0)
        assert sorted(got) == sorted(lat.neighbor_table[0].tolist())

    def test_duality_identity_exact(self):
        lat = Lattice(2, 1, 6)
        bad = 0
        for trial in range(25):
            rep = sample_graphical(lat, VOTER_KIND, 3.0, derive_seed(31, trial),
                                   eps=1 / 9)
            cfg0 = random_configuration(lat, 0.5, trial)
            fwd = forward_from_graphical(lat, rep, cfg0)
            for x in range(lat.n):
                dual = dual_set(lat, rep, x, rep.window_T)
                expect = 1 if np.all(cfg0[dual] == 1) else 2
                bad += fwd[x] != expect
        assert bad == 0

    def test_cardinality_and_distance_bounds(self):
        lat = Lattice(2, 1, 8)
        rep = sample_graphical(lat, VOTER_KIND, 2.5, seed=77, eps=0.3)
        branches = int(np.sum(rep.kinds == DEL))
        m = rep.n_events
        coords = lat.all_coords()
        for x in (0, 11, 37):
            dual = dual_set(lat, rep, x, rep.window_T)
            assert len(dual) <= 1 + (lat.nu - 1) * branches
            for y in dual:
                dist = np.abs(lat.fold((coords[y] - coords[x]) % lat.L))
                assert dist.sum() <= m

    def test_window_validation(self):
        lat = Lattice(1, 1, 6)
        rep = manual_rep(lat, VOTER_KIND, 1.0, [], eps=0.1)
        with pytest.raises(ParameterError):
            dual_set(lat, rep, 0, 2.0)


def brute_force_breaking(rep):
    """Quadratic oracle for the breaking-point rule."""
    out = np.zeros(rep.n_events, bool)
    for k in range(rep.n_events):
        x, y, t = int(rep.targets[k]), int(rep.sources[k]), rep.times[k]
        best = None
        for j in range(rep.n_events):
            if rep.times[j] >= t:
                break
            if int(rep.targets[j]) in (x, y):
                best = j
        if best is not None and int(rep.targets[best]) == y \
                and int(rep.sources[best]) == x:
            out[k] = True
    return out


class TestBreakingPoints:
    def test_single_event_is_never_breaking(self):
        lat = Lattice(1, 1, 6)
        rep = manual_rep(lat, BREAKING_KIND, 3.0, [(1.0, LAM, 0, 1)])
        assert detect_breaking_points(lat, rep) == []

    def test_hand_built_pair(self):
        lat = Lattice(1, 1, 6)
        # arrow x -> y at time 1, then y -> x at time 2: (x, 2) qualifies
        x, y = 0, 1
        rep = manual_rep(lat, BREAKING_KIND, 3.0,
                         [(1.0, LAM, y, x), (2.0, LAM, x, y)])
        pts = detect_breaking_points(lat, rep)
        assert len(pts) == 1
        assert (pts[0].site, pts[0].time, pts[0].partner) == (x, 2.0, y)

    def test_interposed_arrow_disqualifies(self):
        lat = Lattice(1, 1, 6)
        rep = manual_rep(lat, BREAKING_KIND, 3.0,
                         [(1.0, LAM, 1, 0), (1.5, LAM, 0, 5), (2.0, LAM, 0, 1)])
        flagged = [p for p in detect_breaking_points(lat, rep) if p.time == 2.0]
        assert flagged == []

    @pytest.mark.parametrize("d,L,T", [(1, 8, 6.0), (2, 5, 2.0)])
    def test_matches_brute_force(self, d, L, T):
        lat = Lattice(d, 1, L)
        for trial in range(10):
            rep = sample_graphical(lat, BREAKING_KIND, T, derive_seed(41, trial))
            assert np.array_equal(breaking_flags(rep), brute_force_breaking(rep))

    def test_breaking_lemma_zero_violations(self):
        lat = Lattice(1, 1, 20)
        for trial in range(20):
            rep = sample_graphical(lat, BREAKING_KIND, 25.0, derive_seed(51, trial))
            cfg0 = random_configuration(lat, 0.5, trial)
            assert check_breaking_lemma(lat, rep, cfg0) == 0

    def test_breaking_lemma_homogeneous_vacuous(self):
        lat = Lattice(1, 1, 12)
        rep = sample_graphical(lat, BREAKING_KIND, 20.0, seed=3)
        for t0 in (1, 2):
            cfg0 = np.full(lat.n, t0, dtype=np.int8)
            assert check_breaking_lemma(lat, rep, cfg0) == 0

    def test_one_sided_duality_zero_violations(self):
        lat = Lattice(1, 1, 14)
        for trial in range(10):
            rep = sample_graphical(lat, BREAKING_KIND, 8.0, derive_seed(61, trial))
            cfg0 = random_configuration(lat, 0.5, trial + 7)
            assert check_one_sided_duality(lat, rep, cfg0) == 0

    def test_breaking_dual_set_runs(self):
        lat = Lattice(1, 1, 10)
        rep = sample_graphical(lat, BREAKING_KIND, 5.0, seed=8)
        got = dual_set_breaking(lat, rep, 3, 5.0)
        assert len(got) >= 1


class TestSelectedPath:
    def test_no_events_constant(self):
        lat = Lattice(2, 1, 9)
        rep = manual_rep(lat, VOTER_KIND, 2.0, [], eps=0.2)
        path = selected_path(lat, rep, 5, drift_schedule(2, 0.2, 2), "voter")
        assert path.site_at(0.0) == 5
        assert path.site_at(2.0) == 5

    def test_drift_event_moves_toward_hyperplane(self):
        lat = Lattice(2, 1, 12)
        x = lat.site_index((3, 0))
        rep = manual_rep(lat, VOTER_KIND, 2.0, [(1.0, DEL, x, -1)], eps=0.2)
        sched = drift_schedule(1, 0.2, 2)  # first leg covers the window
        path = selected_path(lat, rep, x, sched, "voter")
        assert lat.site_coords(path.site_at(2.0)) == (2, 0)

    def test_arrow_is_followed_tip_to_tail(self):
        lat = Lattice(1, 1, 8)
        rep = manual_rep(lat, VOTER_KIND, 2.0, [(1.2, LAM, 4, 5)], eps=0.2)
        path = selected_path(lat, rep, 4, drift_schedule(1, 0.2, 1), "voter")
        assert path.site_at(2.0) == 5

    def test_same_seed_same_path(self):
        lat = Lattice(2, 1, 8)
        rep = sample_graphical(lat, VOTER_KIND, 6.0, seed=15, eps=0.3)
        sched = np.array([0.5])  # most of the window runs in the uniform phase
        p1 = selected_path(lat, rep, 3, sched, "voter", seed=4)
        p2 = selected_path(lat, rep, 3, sched, "voter", seed=4)
        assert np.array_equal(p1.sites, p2.sites)
        assert np.array_equal(p1.dual_times, p2.dual_times)

    def test_jumps_only_at_events_and_to_neighbors(self):
        lat = Lattice(2, 1, 8)
        for mode, kind, eps in [("voter", VOTER_KIND, 0.3),
                                ("breaking", BREAKING_KIND, None)]:
            rep = sample_graphical(lat, kind, 4.0, seed=19, eps=eps)
            sched = drift_schedule(1, 0.3, 2)
            path = selected_path(lat, rep, 9, sched, mode, seed=2)
            event_duals = set((rep.window_T - rep.times).tolist())
            cur = 9
            for s, site in zip(path.dual_times, path.sites):
                assert s in event_duals
                assert site in lat.neighbor_table[cur]
                cur = site

    def test_empirical_drift_rate(self):
        # between schedule legs the distance to the hyperplane shrinks at
        # rate eps on average
        lat = Lattice(1, 1, 40)
        eps, T = 0.3, 5.0
        sched = drift_schedule(2, eps, 1)
        start = lat.site_index((10,))
        changes = []
        for r in range(400):
            rep = sample_graphical(lat, VOTER_KIND, T, derive_seed(71, r), eps=eps)
            path = selected_path(lat, rep, start, sched, "voter", seed=r)
            c = lat.site_coords(path.site_at(T))[0]
            f = c if 2 * c <= lat.L else c - lat.L
            changes.append(abs(f) - 10)
        m = np.mean(changes)
        se = np.std(changes, ddof=1) / np.sqrt(len(changes))
        assert abs(m - (-eps * T)) < 3 * se


class TestBreakingTimePattern:
    def test_closed_form_value(self):
        assert breaking_time_probability(1) == pytest.approx(0.11392, abs=2e-5)

    def test_frequency_matches_formula(self):
        lat = Lattice(1, 1, 100)
        rep = sample_graphical(lat, BREAKING_KIND, 402.0, seed=27)
        freq, n = breaking_time_frequency(lat, rep)
        p = breaking_time_probability(1)
        assert n >= 10_000
        assert abs(freq - p) < 3 * np.sqrt(p * (1 - p) / n)

    def test_restricted_to_one_dimension(self):
        lat = Lattice(2, 1, 8)
        rep = sample_graphical(lat, BREAKING_KIND, 4.0, seed=1)
        with pytest.raises(ParameterError):
            breaking_time_frequency(lat, rep)


class TestPathContainment:
    def test_bad_frequency_decays_with_box_size(self):
        stats = path_containment_stats(2, [3, 6], C=40.0, trials=300, seed=5,
                                       mode="voter", eps=0.25)
        assert stats[0].bad_frequency > stats[1].bad_frequency

    def test_breaking_mode_same_trend(self):
        stats = path_containment_stats(1, [3, 6], C=40.0, trials=200, seed=6,
                                       mode="breaking")
        assert stats[0].bad_frequency >= stats[1].bad_frequency

    def test_schedule_constant_validated(self):
        with pytest.raises(ParameterError):
            path_containment_stats(2, [4], C=10.0, trials=5, seed=1,
                                   mode="voter", eps=0.25)


class TestDump:
    def test_round_trip(self, tmp_path):
        lat = Lattice(1, 1, 8)
        rep = sample_graphical(lat, VOTER_KIND, 3.0, seed=13, eps=0.2)
        path = tmp_path / "rep.txt"
        dump_rep(rep, path)
        times, kinds, targets, sources = load_rep_events(path)
        assert np.array_equal(times, rep.times)
        assert np.array_equal(kinds, rep.kinds)
        assert np.array_equal(targets, rep.targets)
        assert np.array_equal(sources, rep.sources)
