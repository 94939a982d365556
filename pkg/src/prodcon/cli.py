"""Command-line front end.

Subcommands: simulate, meanfield, sweep, dual-check, interface, contact,
richardson, goodsite.  Every subcommand accepts --seed, --out and --config;
--config names a JSON file whose entries override the corresponding flags.
Exit status is 0 on success and 2 on parameter errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .dynamics import ModelParams, simulate
from .graphical import (VOTER_KIND, dual_set, forward_from_graphical,
                        sample_graphical)
from .harness import (SweepSpec, good_site_frequency, phase_sweep,
                      write_sweep_csv, write_trajectory_csv)
from .lattice import Lattice, ParameterError, load_snapshot, random_configuration, save_snapshot
from .meanfield import mf_integrate
from .processes import (interface_from_config, simulate_interface,
                        simulate_richardson_reduced, simulate_threshold_contact)
from ._rng import derive_seed


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=str, default=None, help="output path (default: stdout)")
    p.add_argument("--config", type=str, default=None,
                   help="JSON file whose entries override flags")


def _apply_config(args: argparse.Namespace) -> None:
    if getattr(args, "config", None):
        with open(args.config) as fh:
            for key, val in json.load(fh).items():
                setattr(args, key.replace("-", "_"), val)


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _initial_config(lat: Lattice, args) -> np.ndarray:
    if getattr(args, "init_snapshot", None):
        lat2, cfg, _ = load_snapshot(args.init_snapshot)
        if (lat2.d, lat2.M, lat2.L) != (lat.d, lat.M, lat.L):
            raise ParameterError("snapshot geometry does not match flags")
        return cfg
    return random_configuration(lat, args.init_density1, derive_seed(args.seed, 1))


def _cmd_simulate(args) -> int:
    lat = Lattice(args.d, args.M, args.L)
    cfg0 = _initial_config(lat, args)
    traj = simulate(lat, cfg0, ModelParams(args.a1, args.a2), args.t_max,
                    args.sample_interval, args.seed)
    if args.save_final:
        save_snapshot(args.save_final, lat, traj.final_config, args.t_max,
                      args.seed, args.a1, args.a2)
    if args.out:
        write_trajectory_csv(traj, args.out)
    else:
        write_trajectory_csv(traj, sys.stdout)
    return 0


def _cmd_meanfield(args) -> int:
    path = mf_integrate(args.u0, args.a1, args.a2, args.t_max, dt=args.dt,
                        sample_interval=args.sample_interval)
    lines = ["t,u1"] + [f"{t:.10g},{u:.10g}" for t, u in zip(path.times, path.u1)]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_sweep(args) -> int:
    if args.config:
        spec = SweepSpec.from_json(args.config)
    else:
        if args.a1 is None or args.a2 is None:
            raise ParameterError("sweep needs --config or --a1/--a2 value lists")
        spec = SweepSpec(a1_values=args.a1, a2_values=args.a2, d=args.d,
                         M=args.M, L=args.L, replicas=args.replicas,
                         t_max=args.t_max, base_seed=args.seed)
    records = phase_sweep(spec)
    if args.out:
        write_sweep_csv(records, args.out)
    else:
        write_sweep_csv(records, sys.stdout)
    return 0


def _cmd_dual_check(args) -> int:
    lat = Lattice(args.d, 1, args.L)
    checks = 0
    bad = 0
    for trial in range(args.trials):
        rep = sample_graphical(lat, VOTER_KIND, args.T,
                               derive_seed(args.seed, trial), eps=args.eps)
        cfg0 = random_configuration(lat, 0.5, derive_seed(args.seed, trial, 1))
        fwd = forward_from_graphical(lat, rep, cfg0)
        for x in range(lat.n):
            dual = dual_set(lat, rep, x, rep.window_T)
            expected = 1 if np.all(cfg0[dual] == 1) else 2
            checks += 1
            if fwd[x] != expected:
                bad += 1
    status = "PASS" if bad == 0 else "FAIL"
    _emit(f"{status}: {bad} violations in {checks} forward/dual checks\n", args.out)
    return 0 if bad == 0 else 1


def _cmd_interface(args) -> int:
    rng_cfg = random_configuration(Lattice(1, 1, args.L), args.init_density1,
                                   derive_seed(args.seed, 1))
    state0 = interface_from_config(rng_cfg)
    traj = simulate_interface(state0, args.a, args.t_max, args.seed,
                              sample_interval=args.sample_interval)
    lines = ["t,particles"] + [f"{t:.10g},{int(c)}" for t, c in
                               zip(traj.times, traj.counts)]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_contact(args) -> int:
    lat = Lattice(args.d, args.M, args.L)
    rng = np.random.Generator(np.random.PCG64(derive_seed(args.seed, 1)))
    occ0 = (rng.random(lat.n) < args.init_density).astype(np.int8)
    traj = simulate_threshold_contact(lat, occ0, args.alpha, args.t_max,
                                      args.seed, sample_interval=args.sample_interval)
    lines = ["t,occupied_density"] + [f"{t:.10g},{v:.10g}" for t, v in
                                      zip(traj.times, traj.density)]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_richardson(args) -> int:
    lat = Lattice(args.d, 1, args.L)
    cfg0 = _initial_config(lat, args)
    traj = simulate_richardson_reduced(lat, cfg0, args.a1, args.t_max, args.seed,
                                       sample_interval=args.sample_interval)
    if args.out:
        write_trajectory_csv(traj, args.out)
    else:
        write_trajectory_csv(traj, sys.stdout)
    return 0


def _cmd_goodsite(args) -> int:
    lat = Lattice(args.d, 1, args.L)
    params = {"a1": args.a1, "a2": args.a2, "eps": args.eps}
    stats = good_site_frequency(args.kind, lat, params, args.N, args.T_scale,
                                args.replicas, args.seed)
    _emit(f"N={stats.N} T={stats.T:.10g} replicas={stats.replicas} "
          f"freq_block={stats.freq_block:.10g} "
          f"freq_sustained={stats.freq_sustained:.10g}\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="prodcon",
                                 description="two-type producer-consumer lattice lab")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run the spin system, emit trajectory CSV")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--M", type=int, default=1)
    p.add_argument("--L", type=int, default=30)
    p.add_argument("--a1", type=float, required=True)
    p.add_argument("--a2", type=float, required=True)
    p.add_argument("--t-max", type=float, default=100.0)
    p.add_argument("--sample-interval", type=float, default=1.0)
    p.add_argument("--init-density1", type=float, default=0.5)
    p.add_argument("--init-snapshot", type=str, default=None)
    p.add_argument("--save-final", type=str, default=None,
                   help="write the final configuration as a snapshot file")
    _add_common(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("meanfield", help="integrate the well-mixed density ODE")
    p.add_argument("--a1", type=float, required=True)
    p.add_argument("--a2", type=float, required=True)
    p.add_argument("--u0", type=float, required=True)
    p.add_argument("--t-max", type=float, default=100.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--sample-interval", type=float, default=1.0)
    _add_common(p)
    p.set_defaults(func=_cmd_meanfield)

    p = sub.add_parser("sweep", help="phase-diagram sweep, emit CSV")
    p.add_argument("--a1", type=float, nargs="*", default=None)
    p.add_argument("--a2", type=float, nargs="*", default=None)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--M", type=int, default=1)
    p.add_argument("--L", type=int, default=30)
    p.add_argument("--replicas", type=int, default=30)
    p.add_argument("--t-max", type=float, default=200.0)
    _add_common(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("dual-check", help="forward/dual agreement check")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--L", type=int, default=6)
    p.add_argument("--T", type=float, default=3.0)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--trials", type=int, default=20)
    _add_common(p)
    p.set_defaults(func=_cmd_dual_check)

    p = sub.add_parser("interface", help="1D interface walk, emit particle counts")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--L", type=int, default=100)
    p.add_argument("--t-max", type=float, default=50.0)
    p.add_argument("--sample-interval", type=float, default=1.0)
    p.add_argument("--init-density1", type=float, default=0.5)
    _add_common(p)
    p.set_defaults(func=_cmd_interface)

    p = sub.add_parser("contact", help="threshold contact process")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--M", type=int, default=1)
    p.add_argument("--L", type=int, default=50)
    p.add_argument("--t-max", type=float, default=50.0)
    p.add_argument("--sample-interval", type=float, default=1.0)
    p.add_argument("--init-density", type=float, default=1.0)
    _add_common(p)
    p.set_defaults(func=_cmd_contact)

    p = sub.add_parser("richardson", help="growth-reduced process (a2 = 1)")
    p.add_argument("--a1", type=float, required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--L", type=int, default=30)
    p.add_argument("--t-max", type=float, default=50.0)
    p.add_argument("--sample-interval", type=float, default=1.0)
    p.add_argument("--init-density1", type=float, default=0.5)
    p.add_argument("--init-snapshot", type=str, default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_richardson)

    p = sub.add_parser("goodsite", help="block spread frequency")
    p.add_argument("--kind", type=str, default="producer-consumer",
                   choices=["producer-consumer", "richardson", "voter-perturbation"])
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--L", type=int, default=50)
    p.add_argument("--N", type=int, default=5)
    p.add_argument("--T-scale", type=float, default=2.0)
    p.add_argument("--replicas", type=int, default=20)
    p.add_argument("--a1", type=float, default=0.0)
    p.add_argument("--a2", type=float, default=1.0)
    p.add_argument("--eps", type=float, default=0.1)
    _add_common(p)
    p.set_defaults(func=_cmd_goodsite)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        _apply_config(args)
        return args.func(args)
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())
