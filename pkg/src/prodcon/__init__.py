"""Simulation lab for a two-type producer-consumer lattice model.

Exact continuous-time dynamics on finite tori, the well-mixed ODE limit,
graphical (Poisson arrow) constructions with their dual walks, the standard
comparison processes, and a sweep harness for phase-diagram mapping.
"""

from .lattice import (Lattice, ParameterError, count_types, density_of,
                      homogeneous_configuration, load_snapshot,
                      random_configuration, save_snapshot)
from .dynamics import (CoupledRun, ModelParams, SimClock, Trajectory,
                       coupled_simulate_domination, coupled_simulate_ordered,
                       flip_probability, reduce_params, run_until_count2_hits,
                       simulate, step)
from .meanfield import (MeanFieldPath, RegimeClass, classify_regime,
                        interior_fixed_point, mf_derivative, mf_integrate,
                        predicted_limit, sign_expression)
from .processes import (InterfaceTrajectory, OccupancyTrajectory,
                        ThresholdContactParams, VoterPerturbParams,
                        alpha_lower_bound, coupled_contact_containment,
                        epsilon_from_rho, gambler_ruin_hit_prob,
                        interface_from_config, rate_inequality_violations,
                        richardson_flip_lower_bound, simulate_interface,
                        simulate_richardson_reduced, simulate_threshold_contact,
                        simulate_voter_perturbation)
from .graphical import (BREAKING_KIND, VOTER_KIND, BreakingPoint, GraphicalRep,
                        SelectedPath, breaking_flags, breaking_time_frequency,
                        breaking_time_probability, check_breaking_lemma,
                        check_one_sided_duality, detect_breaking_points,
                        drift_schedule, dual_set, dual_set_breaking, dump_rep,
                        forward_from_graphical, forward_states, load_rep_events,
                        path_containment_stats, sample_graphical, selected_path)
from .harness import (GoodSiteStats, OutcomeRecord, ReplicaSummary, SweepSpec,
                      classify_outcome, correlation_decay, good_site_frequency,
                      pair_correlation, phase_sweep, run_cell,
                      write_sweep_csv, write_trajectory_csv)
from ._rng import derive_seed

__version__ = "0.1.0"
