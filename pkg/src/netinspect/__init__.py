"""Equilibria and heuristic inspection strategies for zero-sum network inspection games."""

from .disjoint import (DisjointProfile, build_cycling_attack, build_cycling_inspection, compute_k_star,
                       corollary_regime_bound, disjoint_profile, game_value_disjoint, proposition1_attack,
                       verify_theorem1_conditions)
from .errors import DomainError, InspectionError, SizeCapError, SolverError, ValidationError
from .exact import (Certificate, EquilibriumResult, MatrixGame, enumerate_actions, solve_column_generation,
                    solve_exact, solve_matrix_game, verify_equilibrium)
from .game import (UNPLACED, AttackPlan, GameInstance, MixedStrategy, SensorPositioning, attack_probability,
                   detection_probability, payoff, pure_payoff, undetection_probability)
from .heuristic import HeuristicOutcome, optimality_gap, solve_heuristic, worst_case_evaluation
from .setcover import CoverResult, Partition, greedy_partition, min_set_cover

__version__ = "0.1.0"
