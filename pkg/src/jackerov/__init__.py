"""Jack characters, anisotropic diagrams, Kerov polynomials, and the
Jack-Plancherel measure, over exact Q(t) arithmetic with t = sqrt(alpha)."""

from .field import (FieldElement, GammaPolynomial, InconsistentError, Poly,
                    RankDeficientError, GAMMA, ONE, T, ZERO, fe, solve_exact,
                    to_gamma)
from .partitions import (Partition, addable_rows, arm_leg, dominance_leq,
                         enumerate_partitions, removable_rows, with_box_added,
                         with_box_removed, z_mu)
from .symfunc import SymFun, hall_inner
from .diagrams import (GeneralizedDiagram, LimitShape, OMEGA, Profile,
                       anisotropic, content_power_sums, corners,
                       eval_difference_alphabet, omega_curve, profile, stretch,
                       sup_distance)
from .cumulants import (CumulantSequence, MomentSequence, TransitionMeasure,
                        add_box_update, anisotropic_MR, free_cumulants,
                        integrality_check, moments, transition_measure)
from .jack import (DegreeCapError, JackExpansion, ch, jack, jack_norm, theta)
from .kerov import (DegreeReport, KerovPolynomial, PolynomialityViolation,
                    TheoremViolation, compute_K, compute_L, gradation_degree,
                    positivity_report, top_term_check, verify_degree_bounds)
from .plancherel import (GrowthSample, JackHook, PlancherelDist,
                         exact_expectation, expectation_degree_check,
                         grow_sample, growth_consistency_check,
                         growth_step_masses, jack_hook, limit_shape_report,
                         plancherel_dist, sample_diagrams)

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
