"""Capacity regions of discrete degraded interference channels."""
from .capacity import (ConditionError, ConstraintError, Envelope, FTrace, OuterBoundProblem,
                       RegionBoundary, SymmetryViolation, binary_F_oracle, capacity_region, eta,
                       lower_convex_envelope, outer_bound_T, tau, trace_F)
from .conditions import (ConditionReport, check_all, check_condition1, check_condition2,
                         check_condition3, check_condition4, check_condition5)
from .degradation import (DegradednessResult, InfeasibleError, find_degrading_channel,
                          physically_degrade)
from .fixtures import (DadicParams, make_counterexample, make_dadic, make_erasure_example,
                       make_example3)
from .mcsim import SimConfig, SimResult, simulate_point
from .prob import (Ddic, DdicError, apply_channel, as_channel, as_prob, compose,
                   cond_entropy_of_column, entropy)
from .symmetry import (PermGroup, input_symmetry_group, is_transitive,
                       uniform_maximizes_output_entropy, verify_group)

__version__ = "0.1.0"
