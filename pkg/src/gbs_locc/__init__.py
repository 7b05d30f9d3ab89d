"""Perfect LOCC discrimination of any three generalized Bell states in d x d, d >= 4."""

from .locc_sim import (
    LocalUnitary,
    Measurement,
    Protocol,
    VerificationReport,
    simulate_branches,
    verify_perfect_discrimination,
)
from .states import apply_local, build_h, build_x, build_z, gbs_state, ricochet
from .synthesizer import (
    Certificate,
    ReductionStep,
    Triple,
    exceptional1_protocol,
    exceptional2_protocol,
    lemma2_protocol,
    order_for_reduction,
    reduce_to_canonical,
    synthesize,
)
from .weyl import GbsIndex, Residue, WeylOp, adjoint, compose, conjugate_by_h, h_alpha_valid, s_sum

__version__ = "0.1.0"
