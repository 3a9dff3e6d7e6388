"""Generalized Thue-Morse turtle curves, Dekking curves and their limits.

Everything is exact over cyclotomic fields until the final embedding into
the plane, which carries a certified error bound.
"""

from .curves import (
    DekkingCurve,
    ScalingInfo,
    dekking_point,
    dekking_point_fast,
    scaling_info,
    segment_cap,
    thue_morse_curve,
)
from .cyclotomic import CycNumber, ModulusInterval, RootOfUnity, certified_sign, embed, embed_batch, root
from .hausdorff import (
    ApproxDistance,
    ConvergenceRow,
    convergence_report,
    hausdorff_distance,
    koch_reference,
    scaled_prefix_set,
    shared_limit_report,
)
from .similarity import (
    AbsoluteCurve,
    HypothesisError,
    MainResultCertificate,
    SimilarityWitness,
    absolute_to_dekking,
    certify_main_result,
    check_witness,
    compose_witnesses,
    dekking_reduce,
    invert_witness,
    tmc_to_absolute,
)
from .turtle import GroupElement, Interpreter, SegmentSet, TurtleCurve, curve_point, polyline
from .words import (
    SequenceSpec,
    UniformMorphism,
    Word,
    delta_morphism,
    fixed_point_prefix,
    lambda_morphism,
    mu_morphism,
    thue_morse_morphism,
)

__version__ = "0.1.0"
