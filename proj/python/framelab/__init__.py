"""Finite-atom continuous frames with phase and norm retrieval certificates."""

from ._framelab import (
    CapExceeded,
    Frame,
    FramelabError,
    InvalidArgument,
    PreconditionError,
    Tolerances,
    alpha,
    analysis,
    apply_operator,
    bessel_check,
    biquadratic,
    break_nr,
    break_pr,
    certify_nr,
    certify_pr,
    complement_property,
    deficient_plus_tail,
    frame_bounds,
    frame_operator,
    harmonic,
    is_mu_complete,
    lipschitz_check,
    load_frame,
    magnitudes,
    mercedes,
    near_riesz,
    norm_retrieval_oracle,
    onb,
    parsevalize,
    quadrature_weights,
    random_frame,
    save_frame,
    stability_sweep,
    synthesis,
    tensor_nr_check,
    tensor_pr_check,
    tensor_product,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
