"""Recovery of sparse non-harmonic cosine/cosh sums from Fourier coefficients.

The package reconstructs every parameter of a signal

    f(t) = c0 + sum_j gamma_j cos(2 pi a_j t + b_j) [+ cosh terms]

from finitely many of its classical Fourier coefficients on an interval
(0, P), by rational approximation of the modified coefficients followed by
partial-fraction extraction and inverse parameter maps.
"""

from . import errors
from .aaa import (
    AaaDiagnostics,
    BarycentricRational,
    evaluate_barycentric,
    initialize,
    iterate,
    prune_vanishing_weights,
    refit_weights,
    run_aaa,
)
from .estimator import FourierSumRecovery, validate_coefficient_arrays
from .fourier import (
    AbcTriple,
    FourierData,
    ModifiedCoefficients,
    coefficient_closed_form,
    coefficient_quadrature,
    coefficients,
    forward_abc,
    modify,
    read_coefficients_csv,
    unmodify,
    write_coefficients_csv,
)
from .model import (
    CosineTerm,
    Kind,
    SignalModel,
    canonicalize,
    evaluate,
    load_model,
    model_from_dict,
    model_to_dict,
    save_model,
)
from .partial_fractions import (
    PartialFraction,
    finite_eigenvalues,
    kernel_oracle,
    poles,
    remove_froissart,
    require_real_poles,
    residues,
)
from .recovery import (
    ReconstructionReport,
    extract_constant,
    extract_periodic,
    invert_parameters,
    reconstruct,
)

__version__ = "0.1.0"

__all__ = [
    "AaaDiagnostics",
    "AbcTriple",
    "BarycentricRational",
    "CosineTerm",
    "FourierData",
    "FourierSumRecovery",
    "Kind",
    "ModifiedCoefficients",
    "PartialFraction",
    "ReconstructionReport",
    "SignalModel",
    "canonicalize",
    "coefficient_closed_form",
    "coefficient_quadrature",
    "coefficients",
    "errors",
    "evaluate",
    "evaluate_barycentric",
    "extract_constant",
    "extract_periodic",
    "finite_eigenvalues",
    "forward_abc",
    "initialize",
    "invert_parameters",
    "iterate",
    "kernel_oracle",
    "load_model",
    "model_from_dict",
    "model_to_dict",
    "modify",
    "poles",
    "prune_vanishing_weights",
    "read_coefficients_csv",
    "reconstruct",
    "refit_weights",
    "remove_froissart",
    "require_real_poles",
    "residues",
    "run_aaa",
    "save_model",
    "unmodify",
    "validate_coefficient_arrays",
    "write_coefficients_csv",
]
