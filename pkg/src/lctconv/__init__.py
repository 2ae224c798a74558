"""Linear canonical transform and canonical convolution operators."""

from .convolution import (
    Realization,
    convolve_deng,
    convolve_new,
    convolve_new_dual,
    convolve_shi,
    convolve_spectral,
)
from .core import (
    FOURIER,
    LctParams,
    SampledSignal,
    SampleGrid,
    Spectrum,
    invert_params,
    lct_forward,
    lct_inverse,
    lct_oracle,
    make_params,
    resample,
)
from .errors import *  # noqa: F401,F403
from .signals import GeneratorSpec, generate, read_signal, write_signal
from .solver import (
    EquationProblem,
    SolverDiagnostics,
    check_solvability,
    lambda_symbol,
    solve,
)
from .theorems import (
    VerifierReport,
    YoungExponents,
    norm_p,
    phi_factor,
    verify_convolution_theorem,
    verify_young,
    young_bound,
    young_constant,
)

__version__ = "0.1.0"
