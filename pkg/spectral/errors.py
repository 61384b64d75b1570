"""Exception hierarchy shared by every module.

Each error carries a short machine-parsable ``code`` used by the CLI.
"""


class EntropyPerturbationError(ValueError):
    """Base class for domain errors."""

    code = "domain_error"


class InvalidArgument(EntropyPerturbationError):
    code = "invalid_argument"


class NotHermitian(EntropyPerturbationError):
    code = "not_hermitian"


class TraceOutOfRange(EntropyPerturbationError):
    code = "trace_out_of_range"


class NotTraceless(EntropyPerturbationError):
    code = "not_traceless"


class NegativeEigenvalue(EntropyPerturbationError):
    code = "negative_eigenvalue"


class DimensionMismatch(EntropyPerturbationError):
    code = "dimension_mismatch"


class EigensolverFailure(EntropyPerturbationError):
    code = "eigensolver_failure"


class DegenerateSpectrum(EntropyPerturbationError):
    code = "degenerate_spectrum"


class NullSpaceCoupling(EntropyPerturbationError):
    code = "null_space_coupling"


class DiagonalNotZero(EntropyPerturbationError):
    code = "diagonal_not_zero"


class QuadratureNoConvergence(EntropyPerturbationError):
    code = "quadrature_no_convergence"


class RebaseNotPositive(EntropyPerturbationError):
    code = "rebase_not_positive"


class TruncationTooCoarse(EntropyPerturbationError):
    code = "truncation_too_coarse"


class StencilLeavesPSDCone(EntropyPerturbationError):
    code = "stencil_leaves_psd_cone"


class ConsistencyCheckFailed(EntropyPerturbationError):
    code = "consistency_check_failed"


class MalformedInput(EntropyPerturbationError):
    """Input that could not be parsed; reported like a file that fails to load."""

    code = "parse_error"
