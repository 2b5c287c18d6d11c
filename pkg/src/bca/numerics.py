"""Small dense complex linear algebra with explicit tolerance policies.

Every verdict in the package reduces to a handful of primitives collected
here: Hermitian definiteness classification, SVD null spaces, subspace
comparison, the spectral norm and Laurent-coefficient interpolation.  All
functions are pure and safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DimensionMismatch, NonHermitianInput, SingularSystem


class Definiteness(Enum):
    ZERO = "zero"
    PSD = "psd"
    NSD = "nsd"
    INDEFINITE = "indefinite"


@dataclass(frozen=True)
class TolerancePolicy:
    """Relative tolerances used by every decision in the package.

    ``definiteness_tol`` gates eigenvalue sign decisions, ``rank_tol``
    gates numerical-rank decisions, ``zero_tol`` gates coefficient zero
    tests.  All are relative to a scale derived from the data, so scaling
    a whole problem never changes a verdict.
    """

    definiteness_tol: float = 1e-9
    rank_tol: float = 1e-10
    zero_tol: float = 1e-10

    def __post_init__(self) -> None:
        for name in ("definiteness_tol", "rank_tol", "zero_tol"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1e-2:
                raise ValueError(f"{name} must lie in [0, 1e-2], got {value!r}")


DEFAULT_TOLERANCES = TolerancePolicy()


def as_complex_matrix(entries) -> np.ndarray:
    """Coerce ``entries`` to a 2-D complex128 array with finite entries."""
    mat = np.asarray(entries, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] < 1 or mat.shape[1] < 1:
        raise DimensionMismatch(f"expected a nonempty 2-D matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat.real)) or not np.all(np.isfinite(mat.imag)):
        raise ValueError("matrix entries must be finite")
    return mat


def hermitian_classify(
    matrix, tol: TolerancePolicy = DEFAULT_TOLERANCES
) -> Definiteness:
    """Classify a Hermitian matrix as ZERO, PSD, NSD or INDEFINITE.

    The verdict thresholds eigenvalues of the Hermitian part at
    ``tol.definiteness_tol * max(1, ||G||_F)``.  ZERO means every
    eigenvalue is below threshold in magnitude; callers that accept
    "<= 0" should treat both NSD and ZERO as a hit.

    Raises ``NonHermitianInput`` if the matrix departs from its adjoint
    by more than ``tol.zero_tol`` relative.
    """
    mat = as_complex_matrix(matrix)
    if mat.shape[0] != mat.shape[1]:
        raise DimensionMismatch(f"square matrix required, got {mat.shape}")
    scale = max(1.0, float(np.linalg.norm(mat)))
    if float(np.linalg.norm(mat - mat.conj().T)) > tol.zero_tol * scale:
        raise NonHermitianInput("matrix is not Hermitian within zero_tol")
    eigenvalues = np.linalg.eigvalsh((mat + mat.conj().T) / 2.0)
    tau = tol.definiteness_tol * scale
    if np.all(np.abs(eigenvalues) <= tau):
        return Definiteness.ZERO
    if np.all(eigenvalues >= -tau):
        return Definiteness.PSD
    if np.all(eigenvalues <= tau):
        return Definiteness.NSD
    return Definiteness.INDEFINITE


def nullspace_basis(matrix, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> np.ndarray:
    """Orthonormal basis (as columns) of ``{x : C x = 0}``.

    Numerical rank is the number of singular values exceeding
    ``tol.rank_tol * ||C||_F``; the basis has ``cols - rank`` columns.
    """
    mat = as_complex_matrix(matrix)
    _, sigma, vh = np.linalg.svd(mat)
    cutoff = tol.rank_tol * float(np.linalg.norm(mat))
    rank = int(np.sum(sigma > cutoff))
    return vh[rank:].conj().T


def numerical_rank(matrix, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> int:
    """Number of singular values above ``tol.rank_tol * ||C||_F``."""
    mat = as_complex_matrix(matrix)
    if mat.size == 0:
        return 0
    sigma = np.linalg.svd(mat, compute_uv=False)
    return int(np.sum(sigma > tol.rank_tol * float(np.linalg.norm(mat))))


def row_span_basis(matrix, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> np.ndarray:
    """Orthonormal basis (as columns) of the span of the rows of ``C``."""
    mat = as_complex_matrix(matrix)
    _, sigma, vh = np.linalg.svd(mat)
    cutoff = tol.rank_tol * float(np.linalg.norm(mat))
    rank = int(np.sum(sigma > cutoff))
    return vh[:rank].T.copy()


def subspace_distance(basis1, basis2) -> float:
    """Sine of the largest principal angle between two column spans.

    Both arguments must carry orthonormal columns and equal column
    counts.  Computed as ``||(I - B1 B1*) B2||_2``, which stays accurate
    for nearly identical spans (no cancellation near zero).
    """
    b1 = as_complex_matrix(basis1)
    b2 = as_complex_matrix(basis2)
    if b1.shape != b2.shape:
        raise DimensionMismatch(f"basis shapes differ: {b1.shape} vs {b2.shape}")
    residual = b2 - b1 @ (b1.conj().T @ b2)
    sine = float(np.linalg.norm(residual, 2))
    return min(1.0, sine)


def operator_norm(matrix) -> float:
    """Largest singular value (spectral norm)."""
    mat = as_complex_matrix(matrix)
    return float(np.linalg.svd(mat, compute_uv=False)[0])


def laurent_fit(support, sample_points, values) -> dict[int, complex]:
    """Recover Laurent coefficients from point evaluations.

    ``support`` lists integer exponents; the function solves the
    generalized Vandermonde system ``sum_e c_e s_i^e = f(s_i)`` and
    returns ``{exponent: coefficient}``.  The fit is an exact linear
    solve; a relative residual above 1e-10 (or a degenerate point set)
    raises ``SingularSystem``.
    """
    exponents = [int(e) for e in support]
    points = np.asarray(sample_points, dtype=np.complex128).ravel()
    vals = np.asarray(values, dtype=np.complex128).ravel()
    if len(exponents) != points.size or points.size != vals.size:
        raise DimensionMismatch(
            f"support/points/values lengths differ: "
            f"{len(exponents)}/{points.size}/{vals.size}"
        )
    if np.any(points == 0):
        raise SingularSystem("sample points must be nonzero")
    vander = np.array([[p**e for e in exponents] for p in points])
    try:
        coeffs = np.linalg.solve(vander, vals)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem("degenerate interpolation point set") from exc
    residual = float(np.linalg.norm(vander @ coeffs - vals))
    if residual > 1e-10 * max(1.0, float(np.linalg.norm(vals))):
        raise SingularSystem(f"interpolation residual too large: {residual:g}")
    return {e: complex(c) for e, c in zip(exponents, coeffs)}
