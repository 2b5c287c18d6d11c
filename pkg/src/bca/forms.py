"""Boundary sesquilinear form machinery and dissipativity verdicts.

For the model expression ``(-i)^m y^(m)`` on [0, 1] the imaginary part of
the quadratic form is carried entirely by boundary data:
``2 Im(L0 y, y) = yh M yh*`` where ``yh`` is the row vector of derivatives
0..m-1 at both endpoints and M is a block-diagonal Hermitian matrix built
from antidiagonal sign matrices.  Conditions are dissipative exactly when
this form is positive semidefinite on their solution subspace; the same
test can be run on the coefficient rows, where dissipativity shows up as
negative semidefiniteness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numerics
from .bc_core import BoundaryConditionSystem, validate
from .errors import EvenOrder, OddOrder
from .numerics import DEFAULT_TOLERANCES, Definiteness, TolerancePolicy


@dataclass(frozen=True)
class BoundaryFormMatrix:
    """The 2m x 2m Hermitian matrix of the boundary form, plus its blocks."""

    m: int
    matrix: np.ndarray
    block0: np.ndarray
    block1: np.ndarray


@dataclass(frozen=True)
class DissipativityVerdict:
    dissipative: bool
    selfadjoint: bool
    gram_eigenvalues: tuple[float, ...]


def build_J(m: int) -> np.ndarray:
    """Antidiagonal sign matrix for even order: top-right -1, alternating."""
    if m % 2 != 0:
        raise OddOrder(f"even order required, got {m}")
    mat = np.zeros((m, m), dtype=np.complex128)
    for p in range(m):
        mat[p, m - 1 - p] = (-1) ** (p + 1)
    return mat


def build_K(m: int) -> np.ndarray:
    """Antidiagonal sign matrix for odd order: top-right +1, alternating."""
    if m % 2 == 0:
        raise EvenOrder(f"odd order required, got {m}")
    mat = np.zeros((m, m), dtype=np.complex128)
    for p in range(m):
        mat[p, m - 1 - p] = (-1) ** p
    return mat


def build_M(m: int) -> BoundaryFormMatrix:
    """Boundary form matrix with ``2 Im(L0 y, y) = yh M yh*``.

    Even m = 2n: blocks ``i(-1)^n J`` and ``-i(-1)^n J``; odd m = 2n-1:
    blocks ``(-1)^(n+1) K`` and ``(-1)^n K``.  Entries are exact Gaussian
    integers (0, +-1, +-i), so the matrix converts losslessly to exact
    arithmetic.  The spectrum is {+1, -1}, each with multiplicity m.
    """
    if m < 1:
        raise ValueError(f"order must be >= 1, got {m}")
    if m % 2 == 0:
        n = m // 2
        j_mat = build_J(m)
        block0 = 1j * (-1) ** n * j_mat
        block1 = -1j * (-1) ** n * j_mat
    else:
        n = (m + 1) // 2
        k_mat = build_K(m)
        block0 = (-1) ** (n + 1) * k_mat
        block1 = (-1) ** n * k_mat
    matrix = np.zeros((2 * m, 2 * m), dtype=np.complex128)
    matrix[:m, :m] = block0
    matrix[m:, m:] = block1
    matrix.setflags(write=False)
    return BoundaryFormMatrix(m=m, matrix=matrix, block0=block0, block1=block1)


def gram_on_nullspace(
    system: BoundaryConditionSystem, tol: TolerancePolicy = DEFAULT_TOLERANCES
) -> np.ndarray:
    """Gram matrix of the boundary form on the solution subspace.

    With N the orthonormal null-space basis of ``[A | B]`` (columns are
    boundary vectors transposed), the form value of a row vector yh is
    ``yh M yh*``, so the Gram matrix is ``N^t M conj(N)`` -- an m x m
    Hermitian matrix.
    """
    validate(system, tol)
    basis = numerics.nullspace_basis(system.coeffs, tol)
    form = build_M(system.m).matrix
    gram = basis.T @ form @ np.conj(basis)
    return (gram + gram.conj().T) / 2.0


def dissipativity_verdict(
    system: BoundaryConditionSystem, tol: TolerancePolicy = DEFAULT_TOLERANCES
) -> DissipativityVerdict:
    """Dissipative iff the null-space Gram is PSD (ZERO counts; Im >= 0 is
    non-strict); self-adjoint iff the form vanishes identically there."""
    gram = gram_on_nullspace(system, tol)
    classification = numerics.hermitian_classify(gram, tol)
    eigenvalues = tuple(float(v) for v in np.linalg.eigvalsh(gram))
    return DissipativityVerdict(
        dissipative=classification in (Definiteness.PSD, Definiteness.ZERO),
        selfadjoint=classification is Definiteness.ZERO,
        gram_eigenvalues=eigenvalues,
    )


def dual_gram(system: BoundaryConditionSystem) -> np.ndarray:
    """Gram matrix of the boundary form on the conjugated coefficient rows.

    ``G_L = conj(A) M0 A^t + conj(B) M1 B^t``.  Dissipativity of the
    system is equivalent to ``G_L <= 0``; this is the coefficient-side
    dual of :func:`gram_on_nullspace` and is kept consistent with it by
    property tests.
    """
    form = build_M(system.m)
    a, b = system.a, system.b
    gram = np.conj(a) @ form.block0 @ a.T + np.conj(b) @ form.block1 @ b.T
    return (gram + gram.conj().T) / 2.0


def selfadjoint_verdict(
    system: BoundaryConditionSystem, tol: TolerancePolicy = DEFAULT_TOLERANCES
) -> bool:
    """True iff the boundary form vanishes identically on the solution space."""
    gram = gram_on_nullspace(system, tol)
    return numerics.hermitian_classify(gram, tol) is Definiteness.ZERO
