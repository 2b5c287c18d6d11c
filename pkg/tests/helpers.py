"""Shared system generators for the test suite."""

import numpy as np

from bca import BoundaryConditionSystem, from_contraction
from bca.cli import generate_odd_irregular
from bca.contraction import ContractionParametrization


def dirichlet_m2() -> BoundaryConditionSystem:
    return BoundaryConditionSystem(2, [[1, 0, 0, 0], [0, 0, 1, 0]])


def neumann_m2() -> BoundaryConditionSystem:
    return BoundaryConditionSystem(2, [[0, 1, 0, 0], [0, 0, 0, 1]])


def periodic_m2() -> BoundaryConditionSystem:
    return BoundaryConditionSystem(2, [[1, 0, -1, 0], [0, 1, 0, -1]])


def transport(a: complex, b: complex) -> BoundaryConditionSystem:
    return BoundaryConditionSystem(1, [[a, b]])


def odd_irregular(n: int) -> BoundaryConditionSystem:
    return generate_odd_irregular(n)


def quasi_periodic(m: int, phases) -> BoundaryConditionSystem:
    """Rows -c_k y^(k)(0) + y^(k)(1) = 0; self-adjoint when c_k = c_{m-1-k}
    and |c_k| = 1."""
    coeffs = np.zeros((m, 2 * m), dtype=complex)
    for k, c in enumerate(phases):
        coeffs[k, k] = -c
        coeffs[k, m + k] = 1.0
    return BoundaryConditionSystem(m, coeffs)


def random_system(rng: np.random.Generator, m: int) -> BoundaryConditionSystem:
    coeffs = rng.normal(size=(m, 2 * m)) + 1j * rng.normal(size=(m, 2 * m))
    return BoundaryConditionSystem(m, coeffs)


def random_contraction(rng: np.random.Generator, m: int) -> ContractionParametrization:
    raw = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    return ContractionParametrization(m, raw / max(1.0, np.linalg.norm(raw, 2)))


def random_dissipative(rng: np.random.Generator, m: int) -> BoundaryConditionSystem:
    return from_contraction(random_contraction(rng, m))


def random_recombination(rng: np.random.Generator, m: int) -> np.ndarray:
    """Well-conditioned invertible m x m matrix (condition number < 1e3)."""
    while True:
        r = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
        if m == 1 or np.linalg.cond(r) < 1e3:
            if m == 1 and abs(r[0, 0]) < 1e-3:
                continue
            return r


def recombined(system: BoundaryConditionSystem, r: np.ndarray) -> BoundaryConditionSystem:
    return BoundaryConditionSystem(system.m, r @ system.coeffs)
