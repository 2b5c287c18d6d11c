"""Boundary condition systems: representation, normalization, order bookkeeping.

A system of order ``m`` is an ``m x 2m`` complex matrix ``C = [A | B]``;
row ``j`` encodes the linear form
``U_j(y) = sum_k a_jk y^(k)(0) + b_jk y^(k)(1)``.  Normalization rewrites
the rows (preserving their span) so that the sum of row orders is minimal:
at most two rows share an order and rows sharing an order have linearly
independent leading coefficient pairs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import numerics
from .errors import BadShape, DependentRows, OddOrderUnsupported, ZeroRow
from .numerics import DEFAULT_TOLERANCES, TolerancePolicy


@dataclass(frozen=True)
class BoundaryConditionSystem:
    """Order ``m`` plus the ``m x 2m`` coefficient matrix ``[A | B]``."""

    m: int
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        if self.m < 1:
            raise BadShape(f"order must be >= 1, got {self.m}")
        coeffs = np.array(self.coeffs, dtype=np.complex128)
        if coeffs.shape != (self.m, 2 * self.m):
            raise BadShape(
                f"expected coefficient shape {(self.m, 2 * self.m)}, got {coeffs.shape}"
            )
        if not np.all(np.isfinite(coeffs.real)) or not np.all(np.isfinite(coeffs.imag)):
            raise BadShape("coefficients must be finite")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def a(self) -> np.ndarray:
        """Endpoint-0 coefficient block."""
        return self.coeffs[:, : self.m]

    @property
    def b(self) -> np.ndarray:
        """Endpoint-1 coefficient block."""
        return self.coeffs[:, self.m :]


@dataclass(frozen=True)
class NormalizedSystem:
    """A system in minimal form with per-row orders and leading pairs.

    ``orders`` is nonincreasing, bounded by the order-gap rule
    ``orders[j] > orders[j+2]``, and ``leading[j]`` holds the coefficient
    pair of ``y^(k_j)`` at the two endpoints.
    """

    base: BoundaryConditionSystem
    orders: tuple[int, ...]
    leading: tuple[tuple[complex, complex], ...]


@dataclass(frozen=True)
class StructuralReport:
    """Diagnostics for even order: order-count sums and leading-pair defects."""

    rank_sums: tuple[int, ...]
    pairing_defects: tuple[float, ...]


def validate(
    system: BoundaryConditionSystem, tol: TolerancePolicy = DEFAULT_TOLERANCES
) -> None:
    """Check that the rows are linearly independent (numerical rank m)."""
    rank = numerics.numerical_rank(system.coeffs, tol)
    if rank < system.m:
        raise DependentRows(f"rows have numerical rank {rank} < {system.m}")


def row_order(row, zero_tol: float = DEFAULT_TOLERANCES.zero_tol) -> int:
    """Largest derivative index k whose coefficient pair is nonzero.

    The zero test is relative to the row's own largest entry, so row
    scaling never changes the order.
    """
    vec = np.asarray(row, dtype=np.complex128).ravel()
    if vec.size % 2 != 0 or vec.size == 0:
        raise BadShape(f"row length must be even and positive, got {vec.size}")
    m = vec.size // 2
    top = float(np.abs(vec).max())
    if top == 0.0:
        raise ZeroRow("all coefficients vanish")
    for k in range(m - 1, -1, -1):
        if max(abs(vec[k]), abs(vec[m + k])) > zero_tol * top:
            return k
    raise ZeroRow("all coefficients below zero tolerance")


def _leading_pairs(rows: list[np.ndarray], m: int, indices: list[int], k: int) -> np.ndarray:
    return np.array([[rows[i][k], rows[i][m + k]] for i in indices])


def normalize(
    system: BoundaryConditionSystem,
    tol: TolerancePolicy = DEFAULT_TOLERANCES,
    canonical: bool = False,
) -> NormalizedSystem:
    """Rewrite the system in minimal form, preserving its row span.

    Rows are grouped by order; whenever the leading pairs inside an order
    class are rank deficient, dependent rows are replaced by combinations
    annihilating their leading pair (strictly lowering their order) and the
    grouping is recomputed.  The loop terminates because the order sum
    strictly decreases; a cap of ``m*m`` passes guards against float
    cycling.  With ``canonical=True`` two-row classes are additionally
    rotated so their leading pairs become (0, 1) and (1, 0).
    """
    validate(system, tol)
    m = system.m
    rows = [r / float(np.abs(r).max()) for r in np.array(system.coeffs)]

    for _ in range(m * m + 1):
        try:
            orders = [row_order(r, tol.zero_tol) for r in rows]
        except ZeroRow as exc:
            raise DependentRows("a row vanished during normalization") from exc
        classes: dict[int, list[int]] = {}
        for i, k in enumerate(orders):
            classes.setdefault(k, []).append(i)

        deficient = None
        for k in sorted(classes, reverse=True):
            indices = classes[k]
            pairs = _leading_pairs(rows, m, indices, k)
            rank = numerics.numerical_rank(pairs, tol)
            if rank < len(indices):
                deficient = (k, indices, pairs, rank)
                break
        if deficient is None:
            break

        k, indices, pairs, rank = deficient
        magnitudes = np.abs(pairs).max(axis=1)
        by_size = sorted(range(len(indices)), key=lambda t: -magnitudes[t])
        if rank == 0:
            # every leading pair is below tolerance: flush and re-derive orders
            for i in indices:
                rows[i][k] = 0.0
                rows[i][m + k] = 0.0
            continue
        pivots = [by_size[0]]
        if rank == 2:
            anchor = pairs[by_size[0]]
            denom = float((anchor @ anchor.conj()).real)
            best, best_residual = None, -1.0
            for t in by_size[1:]:
                coeff = (pairs[t] @ anchor.conj()) / denom
                residual = float(np.linalg.norm(pairs[t] - coeff * anchor))
                if residual > best_residual:
                    best, best_residual = t, residual
            pivots.append(best)
        pivot_matrix = pairs[pivots]
        for t in by_size:
            if t in pivots:
                continue
            combo, *_ = np.linalg.lstsq(pivot_matrix.T, pairs[t], rcond=None)
            i = indices[t]
            replacement = rows[i].copy()
            for weight, p in zip(combo, pivots):
                replacement = replacement - weight * rows[indices[p]]
            replacement[k] = 0.0
            replacement[m + k] = 0.0
            top = float(np.abs(replacement).max())
            if top <= 1e-13:
                raise DependentRows("row annihilated during normalization")
            rows[i] = replacement / top
    else:
        raise DependentRows("normalization failed to stabilize")

    orders = [row_order(r, tol.zero_tol) for r in rows]
    by_order = sorted(range(m), key=lambda i: (-orders[i], i))
    rows = [rows[i] for i in by_order]
    orders = [orders[i] for i in by_order]

    if canonical:
        position = 0
        while position < m:
            k = orders[position]
            if position + 1 < m and orders[position + 1] == k:
                pair_matrix = _leading_pairs(rows, m, [position, position + 1], k)
                rotation = np.array([[0.0, 1.0], [1.0, 0.0]]) @ np.linalg.inv(pair_matrix)
                stacked = rotation @ np.vstack([rows[position], rows[position + 1]])
                rows[position] = stacked[0]
                rows[position + 1] = stacked[1]
                position += 2
            else:
                position += 1

    base = BoundaryConditionSystem(m, np.array(rows))
    leading = tuple(
        (complex(rows[j][orders[j]]), complex(rows[j][m + orders[j]])) for j in range(m)
    )
    return NormalizedSystem(base=base, orders=tuple(orders), leading=leading)


def orders_multiset(
    system: BoundaryConditionSystem, tol: TolerancePolicy = DEFAULT_TOLERANCES
) -> tuple[int, ...]:
    """Multiset of row orders of the normalized system, sorted descending."""
    return normalize(system, tol).orders


def rank_profile_orders(
    system: BoundaryConditionSystem, tol: TolerancePolicy = DEFAULT_TOLERANCES
) -> tuple[int, ...]:
    """Order multiset derived from column-rank profiles, without normalizing.

    ``#{j : k_j > t}`` equals the rank of the submatrix formed by the
    columns of derivative index > t at both endpoints; differencing the
    profile yields the multiset.  Serves as an independent cross-check of
    :func:`orders_multiset`.
    """
    validate(system, tol)
    m = system.m
    coeffs = system.coeffs
    count_above = [m]  # number of rows with order > t for t = -1..m-1
    for t in range(m):
        cols = list(range(t + 1, m)) + list(range(m + t + 1, 2 * m))
        if not cols:
            count_above.append(0)
            continue
        count_above.append(numerics.numerical_rank(coeffs[:, cols], tol))
    orders: list[int] = []
    for t in range(m):
        orders.extend([t] * (count_above[t] - count_above[t + 1]))
    return tuple(sorted(orders, reverse=True))


def truncate_leading(normalized: NormalizedSystem) -> BoundaryConditionSystem:
    """Keep only each row's order-k coefficient pair, zeroing lower terms."""
    m = normalized.base.m
    coeffs = np.zeros((m, 2 * m), dtype=np.complex128)
    for j, (k, (alpha, beta)) in enumerate(zip(normalized.orders, normalized.leading)):
        coeffs[j, k] = alpha
        coeffs[j, m + k] = beta
    return BoundaryConditionSystem(m, coeffs)


def structural_report(normalized: NormalizedSystem) -> StructuralReport:
    """Even-order structure diagnostics; no verdict is attached.

    ``rank_sums[j]`` counts rows of order ``j`` plus rows of order
    ``m-1-j``.  Where a single row sits at order ``k`` and a single row
    at the partner order ``m-1-k``, the defect
    ``|alpha_j conj(alpha_j') - beta_j conj(beta_j')|`` is reported.
    """
    m = normalized.base.m
    if m % 2 != 0:
        raise OddOrderUnsupported("rank-sum diagnostics require even order")
    n = m // 2
    counts = Counter(normalized.orders)
    rank_sums = tuple(counts[j] + counts[m - 1 - j] for j in range(n))
    defects: list[float] = []
    for j, k in enumerate(normalized.orders):
        partner_order = m - 1 - k
        if k <= partner_order:
            continue
        if counts[k] == 1 and counts[partner_order] == 1:
            j_partner = normalized.orders.index(partner_order)
            alpha, beta = normalized.leading[j]
            alpha_p, beta_p = normalized.leading[j_partner]
            defects.append(
                float(abs(alpha * np.conj(alpha_p) - beta * np.conj(beta_p)))
            )
    return StructuralReport(rank_sums=rank_sums, pairing_defects=tuple(defects))
