"""Acceptance suite: one test per criterion, one printed verdict line each."""

import io
import json
import time
from contextlib import redirect_stdout
from fractions import Fraction

import numpy as np
import pytest

import helpers
from bca import (
    Definiteness,
    TolerancePolicy,
    contraction_roundtrip_defect,
    dissipativity_verdict,
    dual_gram,
    from_contraction,
    gram_on_nullspace,
    hermitian_classify,
    normalize,
    operator_norm,
    orders_multiset,
    rank_profile_orders,
    regularity_verdict,
    sample_dissipativity,
    selfadjoint_verdict,
    structural_report,
    subspace_distance,
    to_contraction,
    truncate_leading,
    verify_boundary_form_identity,
    verify_canonical_identity,
)
from bca.cli import main as cli_main
from bca.errors import NotDissipative
from bca.numerics import row_span_basis
from bca.polyoracle import (
    BoundaryVector,
    RationalComplex,
    hermite_interpolant,
    l0_inner_product,
    random_rational_complex,
    rational_nullspace,
)


def report_line(number, passed, detail):
    line = f"ACCEPTANCE {number:02d} {'PASS' if passed else 'FAIL'}: {detail}"
    print(line)
    assert passed, line


def test_criterion_01_boundary_form_identity_exact():
    start = time.monotonic()
    worst = Fraction(0)
    for m in range(1, 7):
        rep = verify_boundary_form_identity(m, sample_count=50, seed=1001)
        worst = max(worst, rep.max_defect)
        assert rep.passed, f"m={m}: defect {rep.max_defect}"
    elapsed = time.monotonic() - start
    report_line(
        1,
        worst == 0 and elapsed < 30.0,
        f"boundary-form identity exact for m=1..6, 50 samples each "
        f"(max defect {worst}, {elapsed:.1f}s)",
    )


def test_criterion_02_canonical_identity_exact():
    start = time.monotonic()
    worst = Fraction(0)
    for m in range(1, 7):
        rep = verify_canonical_identity(m, sample_count=50, seed=1002)
        worst = max(worst, rep.max_defect)
        assert rep.passed, f"m={m}: defect {rep.max_defect}"
    elapsed = time.monotonic() - start
    report_line(
        2,
        worst == 0 and elapsed < 30.0,
        f"canonical-coordinate identity exact for m=1..6, 50 samples each "
        f"(max defect {worst}, {elapsed:.1f}s)",
    )


def test_criterion_03_odd_irregular_family():
    for n in (2, 3, 4):
        system = helpers.odd_irregular(n)
        m = system.m
        verdict = dissipativity_verdict(system)
        assert verdict.dissipative, f"n={n}: expected dissipative"

        # exact form value |y^(n-1)(0)|^2 / 2 on sampled admissible functions
        exact_rows = [
            [RationalComplex.from_complex(z) for z in row] for row in system.coeffs
        ]
        basis = rational_nullspace(exact_rows)
        assert len(basis) == m
        for index in range(10):
            combo = [
                random_rational_complex(7_000 + n, f"adm{index}", j)
                for j in range(m)
            ]
            components = [RationalComplex(0)] * (2 * m)
            for weight, vec in zip(combo, basis):
                for col, value in enumerate(vec):
                    components[col] = components[col] + weight * value
            vector = BoundaryVector(m=m, components=tuple(components))
            value = l0_inner_product(hermite_interpolant(m, vector), m).im
            assert value == vector.components[n - 1].abs_squared() / 2, (
                f"n={n} sample {index}: form value mismatch"
            )

        report = regularity_verdict(normalize(system))
        assert abs(report.theta_0) <= 1e-10 * report.scale, f"n={n}: theta_0 not zero"
        assert report.regular is False, f"n={n}: expected irregular"
    report_line(
        3,
        True,
        "odd irregular family n=2..4: dissipative, exact |y^(n-1)(0)|^2/2 form, "
        "theta_0 = 0, not regular",
    )


def test_criterion_04_nullspace_coefficient_duality():
    tol = TolerancePolicy(definiteness_tol=1e-8)
    rng = np.random.default_rng(104)
    agreements = 0
    total = 0
    for m in (1, 2, 3, 4):
        for trial in range(100):
            if trial % 2 == 0:
                system = helpers.random_system(rng, m)
            else:
                system = helpers.random_dissipative(rng, m)
            side_n = hermitian_classify(gram_on_nullspace(system, tol), tol)
            side_l = hermitian_classify(dual_gram(system), tol)
            psd_n = side_n in (Definiteness.PSD, Definiteness.ZERO)
            nsd_l = side_l in (Definiteness.NSD, Definiteness.ZERO)
            total += 1
            agreements += psd_n == nsd_l
    report_line(
        4,
        agreements == total,
        f"null-space vs coefficient-side dissipativity verdicts agree "
        f"{agreements}/{total} (m=1..4)",
    )


def test_criterion_05_contraction_equivalence():
    rng = np.random.default_rng(105)
    roundtrip_worst = 0.0
    for m in (1, 2, 3, 4):
        for _ in range(100):
            con = helpers.random_contraction(rng, m)
            system = from_contraction(con)
            assert dissipativity_verdict(system).dissipative, (
                f"m={m}: image of a contraction must be dissipative"
            )
            recovered = to_contraction(system)
            assert operator_norm(recovered.V) <= 1 + 1e-9
            roundtrip_worst = max(roundtrip_worst, contraction_roundtrip_defect(system))
        for _ in range(40):
            system = helpers.random_system(rng, m)
            verdict = dissipativity_verdict(system)
            if verdict.dissipative:
                assert operator_norm(to_contraction(system).V) <= 1 + 1e-9
            else:
                with pytest.raises(NotDissipative):
                    to_contraction(system)
    report_line(
        5,
        roundtrip_worst <= 1e-9,
        f"contraction equivalence: 100/100 dissipative images per m=1..4, "
        f"norms <= 1+1e-9, worst round-trip defect {roundtrip_worst:.2e}",
    )


def test_criterion_06_even_dissipative_regular():
    rng = np.random.default_rng(106)
    tol = TolerancePolicy(zero_tol=1e-8)
    checked = 0
    for m in (2, 4):
        for _ in range(100):
            system = helpers.random_dissipative(rng, m)
            report = regularity_verdict(normalize(system), tol)
            assert report.regular, f"m={m}: dissipative system reported irregular"
            assert report.regular_strict, (
                f"m={m}: strict reading failed "
                f"(theta_-1={report.theta_minus1}, theta_1={report.theta_1})"
            )
            checked += 1
    report_line(
        6,
        checked == 200,
        f"{checked}/200 random even-order dissipative systems regular "
        "under both readings (threshold 1e-8 * scale)",
    )


def _normalization_test_systems(rng):
    systems = [
        helpers.transport(1, 1),
        helpers.transport(0, 1),
        helpers.dirichlet_m2(),
        helpers.neumann_m2(),
        helpers.periodic_m2(),
        helpers.odd_irregular(2),
        helpers.odd_irregular(3),
        helpers.random_dissipative(rng, 2),
        helpers.random_dissipative(rng, 4),
    ]
    for m in range(1, 7):
        systems.append(helpers.random_system(rng, m))
        systems.append(helpers.random_system(rng, m))
    return systems


def test_criterion_07_normalization_invariants():
    rng = np.random.default_rng(107)
    span_worst = 0.0
    for system in _normalization_test_systems(rng):
        reference = orders_multiset(system)
        assert reference == rank_profile_orders(system), "rank-profile oracle disagrees"
        for _ in range(20):
            r = helpers.random_recombination(rng, system.m)
            mixed = helpers.recombined(system, r)
            assert orders_multiset(mixed) == reference, "orders changed under recombination"
            assert rank_profile_orders(mixed) == reference
        once = normalize(system)
        twice = normalize(once.base)
        assert once.orders == twice.orders, "normalize not idempotent"
        span_worst = max(
            span_worst,
            subspace_distance(
                row_span_basis(system.coeffs), row_span_basis(once.base.coeffs)
            ),
            subspace_distance(
                row_span_basis(once.base.coeffs), row_span_basis(twice.base.coeffs)
            ),
        )
    report_line(
        7,
        span_worst <= 1e-9,
        f"orders invariant under 20 recombinations/system and equal to the "
        f"rank-profile oracle; idempotent; worst row-span drift {span_worst:.2e}",
    )


def test_criterion_08_even_order_structure():
    rng = np.random.default_rng(108)
    pair_checks = 0
    for m in (2, 4):
        n = m // 2
        systems = [helpers.random_dissipative(rng, m) for _ in range(100)]
        # unimodular paired-phase systems exercise the single-row pairing leg
        for _ in range(15):
            phases = np.exp(2j * np.pi * rng.random(n))
            phases = np.concatenate([phases, phases[::-1]])
            systems.append(helpers.quasi_periodic(m, phases))
        for system in systems:
            assert dissipativity_verdict(system).dissipative
            norm = normalize(system)
            report = structural_report(norm)
            assert all(s == 2 for s in report.rank_sums), (
                f"m={m}: rank sums {report.rank_sums}"
            )
            for defect in report.pairing_defects:
                pair_scale = max(
                    abs(a) * abs(b) for a, _ in norm.leading for b, _ in norm.leading
                )
                assert defect <= 1e-9 * max(1.0, 4 * pair_scale), (
                    f"m={m}: pairing defect {defect}"
                )
                pair_checks += 1
            truncated = truncate_leading(norm)
            assert selfadjoint_verdict(truncated), (
                f"m={m}: truncation is not self-adjoint"
            )
    report_line(
        8,
        pair_checks > 0,
        f"even-order structure: rank sums all 2, {pair_checks} pairing defects "
        "within 1e-9 * scale, 230/230 truncations self-adjoint",
    )


def test_criterion_09_classic_systems():
    for name, system in (("dirichlet", helpers.dirichlet_m2()), ("neumann", helpers.neumann_m2())):
        verdict = dissipativity_verdict(system)
        assert verdict.dissipative and verdict.selfadjoint, name
        report = regularity_verdict(normalize(system))
        assert report.regular and report.regular_strict, name
        assert abs(report.theta_minus1 - 1.0) <= 1e-10, name
        assert abs(report.theta_0) <= 1e-10, name
        assert abs(report.theta_1 + 1.0) <= 1e-10, name

    grid = [round(-1.0 + 0.1 * k, 10) for k in range(21)]
    agreements = 0
    total = 0
    for a in grid:
        for b in grid:
            if a == 0.0 and b == 0.0:
                continue  # the zero row is not a boundary condition
            system = helpers.transport(a, b)
            verdict = dissipativity_verdict(system).dissipative
            expected = abs(b) >= abs(a)
            oracle = sample_dissipativity(system, sample_count=8, seed=9).all_nonnegative
            total += 1
            agreements += verdict == expected == oracle
    report_line(
        9,
        agreements == total,
        f"classics: both m=2 systems self-adjoint+regular with thetas (1,0,-1); "
        f"transport grid verdicts agree {agreements}/{total}",
    )


def test_criterion_10_cli_determinism(tmp_path):
    def run(argv):
        out = io.StringIO()
        with redirect_stdout(out):
            code = cli_main(argv)
        assert code == 0
        return out.getvalue()

    dirichlet = {
        "m": 2,
        "conditions": [
            {"a": [[1, 0], [0, 0]], "b": [[0, 0], [0, 0]]},
            {"a": [[0, 0], [0, 0]], "b": [[1, 0], [0, 0]]},
        ],
    }
    golden1 = tmp_path / "dirichlet.json"
    golden1.write_text(json.dumps(dirichlet))
    golden2 = tmp_path / "odd.json"
    golden2.write_text(run(["example", "--name", "odd-irregular", "--n", "3"]))

    identical = True
    for path in (golden1, golden2):
        for fmt in ("json", "text"):
            first = run(["check", str(path), "--format", fmt])
            second = run(["check", str(path), "--format", fmt])
            identical = identical and first == second
    report_line(10, identical, "check reports byte-identical across repeated runs")
