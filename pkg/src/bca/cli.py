"""Command-line front end.

Reads boundary-condition files (JSON), runs verdicts and exact-oracle
verifications, and emits deterministic reports: fixed key order, floats
serialized with 17 significant digits, exact rationals as strings.
Running the same command on the same input twice produces byte-identical
output.

Exit codes: 0 = ran and the verdict is in the report, 2 = invalid input,
3 = internal numerical failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__, bc_core, contraction, forms, polyoracle, regularity
from .bc_core import BoundaryConditionSystem
from .errors import InvalidInput, NumericalFailure
from .numerics import TolerancePolicy

_TOOL = {"name": "bca", "version": __version__}


class FileFormatError(InvalidInput):
    """Input file does not match the documented schema; names the field."""


# ---------------------------------------------------------------------------
# deterministic serialization


def _format_float(value: float) -> str:
    return format(float(value), ".17g")


def dumps_deterministic(obj, indent: int = 0) -> str:
    """JSON text with insertion-order keys and fixed float formatting."""
    pad = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, Fraction):
        return json.dumps(str(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        items = [dumps_deterministic(v, indent) for v in obj]
        return "[" + ", ".join(items) + "]"
    if isinstance(obj, dict):
        inner = "  " * (indent + 1)
        parts = [
            f"{inner}{json.dumps(str(k))}: {dumps_deterministic(v, indent + 1)}"
            for k, v in obj.items()
        ]
        if not parts:
            return "{}"
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _flatten_text(obj, prefix: str, lines: list[str]) -> None:
    if isinstance(obj, dict):
        for key, value in obj.items():
            _flatten_text(value, f"{prefix}{key}." if prefix else f"{key}.", lines)
        return
    label = prefix[:-1]
    lines.append(f"{label} = {dumps_deterministic(obj)}")


def render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return dumps_deterministic(report) + "\n"
    lines: list[str] = []
    _flatten_text(report, "", lines)
    return "\n".join(lines) + "\n"


def _complex_pair(z: complex) -> list[float]:
    # the +0.0 folds IEEE negative zeros into plain zeros
    return [float(z.real) + 0.0, float(z.imag) + 0.0]


# ---------------------------------------------------------------------------
# input parsing


def _parse_part(value, where: str) -> float:
    if isinstance(value, bool):
        raise FileFormatError(f"{where}: expected a number or 'p/q' string")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(Fraction(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise FileFormatError(f"{where}: bad rational string {value!r}") from exc
    raise FileFormatError(f"{where}: expected a number or 'p/q' string")


def _parse_complex(value, where: str) -> complex:
    if not isinstance(value, list) or len(value) != 2:
        raise FileFormatError(f"{where}: complex values are [re, im] pairs")
    return complex(_parse_part(value[0], f"{where}[0]"), _parse_part(value[1], f"{where}[1]"))


def _load_json(path: str) -> dict:
    try:
        with open(path, "rb") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise FileFormatError(f"cannot read {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path!r} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise FileFormatError(f"{path!r}: top-level value must be an object")
    return data


def _file_digest(path: str) -> str:
    with open(path, "rb") as handle:
        return hashlib.sha256(handle.read()).hexdigest()


def parse_condition_data(data: dict) -> BoundaryConditionSystem:
    if "m" not in data or not isinstance(data["m"], int) or data["m"] < 1:
        raise FileFormatError("m: required positive integer")
    m = data["m"]
    conditions = data.get("conditions")
    if not isinstance(conditions, list) or len(conditions) != m:
        raise FileFormatError(f"conditions: expected a list of {m} rows")
    coeffs = np.zeros((m, 2 * m), dtype=np.complex128)
    for j, row in enumerate(conditions):
        where = f"conditions[{j}]"
        if not isinstance(row, dict):
            raise FileFormatError(f"{where}: expected an object with 'a' and 'b'")
        for block, offset in (("a", 0), ("b", m)):
            values = row.get(block)
            if not isinstance(values, list) or len(values) != m:
                raise FileFormatError(f"{where}.{block}: expected a list of {m} values")
            for k, value in enumerate(values):
                coeffs[j, offset + k] = _parse_complex(value, f"{where}.{block}[{k}]")
    return BoundaryConditionSystem(m, coeffs)


def parse_contraction_data(data: dict) -> contraction.ContractionParametrization:
    if "m" not in data or not isinstance(data["m"], int) or data["m"] < 1:
        raise FileFormatError("m: required positive integer")
    m = data["m"]
    rows = data.get("V")
    if not isinstance(rows, list) or len(rows) != m:
        raise FileFormatError(f"V: expected a list of {m} rows")
    matrix = np.zeros((m, m), dtype=np.complex128)
    for j, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != m:
            raise FileFormatError(f"V[{j}]: expected a list of {m} values")
        for k, value in enumerate(row):
            matrix[j, k] = _parse_complex(value, f"V[{j}][{k}]")
    return contraction.ContractionParametrization(m=m, V=matrix)


def system_to_conditions(system: BoundaryConditionSystem) -> list[dict]:
    out = []
    for j in range(system.m):
        out.append(
            {
                "a": [_complex_pair(z) for z in system.a[j]],
                "b": [_complex_pair(z) for z in system.b[j]],
            }
        )
    return out


# ---------------------------------------------------------------------------
# report assembly


def _tolerances_dict(tol: TolerancePolicy) -> dict:
    return {
        "definiteness_tol": tol.definiteness_tol,
        "rank_tol": tol.rank_tol,
        "zero_tol": tol.zero_tol,
    }


def _thetas_dict(report: regularity.RegularityReport) -> dict:
    return {
        "parity": report.parity,
        "theta_minus1": None
        if report.theta_minus1 is None
        else _complex_pair(report.theta_minus1),
        "theta_0": _complex_pair(report.theta_0),
        "theta_1": _complex_pair(report.theta_1),
        "scale": report.scale,
        "theta_minus1_nonzero": report.theta_minus1_nonzero,
        "theta_0_nonzero": report.theta_0_nonzero,
        "theta_1_nonzero": report.theta_1_nonzero,
    }


def _contraction_matrix(system: BoundaryConditionSystem, tol: TolerancePolicy):
    con = contraction.to_contraction(system, tol)
    # entries below 1e-12 are flushed for report readability only
    return [
        [_complex_pair(z if abs(z) >= 1e-12 else 0.0) for z in row] for row in con.V
    ]


def build_check_report(
    system: BoundaryConditionSystem,
    tol: TolerancePolicy,
    samples: int,
    seed: int,
    digest: str,
) -> dict:
    normalized = bc_core.normalize(system, tol)
    verdict = forms.dissipativity_verdict(system, tol)
    reg = regularity.regularity_verdict(normalized, tol)
    oracle = polyoracle.sample_dissipativity(system, samples, seed)
    report = {
        "tool": _TOOL,
        "command": "check",
        "input": {"digest": digest, "m": system.m},
        "tolerances": _tolerances_dict(tol),
        "samples": samples,
        "seed": seed,
        "orders": list(normalized.orders),
        "verdicts": {
            "dissipative": verdict.dissipative,
            "selfadjoint": verdict.selfadjoint,
            "regular": reg.regular,
            "regular_strict": reg.regular_strict,
        },
        "gram_eigenvalues": [float(v) for v in verdict.gram_eigenvalues],
        "thetas": _thetas_dict(reg),
        "contraction": {
            "m": system.m,
            "V": _contraction_matrix(system, tol),
        }
        if verdict.dissipative
        else None,
        "oracle": {
            "dissipativity": {
                "samples": oracle.samples,
                "seed": seed,
                "all_nonnegative": oracle.all_nonnegative,
                "min_value": oracle.min_value,
            }
        },
    }
    return report


def generate_odd_irregular(n: int) -> BoundaryConditionSystem:
    """The irregular dissipative family of odd order m = 2n - 1.

    Conditions: y^(k)(0) = y^(k)(1) = 0 for k = n..2n-2, plus
    y^(n-1)(1) = 0.  On the solution space the form value is
    |y^(n-1)(0)|^2 / 2, so the conditions are dissipative, while the
    constant Laurent coefficient of the boundary determinant vanishes.
    """
    if n < 1:
        raise FileFormatError("n: must be a positive integer")
    m = 2 * n - 1
    coeffs = np.zeros((m, 2 * m), dtype=np.complex128)
    row = 0
    for k in range(2 * n - 2, n - 1, -1):
        coeffs[row, k] = 1.0
        coeffs[row + 1, m + k] = 1.0
        row += 2
    coeffs[row, m + n - 1] = 1.0
    return BoundaryConditionSystem(m, coeffs)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_check(args, tol: TolerancePolicy) -> dict:
    system = parse_condition_data(_load_json(args.file))
    return build_check_report(system, tol, args.samples, args.seed, _file_digest(args.file))


def _cmd_normalize(args, tol: TolerancePolicy) -> dict:
    system = parse_condition_data(_load_json(args.file))
    normalized = bc_core.normalize(system, tol)
    return {
        "m": system.m,
        "conditions": system_to_conditions(normalized.base),
        "orders": list(normalized.orders),
        "tolerances": _tolerances_dict(tol),
    }


def _cmd_dissipative(args, tol: TolerancePolicy) -> dict:
    system = parse_condition_data(_load_json(args.file))
    verdict = forms.dissipativity_verdict(system, tol)
    oracle = polyoracle.sample_dissipativity(system, args.samples, args.seed)
    return {
        "tool": _TOOL,
        "command": "dissipative",
        "input": {"digest": _file_digest(args.file), "m": system.m},
        "tolerances": _tolerances_dict(tol),
        "verdicts": {
            "dissipative": verdict.dissipative,
            "selfadjoint": verdict.selfadjoint,
        },
        "gram_eigenvalues": [float(v) for v in verdict.gram_eigenvalues],
        "oracle": {
            "dissipativity": {
                "samples": oracle.samples,
                "seed": args.seed,
                "all_nonnegative": oracle.all_nonnegative,
                "min_value": oracle.min_value,
            }
        },
    }


def _cmd_selfadjoint(args, tol: TolerancePolicy) -> dict:
    system = parse_condition_data(_load_json(args.file))
    return {
        "tool": _TOOL,
        "command": "selfadjoint",
        "input": {"digest": _file_digest(args.file), "m": system.m},
        "tolerances": _tolerances_dict(tol),
        "verdicts": {"selfadjoint": forms.selfadjoint_verdict(system, tol)},
    }


def _cmd_regular(args, tol: TolerancePolicy) -> dict:
    system = parse_condition_data(_load_json(args.file))
    normalized = bc_core.normalize(system, tol)
    reg = regularity.regularity_verdict(normalized, tol)
    return {
        "tool": _TOOL,
        "command": "regular",
        "input": {"digest": _file_digest(args.file), "m": system.m},
        "tolerances": _tolerances_dict(tol),
        "orders": list(normalized.orders),
        "verdicts": {"regular": reg.regular, "regular_strict": reg.regular_strict},
        "thetas": _thetas_dict(reg),
    }


def _cmd_to_contraction(args, tol: TolerancePolicy) -> dict:
    system = parse_condition_data(_load_json(args.file))
    verdict = forms.dissipativity_verdict(system, tol)
    report = {
        "tool": _TOOL,
        "command": "to-contraction",
        "input": {"digest": _file_digest(args.file), "m": system.m},
        "tolerances": _tolerances_dict(tol),
        "dissipative": verdict.dissipative,
        "m": system.m,
        "V": _contraction_matrix(system, tol) if verdict.dissipative else None,
    }
    return report


def _cmd_from_contraction(args, tol: TolerancePolicy) -> dict:
    con = parse_contraction_data(_load_json(args.file))
    system = contraction.from_contraction(con, tol)
    verdict = forms.dissipativity_verdict(system, tol)
    return {
        "tool": _TOOL,
        "command": "from-contraction",
        "input": {"digest": _file_digest(args.file), "m": con.m},
        "tolerances": _tolerances_dict(tol),
        "m": system.m,
        "conditions": system_to_conditions(system),
        "verdicts": {
            "dissipative": verdict.dissipative,
            "selfadjoint": verdict.selfadjoint,
        },
    }


def _cmd_verify(args, tol: TolerancePolicy) -> dict:
    boundary = polyoracle.verify_boundary_form_identity(args.m, args.samples, args.seed)
    canonical = polyoracle.verify_canonical_identity(args.m, args.samples, args.seed)
    return {
        "tool": _TOOL,
        "command": "verify",
        "m": args.m,
        "samples": args.samples,
        "seed": args.seed,
        "boundary_form": {
            "passed": boundary.passed,
            "max_defect": boundary.max_defect,
        },
        "canonical_coordinates": {
            "passed": canonical.passed,
            "max_defect": canonical.max_defect,
        },
    }


def _cmd_example(args, tol: TolerancePolicy) -> dict:
    if args.name != "odd-irregular":
        raise FileFormatError(f"name: unknown example {args.name!r}")
    system = generate_odd_irregular(args.n)
    return {"m": system.m, "conditions": system_to_conditions(system)}


# ---------------------------------------------------------------------------
# argument plumbing


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "text"), default="json", help="output format"
    )
    common.add_argument(
        "--tol",
        type=float,
        default=None,
        help="override all relative tolerances (default: BCA_TOL or built-ins)",
    )
    common.add_argument("--seed", type=int, default=0, help="oracle sampling seed")
    common.add_argument(
        "--samples", type=int, default=25, help="oracle sample count"
    )

    parser = argparse.ArgumentParser(
        prog="bca",
        description="Dissipativity, self-adjointness and Birkhoff-regularity "
        "analysis for boundary conditions of (-i)^m y^(m) on [0, 1].",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, handler, needs_file in (
        ("check", _cmd_check, True),
        ("normalize", _cmd_normalize, True),
        ("dissipative", _cmd_dissipative, True),
        ("selfadjoint", _cmd_selfadjoint, True),
        ("regular", _cmd_regular, True),
        ("to-contraction", _cmd_to_contraction, True),
        ("from-contraction", _cmd_from_contraction, True),
    ):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("file", help="input JSON file")
        p.set_defaults(handler=handler)

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--m", type=int, required=True, help="differential order")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("example", parents=[common])
    p.add_argument("--name", required=True, help="example family name")
    p.add_argument("--n", type=int, required=True, help="family parameter (m = 2n-1)")
    p.set_defaults(handler=_cmd_example)
    return parser


def _resolve_tolerances(args) -> TolerancePolicy:
    value = args.tol
    if value is None:
        env = os.environ.get("BCA_TOL")
        if env is not None:
            try:
                value = float(env)
            except ValueError as exc:
                raise FileFormatError(f"BCA_TOL: not a number: {env!r}") from exc
    if value is None:
        return TolerancePolicy()
    try:
        return TolerancePolicy(
            definiteness_tol=value, rank_tol=value, zero_tol=value
        )
    except ValueError as exc:
        raise FileFormatError(str(exc)) from exc


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        tol = _resolve_tolerances(args)
        report = args.handler(args, tol)
    except (InvalidInput, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(render_report(report, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
