"""Command-line front end for batch channel analysis.

Commands: ``analyze``, ``canonicalize``, ``equiv``, ``decompose``, ``bloch``,
``gen``.  All randomness flows through ``--seed``, so every invocation is
deterministic; JSON output is byte-stable across runs.  Exit codes: 0 for
success or an affirmative decision, 1 for a negative decision or an input
failing a precondition, 2 for usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bloch import (
    is_channel_scaling,
    ordered_cone_decomposition,
    ordered_cone_test,
    ordered_representative,
    tetra_coordinates,
)
from .canonical import canonicalize, unitarily_equivalent
from .channel import (
    QubitChannel,
    depolarizing_channel,
    identity_channel,
    pauli_mixing_channel,
    random_unital_channel,
    to_bloch,
    validate,
)
from .channel import choi_spectrum as _choi_spectrum
from .errors import (
    BadCoefficientsError,
    NotMajorizedError,
    ParseError,
    UnitalQubitError,
)
from .jsonio import (
    channel_document,
    decomposition_document,
    dumps_document,
    loads_channel,
)
from .linalg import DEFAULT_TOL, frobenius
from .mixed_unitary import average_of_four, decompose, verify


def _render_human(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(value, dict):
        for key in sorted(value):
            inner = value[key]
            if isinstance(inner, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_human(inner, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar_human(inner)}")
    elif isinstance(value, list):
        if value and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value):
            lines.append(pad + "[" + ", ".join(_scalar_human(x) for x in value) + "]")
        else:
            for item in value:
                lines.extend(_render_human(item, indent))
    else:
        lines.append(pad + _scalar_human(value))
    return lines


def _scalar_human(value) -> str:
    if isinstance(value, bool) or value is None:
        return str(value)
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _emit(doc: dict, args) -> None:
    if args.format == "json":
        text = dumps_document(doc)
    else:
        text = "\n".join(_render_human(doc)) + "\n"
    if args.output is None:
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")


def _load(path: str) -> QubitChannel:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads_channel(text)


def _matrix_doc(m) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]


def _cmd_analyze(args) -> int:
    ch = _load(args.file)
    tol = args.tolerance
    report = validate(ch, tol)
    doc: dict = {
        "validation": {
            "hermitian_preserving": report.hermitian_preserving,
            "trace_preserving": report.trace_preserving,
            "unital": report.unital,
            "completely_positive": report.completely_positive,
            "hermitian_defect": report.hermitian_defect,
            "trace_defect": report.trace_defect,
            "unital_defect": report.unital_defect,
            "min_choi_eigenvalue": report.min_choi_eigenvalue,
        },
        "valid_channel": report.valid_channel,
    }
    if report.hermitian_preserving:
        doc["choi_spectrum"] = [float(x) for x in _choi_spectrum(ch, tol)]
        bloch = to_bloch(ch)
        doc["bloch"] = {
            "linear": [[float(x) for x in row] for row in bloch.linear],
            "offset": [float(x) for x in bloch.offset],
        }
        off_diagonal = bloch.linear - np.diag(np.diag(bloch.linear))
        if frobenius(off_diagonal) <= tol:
            d = np.diag(bloch.linear)
            doc["bloch_scaling"] = [float(x) for x in d]
            test = is_channel_scaling(d, tol)
            doc["bloch_scaling_witnesses"] = [float(x) for x in test.witnesses]
            doc["tetra_coordinates"] = (
                [float(x) for x in tetra_coordinates(d, tol)] if test.accepted else None
            )
        else:
            doc["bloch_scaling"] = None
            doc["tetra_coordinates"] = None
    else:
        doc["choi_spectrum"] = None
        doc["bloch"] = None
        doc["bloch_scaling"] = None
        doc["tetra_coordinates"] = None
    _emit(doc, args)
    return 0 if report.valid_channel else 1


def _cmd_canonicalize(args) -> int:
    ch = _load(args.file)
    cano = canonicalize(ch, args.tolerance)
    doc = {
        "input_unitary": _matrix_doc(cano.u),
        "output_unitary": _matrix_doc(cano.v),
        "spectrum": [float(x) for x in cano.spectrum],
        "canonical": channel_document(cano.canonical),
        "residual": float(cano.residual),
    }
    _emit(doc, args)
    return 0


def _cmd_equiv(args) -> int:
    a = _load(args.file_a)
    b = _load(args.file_b)
    result = unitarily_equivalent(a, b)
    doc = {
        "equivalent": result.equivalent,
        "spectrum_a": [float(x) for x in result.spectrum_a],
        "spectrum_b": [float(x) for x in result.spectrum_b],
        "gap": float(result.gap),
        "witness": (
            {
                "input_unitary": _matrix_doc(result.u),
                "output_unitary": _matrix_doc(result.v),
                "residual": float(result.residual),
            }
            if result.equivalent
            else None
        ),
    }
    _emit(doc, args)
    return 0 if result.equivalent else 1


def _parse_weights(text: str) -> list[float]:
    try:
        weights = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise ParseError(f"--weights: {exc}") from exc
    if not weights:
        raise ParseError("--weights: empty weight list")
    return weights


def _cmd_decompose(args) -> int:
    ch = _load(args.file)
    tol = args.tolerance
    if args.average is not None:
        if args.average == 4:
            dec = average_of_four(ch, tol)
        else:
            dec = decompose(ch, np.full(args.average, 1.0 / args.average), tol)
    else:
        dec = decompose(ch, _parse_weights(args.weights), tol)
    check = verify(dec, ch, tol)
    _emit(decomposition_document(dec.weights, dec.unitaries, check.residual), args)
    return 0


def _cmd_bloch(args) -> int:
    d = np.array([args.d1, args.d2, args.d3])
    tol = args.tolerance
    test = is_channel_scaling(d, tol)
    rep = ordered_representative(d)
    ordered: dict = {"sorted_scaling": [float(x) for x in rep]}
    ordered["cone_accepted"] = ordered_cone_test(rep, tol)
    if ordered["cone_accepted"]:
        cone = ordered_cone_decomposition(rep, tol)
        ordered["cone_coefficients"] = [float(x) for x in cone.coefficients]
    else:
        ordered["cone_coefficients"] = None
    doc = {
        "scaling": [float(x) for x in d],
        "is_channel": test.accepted,
        "witnesses": [float(x) for x in test.witnesses],
        "tetra_coordinates": (
            [float(x) for x in tetra_coordinates(d, tol)] if test.accepted else None
        ),
        "ordered": ordered,
    }
    _emit(doc, args)
    return 0 if test.accepted else 1


def _cmd_gen(args) -> int:
    if args.kind == "random":
        ch = random_unital_channel(args.seed)
    elif args.kind == "depolarizing":
        ch = depolarizing_channel()
    elif args.kind == "identity":
        ch = identity_channel()
    else:  # pauli-mixing
        coeffs = args.coefficients
        if len(coeffs) != 4:
            raise ParseError(f"pauli-mixing needs 4 coefficients, got {len(coeffs)}")
        tol = args.tolerance
        if min(coeffs) < -tol or abs(sum(coeffs) - 1.0) > tol:
            raise BadCoefficientsError(
                "mixing coefficients must be nonnegative and sum to one"
            )
        ch = pauli_mixing_channel(coeffs)
    _emit(channel_document(ch), args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unitalqubit",
        description="Analyze, canonicalize, compare and decompose unital qubit channels.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--tolerance", type=float, default=DEFAULT_TOL, help="numerical tolerance")
    parser.add_argument("--seed", type=int, default=0, help="seed for random generation")
    parser.add_argument("--format", choices=("json", "human"), default="json")
    parser.add_argument("--output", default=None, help="write output to a file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="validation flags, spectrum and Bloch geometry")
    p.add_argument("file")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("canonicalize", help="canonical mixing form with unitary witnesses")
    p.add_argument("file")
    p.set_defaults(func=_cmd_canonicalize)

    p = sub.add_parser("equiv", help="local-unitary equivalence of two channels")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("decompose", help="mixed-unitary decomposition")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--weights", help="comma-separated weights, e.g. 0.5,0.3,0.2")
    group.add_argument("--average", type=int, metavar="M", help="uniform mixture of M unitaries")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("bloch", help="tetrahedron and ordered-cone geometry of a scaling")
    p.add_argument("d1", type=float)
    p.add_argument("d2", type=float)
    p.add_argument("d3", type=float)
    p.set_defaults(func=_cmd_bloch)

    p = sub.add_parser("gen", help="generate a channel document")
    p.add_argument("kind", choices=("random", "depolarizing", "identity", "pauli-mixing"))
    p.add_argument("coefficients", type=float, nargs="*")
    p.set_defaults(func=_cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except NotMajorizedError as exc:
        sys.stderr.write(f"error: {exc} (violated prefix {exc.violated_prefix})\n")
        return 1
    except ParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except UnitalQubitError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
