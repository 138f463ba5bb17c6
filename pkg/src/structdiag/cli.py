"""Command-line surface.

Subcommands: analyze, diagonalize, decompose, generate, verify. Reports
are JSON documents on stdout; matrices travel as MatrixMarket array
files. Exit codes: 0 success, 1 mathematical negative, 2 parse/IO,
3 numerical breakdown.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import hashlib
import json
import os
import sys

import numpy as np

from . import __version__
from .core import DEFAULT_TOL, TolerancePolicy, herm_transpose, rel_residual, solve_linear
from .decompose import (
    AdditiveDecomposition,
    Sign,
    decompose_additive,
    verify_decomposition,
)
from .diagonalize import (
    diagonalizability_report,
    structured_diagonalize,
    unitary_refine,
)
from .errors import (
    DimensionMismatch,
    InvalidSize,
    NoConvergence,
    NotAnnihilating,
    NotDiagonalizable,
    NotNeutralRange,
    NotNormal,
    NotStructured,
    NotStructuredDiagonalizable,
    NumericalBreakdown,
    ParseError,
    RankDeficient,
    SingularInput,
    SingularMatrix,
    StructDiagError,
)
from .forms import InnerProduct, perplectic_form, symplectic_form, euclidean_form
from .generators import (
    STRUCTURE_KINDS,
    counterexample_unbalanced,
    random_automorphism,
    random_structured,
    random_structured_diagonalizable,
)
from .mmio import read_matrix, write_matrix
from .structure import classify

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_IO = 2
EXIT_NUMERICAL = 3

_NEGATIVE_ERRORS = (NotStructured, NotStructuredDiagonalizable,
                    NotDiagonalizable, NotNormal, NotAnnihilating,
                    NotNeutralRange, SingularInput)
_NUMERICAL_ERRORS = (NumericalBreakdown, SingularMatrix, RankDeficient,
                     NoConvergence)


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _document(command: str, digest: str, payload: dict,
              residuals: dict) -> dict:
    return {
        "tool_version": __version__,
        "command": command,
        "input_digest": digest,
        "payload": payload,
        "residuals": {k: float(v) for k, v in residuals.items()},
    }


def _emit(doc: dict, compact: bool = False) -> None:
    if compact:
        print(json.dumps(doc, separators=(",", ":"), sort_keys=True))
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))


def _resolve_tol(tol_arg: float | None) -> TolerancePolicy:
    value = tol_arg
    if value is None:
        env = os.environ.get("STRUCTDIAG_TOL")
        if env is not None:
            try:
                value = float(env)
            except ValueError:
                raise ParseError(f"STRUCTDIAG_TOL={env!r} is not a number")
    if value is None:
        return DEFAULT_TOL
    return TolerancePolicy(
        structure_tol=value,
        cluster_tol=DEFAULT_TOL.cluster_tol,
        class_tol=DEFAULT_TOL.class_tol,
        rank_tol=DEFAULT_TOL.rank_tol,
    )


def _form_for(name: str, dim: int) -> InnerProduct:
    if name == "euclidean":
        return euclidean_form(dim)
    if dim % 2 != 0:
        raise DimensionMismatch(
            f"the {name} form needs an even dimension, got {dim}")
    n = dim // 2
    return symplectic_form(n) if name == "symplectic" else perplectic_form(n)


def _load(path: str, form_name: str) -> tuple[np.ndarray, InnerProduct, str]:
    a = read_matrix(path)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ParseError(f"{path}: matrix must be square, got {a.shape}")
    return a, _form_for(form_name, a.shape[0]), _digest(path)


def _analysis_payload(a: np.ndarray, form: InnerProduct,
                      tol: TolerancePolicy) -> tuple[dict, dict]:
    report = classify(a, form, tol)
    payload: dict = {"classification": report.to_dict()}
    residuals = {
        name: getattr(report, name).residual
        for name in ("hermitian", "skew_hermitian", "unitary",
                     "euclidean_normal", "selfadjoint", "skewadjoint",
                     "automorphism", "b_normal")
    }
    if form.tag.value == "euclidean":
        payload["diagonalizability"] = None
        return payload, residuals
    if not (report.selfadjoint.ok or report.skewadjoint.ok):
        payload["diagonalizability"] = {
            "decision": None,
            "reason": "matrix is neither selfadjoint nor skewadjoint "
                      "for this form",
        }
        return payload, residuals
    try:
        diag_report = diagonalizability_report(a, form, tol)
    except NotDiagonalizable as exc:
        payload["diagonalizability"] = {
            "decision": None,
            "diagonalizable": False,
            "reason": str(exc),
        }
        return payload, residuals
    d = diag_report.to_dict()
    d["diagonalizable"] = True
    payload["diagonalizability"] = d
    return payload, residuals


def _expect_satisfied(payload: dict, expect: str) -> bool:
    diagnosable = {"structure-diagonalizable", "symplectic-diagonalizable",
                   "perplectic-diagonalizable"}
    diag = payload.get("diagonalizability") or {}
    if expect in diagnosable:
        return diag.get("decision") is True
    if expect == "diagonalizable":
        return bool(diag.get("diagonalizable"))
    return expect in payload["classification"]["structures"]


def _analyze_one(path: str, form_name: str, tol: TolerancePolicy,
                 expect: str | None) -> tuple[int, dict]:
    a, form, digest = _load(path, form_name)
    payload, residuals = _analysis_payload(a, form, tol)
    payload["file"] = path
    doc = _document("analyze", digest, payload, residuals)
    code = EXIT_OK
    if expect is not None and not _expect_satisfied(payload, expect):
        payload["expect_failed"] = expect
        code = EXIT_NEGATIVE
    return code, doc


def cmd_analyze(args) -> int:
    tol = _resolve_tol(args.tol)
    jobs = max(1, args.jobs)
    compact = len(args.files) > 1
    worst = EXIT_OK
    if jobs == 1 or len(args.files) == 1:
        results = [_analyze_one(p, args.form, tol, args.expect)
                   for p in args.files]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_analyze_one, p, args.form, tol,
                                   args.expect)
                       for p in args.files]
            results = [f.result() for f in futures]
    for code, doc in results:
        _emit(doc, compact)
        worst = max(worst, code)
    return worst


def cmd_diagonalize(args) -> int:
    tol = _resolve_tol(args.tol)
    a, form, digest = _load(args.file, args.form)
    if form.tag.value == "euclidean":
        raise ParseError("diagonalize requires --form symplectic|perplectic")
    try:
        diag = unitary_refine(a, form, tol) if args.unitary \
            else structured_diagonalize(a, form, tol)
    except NotStructuredDiagonalizable as exc:
        payload = {"error": "NotStructuredDiagonalizable",
                   "reason": str(exc)}
        if exc.report is not None:
            payload["diagonalizability"] = exc.report.to_dict()
        _emit(_document("diagonalize", digest, payload, {}))
        return EXIT_NEGATIVE
    except (NotNormal, NotDiagonalizable, NotStructured) as exc:
        _emit(_document("diagonalize", digest,
                        {"error": type(exc).__name__, "reason": str(exc)}, {}))
        return EXIT_NEGATIVE
    write_matrix(f"{args.out}.S.mtx", diag.transform)
    write_matrix(f"{args.out}.D.mtx", diag.diagonal_matrix)
    residuals = {
        "automorphism": diag.residual_automorphism,
        "similarity": diag.residual_similarity,
    }
    payload = {
        "variant": diag.variant.value,
        "form": form.tag.value,
        "unitary": diag.unitary,
        "core": [[z.real, z.imag] for z in diag.core],
        "factors": {"transform": f"{args.out}.S.mtx",
                    "diagonal": f"{args.out}.D.mtx"},
    }
    _emit(_document("diagonalize", digest, payload, residuals))
    return EXIT_OK


def cmd_decompose(args) -> int:
    tol = _resolve_tol(args.tol)
    a, form, digest = _load(args.file, args.form)
    if form.tag.value == "euclidean":
        raise ParseError("decompose requires --form symplectic|perplectic")
    try:
        dec = decompose_additive(a, form, tol)
    except NotStructuredDiagonalizable as exc:
        payload = {"error": "NotStructuredDiagonalizable", "reason": str(exc)}
        if exc.report is not None:
            payload["diagonalizability"] = exc.report.to_dict()
        _emit(_document("decompose", digest, payload, {}))
        return EXIT_NEGATIVE
    except (NotNormal, NotDiagonalizable, NotStructured) as exc:
        _emit(_document("decompose", digest,
                        {"error": type(exc).__name__, "reason": str(exc)}, {}))
        return EXIT_NEGATIVE
    write_matrix(f"{args.out}.N.mtx", dec.normal_factor)
    payload = {
        "sign": dec.sign.value,
        "form": form.tag.value,
        "factors": {"normal_factor": f"{args.out}.N.mtx"},
    }
    _emit(_document("decompose", digest, payload,
                    dec.residuals.to_dict()))
    return EXIT_OK


_GENERATE_KINDS = sorted(
    list(STRUCTURE_KINDS)
    + [f"{k}-diagonalizable" for k in STRUCTURE_KINDS]
    + ["counterexample", "automorphism"])


def cmd_generate(args) -> int:
    if args.kind == "counterexample":
        a = counterexample_unbalanced(args.n, args.seed)
    elif args.kind == "automorphism":
        if args.form == "euclidean":
            raise ParseError("automorphism generation needs "
                             "--form symplectic|perplectic")
        form = _form_for(args.form, 2 * args.n)
        a = random_automorphism(form, args.n, args.seed)
    elif args.kind.endswith("-diagonalizable"):
        a = random_structured_diagonalizable(
            args.kind[:-len("-diagonalizable")], args.n, args.seed).matrix
    else:
        a = random_structured(args.kind, args.n, args.seed)
    write_matrix(args.out, a)
    print(_digest(args.out))
    return EXIT_OK


def _verify_diag(a: np.ndarray, s: np.ndarray, form: InnerProduct,
                 tol: TolerancePolicy) -> tuple[bool, dict]:
    if s.shape != a.shape:
        raise DimensionMismatch("transform and matrix dimensions differ")
    res_auto = rel_residual(herm_transpose(s) @ form.matrix @ s, form.matrix)
    x = solve_linear(s, a @ s, tol)
    res_diag = rel_residual(x, np.diag(np.diag(x)))
    ok = res_auto <= 1e-8 and res_diag <= 1e-8
    return ok, {"automorphism": res_auto, "similarity_diagonal": res_diag}


def _verify_decomp(a: np.ndarray, n_mat: np.ndarray, form: InnerProduct,
                   tol: TolerancePolicy) -> tuple[bool, dict, str]:
    report = classify(a, form, tol)
    if report.selfadjoint.ok:
        sign = Sign.PLUS
    elif report.skewadjoint.ok:
        sign = Sign.MINUS
    else:
        return False, {
            "selfadjoint": report.selfadjoint.residual,
            "skewadjoint": report.skewadjoint.residual,
        }, "unstructured"
    dec = AdditiveDecomposition(normal_factor=n_mat, sign=sign,
                                form_tag=form.tag)
    verdict = verify_decomposition(a, dec, form, tol)
    return verdict.passed, verdict.to_dict(), sign.value


def cmd_verify(args) -> int:
    tol = _resolve_tol(args.tol)
    a, form, digest = _load(args.file_a, args.form)
    if form.tag.value == "euclidean":
        raise ParseError("verify requires --form symplectic|perplectic")
    factor = read_matrix(args.file_factor)
    if args.mode == "diag":
        ok, residuals = _verify_diag(a, factor, form, tol)
        payload = {"mode": "diag", "passed": ok}
    else:
        ok, residuals, sign = _verify_decomp(a, factor, form, tol)
        payload = {"mode": "decomp", "passed": ok, "sign": sign}
        residuals = {k: v for k, v in residuals.items()
                     if isinstance(v, float)}
    _emit(_document("verify", digest, payload, residuals))
    return EXIT_OK if ok else EXIT_NEGATIVE


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="structdiag",
        description="Structured matrix analysis for symplectic and "
                    "perplectic inner products.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_tol=True):
        p.add_argument("--form", choices=("symplectic", "perplectic",
                                          "euclidean"),
                       default="symplectic")
        if with_tol:
            p.add_argument("--tol", type=float, default=None,
                           help="override the structure tolerance "
                                "(default 1e-10, or STRUCTDIAG_TOL)")

    p = sub.add_parser("analyze", help="classification and balance report")
    add_common(p)
    p.add_argument("--expect", default=None,
                   help="exit 1 unless this structure name (or "
                        "'structure-diagonalizable') is satisfied")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel workers for multiple files")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("diagonalize",
                       help="write the automorphism and diagonal factors")
    add_common(p)
    p.add_argument("--unitary", action="store_true",
                   help="require a unitary automorphism (normal input)")
    p.add_argument("--out", required=True, help="output file prefix")
    p.add_argument("file")
    p.set_defaults(func=cmd_diagonalize)

    p = sub.add_parser("decompose",
                       help="write the normal factor of A = N +/- N*")
    add_common(p)
    p.add_argument("--out", required=True, help="output file prefix")
    p.add_argument("file")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("generate", help="write a seeded random instance")
    p.add_argument("--kind", required=True, choices=_GENERATE_KINDS)
    p.add_argument("--n", type=int, required=True,
                   help="half dimension (matrix is 2n x 2n)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--form", choices=("symplectic", "perplectic"),
                   default="symplectic",
                   help="form for --kind automorphism")
    p.add_argument("out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify",
                       help="re-check factors without refactorizing")
    add_common(p)
    p.add_argument("--mode", choices=("diag", "decomp"), required=True)
    p.add_argument("file_a")
    p.add_argument("file_factor")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError, DimensionMismatch, InvalidSize,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except _NEGATIVE_ERRORS as exc:
        print(f"negative result: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except StructDiagError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
