"""Structure classification and unitary automorphism construction.

classify() measures every structure flag as a Frobenius-scaled residual;
build_unitary_symplectic / build_unitary_perplectic assemble unitary
automorphisms from orthonormal Lagrangian frames.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import DEFAULT_TOL, TolerancePolicy, fro, herm_transpose, rel_residual
from .errors import DimensionMismatch, NotLagrangianFrame, NotStructured
from .forms import FormTag, InnerProduct, adjoint, flip, symplectic_j


class Check(NamedTuple):
    ok: bool
    residual: float


# Form-specific display names for the three adjoint-relative structures.
_NAMES = {
    FormTag.SYMPLECTIC_J: {
        "selfadjoint": "skew-hamiltonian",
        "skewadjoint": "hamiltonian",
        "automorphism": "symplectic",
    },
    FormTag.PERPLECTIC_R: {
        "selfadjoint": "per-hermitian",
        "skewadjoint": "perskew-hermitian",
        "automorphism": "perplectic",
    },
    FormTag.EUCLIDEAN: {
        "selfadjoint": "hermitian",
        "skewadjoint": "skew-hermitian",
        "automorphism": "unitary",
    },
    FormTag.CUSTOM: {
        "selfadjoint": "selfadjoint",
        "skewadjoint": "skewadjoint",
        "automorphism": "automorphism",
    },
}


@dataclass(frozen=True)
class StructureReport:
    hermitian: Check
    skew_hermitian: Check
    unitary: Check
    euclidean_normal: Check
    selfadjoint: Check
    skewadjoint: Check
    automorphism: Check
    b_normal: Check
    form_tag: FormTag

    def flag(self, name: str) -> Check:
        """Look up a flag by generic or form-specific structure name."""
        generic = {
            "hermitian": "hermitian",
            "skew-hermitian": "skew_hermitian",
            "unitary": "unitary",
            "normal": "euclidean_normal",
            "selfadjoint": "selfadjoint",
            "skewadjoint": "skewadjoint",
            "automorphism": "automorphism",
            "b-normal": "b_normal",
        }
        specific = {v: k for k, v in _NAMES[self.form_tag].items()}
        key = generic.get(name) or specific.get(name)
        if key is None:
            raise KeyError(f"unknown structure name {name!r} "
                           f"for form {self.form_tag.value}")
        return getattr(self, key)

    def true_names(self) -> list[str]:
        """Form-specific names of all satisfied structures."""
        names = []
        if self.hermitian.ok:
            names.append("hermitian")
        if self.skew_hermitian.ok:
            names.append("skew-hermitian")
        if self.unitary.ok:
            names.append("unitary")
        if self.euclidean_normal.ok:
            names.append("normal")
        local = _NAMES[self.form_tag]
        if self.form_tag is not FormTag.EUCLIDEAN:
            if self.selfadjoint.ok:
                names.append(local["selfadjoint"])
            if self.skewadjoint.ok:
                names.append(local["skewadjoint"])
            if self.automorphism.ok:
                names.append(local["automorphism"])
            if self.b_normal.ok:
                names.append("b-normal")
        return names

    def to_dict(self) -> dict:
        d = {}
        for field in ("hermitian", "skew_hermitian", "unitary",
                      "euclidean_normal", "selfadjoint", "skewadjoint",
                      "automorphism", "b_normal"):
            c = getattr(self, field)
            d[field] = {"ok": c.ok, "residual": c.residual}
        d["form"] = self.form_tag.value
        d["structures"] = self.true_names()
        return d


def classify(a: np.ndarray, form: InnerProduct,
             tol: TolerancePolicy = DEFAULT_TOL) -> StructureReport:
    """Residual-based structure report of a square matrix against a form."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch("classification requires a square matrix")
    if a.shape[0] != form.dim:
        raise DimensionMismatch("matrix dimension does not match the form")
    ah = herm_transpose(a)
    eye = np.eye(a.shape[0], dtype=np.complex128)
    a_star = adjoint(a, form)

    def check(x, y) -> Check:
        res = rel_residual(x, y)
        return Check(res <= tol.structure_tol, res)

    return StructureReport(
        hermitian=check(a, ah),
        skew_hermitian=check(a, -ah),
        unitary=check(ah @ a, eye),
        euclidean_normal=check(ah @ a, a @ ah),
        selfadjoint=check(a_star, a),
        skewadjoint=check(a_star, -a),
        automorphism=check(a_star @ a, eye),
        b_normal=check(a @ a_star, a_star @ a),
        form_tag=form.tag,
    )


def assert_structure(a: np.ndarray, form: InnerProduct, wanted: str,
                     tol: TolerancePolicy = DEFAULT_TOL) -> None:
    """Raise NotStructured unless classify reports `wanted` as satisfied."""
    report = classify(a, form, tol)
    check = report.flag(wanted)
    if not check.ok:
        raise NotStructured(
            f"matrix is not {wanted} (residual {check.residual:.3e})",
            check.residual)


def _check_frame(v: np.ndarray, b: np.ndarray) -> None:
    two_n, n = v.shape[0], v.shape[1]
    if two_n != 2 * n:
        raise NotLagrangianFrame(
            f"frame must be 2n x n, got {two_n} x {n}", failed="shape")
    res_orth = fro(herm_transpose(v) @ v - np.eye(n))
    if res_orth > 1e-10:
        raise NotLagrangianFrame(
            f"frame columns not orthonormal (residual {res_orth:.3e})",
            failed="orthonormality", residual=res_orth)
    res_neut = fro(herm_transpose(v) @ b @ v)
    if res_neut > 1e-10:
        raise NotLagrangianFrame(
            f"frame span not neutral (residual {res_neut:.3e})",
            failed="neutrality", residual=res_neut)


def build_unitary_symplectic(v: np.ndarray) -> np.ndarray:
    """[V, J^T V] for an orthonormal Lagrangian frame V; unitary-symplectic."""
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim != 2 or v.shape[0] % 2 != 0 or v.shape[1] == 0:
        raise NotLagrangianFrame("frame must be a nonempty 2n x n matrix",
                                 failed="shape")
    j = symplectic_j(v.shape[0] // 2)
    _check_frame(v, j)
    return np.hstack([v, j.T @ v])


def build_unitary_perplectic(v: np.ndarray) -> np.ndarray:
    """[V, R_{2n} V R_n] for an orthonormal Lagrangian frame V; unitary-perplectic."""
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim != 2 or v.shape[0] % 2 != 0 or v.shape[1] == 0:
        raise NotLagrangianFrame("frame must be a nonempty 2n x n matrix",
                                 failed="shape")
    n = v.shape[0] // 2
    r2n = flip(2 * n)
    _check_frame(v, r2n)
    return np.hstack([v, r2n @ v @ flip(n)])


def build_unitary_automorphism(v: np.ndarray, form: InnerProduct) -> np.ndarray:
    """Dispatch on the form tag."""
    if form.tag is FormTag.SYMPLECTIC_J:
        return build_unitary_symplectic(v)
    if form.tag is FormTag.PERPLECTIC_R:
        return build_unitary_perplectic(v)
    raise NotStructured("unitary automorphism frames require the J or R form")
