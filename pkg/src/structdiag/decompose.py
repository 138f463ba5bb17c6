"""Additive decomposition A = N +/- N* with N normal and N N* = N* N = 0,
its inverse construction, verification, and the structured matrix
exponential and p-th root built on top of it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import (
    DEFAULT_TOL,
    TolerancePolicy,
    fro,
    herm_transpose,
    inverse,
    numerical_rank,
    rel_residual,
)
from .diagonalize import (
    StructuredDiagonalization,
    Variant,
    assemble_core_diagonal,
    complete_to_lagrangian,
    unitary_refine,
)
from .errors import (
    NotAnnihilating,
    NotNeutralRange,
    NotNormal,
    NotStructured,
    NumericalBreakdown,
    SingularInput,
)
from .forms import FormTag, InnerProduct, adjoint, gram
from .structure import build_unitary_automorphism, classify


class Sign(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"

    @property
    def factor(self) -> float:
        return 1.0 if self is Sign.PLUS else -1.0


def sign_for_variant(variant: Variant) -> Sign:
    """Skewadjoint structures decompose with a minus, selfadjoint with a plus."""
    return Sign.PLUS if variant is Variant.SELFADJOINT else Sign.MINUS


@dataclass(frozen=True)
class DecompositionResiduals:
    normality_n: float
    annihilation_left: float
    annihilation_right: float
    reconstruction: float

    @property
    def worst(self) -> float:
        return max(self.normality_n, self.annihilation_left,
                   self.annihilation_right, self.reconstruction)

    def to_dict(self) -> dict:
        return {
            "normality_N": self.normality_n,
            "annihilation_left": self.annihilation_left,
            "annihilation_right": self.annihilation_right,
            "reconstruction": self.reconstruction,
        }


@dataclass(frozen=True)
class AdditiveDecomposition:
    normal_factor: np.ndarray
    sign: Sign
    form_tag: FormTag
    # None for factors loaded from disk; the verifier recomputes them.
    residuals: DecompositionResiduals | None = None


def _unitary_eigh_normal(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unitary diagonalization of a (numerically) normal matrix.

    The complex Schur form of a normal matrix is diagonal, so the Schur
    vectors are an orthonormal eigenbasis.
    """
    t, z = scipy.linalg.schur(np.asarray(a, dtype=np.complex128),
                              output="complex")
    return np.diag(t).copy(), z


def split_normal(a: np.ndarray,
                 tol: TolerancePolicy = DEFAULT_TOL
                 ) -> tuple[np.ndarray, np.ndarray]:
    """Split a normal 2n x 2n matrix as A = E + F with EF = FE = 0.

    E and F are built from complementary halves of a unitary
    eigendecomposition and are normal themselves.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.shape[0] % 2 != 0:
        raise NotStructured("split requires an even dimension")
    res_normal = rel_residual(herm_transpose(a) @ a, a @ herm_transpose(a))
    if res_normal > tol.structure_tol:
        raise NotNormal(f"matrix is not normal (residual {res_normal:.3e})")
    n = a.shape[0] // 2
    values, z = _unitary_eigh_normal(a)
    e = z[:, :n] @ np.diag(values[:n]) @ herm_transpose(z[:, :n])
    f = z[:, n:] @ np.diag(values[n:]) @ herm_transpose(z[:, n:])
    checks = (
        rel_residual(e + f, a),
        fro(e @ f) / max(1.0, fro(e) * fro(f)),
        fro(f @ e) / max(1.0, fro(e) * fro(f)),
        rel_residual(herm_transpose(e) @ e, e @ herm_transpose(e)),
        rel_residual(herm_transpose(f) @ f, f @ herm_transpose(f)),
    )
    if max(checks) > 1e-9:
        raise NumericalBreakdown("split residuals exceed 1e-9")
    return e, f


def _decomposition_residuals(a: np.ndarray, n_mat: np.ndarray, sign: Sign,
                             form: InnerProduct) -> DecompositionResiduals:
    n_star = adjoint(n_mat, form)
    scale = max(1.0, fro(n_mat) * fro(n_star))
    return DecompositionResiduals(
        normality_n=rel_residual(herm_transpose(n_mat) @ n_mat,
                                 n_mat @ herm_transpose(n_mat)),
        annihilation_left=fro(n_mat @ n_star) / scale,
        annihilation_right=fro(n_star @ n_mat) / scale,
        reconstruction=rel_residual(n_mat + sign.factor * n_star, a),
    )


def decompose_additive(a: np.ndarray, form: InnerProduct,
                       tol: TolerancePolicy = DEFAULT_TOL
                       ) -> AdditiveDecomposition:
    """Additive decomposition of a normal structured diagonalizable matrix.

    N = V D V^H from the first half of a unitary structured
    diagonalization; the neutrality of span(V) makes both products
    N N* and N* N vanish.
    """
    a = np.asarray(a, dtype=np.complex128)
    diag = unitary_refine(a, form, tol)
    n = form.half
    v = diag.transform[:, :n]
    n_mat = v @ np.diag(diag.core) @ herm_transpose(v)
    sign = sign_for_variant(diag.variant)
    residuals = _decomposition_residuals(a, n_mat, sign, form)
    if residuals.worst > 1e-8:
        raise NumericalBreakdown(
            f"decomposition residuals too large ({residuals.to_dict()})")
    return AdditiveDecomposition(n_mat, sign, form.tag, residuals)


def reconstruct_from_normal_factor(
        n_mat: np.ndarray, sign: Sign, form: InnerProduct,
        tol: TolerancePolicy = DEFAULT_TOL
) -> tuple[np.ndarray, StructuredDiagonalization]:
    """A = N +/- N* together with a certified unitary diagonalization.

    The rank-k eigenbasis of N spans a neutral subspace; when k < n it
    is extended to a Lagrangian frame (zero-padding the core) before the
    unitary automorphism is assembled.
    """
    n_mat = np.asarray(n_mat, dtype=np.complex128)
    if n_mat.shape[0] != form.dim:
        raise NotStructured("factor dimension does not match the form")
    n = form.half
    res_normal = rel_residual(herm_transpose(n_mat) @ n_mat,
                              n_mat @ herm_transpose(n_mat))
    if res_normal > tol.structure_tol:
        raise NotNormal(f"factor is not normal (residual {res_normal:.3e})")
    n_star = adjoint(n_mat, form)
    scale = max(1.0, fro(n_mat) * fro(n_star))
    res_left = fro(n_mat @ n_star) / scale
    res_right = fro(n_star @ n_mat) / scale
    if max(res_left, res_right) > tol.structure_tol:
        raise NotAnnihilating(
            f"N N* or N* N does not vanish ({res_left:.3e} / {res_right:.3e})")

    values, z = _unitary_eigh_normal(n_mat)
    mags = np.abs(values)
    cutoff = tol.rank_tol * (mags.max() if mags.size else 0.0)
    keep = np.flatnonzero(mags > cutoff)
    rank = keep.size
    if rank > n:
        raise NotNeutralRange(
            f"rank {rank} exceeds the maximal neutral dimension {n}")
    v0 = z[:, keep]
    if rank and fro(gram(v0, form)) > 1e-8 * max(1.0, fro(form.matrix)):
        raise NotNeutralRange("column space of N is not neutral")
    frame = complete_to_lagrangian(v0, form, tol)
    core = np.concatenate([values[keep], np.zeros(n - rank)]).astype(
        np.complex128)

    a = n_mat + sign.factor * n_star
    variant = (Variant.SELFADJOINT if sign is Sign.PLUS
               else Variant.SKEWADJOINT)
    q = build_unitary_automorphism(frame, form)
    full_diag = assemble_core_diagonal(core, form.tag, variant)
    res_auto = rel_residual(herm_transpose(q) @ form.matrix @ q, form.matrix)
    res_sim = rel_residual(herm_transpose(q) @ a @ q, np.diag(full_diag))
    res_unit = rel_residual(herm_transpose(q) @ q,
                            np.eye(2 * n, dtype=np.complex128))
    if max(res_auto, res_sim, res_unit) > 1e-8:
        raise NumericalBreakdown(
            f"reconstruction residuals too large (automorphism "
            f"{res_auto:.3e}, similarity {res_sim:.3e}, unitary "
            f"{res_unit:.3e})")
    diag = StructuredDiagonalization(
        transform=q, core=core, form_tag=form.tag, variant=variant,
        residual_automorphism=res_auto, residual_similarity=res_sim,
        unitary=True)
    return a, diag


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    residuals: DecompositionResiduals
    structure_residual: float
    normality_a_residual: float
    rank_ok: bool

    def to_dict(self) -> dict:
        d = self.residuals.to_dict()
        d.update({
            "structure": self.structure_residual,
            "normality_A": self.normality_a_residual,
            "rank_ok": self.rank_ok,
            "passed": self.passed,
        })
        return d


def verify_decomposition(a: np.ndarray, dec: AdditiveDecomposition,
                         form: InnerProduct,
                         tol: TolerancePolicy = DEFAULT_TOL
                         ) -> VerificationReport:
    """Recompute every decomposition residual; pass iff all are <= 1e-8."""
    a = np.asarray(a, dtype=np.complex128)
    if a.shape != dec.normal_factor.shape:
        raise NotStructured("matrix and factor dimensions differ")
    residuals = _decomposition_residuals(a, dec.normal_factor, dec.sign, form)
    a_star = adjoint(a, form)
    want = a if dec.sign is Sign.PLUS else -a
    structure_res = rel_residual(a_star, want)
    normal_res = rel_residual(herm_transpose(a) @ a, a @ herm_transpose(a))
    rank_ok = numerical_rank(dec.normal_factor, tol.rank_tol) <= form.half
    passed = (residuals.worst <= 1e-8 and structure_res <= 1e-8
              and normal_res <= 1e-8 and rank_ok)
    return VerificationReport(passed, residuals, structure_res, normal_res,
                              rank_ok)


def _exp_normal(a: np.ndarray) -> np.ndarray:
    """exp of a normal matrix through its unitary eigendecomposition."""
    values, z = _unitary_eigh_normal(a)
    return z @ np.diag(np.exp(values)) @ herm_transpose(z)


def structured_exp(dec: AdditiveDecomposition, form: InnerProduct,
                   tol: TolerancePolicy = DEFAULT_TOL
                   ) -> tuple[np.ndarray, np.ndarray]:
    """exp(A) written through S = exp(N).

    Returns (exp A, S) with exp A = S (S*)^{-1} for a minus
    decomposition and S S* for a plus decomposition.
    """
    s = _exp_normal(dec.normal_factor)
    s_star = adjoint(s, form)
    if dec.sign is Sign.MINUS:
        exp_a = s @ inverse(s_star, tol)
    else:
        exp_a = s @ s_star
    return exp_a, s


def structured_root(a: np.ndarray, p: int, form: InnerProduct,
                    tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Structured p-th root of a nonsingular normal selfadjoint matrix.

    X = N^{1/p} + (N^{1/p})* with the principal branch per eigenvalue;
    X^p = A because the annihilation kills every mixed product.
    """
    if p < 2:
        raise ValueError("root order p must be >= 2")
    a = np.asarray(a, dtype=np.complex128)
    if numerical_rank(a, tol.rank_tol) < a.shape[0]:
        raise SingularInput("matrix roots here require a nonsingular input")
    cls = classify(a, form, tol)
    if not cls.selfadjoint.ok:
        raise NotStructured(
            "structured roots require a selfadjoint matrix "
            f"(residual {cls.selfadjoint.residual:.3e})")
    dec = decompose_additive(a, form, tol)
    values, z = _unitary_eigh_normal(dec.normal_factor)
    # N has rank n; roots of the roundoff-level eigenvalues on its null
    # space would inject |eps|^(1/p) noise, so they are pinned to zero.
    mags = np.abs(values)
    keep = mags > tol.rank_tol * (mags.max() if mags.size else 0.0)
    root_values = np.where(
        keep, np.power(values.astype(np.complex128), 1.0 / p), 0.0)
    m_root = z @ np.diag(root_values) @ herm_transpose(z)
    x = m_root + adjoint(m_root, form)
    res = rel_residual(np.linalg.matrix_power(x, p), a)
    if res > 1e-7:
        raise NumericalBreakdown(f"root residual {res:.3e} exceeds 1e-7")
    return x
