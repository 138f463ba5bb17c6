"""Structure-preserving diagonalization for the J and R forms.

The decision procedure tests, per critical-axis eigenvalue, whether the
eigenspace Gram has balanced inertia. The constructive routine then
rescales conjugate-pair eigenbases so their cross Gram becomes the
identity, maps each critical eigenspace Gram onto a canonical balanced
pattern by congruence, and routes partner columns into the positions
that reproduce the form matrix exactly. Lagrangian completion turns any
neutral frame into a full Lagrangian frame by pairing positive and
negative directions of the complement Gram.
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
    orthonormalize_columns,
    rel_residual,
    solve_linear,
    unit_phase_columns,
)
from .errors import (
    FrameTooLarge,
    NotDiagonalizable,
    NotNeutral,
    NotNormal,
    NotStructured,
    NotStructuredDiagonalizable,
    NumericalBreakdown,
)
from .forms import (
    FormKind,
    FormTag,
    Inertia,
    InnerProduct,
    congruence_to,
    gram,
    inertia,
    symplectic_j,
)
from .spectral import (
    AxisClass,
    eigen,
    group_eigenvalues,
    is_diagonalizable,
    pair_conjugates,
)
from .structure import build_unitary_automorphism, classify


class Variant(enum.Enum):
    SELFADJOINT = "selfadjoint"
    SKEWADJOINT = "skewadjoint"


@dataclass(frozen=True)
class EigenvalueBalance:
    value: complex
    axis_class: AxisClass
    multiplicity: int
    gram_inertia: Inertia
    balanced: bool


@dataclass(frozen=True)
class DiagonalizabilityReport:
    decision: bool
    variant: Variant
    per_eigenvalue: tuple[EigenvalueBalance, ...]
    reason: str

    def to_dict(self) -> dict:
        return {
            "decision": self.decision,
            "variant": self.variant.value,
            "per_eigenvalue": [
                {
                    "value": [e.value.real, e.value.imag],
                    "axis_class": e.axis_class.value,
                    "multiplicity": e.multiplicity,
                    "gram_inertia": list(e.gram_inertia.counts),
                    "balanced": e.balanced,
                }
                for e in self.per_eigenvalue
            ],
            "reason": self.reason,
        }


@dataclass(frozen=True)
class StructuredDiagonalization:
    """Automorphism S with S^{-1} A S equal to the canonical diagonal.

    ``core`` holds the first-half diagonal d_1..d_n; the full diagonal
    follows the variant's mirror pattern (see assemble_core_diagonal).
    """

    transform: np.ndarray
    core: np.ndarray
    form_tag: FormTag
    variant: Variant
    residual_automorphism: float
    residual_similarity: float
    unitary: bool

    @property
    def full_diagonal(self) -> np.ndarray:
        return assemble_core_diagonal(self.core, self.form_tag, self.variant)

    @property
    def diagonal_matrix(self) -> np.ndarray:
        return np.diag(self.full_diagonal)


def assemble_core_diagonal(core: np.ndarray, form_tag: FormTag,
                           variant: Variant) -> np.ndarray:
    """Mirror the core d into the canonical structured diagonal.

    J form:  diag(d, +conj d) selfadjoint, diag(d, -conj d) skewadjoint.
    R form:  second half reversed, diag(d, +/- conj d reversed).
    """
    core = np.asarray(core, dtype=np.complex128)
    sign = 1.0 if variant is Variant.SELFADJOINT else -1.0
    mirror = sign * np.conj(core)
    if form_tag is FormTag.PERPLECTIC_R:
        mirror = mirror[::-1]
    elif form_tag is not FormTag.SYMPLECTIC_J:
        raise NotStructured("canonical diagonals exist for the J and R forms")
    return np.concatenate([core, mirror])


def _variant_of(a: np.ndarray, form: InnerProduct,
                tol: TolerancePolicy) -> Variant:
    report = classify(a, form, tol)
    if report.selfadjoint.ok:
        return Variant.SELFADJOINT
    if report.skewadjoint.ok:
        return Variant.SKEWADJOINT
    raise NotStructured(
        "matrix is neither selfadjoint nor skewadjoint for this form "
        f"(residuals {report.selfadjoint.residual:.3e} / "
        f"{report.skewadjoint.residual:.3e})",
        min(report.selfadjoint.residual, report.skewadjoint.residual))


def _critical_classes(variant: Variant) -> set[AxisClass]:
    if variant is Variant.SELFADJOINT:
        return {AxisClass.REAL, AxisClass.BOTH}
    return {AxisClass.PURELY_IMAGINARY, AxisClass.BOTH}


def diagonalizability_report(a: np.ndarray, form: InnerProduct,
                             tol: TolerancePolicy = DEFAULT_TOL
                             ) -> DiagonalizabilityReport:
    """Balance test of every critical-axis eigenspace Gram.

    Selfadjoint matrices are obstructed only by real eigenvalues,
    skewadjoint ones only by purely imaginary eigenvalues; zero counts
    for both. The decision is the conjunction of the balance flags.
    """
    if form.tag not in (FormTag.SYMPLECTIC_J, FormTag.PERPLECTIC_R):
        raise NotStructured("diagonalizability analysis targets J or R forms")
    a = np.asarray(a, dtype=np.complex128)
    variant = _variant_of(a, form, tol)
    if not is_diagonalizable(a, tol):
        raise NotDiagonalizable(
            "matrix has an eigenvalue with deficient eigenspace")
    groups = group_eigenvalues(eigen(a), tol)
    critical = _critical_classes(variant)
    entries = []
    unbalanced_values = []
    for g in groups:
        if g.axis_class not in critical:
            continue
        g_inertia = inertia(gram(g.basis, form), form.kind, tol)
        balanced = g_inertia.balanced
        entries.append(EigenvalueBalance(
            value=g.value,
            axis_class=g.axis_class,
            multiplicity=g.multiplicity,
            gram_inertia=g_inertia,
            balanced=balanced,
        ))
        if not balanced:
            unbalanced_values.append(g.value)
    decision = all(e.balanced for e in entries)
    if decision:
        reason = ("no critical-axis eigenvalues" if not entries
                  else "all critical-axis eigenspace Grams are balanced")
    else:
        listed = ", ".join(f"{v:.6g}" for v in unbalanced_values)
        reason = f"unbalanced eigenspace Gram at eigenvalue(s) {listed}"
    return DiagonalizabilityReport(decision, variant, tuple(entries), reason)


def _balanced_target(form: InnerProduct, m: int) -> np.ndarray:
    """Canonical balanced Gram for a 2m-dimensional critical eigenspace."""
    if form.tag is FormTag.SYMPLECTIC_J:
        return symplectic_j(m)
    t = np.zeros((2 * m, 2 * m), dtype=np.complex128)
    t[:m, m:] = np.eye(m)
    t[m:, :m] = np.eye(m)
    return t


def _route_partners(x_cols: np.ndarray, y_cols: np.ndarray,
                    form_tag: FormTag) -> np.ndarray:
    """Place partner columns at (j, n+j) for J and (j, 2n+1-j) for R."""
    n = x_cols.shape[1]
    if form_tag is FormTag.SYMPLECTIC_J:
        return np.hstack([x_cols, y_cols])
    return np.hstack([x_cols, y_cols[:, ::-1]])


def structured_diagonalize(a: np.ndarray, form: InnerProduct,
                           tol: TolerancePolicy = DEFAULT_TOL
                           ) -> StructuredDiagonalization:
    """Diagonalize by an automorphism of the J or R form.

    Skewadjoint input is handled through the selfadjoint core applied to
    i A, with the core diagonal divided by i afterwards. The selfadjoint
    core works per eigenvalue group:

    (a) for a conjugate pair, rescale the primary basis by the inverse
        Hermitian transpose of the cross Gram, making the cross Gram I;
    (b) for a critical-axis eigenvalue, congruence-map the eigenspace
        Gram onto the canonical balanced pattern;
    (c) route partner columns into form positions, ascending by the
        final core eigenvalue.
    """
    a = np.asarray(a, dtype=np.complex128)
    report = diagonalizability_report(a, form, tol)
    if not report.decision:
        raise NotStructuredDiagonalizable(report.reason, report)
    variant = report.variant
    n = form.half
    b = form.matrix

    a_hat = a if variant is Variant.SELFADJOINT else 1j * a
    groups = group_eigenvalues(eigen(a_hat), tol)
    pairing = pair_conjugates(groups, tol)

    # Collected partner pairs: (x column, y column, eigenvalue of x in a_hat).
    x_parts, y_parts, x_values = [], [], []

    for (gi, gj) in pairing.pairs:
        s_l = groups[gi].basis
        s_c = groups[gj].basis
        cross = herm_transpose(s_l) @ b @ s_c
        s_l = s_l @ herm_transpose(inverse(cross, tol))
        x_parts.append(s_l)
        y_parts.append(s_c)
        x_values.append(np.full(s_l.shape[1], groups[gi].value))

    for gi in pairing.selfconjugate:
        g = groups[gi]
        if g.multiplicity % 2 != 0:
            raise NotStructuredDiagonalizable(
                f"critical eigenvalue {g.value:.6g} has odd multiplicity "
                f"{g.multiplicity}", report)
        m = g.multiplicity // 2
        g_gram = gram(g.basis, form)
        t = congruence_to(g_gram, _balanced_target(form, m), form.kind, tol)
        w = g.basis @ t
        x_parts.append(w[:, :m])
        y_parts.append(w[:, m:])
        x_values.append(np.full(m, g.value))

    x_cols = np.hstack(x_parts)
    y_cols = np.hstack(y_parts)
    hat_values = np.concatenate(x_values)
    core = hat_values if variant is Variant.SELFADJOINT else hat_values / 1j

    order = np.lexsort((core.imag, core.real))
    x_cols, y_cols, core = x_cols[:, order], y_cols[:, order], core[order]

    s = _route_partners(x_cols, y_cols, form.tag)
    full_diag = assemble_core_diagonal(core, form.tag, variant)

    res_auto = rel_residual(herm_transpose(s) @ b @ s, b)
    res_sim = rel_residual(solve_linear(s, a @ s, tol), np.diag(full_diag))
    if res_auto > 1e-8 or res_sim > 1e-8:
        raise NumericalBreakdown(
            f"diagonalization residuals too large (automorphism "
            f"{res_auto:.3e}, similarity {res_sim:.3e})")
    unitary = rel_residual(herm_transpose(s) @ s,
                           np.eye(2 * n, dtype=np.complex128)) <= 1e-8
    return StructuredDiagonalization(
        transform=s, core=core, form_tag=form.tag, variant=variant,
        residual_automorphism=res_auto, residual_similarity=res_sim,
        unitary=unitary)


def unitary_refine(a: np.ndarray, form: InnerProduct,
                   tol: TolerancePolicy = DEFAULT_TOL
                   ) -> StructuredDiagonalization:
    """Unitary automorphism diagonalizing a normal structured matrix.

    Orthonormalizes the first-half eigenvector frame of the structured
    diagonalizer within each eigenvalue group (groups for distinct
    eigenvalues are orthogonal already, by normality) and rebuilds the
    transform from the resulting orthonormal Lagrangian frame.
    """
    a = np.asarray(a, dtype=np.complex128)
    cls = classify(a, form, tol)
    if not cls.euclidean_normal.ok:
        raise NotNormal(
            f"matrix is not normal (residual {cls.euclidean_normal.residual:.3e})")
    diag = structured_diagonalize(a, form, tol)
    n = form.half
    t1 = diag.transform[:, :n]
    core = diag.core

    v = np.array(t1, copy=True)
    radius = tol.cluster_tol * max(1.0, float(np.max(np.abs(core))))
    remaining = list(range(n))
    while remaining:
        j = remaining[0]
        members = [k for k in remaining if abs(core[k] - core[j]) <= radius]
        cols = np.array(members)
        v[:, cols] = orthonormalize_columns(t1[:, cols], tol)
        remaining = [k for k in remaining if k not in members]
    v = unit_phase_columns(v)

    q = build_unitary_automorphism(v, form)
    full_diag = assemble_core_diagonal(core, form.tag, diag.variant)
    res_auto = rel_residual(herm_transpose(q) @ form.matrix @ q, form.matrix)
    res_sim = rel_residual(herm_transpose(q) @ a @ q, np.diag(full_diag))
    res_unit = rel_residual(herm_transpose(q) @ q,
                            np.eye(2 * n, dtype=np.complex128))
    if max(res_auto, res_sim, res_unit) > 1e-8:
        raise NumericalBreakdown(
            f"unitary refinement residuals too large (automorphism "
            f"{res_auto:.3e}, similarity {res_sim:.3e}, unitary "
            f"{res_unit:.3e})")
    return StructuredDiagonalization(
        transform=q, core=core, form_tag=form.tag, variant=diag.variant,
        residual_automorphism=res_auto, residual_similarity=res_sim,
        unitary=True)


def complete_to_lagrangian(v: np.ndarray | None, form: InnerProduct,
                           tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Extend an orthonormal neutral frame to an orthonormal Lagrangian one.

    The completion lives in the Euclidean orthogonal complement of
    span(V) and span(BV). Each new column combines a positive and a
    negative eigendirection of the complement Gram so the combination is
    neutral; distinct combinations stay orthogonal in both senses. The
    input columns are returned unchanged in the leading positions.
    """
    if form.tag not in (FormTag.SYMPLECTIC_J, FormTag.PERPLECTIC_R):
        raise NotStructured("Lagrangian completion targets the J or R forms")
    n = form.half
    b = form.matrix
    if v is None:
        v = np.zeros((2 * n, 0), dtype=np.complex128)
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim != 2 or v.shape[0] != 2 * n:
        raise NotStructured(f"frame must have {2 * n} rows")
    k = v.shape[1]
    if k > n:
        raise FrameTooLarge(
            f"a neutral frame in dimension {2 * n} has at most {n} columns")
    if k:
        res_orth = fro(herm_transpose(v) @ v - np.eye(k))
        if res_orth > 1e-9:
            raise NotNeutral(
                f"frame columns are not orthonormal (residual {res_orth:.3e})")
        res_neut = fro(gram(v, form))
        if res_neut > 1e-9:
            raise NotNeutral(
                f"frame span is not neutral (residual {res_neut:.3e})")
    if k == n:
        return v.copy()

    if k:
        w = scipy.linalg.null_space(herm_transpose(np.hstack([v, b @ v])))
    else:
        w = np.eye(2 * n, dtype=np.complex128)
    if w.shape[1] != 2 * (n - k):
        raise NumericalBreakdown(
            f"complement dimension {w.shape[1]} != {2 * (n - k)}")

    m = herm_transpose(w) @ b @ w
    if form.kind is FormKind.SKEW_HERMITIAN:
        hermitian = -1j * (m - herm_transpose(m)) / 2.0
    else:
        hermitian = (m + herm_transpose(m)) / 2.0
    kappa, u = np.linalg.eigh(hermitian)
    half = n - k
    if np.count_nonzero(kappa < 0) != half or np.count_nonzero(kappa > 0) != half:
        raise NumericalBreakdown("complement Gram is not balanced")
    neg_idx = np.argsort(kappa)[:half]
    pos_idx = np.argsort(kappa)[half:]
    new_cols = []
    for i in range(half):
        k_neg, k_pos = kappa[neg_idx[i]], kappa[pos_idx[i]]
        x = (np.sqrt(-k_neg) * u[:, pos_idx[i]]
             + np.sqrt(k_pos) * u[:, neg_idx[i]])
        x /= np.linalg.norm(x)
        new_cols.append(w @ x)
    out = np.hstack([v] + [c[:, None] for c in new_cols])

    res_orth = fro(herm_transpose(out) @ out - np.eye(n))
    res_neut = fro(gram(out, form))
    if res_orth > 1e-9 or res_neut > 1e-9:
        raise NumericalBreakdown(
            f"completion residuals too large (orthonormality {res_orth:.3e}, "
            f"neutrality {res_neut:.3e})")
    return out
