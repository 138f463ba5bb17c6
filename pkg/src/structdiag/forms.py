"""Indefinite inner products [x, y] = x^H B y and their basic calculus.

Covers the canonical symplectic and perplectic forms as well as custom
nonsingular (skew-)Hermitian B: adjoints, Gram matrices, neutrality and
nondegeneracy tests, inertia, and constructive congruence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    TolerancePolicy,
    as_matrix,
    fro,
    herm_transpose,
    numerical_rank,
    rel_residual,
    solve_linear,
)
from .errors import (
    DimensionMismatch,
    InertiaMismatch,
    InvalidSize,
    NotStructured,
    RankDeficient,
)


class FormKind(enum.Enum):
    HERMITIAN = "hermitian"
    SKEW_HERMITIAN = "skew-hermitian"


class FormTag(enum.Enum):
    EUCLIDEAN = "euclidean"
    SYMPLECTIC_J = "symplectic"
    PERPLECTIC_R = "perplectic"
    CUSTOM = "custom"


def symplectic_j(n: int) -> np.ndarray:
    """[[0, I_n], [-I_n, 0]], the canonical skew-Hermitian form matrix."""
    if n < 1:
        raise InvalidSize("n must be >= 1")
    j = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    j[:n, n:] = np.eye(n)
    j[n:, :n] = -np.eye(n)
    return j


def flip(m: int) -> np.ndarray:
    """Anti-identity (exchange) matrix of size m."""
    if m < 1:
        raise InvalidSize("m must be >= 1")
    return np.fliplr(np.eye(m, dtype=np.complex128))


def perplectic_r(n: int) -> np.ndarray:
    """The 2n x 2n exchange matrix, a Hermitian involution."""
    return flip(2 * n)


@dataclass(frozen=True, eq=False)
class InnerProduct:
    """A nonsingular (skew-)Hermitian B defining [x, y] = x^H B y."""

    matrix: np.ndarray
    kind: FormKind
    tag: FormTag

    def __post_init__(self):
        b = self.matrix
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise DimensionMismatch("form matrix must be square")
        if numerical_rank(b, DEFAULT_TOL.rank_tol) < b.shape[0]:
            raise NotStructured("form matrix must be nonsingular")
        bh = herm_transpose(b)
        if self.kind is FormKind.HERMITIAN:
            res = rel_residual(b, bh)
        else:
            res = rel_residual(b, -bh)
        if res > DEFAULT_TOL.structure_tol:
            raise NotStructured(
                f"form matrix fails its {self.kind.value} symmetry", res)
        if self.tag is FormTag.SYMPLECTIC_J and not np.array_equal(
                b, symplectic_j(b.shape[0] // 2)):
            raise NotStructured("symplectic tag requires the exact J matrix")
        if self.tag is FormTag.PERPLECTIC_R and not np.array_equal(
                b, perplectic_r(b.shape[0] // 2)):
            raise NotStructured("perplectic tag requires the exact R matrix")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def half(self) -> int:
        """n for a 2n-dimensional J or R form."""
        return self.dim // 2


def symplectic_form(n: int) -> InnerProduct:
    return InnerProduct(symplectic_j(n), FormKind.SKEW_HERMITIAN,
                        FormTag.SYMPLECTIC_J)


def perplectic_form(n: int) -> InnerProduct:
    return InnerProduct(perplectic_r(n), FormKind.HERMITIAN,
                        FormTag.PERPLECTIC_R)


def euclidean_form(m: int) -> InnerProduct:
    if m < 1:
        raise InvalidSize("m must be >= 1")
    return InnerProduct(np.eye(m, dtype=np.complex128), FormKind.HERMITIAN,
                        FormTag.EUCLIDEAN)


def custom_form(b, kind: FormKind) -> InnerProduct:
    return InnerProduct(as_matrix(b), kind, FormTag.CUSTOM)


def make_form(tag: FormTag, n: int) -> InnerProduct:
    """Canonical form for a tag; n is the half-dimension for J and R."""
    if tag is FormTag.SYMPLECTIC_J:
        return symplectic_form(n)
    if tag is FormTag.PERPLECTIC_R:
        return perplectic_form(n)
    if tag is FormTag.EUCLIDEAN:
        return euclidean_form(n)
    raise InvalidSize("custom forms carry their own matrix; use custom_form")


def _check_dim(a: np.ndarray, form: InnerProduct):
    if a.shape[0] != form.dim:
        raise DimensionMismatch(
            f"matrix rows {a.shape[0]} do not match form dimension {form.dim}")


def adjoint(a: np.ndarray, form: InnerProduct) -> np.ndarray:
    """Form adjoint B^{-1} A^H B."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch("adjoint requires a square matrix")
    _check_dim(a, form)
    b = form.matrix
    return solve_linear(b, herm_transpose(a) @ b)


def gram(v: np.ndarray, form: InnerProduct) -> np.ndarray:
    """Gram matrix V^H B V of a column frame."""
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim != 2:
        raise DimensionMismatch("frame must be 2-D")
    _check_dim(v, form)
    return herm_transpose(v) @ form.matrix @ v


def is_neutral(v: np.ndarray, form: InnerProduct,
               tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """True when the Gram of the frame vanishes at the structure tolerance."""
    v = np.asarray(v, dtype=np.complex128)
    if v.shape[1] == 0:
        return True
    if numerical_rank(v, tol.rank_tol) < v.shape[1]:
        raise RankDeficient("frame columns are numerically dependent")
    g = gram(v, form)
    scale = max(1.0, fro(v) ** 2 * fro(form.matrix))
    return fro(g) <= tol.structure_tol * scale


def is_nondegenerate(v: np.ndarray, form: InnerProduct,
                     tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """True when the Gram of the frame has full numerical rank."""
    v = np.asarray(v, dtype=np.complex128)
    if v.shape[1] == 0:
        return True
    if numerical_rank(v, tol.rank_tol) < v.shape[1]:
        raise RankDeficient("frame columns are numerically dependent")
    return numerical_rank(gram(v, form), tol.rank_tol) == v.shape[1]


@dataclass(frozen=True)
class Inertia:
    """Counts (p, q, r) of negative, positive, and zero eigenvalues.

    For skew-Hermitian input the counts refer to the imaginary parts and
    alpha is i; for Hermitian input alpha is 1.
    """

    p: int
    q: int
    r: int
    alpha: complex

    @property
    def counts(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)

    @property
    def balanced(self) -> bool:
        return self.p == self.q and self.r == 0


def _hermitian_part_for(h: np.ndarray, kind: FormKind,
                        tol: TolerancePolicy) -> np.ndarray:
    """Map H (or -iH) to a genuinely Hermitian matrix, checking symmetry."""
    h = np.asarray(h, dtype=np.complex128)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionMismatch("inertia requires a square matrix")
    hh = herm_transpose(h)
    if kind is FormKind.HERMITIAN:
        res = rel_residual(h, hh)
        if res > tol.structure_tol:
            raise NotStructured("matrix is not Hermitian", res)
        return (h + hh) / 2.0
    res = rel_residual(h, -hh)
    if res > tol.structure_tol:
        raise NotStructured("matrix is not skew-Hermitian", res)
    return -1j * (h - hh) / 2.0


def inertia(h: np.ndarray, kind: FormKind,
            tol: TolerancePolicy = DEFAULT_TOL) -> Inertia:
    """Sylvester inertia of a (skew-)Hermitian matrix."""
    k = _hermitian_part_for(h, kind, tol)
    w = np.linalg.eigvalsh(k)
    zero_cut = tol.class_tol * fro(h)
    r = int(np.count_nonzero(np.abs(w) <= zero_cut))
    p = int(np.count_nonzero(w < -zero_cut))
    q = int(np.count_nonzero(w > zero_cut))
    alpha = 1.0 if kind is FormKind.HERMITIAN else 1j
    return Inertia(p, q, r, alpha)


def sylvester_canonical(h: np.ndarray, kind: FormKind,
                        tol: TolerancePolicy = DEFAULT_TOL
                        ) -> tuple[np.ndarray, Inertia]:
    """Nonsingular U with U^H H U = diag(-alpha I_p, alpha I_q, 0_r).

    Built from the unitary eigendecomposition of H (or -iH), columns for
    nonzero eigenvalues scaled by 1/sqrt(|eigenvalue|); ordering is
    negatives, then positives, then zeros.
    """
    k = _hermitian_part_for(h, kind, tol)
    w, u = np.linalg.eigh(k)
    zero_cut = tol.class_tol * fro(h)
    neg = np.flatnonzero(w < -zero_cut)
    pos = np.flatnonzero(w > zero_cut)
    zer = np.flatnonzero(np.abs(w) <= zero_cut)
    order = np.concatenate([neg, pos, zer]).astype(int)
    scales = np.ones(w.shape[0])
    nz = np.concatenate([neg, pos]).astype(int)
    scales[nz] = 1.0 / np.sqrt(np.abs(w[nz]))
    u_scaled = (u * scales)[:, order]
    alpha = 1.0 if kind is FormKind.HERMITIAN else 1j
    return u_scaled, Inertia(len(neg), len(pos), len(zer), alpha)


def canonical_inertia_matrix(inert: Inertia) -> np.ndarray:
    """diag(-alpha I_p, alpha I_q, 0_r) for the given inertia."""
    d = np.concatenate([
        -inert.alpha * np.ones(inert.p),
        inert.alpha * np.ones(inert.q),
        np.zeros(inert.r),
    ]).astype(np.complex128)
    return np.diag(d)


def congruence_to(h: np.ndarray, c: np.ndarray, kind: FormKind,
                  tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Nonsingular S with S^H H S = C, provided H and C share their inertia.

    Both sides are routed through sylvester_canonical; the shared
    negatives/positives/zeros ordering makes the alignment permutation the
    identity.
    """
    h = np.asarray(h, dtype=np.complex128)
    c = np.asarray(c, dtype=np.complex128)
    if h.shape != c.shape:
        raise DimensionMismatch("congruent matrices must share dimensions")
    u_h, in_h = sylvester_canonical(h, kind, tol)
    u_c, in_c = sylvester_canonical(c, kind, tol)
    if in_h.counts != in_c.counts:
        raise InertiaMismatch(
            f"inertia {in_h.counts} differs from target {in_c.counts}")
    return u_h @ solve_linear(u_c, np.eye(u_c.shape[0], dtype=np.complex128),
                              tol)
