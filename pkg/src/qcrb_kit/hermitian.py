"""Dense complex-Hermitian linear algebra kernel.

Cyclic Jacobi eigendecomposition, PSD matrix square root, eigenbasis
solves of the symmetrized-product equation, and trace algebra. All
operations are pure functions of immutable inputs; matrices are small
and dense (target scale n <= 16, hard ceiling 64).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable

import numpy as np

from .errors import (
    DimensionError,
    EigenConvergenceError,
    NotDensityMatrix,
    NotHermitianError,
    NotPositiveSemidefinite,
    RankDeficientInconsistent,
)

HERMITICITY_ATOL = 1e-12
DENSITY_TRACE_ATOL = 1e-10
DENSITY_EIG_FLOOR = -1e-10
SQRT_EIG_FLOOR = -1e-8
SUPPORT_TOL = 1e-12
DROPPED_RHS_ATOL = 1e-6
UNIT_NORM_ATOL = 1e-12
JACOBI_MAX_SWEEPS = 100
JACOBI_OFF_FACTOR = 1e-14
DIM_CEILING = 64


def as_array(m) -> np.ndarray:
    """Unwrap HermitianMatrix / DensityMatrix / array-likes to a complex ndarray."""
    if isinstance(m, DensityMatrix):
        return m.matrix.mat
    if isinstance(m, HermitianMatrix):
        return m.mat
    return np.asarray(m, dtype=complex)


class HermitianMatrix:
    """Dense complex Hermitian matrix, symmetrized exactly on construction.

    Rejects input whose deviation from its conjugate transpose exceeds
    ``HERMITICITY_ATOL`` entrywise; the stored matrix is (A + A*)/2 with
    an exactly real diagonal, and is read-only.
    """

    __slots__ = ("mat",)

    def __init__(self, entries):
        a = np.asarray(entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {a.shape}")
        if a.shape[0] > DIM_CEILING:
            raise DimensionError(f"dimension {a.shape[0]} exceeds ceiling {DIM_CEILING}")
        if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
            raise ValueError("matrix entries must be finite")
        dev = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
        if dev > HERMITICITY_ATOL:
            raise NotHermitianError(
                f"max deviation from conjugate transpose {dev:.3e} > {HERMITICITY_ATOL}"
            )
        h = (a + a.conj().T) / 2.0
        idx = np.arange(h.shape[0])
        h[idx, idx] = h[idx, idx].real
        h.setflags(write=False)
        self.mat = h

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @classmethod
    def identity(cls, n: int) -> "HermitianMatrix":
        return cls(np.eye(n))

    def __repr__(self) -> str:
        return f"HermitianMatrix(dim={self.dim})"


class UnitVector:
    """Complex vector with Euclidean norm 1 within ``UNIT_NORM_ATOL``."""

    __slots__ = ("vec",)

    def __init__(self, entries):
        v = np.asarray(entries, dtype=complex).reshape(-1)
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > UNIT_NORM_ATOL:
            raise ValueError(f"vector norm {norm!r} is not 1 within {UNIT_NORM_ATOL}")
        v.setflags(write=False)
        self.vec = v

    @property
    def dim(self) -> int:
        return self.vec.shape[0]

    def projector(self) -> np.ndarray:
        return np.outer(self.vec, self.vec.conj())

    def __repr__(self) -> str:
        return f"UnitVector(dim={self.dim})"


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def projectors(self) -> list[np.ndarray]:
        u = self.eigenvectors
        return [np.outer(u[:, j], u[:, j].conj()) for j in range(self.dim)]

    def reconstruct(self) -> np.ndarray:
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.conj().T


class DensityMatrix:
    """Hermitian, PSD, unit-trace matrix; caches its spectral decomposition.

    Eigenvalues in [-1e-10, 0] are tolerated (finite-difference noise) and
    treated as 0 by consumers; anything lower is rejected.
    """

    __slots__ = ("matrix", "_decomp")

    def __init__(self, entries):
        m = entries if isinstance(entries, HermitianMatrix) else HermitianMatrix(entries)
        tr = np.trace(m.mat).real
        if abs(tr - 1.0) > DENSITY_TRACE_ATOL:
            raise NotDensityMatrix(f"trace {tr!r} is not 1 within {DENSITY_TRACE_ATOL}")
        decomp = eigh(m)
        lam_min = float(decomp.eigenvalues[0])
        if lam_min < DENSITY_EIG_FLOOR:
            raise NotPositiveSemidefinite(
                f"eigenvalue {lam_min:.3e} below floor {DENSITY_EIG_FLOOR}"
            )
        self.matrix = m
        self._decomp = decomp

    @property
    def mat(self) -> np.ndarray:
        return self.matrix.mat

    @property
    def dim(self) -> int:
        return self.matrix.dim

    @property
    def decomposition(self) -> SpectralDecomposition:
        return self._decomp

    @property
    def eigenvalues(self) -> np.ndarray:
        return self._decomp.eigenvalues

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


def _fix_phases(vecs: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real positive.

    np.argmax breaks exact-magnitude ties at the lowest index.
    """
    out = vecs.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        k = int(np.argmax(np.abs(col)))
        pivot = col[k]
        mag = abs(pivot)
        if mag > 0.0:
            out[:, j] = col * (pivot.conjugate() / mag)
    return out


def _off_diag_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def eigh(m) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Each rotation zeroes one off-diagonal pair: the pivot's phase is
    absorbed first, then a real Jacobi rotation is applied. Stops when the
    off-diagonal Frobenius norm falls below 1e-14 * ||m||_F, capped at 100
    sweeps. Eigenvalues come back ascending; eigenvector phases are fixed
    deterministically (largest-magnitude component real positive).
    """
    a0 = as_array(m)
    if a0.ndim != 2 or a0.shape[0] != a0.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a0.shape}")
    a = (a0 + a0.conj().T) / 2.0
    n = a.shape[0]
    u = np.eye(n, dtype=complex)
    fnorm = float(np.linalg.norm(a))
    thresh = JACOBI_OFF_FACTOR * fnorm
    converged = n <= 1 or fnorm == 0.0 or _off_diag_norm(a) <= thresh
    sweeps = 0
    while not converged and sweeps < JACOBI_MAX_SWEEPS:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                absq = abs(apq)
                if absq == 0.0:
                    continue
                phase = apq / absq
                tau = (a[q, q].real - a[p, p].real) / (2.0 * absq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                jj = np.array(
                    [[c, s], [-s * phase.conjugate(), c * phase.conjugate()]],
                    dtype=complex,
                )
                a[[p, q], :] = jj.conj().T @ a[[p, q], :]
                a[:, [p, q]] = a[:, [p, q]] @ jj
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                u[:, [p, q]] = u[:, [p, q]] @ jj
        sweeps += 1
        converged = _off_diag_norm(a) <= thresh
    if not converged:
        raise EigenConvergenceError(
            f"no convergence after {JACOBI_MAX_SWEEPS} sweeps: "
            f"dim={n}, ||m||_F={fnorm:.3e}, off-diagonal={_off_diag_norm(a):.3e}, "
            f"threshold={thresh:.3e}"
        )
    vals = np.diag(a).real.copy()
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    vecs = _fix_phases(u[:, order])
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return SpectralDecomposition(eigenvalues=vals, eigenvectors=vecs)


def _decomposition_of(a) -> SpectralDecomposition:
    if isinstance(a, DensityMatrix):
        return a.decomposition
    return eigh(a)


def sqrt_eigenvalues(eigenvalues: np.ndarray) -> np.ndarray:
    """Square roots of PSD eigenvalues with the support convention applied.

    Eigenvalues at or below SUPPORT_TOL are treated as exactly 0: taking
    sqrt of rounding noise (~1e-16) would otherwise inject ~1e-8 spurious
    components into the root of a rank-deficient matrix.
    """
    lam = np.asarray(eigenvalues, dtype=float)
    return np.where(lam > SUPPORT_TOL, np.sqrt(np.clip(lam, 0.0, None)), 0.0)


def psd_sqrt(d) -> HermitianMatrix:
    """Unique PSD square root of a PSD Hermitian matrix.

    Eigenvalues in [-1e-8, SUPPORT_TOL] are flattened to 0 (tolerated
    noise / support convention); anything below -1e-8 raises
    NotPositiveSemidefinite.
    """
    dec = _decomposition_of(d)
    lam_min = float(dec.eigenvalues[0])
    if lam_min < SQRT_EIG_FLOOR:
        raise NotPositiveSemidefinite(
            f"eigenvalue {lam_min:.3e} below floor {SQRT_EIG_FLOOR}"
        )
    roots = sqrt_eigenvalues(dec.eigenvalues)
    u = dec.eigenvectors
    return HermitianMatrix((u * roots) @ u.conj().T)


def solve_symmetric_product(
    a,
    rhs,
    tol: float = SUPPORT_TOL,
    *,
    decomposition: SpectralDecomposition | None = None,
) -> HermitianMatrix:
    """Solve (1/2)(a X + X a) = rhs for Hermitian X, a PSD.

    In a's eigenbasis X_ij = 2 r_ij / (lam_i + lam_j); pairs with
    lam_i + lam_j <= tol are zeroed (support convention). A zeroed pair
    whose transformed right-hand side exceeds DROPPED_RHS_ATOL means rhs
    is not supported on the range of a and raises RankDeficientInconsistent.

    ``decomposition`` lets a caller reuse a cached eigendecomposition of a.
    """
    r_mat = as_array(rhs)
    a_mat = as_array(a)
    if a_mat.shape != r_mat.shape:
        raise DimensionError(f"shape mismatch: {a_mat.shape} vs {r_mat.shape}")
    dec = decomposition if decomposition is not None else _decomposition_of(a)
    lam = dec.eigenvalues
    u = dec.eigenvectors
    r_tilde = u.conj().T @ r_mat @ u
    denom = lam[:, None] + lam[None, :]
    keep = denom > tol
    dropped = ~keep
    if np.any(dropped):
        worst = float(np.max(np.abs(r_tilde[dropped])))
        if worst > DROPPED_RHS_ATOL:
            raise RankDeficientInconsistent(
                f"right-hand side has weight {worst:.3e} outside the support "
                f"(tol={tol})"
            )
    x_tilde = np.zeros_like(r_tilde)
    x_tilde[keep] = 2.0 * r_tilde[keep] / denom[keep]
    return HermitianMatrix(u @ x_tilde @ u.conj().T)


def trace_product(ms: Iterable) -> complex:
    """Trace of the ordered product of the given matrices."""
    arrays = [as_array(m) for m in ms]
    if not arrays:
        raise DimensionError("trace_product needs at least one matrix")
    for left, right in zip(arrays, arrays[1:]):
        if left.shape[1] != right.shape[0]:
            raise DimensionError(f"shape mismatch: {left.shape} @ {right.shape}")
    if arrays[0].shape[0] != arrays[-1].shape[1]:
        raise DimensionError("product is not square; trace undefined")
    return complex(np.trace(reduce(np.matmul, arrays)))


def real_trace_product(ms: Iterable, imag_tol: float = 1e-10) -> float:
    """Trace of a product that must be real; the imaginary residue is checked."""
    value = trace_product(ms)
    if abs(value.imag) > imag_tol:
        raise ValueError(f"trace has imaginary residue {value.imag:.3e} > {imag_tol}")
    return value.real
