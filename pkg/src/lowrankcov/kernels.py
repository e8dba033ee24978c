"""Finite-rank covariance kernels in basis coordinates.

A kernel ``K(t, u) = sum_m lam_m phi_m(t) phi_m(u)`` is stored through its
eigenvalues and the basis coefficients of its eigenfunctions up to a
truncation horizon ``l_max``.  All norms, projections and risks downstream
reduce to array arithmetic on these coefficients.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from ._validation import check_level, check_positive, readonly
from .basis import basis_matrix

#: Stored specs must have eigenfunction rows orthonormal to this tolerance.
ORTHONORMAL_TOL = 1e-10

#: Gram-Schmidt rejects a row whose residual norm falls below this fraction.
DEPENDENT_ROW_TOL = 1e-8


def _format_float(x: float) -> str:
    return format(float(x), ".17g")


def symmetrize(M: np.ndarray) -> np.ndarray:
    """Exactly symmetric version of ``M`` (elementwise (M + M.T) / 2)."""
    return 0.5 * (M + M.T)


@dataclass(frozen=True)
class KernelSpec:
    """Finite-rank covariance kernel: eigenvalues plus eigenfunction rows.

    Parameters
    ----------
    eigenvalues : (r,) array
        Positive, sorted nonincreasing.
    eigvec_coeffs : (r, l_max) array
        Row ``m`` holds the basis coefficients of the m-th eigenfunction.
        Rows must be orthonormal to ``ORTHONORMAL_TOL``.
    """

    eigenvalues: np.ndarray
    eigvec_coeffs: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.eigenvalues, dtype=np.float64).ravel()
        V = np.atleast_2d(np.asarray(self.eigvec_coeffs, dtype=np.float64))
        if V.shape[0] != lam.size:
            raise ValueError(
                f"eigenvalues ({lam.size}) and coefficient rows ({V.shape[0]}) disagree"
            )
        if V.shape[1] < 1:
            raise ValueError("coefficient horizon l_max must be >= 1")
        if not (np.all(np.isfinite(lam)) and np.all(np.isfinite(V))):
            raise ValueError("kernel spec contains non-finite entries")
        if lam.size:
            if np.any(lam <= 0):
                raise ValueError("eigenvalues must be positive")
            if np.any(np.diff(lam) > 0):
                raise ValueError("eigenvalues must be sorted nonincreasing")
            G = V @ V.T
            if np.max(np.abs(G - np.eye(lam.size))) > ORTHONORMAL_TOL:
                raise ValueError(
                    "eigenfunction rows are not orthonormal; "
                    "use KernelSpec.from_rows to orthonormalize raw rows"
                )
        object.__setattr__(self, "eigenvalues", readonly(lam))
        object.__setattr__(self, "eigvec_coeffs", readonly(V))

    @property
    def rank(self) -> int:
        return int(self.eigenvalues.size)

    @property
    def l_max(self) -> int:
        return int(self.eigvec_coeffs.shape[1])

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[0]) if self.rank else 0.0

    @property
    def trace(self) -> float:
        return float(self.eigenvalues.sum())

    def squared_l2_norm(self) -> float:
        """||K||_2^2 over [0,1]^2, which is sum(lam_m^2) for orthonormal rows."""
        return float(np.sum(self.eigenvalues**2))

    @classmethod
    def zero(cls, l_max: int) -> "KernelSpec":
        l_max = int(check_positive(l_max, "l_max"))
        return cls(np.empty(0), np.empty((0, l_max)))

    @classmethod
    def from_rows(cls, eigenvalues, rows) -> "KernelSpec":
        """Build a spec from raw coefficient rows via Gram-Schmidt.

        Rows are orthonormalized in order; a row whose residual after
        removing previous components has norm below ``DEPENDENT_ROW_TOL``
        times its original norm is rejected.  Eigenvalue/row pairs are
        sorted by decreasing eigenvalue first.
        """
        lam = np.asarray(eigenvalues, dtype=np.float64).ravel()
        V = np.atleast_2d(np.asarray(rows, dtype=np.float64)).copy()
        if V.shape[0] != lam.size:
            raise ValueError("eigenvalues and rows disagree in length")
        order = np.argsort(-lam, kind="stable")
        lam, V = lam[order], V[order]
        for m in range(V.shape[0]):
            original = np.linalg.norm(V[m])
            if original == 0.0:
                raise ValueError(f"row {m} is zero")
            # Two passes of classical GS keep the result orthonormal to ~1e-15.
            for _ in range(2):
                if m:
                    V[m] -= V[:m].T @ (V[:m] @ V[m])
            residual = np.linalg.norm(V[m])
            if residual < DEPENDENT_ROW_TOL * original:
                raise ValueError(f"row {m} is numerically dependent on earlier rows")
            V[m] /= residual
        return cls(lam, V)

    def with_horizon(self, l_max: int) -> "KernelSpec":
        """Same kernel represented on a wider coefficient horizon (zero padded)."""
        l_max = int(l_max)
        if l_max < self.l_max:
            raise ValueError(f"cannot shrink horizon {self.l_max} -> {l_max}")
        if l_max == self.l_max:
            return self
        V = np.zeros((self.rank, l_max))
        V[:, : self.l_max] = self.eigvec_coeffs
        return KernelSpec(self.eigenvalues, V)

    def to_json(self) -> str:
        rows = ",".join(
            "[" + ",".join(_format_float(x) for x in row) + "]"
            for row in self.eigvec_coeffs
        )
        lam = ",".join(_format_float(x) for x in self.eigenvalues)
        return (
            '{"rank": %d, "eigenvalues": [%s], "eigvec_coeffs": [%s], '
            '"l_max": %d, "basis": "cosine"}' % (self.rank, lam, rows, self.l_max)
        )

    @classmethod
    def from_json(cls, text: str) -> "KernelSpec":
        doc = json.loads(text)
        if doc.get("basis") != "cosine":
            raise ValueError(f"unsupported basis {doc.get('basis')!r}")
        l_max = int(doc["l_max"])
        lam = np.asarray(doc["eigenvalues"], dtype=np.float64)
        V = np.asarray(doc["eigvec_coeffs"], dtype=np.float64).reshape(lam.size, l_max)
        if int(doc["rank"]) != lam.size:
            raise ValueError("rank field disagrees with eigenvalue count")
        return cls(lam, V)


@dataclass(frozen=True)
class SymKernelMatrix:
    """Element of S_l: an exactly symmetric l x l coefficient matrix.

    The squared L2([0,1]^2) norm of the kernel it represents equals the
    squared Frobenius norm of ``entries``.
    """

    entries: np.ndarray = field()

    def __post_init__(self):
        E = np.atleast_2d(np.asarray(self.entries, dtype=np.float64))
        if E.shape[0] != E.shape[1]:
            raise ValueError(f"entries must be square, got shape {E.shape}")
        if not np.all(np.isfinite(E)):
            raise ValueError("entries contain non-finite values")
        if not np.array_equal(E, E.T):
            raise ValueError("entries must be exactly symmetric (use symmetrize())")
        object.__setattr__(self, "entries", readonly(E))

    @property
    def level(self) -> int:
        return int(self.entries.shape[0])

    def frobenius_norm_sq(self) -> float:
        return float(np.sum(self.entries**2))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)

    def embedded(self, level: int) -> "SymKernelMatrix":
        """Zero-padded copy living in S_level for level >= self.level."""
        if level < self.level:
            raise ValueError(f"cannot embed level {self.level} into {level}")
        out = np.zeros((level, level))
        out[: self.level, : self.level] = self.entries
        return SymKernelMatrix(out)

    def to_json(self) -> str:
        rows = ",".join(
            "[" + ",".join(_format_float(x) for x in row) + "]" for row in self.entries
        )
        return '{"level": %d, "entries": [%s]}' % (self.level, rows)

    @classmethod
    def from_json(cls, text: str) -> "SymKernelMatrix":
        doc = json.loads(text)
        E = np.asarray(doc["entries"], dtype=np.float64)
        level = int(doc["level"])
        if E.shape != (level, level):
            raise ValueError("entries shape disagrees with level")
        return cls(symmetrize(E))


def project_kernel(spec: KernelSpec, level: int) -> SymKernelMatrix:
    """Orthogonal projection of the kernel onto S_level.

    Returns ``sum_m lam_m v_m v_m^T`` with ``v_m`` the first ``level``
    coefficients of eigenfunction m; PSD with rank <= min(rank, level).
    """
    level = check_level(level, spec.l_max)
    V = spec.eigvec_coeffs[:, :level]
    M = (V.T * spec.eigenvalues) @ V
    return SymKernelMatrix(symmetrize(M))


def bias_squared(spec: KernelSpec, level: int) -> float:
    """Squared projection error ||K - K^(level)||_2^2 (Pythagoras form)."""
    tail = spec.squared_l2_norm() - project_kernel(spec, level).frobenius_norm_sq()
    return max(tail, 0.0)


def make_hard_kernel(level: int, s: float, lambda_max: float) -> KernelSpec:
    """Rank-one kernel mixing fast- and slow-decaying basis coefficients.

    The eigenfunction has coefficients proportional to ``k^-(s+1)`` for
    ``k <= level`` and ``k^-(s+1/2)`` for ``level < k <= 2*level``, then
    normalized; the represented horizon is ``2*level``.  Its projection
    error at ``level`` stays of order ``level^(-2s)``, which defeats the
    corrected empirical estimator.
    """
    level = int(check_positive(level, "level"))
    check_positive(s, "s")
    check_positive(lambda_max, "lambda_max")
    k_head = np.arange(1, level + 1, dtype=np.float64)
    k_tail = np.arange(level + 1, 2 * level + 1, dtype=np.float64)
    coeffs = np.concatenate([k_head ** -(s + 1.0), k_tail ** -(s + 0.5)])
    coeffs /= np.linalg.norm(coeffs)
    return KernelSpec(np.array([float(lambda_max)]), coeffs[None, :])


def sobolev_norm_coeffs(coeffs, s: float) -> float:
    """Smoothness norm of a single function from its basis coefficients."""
    coeffs = np.asarray(coeffs, dtype=np.float64).ravel()
    weights = np.arange(1, coeffs.size + 1, dtype=np.float64) ** (2.0 * s)
    return math.sqrt(float(np.sum(weights * coeffs**2)))


def sobolev_norm(spec: KernelSpec, s: float) -> float:
    """Smoothness norm of the kernel: sqrt(sum_m lam_m^2 ||phi_m||_{s}^2)."""
    check_positive(s, "s")
    if spec.rank == 0:
        return 0.0
    weights = np.arange(1, spec.l_max + 1, dtype=np.float64) ** (2.0 * s)
    per_row = np.sum(weights * spec.eigvec_coeffs**2, axis=1)
    return math.sqrt(float(np.sum(spec.eigenvalues**2 * per_row)))


def eval_kernel(spec: KernelSpec, t, u):
    """Pointwise kernel values ``K(t, u)`` for t, u in [0,1] (used by plots)."""
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    u_arr = np.atleast_1d(np.asarray(u, dtype=np.float64))
    if np.any((t_arr < 0) | (t_arr > 1)) or np.any((u_arr < 0) | (u_arr > 1)):
        raise ValueError("kernel arguments must lie in [0, 1]")
    if t_arr.shape != u_arr.shape:
        raise ValueError("t and u must have matching shapes")
    if spec.rank == 0:
        out = np.zeros(t_arr.shape)
    else:
        phi_t = basis_matrix(spec.l_max, t_arr) @ spec.eigvec_coeffs.T
        phi_u = basis_matrix(spec.l_max, u_arr) @ spec.eigvec_coeffs.T
        out = (phi_t * phi_u) @ spec.eigenvalues
    if np.isscalar(t) and np.isscalar(u):
        return float(out[0])
    return out
