"""Fixed orthonormal cosine basis of L2[0,1].

The package works in coordinates with respect to one fixed basis:
``e_1(t) = 1`` and ``e_k(t) = sqrt(2) * cos(pi * (k - 1) * t)`` for
``k >= 2``.  Everything downstream (kernels, samplers, estimators) only
sees coefficient vectors and matrices in this basis; the functions here
are the sole place where points of [0,1] appear.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Nodes of the composite midpoint rule used for pointwise checks.
QUADRATURE_POINTS = 2048


@dataclass(frozen=True)
class BasisId:
    kind: str
    description: str


COSINE = BasisId(
    kind="cosine",
    description="e_1(t) = 1, e_k(t) = sqrt(2) cos(pi (k-1) t) for k >= 2",
)


def basis_matrix(level: int, t) -> np.ndarray:
    """Evaluate e_1..e_level at points ``t``; returns shape (len(t), level)."""
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")
    k = np.arange(level)
    E = np.sqrt(2.0) * np.cos(np.pi * np.outer(t, k))
    E[:, 0] = 1.0
    return E


def midpoint_grid(num_points: int = QUADRATURE_POINTS) -> np.ndarray:
    """Midpoints of a uniform partition of [0,1] into ``num_points`` cells."""
    return (np.arange(num_points) + 0.5) / num_points


def left_grid(num_points: int) -> np.ndarray:
    """Left endpoints of a uniform partition of [0,1]; used by Ito sums."""
    return np.arange(num_points) / num_points


def basis_gram(level: int, num_points: int = QUADRATURE_POINTS) -> np.ndarray:
    """Gram matrix of e_1..e_level under the midpoint quadrature rule."""
    E = basis_matrix(level, midpoint_grid(num_points))
    return E.T @ E / num_points
