"""Dense linear algebra helpers for the correction solves.

The systems are tiny (one row per constituent), assembled fresh for every
correction, and by construction have positive diagonal, nonpositive
off-diagonal entries, and strict diagonal dominance by columns.  That
structure makes direct elimination with partial pivoting both stable and
sufficient; :func:`jacobi_inverse_iteration` exists only so tests can
witness that the inverse of such a matrix is entrywise nonnegative (which
is what guarantees positive solutions from positive right-hand sides).
"""

from __future__ import annotations

import numpy as np

from .exceptions import SingularMatrixError


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``a @ x == b`` by direct elimination with partial pivoting."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if b.shape != (a.shape[0],):
        raise ValueError(f"rhs has shape {b.shape}, expected ({a.shape[0]},)")
    try:
        x = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(str(exc)) from exc
    if not np.all(np.isfinite(x)):
        raise SingularMatrixError("solution contains non-finite entries")
    return x


def is_column_diagonally_dominant(a: np.ndarray) -> bool:
    """Strict dominance: every ``a[i, i]`` exceeds the absolute sum of the
    remaining entries of column ``i``."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    abs_a = np.abs(a)
    off_column_sums = abs_a.sum(axis=0) - np.diag(abs_a)
    return bool(np.all(np.diag(a) > off_column_sums))


def jacobi_inverse_iteration(a: np.ndarray, iterations: int) -> np.ndarray:
    """Approximate ``a^-1`` with Jacobi sweeps ``Z <- (I - D^-1 a) Z + D^-1``.

    Requires positive diagonal, nonpositive off-diagonal and strict column
    dominance, in which case every iterate (starting from the identity) is
    entrywise nonnegative and the sequence converges to the inverse.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    diag = np.diag(a)
    off = a - np.diag(diag)
    if np.any(diag <= 0.0) or np.any(off > 0.0):
        raise ValueError("need positive diagonal and nonpositive off-diagonal")
    if not is_column_diagonally_dominant(a):
        raise ValueError("matrix is not strictly column diagonally dominant")
    d_inv = np.diag(1.0 / diag)
    iteration_matrix = np.eye(n) - d_inv @ a
    z = np.eye(n)
    for _ in range(iterations):
        z = iteration_matrix @ z + d_inv
    return z
