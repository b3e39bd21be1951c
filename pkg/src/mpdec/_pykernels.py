"""Pure NumPy implementation of the correction kernels.

Reference semantics for the compiled twin in ``_speedups.pyx``; selected at
import time when the extension is unavailable (see ``mpdec.backend``).
"""

from __future__ import annotations

import numpy as np

from . import linsolve

BACKEND_NAME = "python"


def assemble_mass_matrix(theta_row: np.ndarray, dt: float,
                         p_stack: np.ndarray, d_stack: np.ndarray,
                         denom: np.ndarray) -> np.ndarray:
    """Mass matrix of one correction solve.

    ``p_stack``/``d_stack`` hold the rate tables frozen at each of the
    ``M + 1`` substates of the previous correction; ``denom`` is that
    correction's state at the subtimestep being solved.  Positive weights
    put production off-diagonal and destruction on the diagonal; negative
    weights swap the roles, so the diagonal stays positive and the
    off-diagonal nonpositive either way.  Zero weights contribute nothing
    and are skipped.
    """
    dim = denom.shape[0]
    a = np.eye(dim)
    diag = np.diag_indices(dim)
    for r, theta in enumerate(theta_row):
        if theta > 0.0:
            a -= (dt * theta) * (p_stack[r] / denom[None, :])
            a[diag] += (dt * theta) * (d_stack[r].sum(axis=1) / denom)
        elif theta < 0.0:
            a += (dt * theta) * (d_stack[r] / denom[None, :])
            a[diag] -= (dt * theta) * (p_stack[r].sum(axis=1) / denom)
    return a


def sweep_solve(theta: np.ndarray, dt: float,
                p_stack: np.ndarray, d_stack: np.ndarray,
                prev_states: np.ndarray, c0: np.ndarray) -> np.ndarray:
    """One correction sweep: independent solves at subtimesteps 1..M.

    Returns the updated ``(M + 1, dim)`` grid with row 0 pinned to ``c0``.
    """
    new_states = np.empty_like(prev_states)
    new_states[0] = c0
    for m in range(1, prev_states.shape[0]):
        a = assemble_mass_matrix(theta[m], dt, p_stack, d_stack, prev_states[m])
        new_states[m] = linsolve.solve(a, c0)
    return new_states
