"""Dense two-phase simplex for small equality-form linear programs.

Solves  max c.x  subject to  A x = b,  x >= 0.  The row space of A is
orthonormalised first (SVD), which removes redundant rows exactly and
detects inconsistent systems; the feasible set is unchanged.  Phase 1
minimises the sum of artificial variables to find a basic feasible point
(or prove infeasibility); phase 2 optimises the true objective.  Bland's
smallest-index rule picks the entering variable and breaks leaving-row
ties, so the method terminates on degenerate bases.

The working tableau is refactorised from the cleaned data at every
iteration (these programs are tiny), so roundoff never accumulates across
pivots, and the returned vertex solves its closing basis system to
machine precision.  Callers should still re-verify solutions
independently; the diagnostics carry the basis condition number for that
purpose.
"""

from dataclasses import dataclass, field

import numpy as np

PIVOT_TOL = 1e-9
RATIO_TIE_TOL = 1e-9
MAX_ITERATIONS = 20000


class LpInfeasibleError(RuntimeError):
    """No feasible point (inconsistent rows, or phase 1 stayed positive)."""


class LpUnboundedError(RuntimeError):
    pass


class LpDegenerateError(RuntimeError):
    """The pivot sequence stalled or a basis became numerically singular."""


@dataclass
class LpResult:
    x: np.ndarray
    objective: float
    basis: list
    iterations: int
    diagnostics: dict = field(default_factory=dict)


def _orthonormal_rows(matrix, rhs, tol):
    """Equivalent system with orthonormal rows; raises on inconsistency."""
    u, singular, vt = np.linalg.svd(matrix, full_matrices=False)
    if singular.size == 0 or singular[0] == 0.0:
        if np.abs(rhs).max(initial=0.0) > tol:
            raise LpInfeasibleError("zero system with non-zero right-hand side")
        return np.zeros((0, matrix.shape[1])), np.zeros(0)
    rank = int(np.sum(singular > singular[0] * max(matrix.shape) * np.finfo(float).eps * 10))
    dropped = u[:, rank:].T @ rhs
    if dropped.size and np.abs(dropped).max() > tol:
        raise LpInfeasibleError(
            f"inconsistent constraints: residual {np.abs(dropped).max()} outside the row space"
        )
    new_matrix = vt[:rank]
    new_rhs = (u[:, :rank].T @ rhs) / singular[:rank]
    return new_matrix, new_rhs


def _factorise(matrix, rhs, basis):
    basis_matrix = matrix[:, basis]
    try:
        solved = np.linalg.solve(basis_matrix, np.column_stack([matrix, rhs]))
    except np.linalg.LinAlgError as exc:
        cond = float(np.linalg.cond(basis_matrix))
        raise LpDegenerateError(
            f"singular working basis {basis} (condition number {cond:g})"
        ) from exc
    return solved[:, :-1], solved[:, -1]


def _run_simplex(matrix, rhs, costs, basis, tol):
    """Bland-rule iterations on (matrix, rhs); mutates basis, returns
    (iterations, basic values)."""
    m, n = matrix.shape
    iterations = 0
    while True:
        if iterations > MAX_ITERATIONS:
            cond = float(np.linalg.cond(matrix[:, basis]))
            raise LpDegenerateError(
                f"no convergence within {MAX_ITERATIONS} pivots "
                f"(final basis condition number {cond:g})"
            )
        tableau, basic_values = _factorise(matrix, rhs, basis)
        reduced = costs - costs[basis] @ tableau
        in_basis = set(basis)
        entering = -1
        for jcol in range(n):
            if jcol not in in_basis and reduced[jcol] > tol:
                entering = jcol
                break
        if entering < 0:
            return iterations, basic_values
        column = tableau[:, entering]
        ratios = [
            (max(basic_values[i], 0.0) / column[i], basis[i], i)
            for i in range(m)
            if column[i] > tol
        ]
        if not ratios:
            raise LpUnboundedError(f"objective unbounded along column {entering}")
        best = min(r for r, _, _ in ratios)
        # Bland's leaving rule among numerically tied minimal ratios
        _, leaving_row = min(
            (b, i) for r, b, i in ratios if r <= best + RATIO_TIE_TOL
        )
        basis[leaving_row] = entering
        iterations += 1


def solve_lp(costs, matrix, rhs, *, tol: float = PIVOT_TOL) -> LpResult:
    """Maximise costs.x subject to matrix @ x = rhs, x >= 0."""
    matrix = np.asarray(matrix, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    costs = np.asarray(costs, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != rhs.shape[0] or matrix.shape[1] != costs.shape[0]:
        raise ValueError("inconsistent LP dimensions")
    matrix, rhs = _orthonormal_rows(matrix, rhs, tol)
    flip = rhs < 0
    matrix[flip] *= -1.0
    rhs = np.where(flip, -rhs, rhs)
    m, n = matrix.shape
    if m == 0:
        raise LpDegenerateError("empty constraint system after preprocessing")

    # phase 1 with an artificial identity block
    wide = np.hstack([matrix, np.eye(m)])
    basis = list(range(n, n + m))
    phase1_costs = np.concatenate([np.zeros(n), -np.ones(m)])
    iters, basic_values = _run_simplex(wide, rhs, phase1_costs, basis, tol)
    infeasibility = sum(
        basic_values[i] for i, b in enumerate(basis) if b >= n and basic_values[i] > 0
    )
    if infeasibility > tol:
        raise LpInfeasibleError(
            f"phase 1 left total artificial mass {infeasibility} > {tol}"
        )

    # swap surviving zero-valued artificials for real columns; full row rank
    # guarantees a pivot column exists for every row
    for i in range(m):
        if basis[i] < n:
            continue
        tableau, _ = _factorise(wide, rhs, basis)
        pivot_col = -1
        for jcol in range(n):
            if jcol not in basis and abs(tableau[i, jcol]) > tol:
                pivot_col = jcol
                break
        if pivot_col < 0:
            raise LpDegenerateError(
                f"could not eliminate artificial variable in row {i}"
            )
        basis[i] = pivot_col

    more, basic_values = _run_simplex(matrix, rhs, costs, basis, tol)
    iters += more

    x = np.zeros(n)
    for i, b in enumerate(basis):
        x[b] = max(basic_values[i], 0.0)
    diag = {
        "rows": m,
        "iterations": iters,
        "basis_condition": float(np.linalg.cond(matrix[:, basis])) if basis else 1.0,
    }
    return LpResult(
        x=x,
        objective=float(costs @ x),
        basis=list(basis),
        iterations=iters,
        diagnostics=diag,
    )
