"""Independent certifiers for the two defining finite-scale properties.

Recurrence side: a set R is certified epsilon-recurrent at horizon n when
every subset of {0..n-1} larger than epsilon*n contains a pair differing
by an element of R; equivalently the maximum R-difference-avoiding subset
has size alpha <= epsilon*n.  alpha is computed exactly by branch and
bound on the difference graph.

Failure-of-vdC side: a probability measure on the order-N roots of unity
whose transform vanishes on R and whose atom at 0 exceeds epsilon is a
witness that R is not an epsilon-vdC set.  The best such atom is a linear
program, solved with the dense simplex and re-verified independently of
the solver.
"""

import json
from dataclasses import dataclass

import numpy as np

from .measures import AtomicMeasure
from .simplex import LpInfeasibleError, solve_lp

MAX_EXACT_HORIZON = 80
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class RecurrenceCertificate:
    r_set: tuple
    epsilon: float
    n: int
    alpha: int
    witness: tuple
    certified: bool
    # a certificate at n extends to every multiple of n by splitting any
    # dense subset of [k*n] into length-n windows
    extends_to_multiples: bool

    def to_json(self) -> str:
        return json.dumps(
            {
                "R": list(self.r_set),
                "epsilon": self.epsilon,
                "n": self.n,
                "alpha": self.alpha,
                "witness": list(self.witness),
                "certified": self.certified,
                "extends_to_multiples": self.extends_to_multiples,
            }
        )


@dataclass(frozen=True)
class VdcFailureWitness:
    r_set: tuple
    epsilon: float | None
    order: int
    measure: AtomicMeasure
    atom: float
    residual: float
    not_vdc: bool

    def to_json(self) -> str:
        return json.dumps(
            {
                "R": list(self.r_set),
                "epsilon": self.epsilon,
                "order": self.order,
                "atom": self.atom,
                "residual": self.residual,
                "weights": [float(w) for w in self.measure.weights],
                "not_vdc": self.not_vdc,
            }
        )


def _clique_cover_bound(candidates: int, adjacency: list) -> int:
    """Greedy partition of the candidate vertices into cliques; the number
    of cliques bounds any independent set inside the candidates."""
    cliques = 0
    remaining = candidates
    while remaining:
        v = (remaining & -remaining).bit_length() - 1
        clique_compat = adjacency[v]
        remaining &= remaining - 1
        cliques += 1
        scan = remaining & clique_compat
        while scan:
            u = (scan & -scan).bit_length() - 1
            remaining &= ~(1 << u)
            clique_compat &= adjacency[u]
            scan = remaining & clique_compat
    return cliques


def max_avoiding_set(r_set, n: int):
    """Exact maximum subset of {0..n-1} whose pairwise differences avoid
    r_set, via branch and bound on the difference graph.

    Returns (alpha, witness).  Horizons above 80 are refused to keep the
    exactness promise honest.
    """
    if n < 1:
        raise ValueError("horizon must be >= 1")
    if n > MAX_EXACT_HORIZON:
        raise ValueError(
            f"horizon {n} exceeds the exact branch-and-bound cap {MAX_EXACT_HORIZON}"
        )
    diffs = sorted({int(r) for r in r_set if 0 < int(r) < n})
    full = (1 << n) - 1
    adjacency = [0] * n
    for v in range(n):
        mask = 0
        for r in diffs:
            if v + r < n:
                mask |= 1 << (v + r)
            if v - r >= 0:
                mask |= 1 << (v - r)
        adjacency[v] = mask

    # visit high-degree vertices first: re-label so that position 0 is densest
    order = sorted(range(n), key=lambda v: (-adjacency[v].bit_count(), v))
    relabel = {old: new for new, old in enumerate(order)}
    adj = [0] * n
    for old, new in relabel.items():
        mask = adjacency[old]
        out = 0
        while mask:
            u = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            out |= 1 << relabel[u]
        adj[new] = out

    best_size = 0
    best_mask = 0

    def explore(candidates: int, chosen: int, size: int) -> None:
        nonlocal best_size, best_mask
        if size + candidates.bit_count() <= best_size:
            return
        if not candidates:
            if size > best_size:
                best_size, best_mask = size, chosen
            return
        if size + _clique_cover_bound(candidates, adj) <= best_size:
            return
        v = (candidates & -candidates).bit_length() - 1
        bit = 1 << v
        explore(candidates & ~(bit | adj[v]), chosen | bit, size + 1)
        explore(candidates & ~bit, chosen, size)

    explore(full, 0, 0)

    witness = sorted(order[v] for v in range(n) if best_mask >> v & 1)
    return best_size, witness


def certify_recurrence(r_set, epsilon: float, n: int) -> RecurrenceCertificate:
    alpha, witness = max_avoiding_set(r_set, n)
    certified = alpha <= epsilon * n
    return RecurrenceCertificate(
        r_set=tuple(sorted({int(r) for r in r_set})),
        epsilon=float(epsilon),
        n=int(n),
        alpha=alpha,
        witness=tuple(witness),
        certified=certified,
        extends_to_multiples=certified,
    )


def truncate_preserving(r_set, epsilon: float, n: int):
    """R intersect {0..n-1}: differences inside the horizon never exceed
    n-1, so certification survives truncation with identical alpha."""
    cert = certify_recurrence(r_set, epsilon, n)
    if not cert.certified:
        raise ValueError(
            f"cannot truncate an uncertified set: alpha {cert.alpha} > {epsilon * n}"
        )
    return {r for r in cert.r_set if r < n}


def _transform_rows(r_set, order: int):
    j = np.arange(order)
    rows, rhs = [np.ones(order)], [1.0]
    for r in sorted(r_set):
        angle = 2.0 * np.pi * (r % order) * j / order
        rows.append(np.cos(angle))
        rhs.append(0.0)
        rows.append(np.sin(angle))
        rhs.append(0.0)
    return np.array(rows), np.array(rhs)


def max_atom_lp(r_set, order: int, *, warm_start: AtomicMeasure | None = None) -> VdcFailureWitness:
    """Probability measure on the order-N roots of unity maximising the
    weight at 0 subject to a vanishing transform on r_set.

    Infeasibility (no such probability measure) raises LpInfeasibleError.
    A warm_start measure, when given, is only used as a soundness
    tripwire: the LP optimum may never fall below its feasible atom.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    r_set = tuple(sorted({int(r) for r in r_set}))
    matrix, rhs = _transform_rows(r_set, order)
    costs = np.zeros(order)
    costs[0] = 1.0
    result = solve_lp(costs, matrix, rhs)
    measure = AtomicMeasure(order, result.x)
    residual = max((abs(measure.fourier(r)) for r in r_set), default=0.0)
    atom = float(measure.weights[0])
    if warm_start is not None:
        if warm_start.order != order:
            raise ValueError("warm start must live on the same order")
        if atom < float(warm_start.weights[0]) - RESIDUAL_TOL:
            raise RuntimeError(
                f"LP atom {atom} fell below the feasible warm-start atom "
                f"{float(warm_start.weights[0])}; diagnostics {result.diagnostics}"
            )
    return VdcFailureWitness(
        r_set=r_set,
        epsilon=None,
        order=order,
        measure=measure,
        atom=atom,
        residual=float(residual),
        not_vdc=False,
    )


def reverify_witness(witness: VdcFailureWitness, tol: float = RESIDUAL_TOL) -> dict:
    """Trust anchor outside the solver: non-negativity, unit mass, and the
    vanishing-transform residual recomputed straight from the weights."""
    w = witness.measure.weights
    return {
        "min_weight": float(w.min()),
        "mass_error": abs(witness.measure.mass() - 1.0),
        "residual": max(
            (abs(witness.measure.fourier(r)) for r in witness.r_set), default=0.0
        ),
        "tolerance": tol,
    }


def certify_not_vdc(r_set, epsilon: float, order: int) -> VdcFailureWitness:
    """LP witness with independent re-verification; the certificate claims
    not-epsilon-vdC exactly when the verified atom clears epsilon."""
    base = max_atom_lp(r_set, order)
    checks = reverify_witness(base)
    if checks["min_weight"] < -1e-12 or checks["mass_error"] > 1e-12:
        raise RuntimeError(f"LP witness failed re-verification: {checks}")
    if checks["residual"] >= RESIDUAL_TOL:
        raise RuntimeError(f"LP witness residual too large: {checks}")
    return VdcFailureWitness(
        r_set=base.r_set,
        epsilon=float(epsilon),
        order=order,
        measure=base.measure,
        atom=base.atom,
        residual=float(checks["residual"]),
        not_vdc=base.atom > epsilon + RESIDUAL_TOL,
    )


def lift_witness(witness: VdcFailureWitness, factor: int) -> VdcFailureWitness:
    """Push the witness onto the factor-fold cover: weights move from
    position j/N to j/(c*N), so the transform at c*r equals the old value
    at r and the atom at 0 is unchanged.  Certifies c*R at order c*N."""
    if factor < 1:
        raise ValueError("factor must be >= 1")
    order = witness.order * factor
    w = np.zeros(order)
    w[np.arange(witness.order)] = witness.measure.weights
    measure = AtomicMeasure(order, w)
    r_set = tuple(factor * r for r in witness.r_set)
    residual = max((abs(measure.fourier(r)) for r in r_set), default=0.0)
    return VdcFailureWitness(
        r_set=r_set,
        epsilon=witness.epsilon,
        order=order,
        measure=measure,
        atom=float(measure.weights[0]),
        residual=float(residual),
        not_vdc=witness.not_vdc,
    )
