"""Digit combinatorics in Z_Q^P and quantitative Poincare recurrence.

The central search: inside a dense subset B of Z_Q^P (Q even), find a pair
x, x' agreeing below some coordinate s, with x_s = 0, x'_s = Q/2, and all
higher coordinates within circular distance 2.  Existence is guaranteed
when |B| > Q^P / ell and P > Q*log(ell); the search realises the same
existence constructively and simply reports NotFound (None) otherwise.

Grids are boolean arrays of shape (Q,)*P with axis i holding digit i
(least significant first), so the flat index of a cell equals
sum_i coord_i * Q^i under Fortran ordering.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

GRID_CELL_LIMIT = 1 << 24


class GridSizeError(ValueError):
    """Q^P exceeds the explicit-bitset limit."""


@dataclass(frozen=True)
class DigitVector:
    q: int
    coords: tuple

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if self.q < 2:
            raise ValueError("modulus must be >= 2")
        for c in coords:
            if not 0 <= c < self.q:
                raise ValueError(f"coordinate {c} outside [0, {self.q})")

    def to_json(self) -> str:
        return f'{{"Q": {self.q}, "coords": {list(self.coords)}}}'

    @staticmethod
    def from_json(text: str) -> "DigitVector":
        import json

        obj = json.loads(text)
        return DigitVector(int(obj["Q"]), tuple(obj["coords"]))


def circular_distance(a: int, b: int, q: int) -> int:
    d = abs(a - b) % q
    return min(d, q - d)


@dataclass(frozen=True)
class AgreementPair:
    x: DigitVector
    x_prime: DigitVector
    s: int


@dataclass(frozen=True)
class FiniteSystem:
    """A permutation of {0..size-1} with a marked subset, carrying the
    uniform probability measure."""

    size: int
    mapping: tuple
    subset: frozenset

    def __post_init__(self):
        mapping = tuple(int(v) for v in self.mapping)
        subset = frozenset(int(v) for v in self.subset)
        object.__setattr__(self, "mapping", mapping)
        object.__setattr__(self, "subset", subset)
        if len(mapping) != self.size or sorted(mapping) != list(range(self.size)):
            raise ValueError("mapping must be a permutation of {0..size-1}")
        if not all(0 <= v < self.size for v in subset):
            raise ValueError("subset must lie inside {0..size-1}")

    @property
    def density(self) -> float:
        return len(self.subset) / self.size


def strong_poincare(system: FiniteSystem):
    """First return step n <= ceil(2/density) whose overlap
    |E intersect T^-n E| / size reaches density^2 / 2 (else the maximising
    n, which the quantitative recurrence bound guarantees qualifies).
    """
    count_e = len(system.subset)
    if count_e == 0:
        raise ValueError("subset must be non-empty")
    m = system.size
    horizon = -(-2 * m // count_e)  # ceil(2 / density)
    perm = np.array(system.mapping, dtype=np.int64)
    in_e = np.zeros(m, dtype=bool)
    in_e[list(system.subset)] = True
    current = perm.copy()
    best_n, best_count = 1, -1
    for n in range(1, horizon + 1):
        overlap = int(np.count_nonzero(in_e & in_e[current]))
        if 2 * overlap * m >= count_e * count_e:
            return n, overlap / m
        if overlap > best_count:
            best_n, best_count = n, overlap
        current = perm[current]
    return best_n, best_count / m


def _expand(grid: np.ndarray, axis: int) -> np.ndarray:
    return grid | np.roll(grid, 1, axis=axis) | np.roll(grid, -1, axis=axis)


def neighbourhood_chain(grid: np.ndarray) -> list:
    """chain[s] = the set of points agreeing with some grid point exactly
    below coordinate s and within distance 1 from it at coordinates >= s.
    chain[P] is the grid itself and the chain is nested increasingly as s
    drops."""
    p = grid.ndim
    chain = [None] * (p + 1)
    chain[p] = grid
    for s in range(p - 1, -1, -1):
        chain[s] = _expand(chain[s + 1], s)
    return chain


def _backmap_candidates(grid: np.ndarray, target: tuple, s: int, q: int):
    """Grid members equal to target at coordinates <= s and within circular
    distance 1 above, in lexicographic coordinate order."""
    p = grid.ndim
    pools = []
    for i in range(p):
        if i <= s:
            pools.append((target[i],))
        else:
            pools.append(tuple(sorted({(target[i] + d) % q for d in (-1, 0, 1)})))
    for cand in itertools.product(*pools):
        if grid[cand]:
            yield cand


def _agreement_candidates(grid: np.ndarray, q: int):
    """Yield (x, x_prime, s) candidate pairs in deterministic order:
    smallest s first, then lexicographically smallest fiber, then
    lexicographically smallest witnesses."""
    p = grid.ndim
    if not grid.any():
        return
    chain = neighbourhood_chain(grid)
    half = q // 2
    for s in range(p):
        level = chain[s + 1]
        full = level.all(axis=s)
        if not full.any():
            continue
        for rest in np.argwhere(full):
            rest = [int(v) for v in rest]
            base = rest[:s] + [0] + rest[s:]
            zero_point = tuple(base)
            half_point = tuple(base[:s] + [half] + base[s + 1 :])
            for x in _backmap_candidates(grid, zero_point, s, q):
                for x_prime in _backmap_candidates(grid, half_point, s, q):
                    yield x, x_prime, s


def _check_bullets(x: tuple, x_prime: tuple, s: int, q: int) -> None:
    assert x[:s] == x_prime[:s]
    assert x[s] == 0 and x_prime[s] == q // 2
    assert all(circular_distance(a, b, q) <= 2 for a, b in zip(x[s + 1 :], x_prime[s + 1 :]))


def vectors_to_grid(vectors) -> tuple:
    vectors = list(vectors)
    if not vectors:
        raise ValueError("need at least one vector")
    q = vectors[0].q
    p = len(vectors[0].coords)
    for v in vectors:
        if v.q != q or len(v.coords) != p:
            raise ValueError("mixed dimensions: all vectors must share (Q, P)")
    if q**p > GRID_CELL_LIMIT:
        raise GridSizeError(f"Q^P = {q**p} exceeds the {GRID_CELL_LIMIT} cell limit")
    grid = np.zeros((q,) * p, dtype=bool)
    for v in vectors:
        grid[v.coords] = True
    return grid, q, p


def find_agreement_pair(vectors, ell: int):
    """First (smallest s, lexicographically smallest) agreement pair in B.

    Returns an AgreementPair or None.  When the density hypothesis
    |B| > Q^P/ell together with P > Q*log(ell) holds, a pair must exist;
    exhausting the search in that regime indicates a bug and raises.
    """
    grid, q, p = vectors_to_grid(vectors)
    if q % 2:
        raise ValueError("modulus Q must be even")
    for x, x_prime, s in _agreement_candidates(grid, q):
        _check_bullets(x, x_prime, s, q)
        return AgreementPair(DigitVector(q, x), DigitVector(q, x_prime), s)
    count = int(grid.sum())
    if count * ell > q**p and p > q * math.log(ell):
        raise RuntimeError(
            "agreement search exhausted although the density guarantee applies"
        )
    return None


def int_to_digits(value: int, q: int, p: int) -> tuple:
    digits = []
    for _ in range(p):
        value, d = divmod(value, q)
        digits.append(d)
    return tuple(digits)


def digits_to_int(digits, q: int) -> int:
    total = 0
    for d in reversed(tuple(digits)):
        total = total * q + d
    return total


def _pattern_window_ok(y: int, j: int, q: int, p: int, s: int) -> bool:
    digits = int_to_digits(y, q, p)
    if not q // 2 <= digits[s] < q // 2 + 8 * j:
        return False
    return all(1 <= d < 8 * j for i, d in enumerate(digits) if i != s)


def digit_difference(elements, j: int, q: int, p: int):
    """A positive difference of two members of E whose base-Q digits all
    lie in [1, 8j) except one digit in [Q/2, Q/2 + 8j).

    Procedure: shift-by-4 recurrence picks an n below ceil(2/density) with
    a dense overlap B = E intersect (E - 4n digitwise); an agreement pair
    in B then produces the difference.  Candidates are scanned in
    deterministic order and every produced difference is verified against
    the digit windows before being returned; None means the scan found no
    verified difference (possible when the density hypothesis fails).
    """
    if q % 2 or q // 2 + 8 * j >= q:
        raise ValueError("digit differences need Q even with Q/2 + 8*j < Q")
    if q**p > GRID_CELL_LIMIT:
        raise GridSizeError(f"Q^P = {q**p} exceeds the {GRID_CELL_LIMIT} cell limit")
    flat = np.zeros(q**p, dtype=bool)
    idx = np.fromiter((int(e) for e in elements), dtype=np.int64)
    if idx.size == 0:
        return None
    if idx.min() < 0 or idx.max() >= q**p:
        raise ValueError(f"elements must lie inside [0, {q**p})")
    flat[idx] = True
    grid = flat.reshape((q,) * p, order="F")
    count_e = int(grid.sum())
    horizon = -(-2 * (q**p) // count_e)
    axes = tuple(range(p))
    overlaps = []
    for n in range(1, horizon + 1):
        shifted = np.roll(grid, shift=(-4 * n,) * p, axis=axes)
        overlap = grid & shifted
        overlaps.append((n, int(overlap.sum()), overlap))
    qualifies = lambda cnt: 2 * cnt * q**p >= count_e * count_e
    qualifying = [row for row in overlaps if qualifies(row[1])]
    fallback = [row for row in overlaps if row[1] > 0 and not qualifies(row[1])]
    for n, _, overlap in qualifying + fallback:
        for x, x_prime, s in _agreement_candidates(overlap, q):
            shifted_prime = tuple((c + 4 * n) % q for c in x_prime)
            y = abs(digits_to_int(shifted_prime, q) - digits_to_int(x, q))
            if y and _pattern_window_ok(y, j, q, p, s):
                return y
    return None
