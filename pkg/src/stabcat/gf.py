"""Dense linear algebra over the prime fields GF(2), GF(3), GF(5).

Matrices are numpy int64 arrays with entries reduced mod p.  Everything here
is exact; no floating point enters the oracle.
"""

from __future__ import annotations

import numpy as np

PRIMES = (2, 3, 5)


class FieldError(ValueError):
    pass


def check_prime(p: int):
    if p not in PRIMES:
        raise FieldError(f"unsupported prime {p}; pick one of {PRIMES}")


def mat(rows, p: int) -> np.ndarray:
    return np.asarray(rows, dtype=np.int64) % p


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def inv_scalar(x: int, p: int) -> int:
    return pow(int(x), p - 2, p)


def rref(a: np.ndarray, p: int):
    """Row-reduce a copy of `a`; returns (reduced matrix, pivot column list)."""
    m = a.copy() % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pivot_rows = np.nonzero(m[r:, c])[0]
        if pivot_rows.size == 0:
            continue
        pr = r + int(pivot_rows[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        m[r] = (m[r] * inv_scalar(m[r, c], p)) % p
        for other in range(rows):
            if other != r and m[other, c]:
                m[other] = (m[other] - m[other, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel, one solution per row."""
    rows, cols = a.shape
    if cols == 0:
        return zeros(0, 0)
    if rows == 0:
        return eye(cols)
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = zeros(len(free), cols)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for row_idx, pc in enumerate(pivots):
            basis[i, pc] = (-r[row_idx, fc]) % p
    return basis


def solve(a: np.ndarray, b: np.ndarray, p: int):
    """One solution x of a @ x = b, or None."""
    rows, cols = a.shape
    aug = np.concatenate([a % p, (b % p).reshape(rows, 1)], axis=1)
    r, pivots = rref(aug, p)
    if cols in pivots:
        return None
    x = zeros(cols, 1)[:, 0]
    for row_idx, pc in enumerate(pivots):
        x[pc] = r[row_idx, cols]
    return x


def column_space_complement(a: np.ndarray, p: int) -> np.ndarray:
    """Standard basis vectors completing col(a) to the full space (as columns)."""
    rows = a.shape[0]
    aug = np.concatenate([a % p, eye(rows)], axis=1)
    _, pivots = rref(aug, p)
    extra = [c - a.shape[1] for c in pivots if c >= a.shape[1]]
    out = zeros(rows, len(extra))
    for k, i in enumerate(extra):
        out[i, k] = 1
    return out


def solve_many(a: np.ndarray, b: np.ndarray, p: int):
    """Solutions X with a @ X = b column by column; None if any is unsolvable."""
    rows, cols = a.shape
    k = b.shape[1]
    if k == 0:
        return zeros(cols, 0)
    aug = np.concatenate([a % p, b % p], axis=1)
    r, pivots = rref(aug, p)
    if any(c >= cols for c in pivots):
        return None
    x = zeros(cols, k)
    for row_idx, pc in enumerate(pivots):
        x[pc] = r[row_idx, cols:]
    return x


def subspaces_fixed(d: int, k: int, p: int):
    """All k-dimensional subspaces of GF(p)^d as RREF row-basis matrices."""
    from itertools import combinations, product

    if k == 0:
        yield zeros(0, d)
        return
    if k > d:
        return
    for pivots in combinations(range(d), k):
        free_cells = []
        for i, pc in enumerate(pivots):
            for c in range(pc + 1, d):
                if c not in pivots:
                    free_cells.append((i, c))
        for values in product(range(p), repeat=len(free_cells)):
            m = zeros(k, d)
            for i, pc in enumerate(pivots):
                m[i, pc] = 1
            for (i, c), v in zip(free_cells, values):
                m[i, c] = v
            yield m
