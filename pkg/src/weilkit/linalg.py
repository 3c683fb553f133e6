"""Small dense linear algebra over exact rationals, plus an SVD route for floats."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

RANK_THRESHOLD = 1e-9


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form by Gauss-Jordan elimination.

    Returns the nonzero rows and the pivot columns. Entries may be Fractions or
    any exact field elements; no pivoting strategy beyond "first nonzero".
    """
    m = [[Fraction(x) if isinstance(x, int) else x for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def span_basis(vectors: Sequence[Sequence]) -> list[list]:
    """A canonical basis (RREF rows) of the span of ``vectors``."""
    nonzero = [v for v in vectors if any(x != 0 for x in v)]
    return rref(nonzero)[0] if nonzero else []


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : A v = 0}, one vector per free column with that entry set to 1."""
    reduced, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def float_nullspace(rows: Sequence[Sequence[float]], ncols: int,
                    threshold: float = RANK_THRESHOLD) -> list[list[float]]:
    """Orthonormal kernel basis from the SVD; singular values <= threshold count as zero."""
    if ncols == 0:
        return []
    a = np.asarray(rows, dtype=float).reshape(-1, ncols) if len(rows) else np.zeros((0, ncols))
    if a.shape[0] == 0:
        return [list(map(float, e)) for e in np.eye(ncols)]
    _, s, vt = np.linalg.svd(a)
    r = int(np.sum(s > threshold))
    return [list(map(float, v)) for v in vt[r:]]
