"""Tiny dense linear algebra over either scalar backend (row lists)."""

from __future__ import annotations

from .scalars import is_zero, magnitude


def matrix_rank(rows, context_scale: float = 1.0) -> int:
    m = [list(r) for r in rows]
    if not m:
        return 0
    n_cols = len(m[0])
    rank = 0
    for col in range(n_cols):
        pivot = None
        best = -1.0
        for r in range(rank, len(m)):
            if not is_zero(m[r][col], context_scale):
                # exact: first nonzero; approx: largest magnitude
                mag = magnitude(m[r][col])
                if pivot is None or mag > best:
                    pivot, best = r, mag
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, len(m)):
            f = m[r][col] / p
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def inverse(rows):
    """Gauss-Jordan inverse; raises ZeroDivisionError when singular."""
    n = len(rows)
    m = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [row[n:] for row in m]


def determinant(rows):
    n = len(rows)
    m = [list(r) for r in rows]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return 0 * det
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        for r in range(col + 1, n):
            f = m[r][col] / p
            if f != 0:
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def mat_vec(rows, vec):
    out = []
    for row in rows:
        acc = 0
        for a, b in zip(row, vec):
            acc = acc + a * b
        out.append(acc)
    return out
