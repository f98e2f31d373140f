"""GF(2) linear systems with rows packed into python ints."""

from __future__ import annotations

from typing import List, Optional, Tuple


def solve_gf2(rows: List[int], rhs: List[int], n_cols: int) -> Tuple[Optional[List[int]], int]:
    """Solve ``A x = b`` over GF(2).

    Bit ``j`` of ``rows[i]`` is ``A[i][j]``.  Returns ``(x, rank)`` with free
    variables set to 0, or ``(None, rank)`` when the system is inconsistent.
    """
    work = [r | (int(b) << n_cols) for r, b in zip(rows, rhs)]
    pivots: list[int] = []
    row_idx = 0
    for col in range(n_cols):
        pivot = None
        for r in range(row_idx, len(work)):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        for r in range(len(work)):
            if r != row_idx and (work[r] >> col) & 1:
                work[r] ^= work[row_idx]
        pivots.append(col)
        row_idx += 1
        if row_idx == len(work):
            break
    rank = len(pivots)
    mask = (1 << n_cols) - 1
    for r in range(rank, len(work)):
        if not work[r] & mask and (work[r] >> n_cols) & 1:
            return None, rank
    x = [0] * n_cols
    for r, col in enumerate(pivots):
        x[col] = (work[r] >> n_cols) & 1
    return x, rank


def gf2_rank(rows: List[int], n_cols: int) -> int:
    return solve_gf2(rows, [0] * len(rows), n_cols)[1]
