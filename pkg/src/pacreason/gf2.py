"""Row reduction over F2 with rows packed into Python ints.

Bit ``i - 1`` of a row holds the coefficient of x_i; the right-hand side
is carried separately.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Reduced:
    rows: tuple[tuple[int, int], ...]  # (coefficients, rhs), one per pivot
    pivots: tuple[int, ...]  # 1-based pivot variables, ascending
    free: tuple[int, ...]  # 1-based free variables, ascending
    solvable: bool

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rref(rows, n: int) -> Reduced:
    """Reduced row-echelon form of ``[A | b]``; columns scanned from x1 up."""
    work = [(int(a), int(b) & 1) for a, b in rows]
    pivots = []
    r = 0
    for col in range(n):
        bit = 1 << col
        p = next((i for i in range(r, len(work)) if work[i][0] & bit), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        pa, pb = work[r]
        for i in range(len(work)):
            if i != r and work[i][0] & bit:
                a, b = work[i]
                work[i] = (a ^ pa, b ^ pb)
        pivots.append(col + 1)
        r += 1
    solvable = all(b == 0 for a, b in work[r:] if a == 0)
    pivset = set(pivots)
    free = tuple(v for v in range(1, n + 1) if v not in pivset)
    return Reduced(tuple(work[:r]), tuple(pivots), free, solvable)


def rank(vectors, n: int) -> int:
    """Rank of a list of coefficient bitmasks."""
    basis: dict[int, int] = {}  # leading bit -> vector
    for v in vectors:
        v = int(v)
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    return len(basis)


def mask_of(variables) -> int:
    m = 0
    for v in variables:
        m |= 1 << (v - 1)
    return m
