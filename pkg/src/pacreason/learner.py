"""The learned clause table and the narrowing pass over a query CNF."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .logic import Clause, Cnf, enumerate_clauses


@dataclass
class LearnedTable:
    clauses: list[Clause]  # canonical enumeration order
    w: int
    threshold: Fraction  # allowed falsified fraction of m0
    counts: dict[Clause, int]  # falsified count for every enumerated clause
    m0: int

    @property
    def threshold_count(self) -> int:
        """Largest falsified count that still passes."""
        return (self.threshold.numerator * self.m0) // self.threshold.denominator

    def __len__(self):
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    def as_cnf(self, n: int) -> Cnf:
        return Cnf(n, tuple(self.clauses))

    def dump(self) -> str:
        """One learned clause per line: DIMACS literals, then ``| count``."""
        lines = [f"psi {len(self.clauses)} w={self.w} m0={self.m0} threshold={self.threshold}"]
        for c in self.clauses:
            lines.append(" ".join(str(l) for l in c.lits) + f" | {self.counts[c]}")
        return "\n".join(lines) + "\n"


def _bitsets(rows: np.ndarray) -> tuple[list[int], list[int]]:
    """Per variable, the set of samples (as int bitsets) where it is revealed
    0 and where it is revealed 1."""
    zeros, ones = [], []
    for j in range(rows.shape[1]):
        col = rows[:, j]
        for target, out in ((0, zeros), (1, ones)):
            packed = np.packbits(col == target, bitorder="little")
            out.append(int.from_bytes(packed.tobytes(), "little"))
    return zeros, ones


def falsified_counts(rows: np.ndarray, clauses: Iterable[Clause]) -> dict[Clause, int]:
    """Number of rows on which each clause is witnessed false."""
    rows = np.asarray(rows, dtype=np.int8)
    zeros, ones = _bitsets(rows)
    everything = (1 << rows.shape[0]) - 1
    out = {}
    for c in clauses:
        s = everything
        for lit in c.lits:
            # literal falsified: x revealed 0 for positive, 1 for negative
            s &= zeros[lit - 1] if lit > 0 else ones[-lit - 1]
            if not s:
                break
        out[c] = bin(s).count("1")
    return out


def learn_clause_table(samples, w: int, threshold) -> LearnedTable:
    """Keep every clause of width <= w witnessed false on at most
    ``threshold * m0`` of the samples (exact rational comparison)."""
    rows = np.asarray(getattr(samples, "rows", samples), dtype=np.int8)
    if rows.ndim != 2 or rows.shape[0] == 0:
        raise ValueError("need a non-empty (m0, n) sample array")
    if w < 1:
        raise ValueError("width must be at least 1")
    m0, n = rows.shape
    threshold = Fraction(threshold)
    counts = falsified_counts(rows, enumerate_clauses(n, min(w, n)))
    keep = [c for c, k in counts.items() if k * threshold.denominator <= threshold.numerator * m0]
    return LearnedTable(keep, w, threshold, counts, m0)


def _narrowing_literal(learned: Clause, current: frozenset) -> int | None:
    """If ``learned = C'' v l`` with ``C'' v -l`` inside ``current``, the
    literal ``-l`` to delete; else None. At most one such ``l`` exists
    because ``current`` has no complementary pair."""
    flip = None
    for lit in learned.lits:
        if lit in current:
            continue
        if -lit in current and flip is None:
            flip = -lit
        else:
            return None
    return flip


def narrow_clause(clause: Clause, learned: Iterable[Clause]) -> Clause:
    current = clause.litset
    for c in learned:
        drop = _narrowing_literal(c, current)
        if drop is not None:
            current = current - {drop}
    return Clause._trusted(current)


def narrow_cnf(phi: Cnf, learned) -> Cnf:
    """One pass over the learned clauses per query clause, deleting a
    literal each time a learned clause cuts it away."""
    learned = list(getattr(learned, "clauses", learned))
    return Cnf(phi.n, tuple(narrow_clause(c, learned) for c in phi.clauses))
