"""Clauses, CNFs and partial assignments.

Literals are signed DIMACS-style integers: ``3`` is x3 and ``-3`` is its
negation. A partial assignment is a sequence over ``{0, 1, None}`` where
``None`` stands for a masked coordinate (printed ``*``).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Sequence


class TautologyError(ValueError):
    """Raised when a clause would contain a complementary pair."""


def var(lit: int) -> int:
    return lit if lit > 0 else -lit


def lit_sort_key(lit: int) -> tuple[int, int]:
    return (var(lit), 1 if lit > 0 else 0)


class Clause:
    """An immutable, non-tautological set of literals.

    Identity is structural: two clauses with the same literal set compare
    and hash equal regardless of construction order. The empty clause is
    the contradiction.
    """

    __slots__ = ("lits", "litset", "_hash")

    def __init__(self, lits: Iterable[int] = ()):
        litset = frozenset(lits)
        for lit in litset:
            if lit == 0:
                raise ValueError("0 is not a literal")
            if -lit in litset:
                raise TautologyError(f"complementary pair on x{var(lit)}")
        self.litset = litset
        self.lits = tuple(sorted(litset, key=lit_sort_key))
        self._hash = hash(self.lits)

    @classmethod
    def _trusted(cls, litset: frozenset) -> "Clause":
        # caller guarantees no complementary pair
        c = cls.__new__(cls)
        c.litset = litset
        c.lits = tuple(sorted(litset, key=lit_sort_key))
        c._hash = hash(c.lits)
        return c

    @property
    def width(self) -> int:
        return len(self.lits)

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(var(l) for l in self.lits)

    def is_empty(self) -> bool:
        return not self.lits

    def sort_key(self):
        """Canonical order: width, then variable indices, then polarities
        with negative before positive."""
        return (len(self.lits), self.variables, tuple(1 if l > 0 else 0 for l in self.lits))

    def issubset(self, other: "Clause") -> bool:
        return self.litset <= other.litset

    def __contains__(self, lit: int) -> bool:
        return lit in self.litset

    def __iter__(self):
        return iter(self.lits)

    def __len__(self):
        return len(self.lits)

    def __eq__(self, other):
        if not isinstance(other, Clause):
            return NotImplemented
        return self.lits == other.lits

    def __lt__(self, other: "Clause"):
        return self.sort_key() < other.sort_key()

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Clause({list(self.lits)})"

    def __str__(self):
        if not self.lits:
            return "⊥"
        return "(" + " ∨ ".join(("x%d" % l) if l > 0 else ("¬x%d" % -l) for l in self.lits) + ")"


EMPTY_CLAUSE = Clause()


class _Top:
    """The tautological restriction of a witnessed-true clause."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "TOP"

    __str__ = __repr__

    def __reduce__(self):
        return (_Top, ())


class _Bottom:
    """The contradictory restriction of a CNF with a witnessed-false clause."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BOTTOM"

    __str__ = __repr__

    def __reduce__(self):
        return (_Bottom, ())


TOP = _Top()
BOTTOM = _Bottom()


@dataclass(frozen=True)
class Cnf:
    """An ordered conjunction of clauses over variables ``1..n``."""

    n: int
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if self.n < 0:
            raise ValueError("negative variable count")
        for c in self.clauses:
            for lit in c.lits:
                if var(lit) > self.n:
                    raise ValueError(f"literal {lit} out of range for n={self.n}")

    @classmethod
    def from_lists(cls, n: int, clauses: Iterable[Iterable[int]]) -> "Cnf":
        return cls(n, tuple(Clause(c) for c in clauses))

    def __len__(self):
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    def __and__(self, other: "Cnf") -> "Cnf":
        return Cnf(max(self.n, other.n), self.clauses + other.clauses)

    def __str__(self):
        if not self.clauses:
            return "⊤"
        return " ∧ ".join(str(c) for c in self.clauses)


class PartialAssignment(tuple):
    """Element of ``{0, 1, *}^n`` stored as a tuple of 0, 1 or ``None``."""

    __slots__ = ()

    def __new__(cls, entries: Iterable = ()):
        vals = []
        for e in entries:
            if e is None or e == "*" or e == -1:
                vals.append(None)
            elif e in (0, 1, "0", "1"):
                vals.append(int(e))
            else:
                raise ValueError(f"illegal partial-assignment entry {e!r}")
        return super().__new__(cls, vals)

    @classmethod
    def parse(cls, text: str) -> "PartialAssignment":
        return cls(text.strip())

    @property
    def n(self) -> int:
        return len(self)

    def is_consistent_with(self, x: Sequence[int]) -> bool:
        return len(x) == len(self) and all(r is None or r == int(xi) for r, xi in zip(self, x))

    def __str__(self):
        return "".join("*" if v is None else str(v) for v in self)


class WitnessStatus(enum.Enum):
    WITNESSED_TRUE = "witnessed-true"
    WITNESSED_FALSE = "witnessed-false"
    UNDETERMINED = "undetermined"


def _check_range(lits, n):
    for lit in lits:
        if var(lit) > n:
            raise IndexError(f"variable x{var(lit)} outside partial assignment of length {n}")


def witness_status(clause: Clause, rho: Sequence) -> WitnessStatus:
    _check_range(clause.lits, len(rho))
    all_false = True
    for lit in clause.lits:
        v = rho[var(lit) - 1]
        if v is None or v == -1:
            all_false = False
        elif (v == 1) == (lit > 0):
            return WitnessStatus.WITNESSED_TRUE
    return WitnessStatus.WITNESSED_FALSE if all_false else WitnessStatus.UNDETERMINED


def restrict_clause(clause: Clause, rho: Sequence):
    """Return ``TOP`` if the clause is witnessed true, else its literals on
    masked coordinates."""
    _check_range(clause.lits, len(rho))
    keep = []
    for lit in clause.lits:
        v = rho[var(lit) - 1]
        if v is None or v == -1:
            keep.append(lit)
        elif (v == 1) == (lit > 0):
            return TOP
    if len(keep) == len(clause.lits):
        return clause
    return Clause._trusted(frozenset(keep))


def restrict_cnf(phi: Cnf, rho: Sequence):
    """Restriction of a CNF: ``BOTTOM`` if some clause is witnessed false,
    otherwise the non-``TOP`` restricted clauses in their original order."""
    out = []
    for c in phi.clauses:
        r = restrict_clause(c, rho)
        if r is TOP:
            continue
        if not r.lits:
            return BOTTOM
        out.append(r)
    return Cnf(phi.n, tuple(out))


def evaluate_clause(clause: Clause, x: Sequence[int]) -> bool:
    return any((int(x[var(l) - 1]) == 1) == (l > 0) for l in clause.lits)


def evaluate(phi: Cnf, x: Sequence[int]) -> bool:
    if len(x) != phi.n:
        raise ValueError(f"assignment has length {len(x)}, expected {phi.n}")
    return all(evaluate_clause(c, x) for c in phi.clauses)


def count_clauses(n: int, w: int) -> int:
    """Number of non-tautological clauses of width 1..w over n variables."""
    return sum(comb(n, k) * 2**k for k in range(1, w + 1))


def enumerate_clauses(n: int, w: int) -> Iterator[Clause]:
    """All non-tautological clauses of width 1..w in canonical order."""
    if w > n:
        raise ValueError(f"width {w} exceeds variable count {n}")
    if w < 1:
        raise ValueError("width must be at least 1")
    for k in range(1, w + 1):
        for vs in itertools.combinations(range(1, n + 1), k):
            for signs in itertools.product((False, True), repeat=k):
                yield Clause._trusted(frozenset(v if s else -v for v, s in zip(vs, signs)))
