"""Background distributions: uniform, affine over F2, and the pure-document
topic model, each with a seeded sampler and exact event probabilities.

Samplers return ``uint8`` arrays of shape ``(m, n)``. Every row consumes
the generator in ascending coordinate order, so drawing ``m`` rows at once
yields the same bits as ``m`` successive single draws.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .errors import SizeLimitError, UnsolvableSystem
from .logic import Clause, var

AUDIT_LIMIT = 2_000_000


def _event_literals(event: Iterable[int]) -> dict[int, int] | None:
    """Map variable -> required bit, or None if the event is contradictory."""
    req: dict[int, int] = {}
    for lit in event:
        v, b = var(lit), 1 if lit > 0 else 0
        if req.get(v, b) != b:
            return None
        req[v] = b
    return req


class AffineSystem:
    """A solvable system ``Ax = b`` over F2 on variables ``1..n``."""

    def __init__(self, n: int, rows: Iterable[tuple[Iterable[int], int]] = ()):
        self.n = n
        raw = []
        for variables, rhs in rows:
            variables = list(variables)
            for v in variables:
                if not 1 <= v <= n:
                    raise IndexError(f"variable x{v} out of range for n={n}")
            # repeated variables cancel over F2
            mask = 0
            for v in variables:
                mask ^= 1 << (v - 1)
            raw.append((mask, int(rhs) & 1))
        self.raw_rows = tuple(raw)
        self.reduced = gf2.rref(raw, n)
        if not self.reduced.solvable:
            raise UnsolvableSystem("system has a row reducing to 0 = 1")

    @property
    def rank(self) -> int:
        return self.reduced.rank

    def row_variables(self, mask: int) -> list[int]:
        return [i + 1 for i in range(self.n) if mask >> i & 1]

    def satisfies(self, x: Sequence[int]) -> bool:
        for mask, rhs in self.raw_rows:
            s = 0
            for v in self.row_variables(mask):
                s ^= int(x[v - 1])
            if s != rhs:
                return False
        return True

    def __repr__(self):
        rows = ["⊕".join(f"x{v}" for v in self.row_variables(a)) + f"={b}" for a, b in self.raw_rows]
        return f"AffineSystem(n={self.n}, {{{', '.join(rows)}}})"


def rref_f2(system: AffineSystem) -> gf2.Reduced:
    return system.reduced


def reduce_rows(n: int, rows) -> gf2.Reduced:
    """Row-reduce without the solvability check (``rows`` as in AffineSystem)."""
    packed = []
    for variables, rhs in rows:
        mask = 0
        for v in variables:
            mask ^= 1 << (v - 1)
        packed.append((mask, int(rhs) & 1))
    return gf2.rref(packed, n)


def sample_affine(system: AffineSystem, rng: np.random.Generator, m: int = 1) -> np.ndarray:
    """Uniform solutions of the system. Free variables take fair coin bits
    in ascending index order; pivot variables are then determined."""
    red = system.reduced
    free = red.free
    bits = (rng.random((m, len(free))) < 0.5).astype(np.uint8)
    x = np.zeros((m, system.n), dtype=np.uint8)
    if free:
        x[:, np.array(free) - 1] = bits
    free_pos = {v: i for i, v in enumerate(free)}
    for (mask, rhs), p in zip(red.rows, red.pivots):
        val = np.full(m, rhs, dtype=np.uint8)
        for v in system.row_variables(mask):
            if v != p:
                val ^= bits[:, free_pos[v]]
        x[:, p - 1] = val
    return x


def exact_probability(system: AffineSystem, event: Iterable[int]) -> Fraction:
    """Probability of a conjunction of literals under the affine distribution,
    by comparing ranks after appending ``x_i = b`` rows."""
    req = _event_literals(event)
    if req is None:
        return Fraction(0)
    if not req:
        return Fraction(1)
    rows = list(system.reduced.rows) + [(1 << (v - 1), b) for v, b in req.items()]
    red = gf2.rref(rows, system.n)
    if not red.solvable:
        return Fraction(0)
    return Fraction(1, 2 ** (red.rank - system.rank))


def has_constraint_on(system: AffineSystem, clause: Clause) -> bool:
    """Whether a nonzero combination of rows is supported inside the clause's
    variables.

    The left null space of the columns outside the clause has dimension
    ``r - rank(A_out)`` and contains that of ``A`` (dimension ``r - rank(A)``);
    a constraint exists exactly when the first is strictly larger.
    """
    inside = gf2.mask_of(clause.variables)
    outside_rows = [a & ~inside for a, _ in system.raw_rows]
    full_rows = [a for a, _ in system.raw_rows]
    return gf2.rank(full_rows, system.n) > gf2.rank(outside_rows, system.n)


@dataclass
class TopicModel:
    """Pure-document topic model.

    ``topics`` is a list of ``(probability, primary term indices)``; a topic
    may have no primary terms. ``word_probs[i - 1]`` is the inclusion
    probability of word i whenever it is in the chosen topic's word set.
    """

    n: int
    topics: list[tuple[Fraction, frozenset]]
    generic: frozenset
    word_probs: list[Fraction]

    def __post_init__(self):
        self.topics = [(Fraction(p), frozenset(s)) for p, s in self.topics]
        self.generic = frozenset(self.generic)
        self.word_probs = [Fraction(p) for p in self.word_probs]
        if len(self.word_probs) != self.n:
            raise ValueError("need one word probability per word")
        seen = set(self.generic)
        for p, s in self.topics:
            if not 0 < p <= 1:
                raise ValueError("topic probabilities must lie in (0, 1]")
            if seen & s:
                raise ValueError("primary term sets must be disjoint from each other and from generic terms")
            seen |= s
        if any(not 1 <= i <= self.n for i in seen):
            raise IndexError("term index out of range")
        if sum(p for p, _ in self.topics) != 1:
            raise ValueError("topic probabilities must sum to 1")
        for i in seen:
            if not 0 < self.word_probs[i - 1] <= 1:
                raise ValueError(f"word probability of x{i} must lie in (0, 1]")

    def topic_words(self, t: int) -> frozenset:
        return self.topics[t][1] | self.generic


def sample_topic_model(model: TopicModel, rng: np.random.Generator, m: int = 1) -> np.ndarray:
    """One coin for the topic, then one coin per word (ascending index);
    words outside the topic's set stay 0 but still consume a coin."""
    cum = np.cumsum([float(p) for p, _ in model.topics])
    probs = np.array([float(p) for p in model.word_probs])
    x = np.zeros((m, model.n), dtype=np.uint8)
    in_topic = np.zeros((len(model.topics), model.n), dtype=bool)
    for t in range(len(model.topics)):
        for i in model.topic_words(t):
            in_topic[t, i - 1] = True
    for row in range(m):
        u = rng.random()
        t = min(int(np.searchsorted(cum, u, side="right")), len(cum) - 1)
        coins = rng.random(model.n)
        x[row] = (coins < probs) & in_topic[t]
    return x


class DistributionSource:
    """Common sampler interface. ``exact`` marks sources whose event
    probabilities can be computed exactly."""

    n: int
    exact = True
    kind = "abstract"

    def sample(self, rng: np.random.Generator, m: int = 1) -> np.ndarray:
        raise NotImplementedError

    def probability(self, event: Iterable[int]) -> Fraction:
        raise NotImplementedError

    def describe(self) -> str:
        return self.kind


class UniformSource(DistributionSource):
    kind = "uniform"

    def __init__(self, n: int):
        self.n = n

    def sample(self, rng, m=1):
        return (rng.random((m, self.n)) < 0.5).astype(np.uint8)

    def probability(self, event):
        req = _event_literals(event)
        if req is None:
            return Fraction(0)
        return Fraction(1, 2 ** len(req))

    def describe(self):
        return f"uniform n={self.n}"


class AffineSource(DistributionSource):
    kind = "affine"

    def __init__(self, system: AffineSystem):
        self.system = system
        self.n = system.n

    def sample(self, rng, m=1):
        return sample_affine(self.system, rng, m)

    def probability(self, event):
        return exact_probability(self.system, event)

    def describe(self):
        return f"affine n={self.n} rows={len(self.system.raw_rows)} rank={self.system.rank}"


class TopicSource(DistributionSource):
    kind = "topic"

    def __init__(self, model: TopicModel):
        self.model = model
        self.n = model.n

    def sample(self, rng, m=1):
        return sample_topic_model(self.model, rng, m)

    def probability(self, event):
        """Sum over topics of the product of per-word marginals (words are
        independent once the topic is fixed)."""
        req = _event_literals(event)
        if req is None:
            return Fraction(0)
        total = Fraction(0)
        for t, (pt, _) in enumerate(self.model.topics):
            words = self.model.topic_words(t)
            term = pt
            for v, b in req.items():
                p = self.model.word_probs[v - 1] if v in words else Fraction(0)
                term *= p if b else 1 - p
                if not term:
                    break
            total += term
        return total

    def describe(self):
        return f"topic n={self.n} topics={len(self.model.topics)}"


def conditional_literal_probability(source: DistributionSource, lit: int, cond: Iterable[int]) -> Fraction:
    cond = list(cond)
    denom = source.probability(cond)
    if denom == 0:
        raise ZeroDivisionError("conditioning event has probability zero")
    return source.probability(cond + [lit]) / denom


@dataclass
class GapReport:
    width: int
    beta_found: Fraction
    gamma_found: Fraction
    split: tuple[Fraction, Fraction]
    conditionals: list[Fraction] = field(default_factory=list)  # distinct values seen
    implied: list[tuple[tuple[int, ...], int]] = field(default_factory=list)
    conditions_checked: int = 0
    margins: list[Fraction] = field(default_factory=list)  # one per (cond, variable) pair

    def to_dict(self) -> dict:
        return {
            "width": self.width,
            "beta_found": str(self.beta_found),
            "gamma_found": str(self.gamma_found),
            "split": [str(s) for s in self.split],
            "conditionals": [str(c) for c in self.conditionals],
            "implied": [{"cond": list(c), "implied": l} for c, l in self.implied],
            "conditions_checked": self.conditions_checked,
        }


def _conjunctions(n: int, w: int):
    for k in range(0, w + 1):
        for vs in itertools.combinations(range(1, n + 1), k):
            for signs in itertools.product((False, True), repeat=k):
                yield tuple(v if s else -v for v, s in zip(vs, signs))


def audit_correlation_gap(
    source: DistributionSource,
    w: int,
    beta: Fraction | None = None,
    gamma: Fraction | None = None,
    limit: int = AUDIT_LIMIT,
) -> GapReport:
    """Measure the width-w correlation gap of an exact source.

    For every conjunction of at most ``w`` literals with nonzero probability
    and every variable outside it, the margin ``min(p, 1 - p)`` of
    ``p = Pr[x = 1 | cond]`` is recorded. With ``beta``/``gamma`` given,
    margins ``<= gamma`` are implied and ``>= beta`` balanced; otherwise the
    split is placed at the widest gap between consecutive distinct margins
    (0 included as the lowest value).
    """
    n = source.n
    if not source.exact:
        raise ValueError("source has no exact-probability capability")
    w = min(w, n)
    work = sum(comb(n, k) * 2**k for k in range(w + 1)) * max(n, 1)
    if work > limit:
        raise SizeLimitError(f"audit needs {work} conditionals, limit {limit}")
    rows = []  # (cond, variable, p)
    checked = 0
    for cond in _conjunctions(n, w):
        pc = source.probability(cond)
        if pc == 0:
            continue
        checked += 1
        used = {var(l) for l in cond}
        for v in range(1, n + 1):
            if v in used:
                continue
            rows.append((cond, v, source.probability(cond + (v,)) / pc))
    margins = [min(p, 1 - p) for _, _, p in rows]
    if beta is None or gamma is None:
        levels = sorted(set(margins) | {Fraction(0)})
        if len(levels) == 1:
            lo, hi = levels[0], levels[0]
        else:
            gaps = [(levels[i + 1] - levels[i], -i) for i in range(len(levels) - 1)]
            _, neg_i = max(gaps)
            lo, hi = levels[-neg_i], levels[-neg_i + 1]
    else:
        lo, hi = Fraction(gamma), Fraction(beta)
    implied = []
    balanced_m = []
    implied_m = []
    for (cond, v, p), mgn in zip(rows, margins):
        if mgn <= lo:
            implied_m.append(mgn)
            implied.append((cond, v if p >= Fraction(1, 2) else -v))
        elif mgn >= hi:
            balanced_m.append(mgn)
        else:
            # neither balanced nor implied under the given thresholds
            implied_m.append(mgn)
    return GapReport(
        width=w,
        beta_found=min(balanced_m) if balanced_m else Fraction(1, 2),
        gamma_found=max(implied_m) if implied_m else Fraction(0),
        split=(lo, hi),
        conditionals=sorted({p for _, _, p in rows}),
        implied=implied,
        conditions_checked=checked,
        margins=margins,
    )
