"""Brute-force ground truth for desk-scale instances.

These deliberately avoid the code paths they check: validity and SAT
enumerate the cube directly, and width-bounded refutability is a naive
fixpoint over bitmask clauses with every pair re-resolved each round.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .distributions import AffineSource, DistributionSource, TopicSource, UniformSource
from .errors import SizeLimitError
from .logic import Cnf, var

CUBE_LIMIT = 20  # variables
AFFINE_SUPPORT_LIMIT = 22  # log2 of solution count
WIDTH_ORACLE_LIMIT = 8  # variables


def cube(n: int) -> np.ndarray:
    """All of {0,1}^n; row k has x_i = bit (i-1) of k."""
    if n > CUBE_LIMIT:
        raise SizeLimitError(f"cube enumeration limited to n <= {CUBE_LIMIT}, got {n}")
    k = np.arange(2**n, dtype=np.int64)
    return ((k[:, None] >> np.arange(n)) & 1).astype(np.uint8)


def satisfied_rows(phi: Cnf, x: np.ndarray) -> np.ndarray:
    ok = np.ones(x.shape[0], dtype=bool)
    for c in phi.clauses:
        sat = np.zeros(x.shape[0], dtype=bool)
        for lit in c.lits:
            col = x[:, var(lit) - 1]
            sat |= (col == 1) if lit > 0 else (col == 0)
        ok &= sat
    return ok


def _affine_support(src: AffineSource) -> np.ndarray:
    system = src.system
    if system.n <= CUBE_LIMIT:
        x = cube(system.n)
        keep = np.ones(x.shape[0], dtype=bool)
        for mask, rhs in system.raw_rows:
            vs = system.row_variables(mask)
            par = np.bitwise_xor.reduce(x[:, np.array(vs) - 1], axis=1) if vs else np.zeros(x.shape[0], np.uint8)
            keep &= par == rhs
        return x[keep]
    free = system.reduced.free
    if len(free) > AFFINE_SUPPORT_LIMIT:
        raise SizeLimitError(f"affine support 2^{len(free)} exceeds 2^{AFFINE_SUPPORT_LIMIT}")
    # parametrise by free variables: back-substitute every free bit pattern
    f = cube(len(free)) if free else np.zeros((1, 0), np.uint8)
    x = np.zeros((f.shape[0], system.n), np.uint8)
    x[:, np.array(free, dtype=int) - 1] = f
    for (mask, rhs), p in zip(system.reduced.rows, system.reduced.pivots):
        val = np.full(f.shape[0], rhs, np.uint8)
        for v in system.row_variables(mask):
            if v != p:
                val ^= x[:, v - 1]
        x[:, p - 1] = val
    return x


def brute_validity(phi: Cnf, source: DistributionSource) -> Fraction:
    """Exact ``Pr_{x ~ D}[phi(x) = 1]`` by enumerating the support."""
    if isinstance(source, AffineSource):
        support = _affine_support(source)
        return Fraction(int(satisfied_rows(phi, support).sum()), support.shape[0])
    if isinstance(source, UniformSource):
        x = cube(source.n)
        return Fraction(int(satisfied_rows(phi, x).sum()), x.shape[0])
    if isinstance(source, TopicSource):
        model = source.model
        if model.n > CUBE_LIMIT:
            raise SizeLimitError("topic-model enumeration limited to n <= 20")
        total = Fraction(0)
        for t, (pt, _) in enumerate(model.topics):
            words = sorted(model.topic_words(t))
            for bits in itertools.product((0, 1), repeat=len(words)):
                x = [0] * model.n
                weight = pt
                for wd, b in zip(words, bits):
                    x[wd - 1] = b
                    p = model.word_probs[wd - 1]
                    weight *= p if b else 1 - p
                if weight and satisfied_rows(phi, np.array([x], np.uint8))[0]:
                    total += weight
        return total
    raise TypeError(f"no exact enumeration for {type(source).__name__}")


def brute_sat(phi: Cnf):
    """First satisfying assignment in cube order, or ``None``."""
    x = cube(phi.n)
    ok = np.flatnonzero(satisfied_rows(phi, x))
    if ok.size == 0:
        return None
    return tuple(int(b) for b in x[ok[0]])


def brute_width_refutable(phi: Cnf, w: int) -> bool:
    """Whether the empty clause lies in the closure of the width-<=w axioms
    under width-<=w non-tautological resolvents."""
    n = phi.n
    if n > WIDTH_ORACLE_LIMIT:
        raise SizeLimitError(f"width oracle limited to n <= {WIDTH_ORACLE_LIMIT}")
    pos, neg = [], []
    for c in phi.clauses:
        if len(c) > w:
            continue
        p = sum(1 << (l - 1) for l in c.lits if l > 0)
        q = sum(1 << (-l - 1) for l in c.lits if l < 0)
        pos.append(p)
        neg.append(q)
    clauses = set(zip(pos, neg))
    if (0, 0) in clauses:
        return True
    popcount = np.array([bin(i).count("1") for i in range(1 << n)], dtype=np.int64)
    while True:
        arr = np.array(sorted(clauses), dtype=np.int64).reshape(-1, 2)
        P, N = arr[:, 0], arr[:, 1]
        # clash[i, j]: variables positive in i and negative in j
        clash = P[:, None] & N[None, :]
        other = N[:, None] & P[None, :]
        single = (clash != 0) & ((clash & (clash - 1)) == 0) & (other == 0)
        rp = (P[:, None] | P[None, :]) & ~clash
        rn = (N[:, None] | N[None, :]) & ~clash
        ok = single & ((rp & rn) == 0) & (popcount[rp] + popcount[rn] <= w)
        new = set(zip(rp[ok].tolist(), rn[ok].tolist()))
        if (0, 0) in new:
            return True
        if new <= clauses:
            return False
        clauses |= new
