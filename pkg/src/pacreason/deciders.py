"""Top-level decision procedures and their parameter formulas.

All three deciders consume a list of masked samples and return a
:class:`RunReport`. Theory-derived sample sizes are astronomically large
for any interesting width, so every size can be overridden through
:class:`RunConfig`; the report records which route was taken.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InfeasibleParameters
from .learner import learn_clause_table, narrow_cnf
from .logic import BOTTOM, Cnf, WitnessStatus, restrict_cnf, witness_status
from .resolution import w_refute

ACCEPT, REJECT = "accept", "reject"
# per-sample outcomes
REFUTED, BOTTOM_HIT, FAILED, FALSIFIED, CLEAR = "refuted", "bottom", "failed", "falsified", "clear"


def exact(x) -> Fraction:
    """Decimal-exact rational for a user-supplied probability."""
    return x if isinstance(x, Fraction) else Fraction(str(x))


@dataclass
class RunConfig:
    mu: float = 0.5
    beta: float = 0.5
    gamma: float = 0.1
    eps: float = 0.1
    delta: float = 0.05
    pn: int = 10
    n: int | None = None
    w: int | None = None
    m0: int | None = None
    m1: int | None = None
    seed: int = 0

    def __post_init__(self):
        for name in ("mu", "eps"):
            v = getattr(self, name)
            if not 0 <= v <= 1:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        for name in ("beta", "gamma", "delta"):
            v = getattr(self, name)
            if not 0 < v < 1:
                raise ValueError(f"{name} must lie in (0, 1), got {v}")
        if int(self.pn) < 1:
            raise ValueError("proof-size bound must be a positive integer")
        for name in ("w", "m0", "m1"):
            v = getattr(self, name)
            if v is not None and (int(v) != v or v < 1):
                raise ValueError(f"override {name} must be a positive integer")

    @property
    def overridden(self) -> bool:
        return any(v is not None for v in (self.w, self.m0, self.m1))

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class Params:
    w: int
    m0: int | None
    m1: int | None
    learn_threshold: Fraction | None = None
    reject_fraction: Fraction | None = None
    mode: str = "theory-faithful"
    notes: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        for k in ("learn_threshold", "reject_fraction"):
            if d[k] is not None:
                d[k] = str(d[k])
        return d


def _ceil(f):
    """Ceiling of a real-valued formula, or None when it overflows."""
    try:
        v = f()
    except (OverflowError, ZeroDivisionError):
        return None
    if not math.isfinite(v):
        return None
    return math.ceil(v)


def _mode(cfg: RunConfig) -> str:
    return "overridden" if cfg.overridden else "theory-faithful"


def params_learnres(cfg: RunConfig) -> Params:
    """m1, then the width w (which uses m1), then m0 and the learning
    threshold (which use w). Overrides replace the computed value and feed
    the later formulas."""
    n = cfg.n
    if n is None:
        raise ValueError("config needs the variable count n")
    mu, beta, gamma, delta = cfg.mu, cfg.beta, cfg.gamma, cfg.delta
    m1 = cfg.m1 if cfg.m1 is not None else _ceil(lambda: (1 / (2 * gamma**2)) * math.log(2 / delta))
    if cfg.w is not None:
        w = cfg.w
    else:
        w = _ceil(lambda: (1 / (mu * beta)) * math.log(2 * m1 * cfg.pn / delta))
        if w is None:
            raise ValueError("width formula is undefined for mu = 0")
    if cfg.m0 is not None:
        m0 = cfg.m0
    else:
        m0 = _ceil(
            lambda: (2 * w * (2 * n + 1) ** (2 * w)) / (mu ** (2 * w) * gamma**2) * math.log(4 * (2 * n + 1) / delta)
        )
    thr = exact(gamma) * exact(mu) ** w / (2 * (2 * n + 1) ** w)
    return Params(w=w, m0=m0, m1=m1, learn_threshold=thr, mode=_mode(cfg))


def params_cnfeval(cfg: RunConfig, clauses: int) -> Params:
    n = cfg.n
    if n is None:
        raise ValueError("config needs the variable count n")
    if clauses < 1:
        raise ValueError("query must have at least one clause")
    mu, beta, gamma, delta = cfg.mu, cfg.beta, cfg.gamma, cfg.delta
    w = cfg.w if cfg.w is not None else _ceil(lambda: (2 / beta) * math.log(4 * clauses / gamma))
    if cfg.m0 is not None:
        m0 = cfg.m0
    else:
        m0 = _ceil(
            lambda: (32 * w * (2 * n + 1) ** (2 * w)) / (mu ** (4 * w) * gamma**2) * math.log((4 * n + 2) / delta)
        )
    m1 = cfg.m1 if cfg.m1 is not None else _ceil(lambda: 32 / (mu**w * gamma) ** 2 * math.log(2 / delta))
    mu_w = exact(mu) ** w
    return Params(
        w=w,
        m0=m0,
        m1=m1,
        learn_threshold=exact(gamma) * exact(mu) ** (2 * w) / (4 * (2 * n + 1) ** w),
        reject_fraction=5 * mu_w * exact(gamma) / 8,
        mode=_mode(cfg),
    )


def params_uniform(cfg: RunConfig) -> Params:
    """m = ceil(ln(1/delta) / gamma^2); w = ceil((2/mu) ln(2 m p_n / delta)),
    i.e. the wide-clause witnessing bound at beta = 1/2 with a union bound
    over m * p_n clause-sample pairs. ``cfg.m1`` overrides m."""
    gamma, delta, mu = cfg.gamma, cfg.delta, cfg.mu
    m = cfg.m1 if cfg.m1 is not None else _ceil(lambda: (1 / gamma**2) * math.log(1 / delta))
    if cfg.w is not None:
        w = cfg.w
    else:
        w = _ceil(lambda: (2 / mu) * math.log(2 * m * cfg.pn / delta))
        if w is None:
            raise ValueError("width formula is undefined for mu = 0")
    return Params(w=w, m0=0, m1=m, mode=_mode(cfg), notes={"width_constant": "2/mu", "beta": "1/2"})


@dataclass
class RunReport:
    algorithm: str
    decision: str
    params: Params
    outcomes: list[str]
    failed: int
    limit: str  # decision threshold on the failure count, as an exact rational
    learned: int | None = None
    learned_clauses: list[list[int]] | None = None
    narrowed_query: list[list[int]] | None = None
    learn_counts: list[int] | None = None
    seed: int | None = None
    config: dict | None = None
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["params"] = self.params.to_dict()
        return d


def _rows(samples) -> np.ndarray:
    return np.asarray(getattr(samples, "rows", samples), dtype=np.int8)


def _check_count(rows, m0, m1):
    if m0 is None or m1 is None:
        raise InfeasibleParameters("sample sizes overflow; supply explicit overrides")
    if rows.shape[0] != m0 + m1:
        raise ValueError(f"expected {m0 + m1} samples (m0={m0}, m1={m1}), got {rows.shape[0]}")


def _rho(row):
    return [None if v < 0 else int(v) for v in row]


def learn_res(phi: Cnf, cfg: RunConfig, samples, early_exit: bool = True) -> RunReport:
    """Learn a clause table from the first m0 samples, narrow the query, and
    count the last m1 samples on which no width-2w refutation of the
    restricted ``phi' & psi`` is found."""
    t0 = time.perf_counter()
    rows = _rows(samples)
    if cfg.n is None:
        cfg = RunConfig(**{**cfg.to_dict(), "n": phi.n})
    p = params_learnres(cfg)
    _check_count(rows, p.m0, p.m1)
    table = learn_clause_table(rows[: p.m0], p.w, p.learn_threshold) if p.m0 else None
    learned = table.clauses if table else []
    narrowed = narrow_cnf(phi, learned)
    combined = Cnf(phi.n, narrowed.clauses + tuple(learned))
    limit = math.floor(exact(cfg.eps) * p.m1)
    outcomes, failed, decision = [], 0, ACCEPT
    for row in rows[p.m0 :]:
        r = restrict_cnf(combined, _rho(row))
        if r is BOTTOM:
            outcomes.append(BOTTOM_HIT)
        elif w_refute(r, 2 * p.w) is not None:
            outcomes.append(REFUTED)
        else:
            outcomes.append(FAILED)
            failed += 1
            if failed > limit:
                decision = REJECT
                if early_exit:
                    break
    return RunReport(
        algorithm="learnres",
        decision=decision,
        params=p,
        outcomes=outcomes,
        failed=failed,
        limit=str(limit),
        learned=len(learned),
        learned_clauses=[list(c.lits) for c in learned],
        narrowed_query=[list(c.lits) for c in narrowed.clauses],
        learn_counts=sorted(table.counts.values()) if table else [],
        seed=cfg.seed,
        config=cfg.to_dict(),
        elapsed=time.perf_counter() - t0,
    )


def cnf_eval(phi: Cnf, cfg: RunConfig, samples, early_exit: bool = True) -> RunReport:
    """Reject when more than ``5 mu^w gamma / 8`` of the last m1 samples
    witness some narrowed clause false."""
    t0 = time.perf_counter()
    rows = _rows(samples)
    if cfg.n is None:
        cfg = RunConfig(**{**cfg.to_dict(), "n": phi.n})
    p = params_cnfeval(cfg, len(phi))
    _check_count(rows, p.m0, p.m1)
    table = learn_clause_table(rows[: p.m0], p.w, p.learn_threshold) if p.m0 else None
    learned = table.clauses if table else []
    narrowed = narrow_cnf(phi, learned)
    limit = p.reject_fraction * p.m1
    outcomes, failed, decision = [], 0, ACCEPT
    for row in rows[p.m0 :]:
        rho = _rho(row)
        if any(witness_status(c, rho) is WitnessStatus.WITNESSED_FALSE for c in narrowed.clauses):
            outcomes.append(FALSIFIED)
            failed += 1
            if failed > limit:
                decision = REJECT
                if early_exit:
                    break
        else:
            outcomes.append(CLEAR)
    return RunReport(
        algorithm="cnfeval",
        decision=decision,
        params=p,
        outcomes=outcomes,
        failed=failed,
        limit=str(limit),
        learned=len(learned),
        learned_clauses=[list(c.lits) for c in learned],
        narrowed_query=[list(c.lits) for c in narrowed.clauses],
        learn_counts=sorted(table.counts.values()) if table else [],
        seed=cfg.seed,
        config=cfg.to_dict(),
        elapsed=time.perf_counter() - t0,
    )


def uniform_decider(phi: Cnf, cfg: RunConfig, samples, early_exit: bool = True) -> RunReport:
    t0 = time.perf_counter()
    rows = _rows(samples)
    p = params_uniform(cfg)
    if p.m1 is None:
        raise InfeasibleParameters("sample size overflows; supply an explicit override")
    if rows.shape[0] != p.m1:
        raise ValueError(f"expected {p.m1} samples, got {rows.shape[0]}")
    limit = exact(cfg.eps) * p.m1
    outcomes, failed, decision = [], 0, ACCEPT
    for row in rows:
        r = restrict_cnf(phi, _rho(row))
        if r is BOTTOM:
            outcomes.append(BOTTOM_HIT)
        elif w_refute(r, p.w) is not None:
            outcomes.append(REFUTED)
        else:
            outcomes.append(FAILED)
            failed += 1
            if failed > limit:
                decision = REJECT
                if early_exit:
                    break
    return RunReport(
        algorithm="unifdecide",
        decision=decision,
        params=p,
        outcomes=outcomes,
        failed=failed,
        limit=str(limit),
        seed=cfg.seed,
        config=cfg.to_dict(),
        elapsed=time.perf_counter() - t0,
    )
