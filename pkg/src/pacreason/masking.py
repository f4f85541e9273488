"""Independent masking: each coordinate revealed with probability mu."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .logic import PartialAssignment

STAR = -1  # masked entry in int8 sample arrays


def seed_streams(seed: int) -> tuple[np.random.Generator, np.random.Generator]:
    """(sampling, masking) generators derived from one master seed.

    The two streams are children 0 and 1 of ``SeedSequence(seed)``, so
    changing ``mu`` never perturbs the drawn assignments.
    """
    sample_ss, mask_ss = np.random.SeedSequence(seed).spawn(2)
    return np.random.default_rng(sample_ss), np.random.default_rng(mask_ss)


def worker_seed(seed: int, worker: int) -> np.random.SeedSequence:
    """Independent per-worker stream for parallel generation."""
    return np.random.SeedSequence([seed, worker])


def _check_mu(mu: float) -> None:
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mu must lie in [0, 1], got {mu}")


def mask_rows(x: np.ndarray, mu: float, rng: np.random.Generator) -> np.ndarray:
    """Mask each row of a (m, n) 0/1 array; coins drawn row-major.

    Entries already masked in ``x`` stay masked.
    """
    _check_mu(mu)
    x = np.asarray(x)
    reveal = rng.random(x.shape) < mu
    return np.where(reveal, x, STAR).astype(np.int8)


def mask_independent(x, mu: float, rng: np.random.Generator) -> PartialAssignment:
    row = mask_rows(np.asarray(x, dtype=np.int8)[None, :], mu, rng)[0]
    return PartialAssignment(row.tolist())


@dataclass
class MaskedSampleSet:
    """Partial assignments stored as an int8 array with ``STAR`` for ``*``."""

    rows: np.ndarray
    mu: float
    seed: int
    provenance: str = ""
    full: np.ndarray | None = field(default=None, repr=False)  # kept only in debug mode

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=np.int8)
        if self.rows.ndim != 2:
            raise ValueError("sample array must be 2-dimensional")

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    def __len__(self):
        return self.rows.shape[0]

    def __getitem__(self, i) -> PartialAssignment:
        return PartialAssignment(self.rows[i].tolist())

    def __iter__(self) -> Iterator[PartialAssignment]:
        for r in self.rows:
            yield PartialAssignment(r.tolist())

    def split(self, m0: int) -> tuple[np.ndarray, np.ndarray]:
        return self.rows[:m0], self.rows[m0:]


def draw_masked_samples(source, mu: float, m: int, seed: int, debug: bool = False) -> MaskedSampleSet:
    """Draw ``m`` assignments from ``source`` and mask each with ``M_mu``."""
    if m < 1:
        raise ValueError("need at least one sample")
    _check_mu(mu)
    sample_rng, mask_rng = seed_streams(seed)
    x = source.sample(sample_rng, m)
    rows = mask_rows(x, mu, mask_rng)
    return MaskedSampleSet(rows, mu, seed, provenance=source.describe(), full=x if debug else None)
