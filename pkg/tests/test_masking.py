import numpy as np
import pytest

from pacreason.distributions import AffineSource, AffineSystem, UniformSource
from pacreason.masking import (
    STAR,
    draw_masked_samples,
    mask_independent,
    mask_rows,
    seed_streams,
    worker_seed,
)


def test_mu_extremes():
    rng = np.random.default_rng(0)
    x = [1, 0, 1, 1]
    assert mask_independent(x, 1.0, rng) == (1, 0, 1, 1)
    assert mask_independent(x, 0.0, rng) == (None,) * 4


def test_mu_range():
    with pytest.raises(ValueError):
        mask_rows(np.zeros((1, 2)), 1.5, np.random.default_rng(0))


def test_reveal_rate_and_independence():
    x = np.zeros((40000, 20), dtype=np.int8)
    rows = mask_rows(x, 0.5, np.random.default_rng(3))
    rev = (rows != STAR).astype(float)
    assert np.all(np.abs(rev.mean(axis=0) - 0.5) <= 0.02)
    cov = np.cov(rev, rowvar=False)
    off = cov[~np.eye(20, dtype=bool)]
    # covariance of indicators; correlation = cov / 0.25
    assert np.all(np.abs(off / 0.25) <= 0.02)


def test_draw_examples():
    src = AffineSource(AffineSystem(3, [([1], 1)]))
    s = draw_masked_samples(src, 1.0, 3, seed=0)
    assert len(s) == 3 and (s.rows[:, 0] == 1).all()
    s = draw_masked_samples(UniformSource(4), 0.0, 5, seed=1)
    assert (s.rows == STAR).all()


def test_draw_is_deterministic():
    src = UniformSource(12)
    a = draw_masked_samples(src, 0.4, 200, seed=7)
    b = draw_masked_samples(src, 0.4, 200, seed=7)
    assert a.rows.tobytes() == b.rows.tobytes()
    c = draw_masked_samples(src, 0.4, 200, seed=8)
    assert a.rows.tobytes() != c.rows.tobytes()


def test_mu_does_not_move_assignments():
    src = UniformSource(10)
    a = draw_masked_samples(src, 0.3, 100, seed=5, debug=True)
    b = draw_masked_samples(src, 0.9, 100, seed=5, debug=True)
    assert (a.full == b.full).all()
    revealed = a.rows != STAR
    assert (a.rows[revealed] == a.full[revealed]).all()


def test_streams_and_workers_differ():
    s, m = seed_streams(1)
    assert s.random() != m.random()
    w0 = np.random.default_rng(worker_seed(1, 0)).random()
    w1 = np.random.default_rng(worker_seed(1, 1)).random()
    assert w0 != w1


def test_sample_set_access():
    s = draw_masked_samples(UniformSource(3), 0.5, 4, seed=2)
    assert s.n == 3
    assert list(s)[1] == s[1]
    head, tail = s.split(1)
    assert head.shape == (1, 3) and tail.shape == (3, 3)
