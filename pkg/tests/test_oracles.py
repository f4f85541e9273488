import itertools
import random
from fractions import Fraction

import pytest

from pacreason.distributions import AffineSource, AffineSystem, TopicModel, TopicSource, UniformSource
from pacreason.errors import SizeLimitError
from pacreason.logic import Cnf, evaluate
from pacreason.oracles import brute_sat, brute_validity, brute_width_refutable, cube

from instances import random_affine, random_cnf

FULL2 = Cnf.from_lists(2, [[1, 2], [-1, 2], [1, -2], [-1, -2]])


def test_cube_order():
    assert cube(2).tolist() == [[0, 0], [1, 0], [0, 1], [1, 1]]


def test_validity_examples():
    phi = Cnf.from_lists(2, [[1, 2]])
    assert brute_validity(phi, UniformSource(2)) == Fraction(3, 4)
    assert brute_validity(phi, AffineSource(AffineSystem(2, [([1, 2], 0)]))) == Fraction(1, 2)
    assert brute_validity(FULL2, UniformSource(2)) == 0


def test_validity_matches_python_loop():
    rng = random.Random(8)
    for _ in range(30):
        n = rng.randint(1, 7)
        s = random_affine(rng, n, rng.randint(0, 3))
        phi = random_cnf(rng, n, rng.randint(1, 5))
        sols = [x for x in itertools.product((0, 1), repeat=n) if s.satisfies(x)]
        want = Fraction(sum(evaluate(phi, x) for x in sols), len(sols))
        assert brute_validity(phi, AffineSource(s)) == want


def test_validity_topic_model():
    model = TopicModel(2, [(Fraction(1, 4), {1}), (Fraction(3, 4), {2})], set(), [Fraction(1, 2), Fraction(1, 3)])
    phi = Cnf.from_lists(2, [[1, 2]])
    # topic 1: x1 ~ 1/2, x2 = 0; topic 2: x2 ~ 1/3, x1 = 0
    assert brute_validity(phi, TopicSource(model)) == Fraction(1, 4) * Fraction(1, 2) + Fraction(3, 4) * Fraction(1, 3)


def test_sat_examples():
    assert brute_sat(Cnf.from_lists(1, [[1], [-1]])) is None
    assert brute_sat(Cnf.from_lists(2, [[1, 2]])) == (1, 0)
    assert brute_sat(FULL2) is None


def test_width_examples():
    unit = Cnf.from_lists(1, [[1], [-1]])
    assert not brute_width_refutable(unit, 0)
    assert brute_width_refutable(unit, 1)
    assert not brute_width_refutable(FULL2, 1)
    assert brute_width_refutable(FULL2, 2)
    assert not brute_width_refutable(Cnf.from_lists(2, [[1, 2], [-1]]), 2)


def test_width_guard():
    with pytest.raises(SizeLimitError):
        brute_width_refutable(Cnf(9), 2)


def _closure(phi, w):
    """Plain-set fixpoint over frozensets of literals."""
    cl = {frozenset(c.lits) for c in phi.clauses if len(c) <= w}
    while True:
        new = set()
        for a, b in itertools.product(cl, repeat=2):
            for l in a:
                if -l in b:
                    r = (a - {l}) | (b - {-l})
                    if len(r) <= w and not any(-x in r for x in r):
                        new.add(frozenset(r))
        if new <= cl:
            return cl
        cl |= new


def test_width_oracle_matches_set_closure():
    rng = random.Random(21)
    for _ in range(80):
        n = rng.randint(1, 4)
        phi = random_cnf(rng, n, rng.randint(1, 8))
        for w in range(0, n + 1):
            assert brute_width_refutable(phi, w) == (frozenset() in _closure(phi, w))


def test_full_width_equals_unsat():
    rng = random.Random(22)
    for _ in range(40):
        n = rng.randint(1, 5)
        phi = random_cnf(rng, n, rng.randint(1, 12))
        assert brute_width_refutable(phi, n) == (brute_sat(phi) is None)
