from fractions import Fraction

import jsonschema
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pacreason import formats
from pacreason.distributions import AffineSource, TopicSource, UniformSource
from pacreason.errors import FormatError
from pacreason.logic import Cnf
from pacreason.masking import MaskedSampleSet


def test_dimacs_examples():
    phi = formats.parse_dimacs("p cnf 2 2\n1 2 0\n-1 -2 0")
    assert phi == Cnf.from_lists(2, [[1, 2], [-1, -2]])
    with pytest.raises(FormatError, match="tautolog"):
        formats.parse_dimacs("p cnf 1 1\n1 -1 0")
    with pytest.raises(FormatError, match="count"):
        formats.parse_dimacs("p cnf 2 1\n1 0\n2 0")


def test_dimacs_errors_name_the_line():
    with pytest.raises(FormatError, match="line 3"):
        formats.parse_dimacs("c hi\np cnf 2 1\n1 5 0\n")
    with pytest.raises(FormatError, match="line 1"):
        formats.parse_dimacs("p dnf 2 1\n")


def test_dimacs_round_trip():
    phi = Cnf.from_lists(4, [[1, -3], [2], [-4, -1, 2]])
    assert formats.parse_dimacs(formats.emit_dimacs(phi)) == phi


def test_affine_examples():
    s = formats.parse_affine("affine 3 1\n1 2 = 0")
    assert s.n == 3 and s.raw_rows == ((0b11, 0),)
    with pytest.raises(FormatError, match="unsolvable"):
        formats.parse_affine("affine 1 2\n1 = 0\n1 = 1")
    with pytest.raises(FormatError, match="range"):
        formats.parse_affine("affine 2 1\n3 = 0")
    back = formats.parse_affine(formats.emit_affine(s))
    assert back.raw_rows == s.raw_rows


def test_distribution_dispatch():
    assert isinstance(formats.parse_distribution("uniform 4\n"), UniformSource)
    assert isinstance(formats.parse_distribution("affine 2 0\n"), AffineSource)
    text = "topicmodel 3 2\ntopic 0.5 1\ntopic 0.5 2\ngeneric 3\nprobs 0.1 0.2 0.3\n"
    src = formats.parse_distribution(text)
    assert isinstance(src, TopicSource)
    assert src.model.word_probs[1] == Fraction(1, 5)
    again = formats.parse_topic_model(formats.emit_topic_model(src.model))
    assert again == src.model
    with pytest.raises(FormatError):
        formats.parse_distribution("gaussian 3\n")


def test_samples_examples():
    s = formats.parse_samples("samples 2 2 mu=0.5 seed=7\n1*\n01")
    assert len(s) == 2 and s.seed == 7 and s[0] == (1, None)
    with pytest.raises(FormatError, match="line 2"):
        formats.parse_samples("samples 2 1 mu=0.5 seed=7\n1x")
    with pytest.raises(FormatError, match="line 3"):
        formats.parse_samples("samples 2 2 mu=0.5 seed=7\n11\n1\n")


@given(
    st.integers(1, 6).flatmap(
        lambda n: st.lists(st.lists(st.sampled_from([-1, 0, 1]), min_size=n, max_size=n), min_size=1, max_size=8)
    ),
    st.floats(0, 1),
    st.integers(0, 2**31),
)
def test_samples_round_trip(rows, mu, seed):
    s = MaskedSampleSet(np.array(rows, dtype=np.int8), mu, seed)
    back = formats.parse_samples(formats.emit_samples(s))
    assert (back.rows == s.rows).all() and back.mu == mu and back.seed == seed


def test_report_round_trip():
    doc = formats.make_report(
        "wrefute", "accept", {"w": 2, "p": Fraction(1, 3)}, {"query": {"sha256": "ab", "format": "dimacs"}}
    )
    text = formats.dump_report(doc)
    back = formats.load_report(text)
    assert back["result"]["p"] == "1/3"
    assert formats.dump_report(back) == text


def test_report_schema_rejects_bad_status():
    doc = formats.make_report("x", "maybe", {})
    with pytest.raises(jsonschema.ValidationError):
        formats.validate_report(doc)
