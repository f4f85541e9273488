"""Text formats for queries, distributions, sample sets and reports.

Every format opens with a header token naming it:

* DIMACS CNF: ``p cnf <n> <m>`` (after optional ``c`` comment lines)
* affine system: ``affine <n> <r>`` then r lines ``i1 i2 ... = b``
* uniform: ``uniform <n>``
* topic model: ``topicmodel <n> <k>``, k lines ``topic <prob> <terms...>``,
  one ``generic <terms...>`` line and one ``probs <p1> ... <pn>`` line
* masked samples: ``samples <n> <m> mu=<float> seed=<int>`` then m rows
  over ``{0, 1, *}``
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

import numpy as np

from .distributions import AffineSource, AffineSystem, TopicModel, TopicSource, UniformSource
from .errors import FormatError, UnsolvableSystem
from .logic import Clause, Cnf, TautologyError
from .masking import STAR, MaskedSampleSet

REPORT_FORMAT = "pacreason-report"
REPORT_VERSION = 1


def _content_lines(text):
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("c ") and line != "c" and not line.startswith("#"):
            yield ln, line


def parse_dimacs(text: str) -> Cnf:
    n = m = None
    clauses: list[Clause] = []
    current: list[int] = []
    start = None
    for ln, line in _content_lines(text):
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if n is not None:
                raise FormatError("duplicate header", ln)
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError("malformed header, expected 'p cnf <n> <m>'", ln)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError("malformed header, expected 'p cnf <n> <m>'", ln) from None
            if n < 0 or m < 0:
                raise FormatError("negative header count", ln)
            continue
        if n is None:
            raise FormatError("clause before header", ln)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise FormatError(f"not an integer: {tok!r}", ln) from None
            if start is None:
                start = ln
            if lit == 0:
                try:
                    clauses.append(Clause(current))
                except TautologyError as e:
                    raise FormatError(f"tautological clause ({e})", start) from None
                current, start = [], None
            elif abs(lit) > n:
                raise FormatError(f"literal {lit} out of range for n={n}", ln)
            else:
                current.append(lit)
    if n is None:
        raise FormatError("missing 'p cnf' header")
    if current:
        raise FormatError("last clause not terminated by 0", start)
    if len(clauses) != m:
        raise FormatError(f"clause count mismatch: header says {m}, found {len(clauses)}")
    return Cnf(n, tuple(clauses))


def emit_dimacs(phi: Cnf) -> str:
    lines = [f"p cnf {phi.n} {len(phi.clauses)}"]
    lines += [" ".join(str(l) for l in c.lits) + (" 0" if c.lits else "0") for c in phi.clauses]
    return "\n".join(lines) + "\n"


def _header(text, token):
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError(f"empty input, expected '{token}' header")
    ln, first = lines[0]
    parts = first.split()
    if parts[0] != token:
        raise FormatError(f"expected '{token}' header", ln)
    return parts, lines[1:]


def parse_affine(text: str) -> AffineSystem:
    parts, body = _header(text, "affine")
    try:
        n, r = int(parts[1]), int(parts[2])
    except (IndexError, ValueError):
        raise FormatError("malformed header, expected 'affine <n> <r>'", 1) from None
    if len(body) != r:
        raise FormatError(f"row count mismatch: header says {r}, found {len(body)}")
    rows = []
    for ln, line in body:
        if line.count("=") != 1:
            raise FormatError("expected 'i1 i2 ... = b'", ln)
        lhs, rhs = line.split("=")
        try:
            vs = [int(t) for t in lhs.split()]
            b = int(rhs)
        except ValueError:
            raise FormatError("non-integer token", ln) from None
        if b not in (0, 1):
            raise FormatError("right-hand side must be 0 or 1", ln)
        for v in vs:
            if not 1 <= v <= n:
                raise FormatError(f"index {v} out of range for n={n}", ln)
        rows.append((vs, b))
    try:
        return AffineSystem(n, rows)
    except UnsolvableSystem as e:
        raise FormatError(f"unsolvable system: {e}") from None


def emit_affine(system: AffineSystem) -> str:
    lines = [f"affine {system.n} {len(system.raw_rows)}"]
    for mask, b in system.raw_rows:
        lines.append(" ".join(str(v) for v in system.row_variables(mask)) + f" = {b}")
    return "\n".join(lines) + "\n"


def parse_topic_model(text: str) -> TopicModel:
    parts, body = _header(text, "topicmodel")
    try:
        n, k = int(parts[1]), int(parts[2])
    except (IndexError, ValueError):
        raise FormatError("malformed header, expected 'topicmodel <n> <k>'", 1) from None
    topics, generic, probs = [], None, None
    for ln, line in body:
        tag, *rest = line.split()
        try:
            if tag == "topic":
                topics.append((Fraction(rest[0]), [int(t) for t in rest[1:]]))
            elif tag == "generic":
                generic = [int(t) for t in rest]
            elif tag == "probs":
                probs = [Fraction(t) for t in rest]
            else:
                raise FormatError(f"unknown line tag {tag!r}", ln)
        except (ValueError, IndexError):
            raise FormatError("malformed line", ln) from None
    if len(topics) != k:
        raise FormatError(f"topic count mismatch: header says {k}, found {len(topics)}")
    if probs is None:
        raise FormatError("missing 'probs' line")
    try:
        return TopicModel(n, topics, generic or [], probs)
    except (ValueError, IndexError) as e:
        raise FormatError(str(e)) from None


def emit_topic_model(model: TopicModel) -> str:
    lines = [f"topicmodel {model.n} {len(model.topics)}"]
    for p, s in model.topics:
        lines.append(" ".join(["topic", str(p)] + [str(i) for i in sorted(s)]))
    lines.append(" ".join(["generic"] + [str(i) for i in sorted(model.generic)]))
    lines.append(" ".join(["probs"] + [str(p) for p in model.word_probs]))
    return "\n".join(lines) + "\n"


def parse_distribution(text: str):
    """Dispatch on the header token to an ``affine``, ``uniform`` or
    ``topicmodel`` source."""
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty distribution file")
    token = lines[0][1].split()[0]
    if token == "affine":
        return AffineSource(parse_affine(text))
    if token == "topicmodel":
        return TopicSource(parse_topic_model(text))
    if token == "uniform":
        parts = lines[0][1].split()
        try:
            return UniformSource(int(parts[1]))
        except (IndexError, ValueError):
            raise FormatError("expected 'uniform <n>'", lines[0][0]) from None
    raise FormatError(f"unknown distribution type {token!r}", lines[0][0])


def parse_samples(text: str) -> MaskedSampleSet:
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty sample file")
    parts = lines[0].split()
    try:
        if parts[0] != "samples" or len(parts) != 5:
            raise ValueError
        n, m = int(parts[1]), int(parts[2])
        key_mu, mu = parts[3].split("=")
        key_seed, seed = parts[4].split("=")
        if key_mu != "mu" or key_seed != "seed":
            raise ValueError
        mu, seed = float(mu), int(seed)
    except ValueError:
        raise FormatError("malformed header, expected 'samples <n> <m> mu=<float> seed=<int>'", 1) from None
    body = [(ln, l.strip()) for ln, l in enumerate(lines[1:], 2) if l.strip()]
    if len(body) != m:
        raise FormatError(f"sample count mismatch: header says {m}, found {len(body)}")
    rows = np.empty((m, n), dtype=np.int8)
    table = {"0": 0, "1": 1, "*": STAR}
    for i, (ln, line) in enumerate(body):
        if len(line) != n:
            raise FormatError(f"ragged line: length {len(line)}, expected {n}", ln)
        try:
            rows[i] = [table[ch] for ch in line]
        except KeyError as e:
            raise FormatError(f"illegal character {e.args[0]!r}", ln) from None
    return MaskedSampleSet(rows, mu, seed)


def emit_samples(samples: MaskedSampleSet) -> str:
    chars = np.array(["*", "0", "1"])
    out = [f"samples {samples.n} {len(samples)} mu={samples.mu!r} seed={samples.seed}"]
    out += ["".join(chars[r + 1]) for r in samples.rows]
    return "\n".join(out) + "\n"


def digest(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()


REPORT_SCHEMA = {
    "type": "object",
    "required": ["format", "schema_version", "command", "status", "inputs", "result", "timing"],
    "properties": {
        "format": {"const": REPORT_FORMAT},
        "schema_version": {"const": REPORT_VERSION},
        "command": {"type": "string"},
        "status": {"enum": ["accept", "reject", "ok"]},
        "inputs": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["sha256", "format"],
                "properties": {"sha256": {"type": "string"}, "format": {"type": "string"}},
            },
        },
        "result": {"type": "object"},
        "timing": {"type": "object"},
    },
}


def make_report(command: str, status: str, result: dict, inputs: dict | None = None, timing: dict | None = None) -> dict:
    return {
        "format": REPORT_FORMAT,
        "schema_version": REPORT_VERSION,
        "command": command,
        "status": status,
        "inputs": inputs or {},
        "result": result,
        "timing": timing or {},
    }


def validate_report(doc: dict) -> None:
    import jsonschema

    jsonschema.validate(doc, REPORT_SCHEMA)


def dump_report(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, default=_jsonable) + "\n"


def load_report(text: str) -> dict:
    doc = json.loads(text)
    validate_report(doc)
    return doc


def _jsonable(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, np.integer):
        return int(o)
    raise TypeError(f"not JSON serialisable: {type(o).__name__}")
