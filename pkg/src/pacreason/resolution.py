"""Resolution proofs: checking, restriction, weakening elimination, and the
width-bounded saturation search ``w_refute``."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import FormatError
from .logic import BOTTOM, TOP, Clause, Cnf, restrict_clause, restrict_cnf, var

AXIOM, WEAKENING, CUT, TOPMARK = "axiom", "weakening", "cut", "top"

TAUTOLOGY = "tautology"
NOT_RESOLVABLE = "not-resolvable"


def resolve(c1: Clause, c2: Clause, pivot: int):
    """Cut ``c1`` and ``c2`` on variable ``pivot``.

    Returns the resolvent, ``TAUTOLOGY`` when another complementary pair
    survives, or ``NOT_RESOLVABLE`` when the pivot does not occur with
    opposite signs.
    """
    if pivot in c1.litset and -pivot in c2.litset:
        a, b = c1.litset - {pivot}, c2.litset - {-pivot}
    elif -pivot in c1.litset and pivot in c2.litset:
        a, b = c1.litset - {-pivot}, c2.litset - {pivot}
    else:
        return NOT_RESOLVABLE
    r = a | b
    if any(-l in r for l in a):
        return TAUTOLOGY
    return Clause._trusted(r)


@dataclass(frozen=True)
class ProofStep:
    clause: object  # Clause or TOP
    rule: str
    refs: tuple[int, ...] = ()  # axiom: (clause index,), weakening: (step,), cut: (step, step, pivot)


@dataclass
class ResolutionProof:
    steps: list[ProofStep] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.steps)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    @property
    def width(self) -> int:
        return max((len(s.clause) for s in self.steps if s.clause is not TOP), default=0)

    def is_refutation(self) -> bool:
        return bool(self.steps) and self.steps[-1].clause is not TOP and self.steps[-1].clause.is_empty()

    def to_text(self) -> str:
        """One step per line: ``idx lits | rule refs`` with 1-based indices."""
        lines = ["proof 1"]
        for i, s in enumerate(self.steps, 1):
            lits = "T" if s.clause is TOP else " ".join(str(l) for l in s.clause.lits)
            head = f"{i} {lits}".rstrip()
            if s.rule == CUT:
                refs = f"{s.refs[0] + 1} {s.refs[1] + 1} {s.refs[2]}"
            else:
                refs = " ".join(str(r + 1) for r in s.refs)
            lines.append(f"{head} | {s.rule} {refs}".rstrip())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ResolutionProof":
        lines = text.splitlines()
        if not lines or lines[0].split() != ["proof", "1"]:
            raise FormatError("expected header 'proof 1'", 1)
        steps = []
        for ln, line in enumerate(lines[1:], 2):
            if not line.strip():
                continue
            try:
                left, right = line.split("|")
                idx, *lits = left.split()
                rule, *refs = right.split()
                if int(idx) != len(steps) + 1:
                    raise FormatError(f"step index {idx} out of sequence", ln)
                clause = TOP if lits == ["T"] else Clause(int(t) for t in lits)
                nums = [int(r) for r in refs]
            except FormatError:
                raise
            except ValueError as e:
                raise FormatError(f"malformed proof step: {e}", ln) from None
            if rule == CUT:
                if len(nums) != 3:
                    raise FormatError("cut needs two step refs and a pivot", ln)
                parsed = (nums[0] - 1, nums[1] - 1, nums[2])
            elif rule in (AXIOM, WEAKENING):
                if len(nums) != 1:
                    raise FormatError(f"{rule} needs one ref", ln)
                parsed = (nums[0] - 1,)
            elif rule == TOPMARK:
                parsed = ()
            else:
                raise FormatError(f"unknown rule {rule!r}", ln)
            steps.append(ProofStep(clause, rule, parsed))
        return cls(steps)


@dataclass
class CheckResult:
    ok: bool
    failed_step: int | None = None  # 0-based
    reason: str = ""

    def __bool__(self):
        return self.ok


def check_proof(phi: Cnf, proof: ResolutionProof, require_refutation: bool = False) -> CheckResult:
    steps = proof.steps
    for i, s in enumerate(steps):
        def bad(msg):
            return CheckResult(False, i, msg)

        if s.rule == TOPMARK:
            if s.clause is not TOP:
                return bad("top mark on a non-top clause")
            continue
        if s.clause is TOP:
            return bad("top clause must carry a top mark")
        if s.rule == AXIOM:
            (k,) = s.refs
            if not 0 <= k < len(phi.clauses):
                return bad(f"axiom index {k} out of range")
            if phi.clauses[k] != s.clause:
                return bad("axiom does not match input clause")
            continue
        if s.rule == WEAKENING:
            (j,) = s.refs
            if not 0 <= j < i:
                return bad("weakening refers to a step that is not earlier")
            parent = steps[j].clause
            if parent is TOP or not parent.issubset(s.clause):
                return bad("weakening parent is not a subclause")
            continue
        if s.rule == CUT:
            j, k, pivot = s.refs
            if not (0 <= j < i and 0 <= k < i):
                return bad("cut refers to a step that is not earlier")
            a, b = steps[j].clause, steps[k].clause
            if a is TOP or b is TOP:
                return bad("cut on a top step")
            r = resolve(a, b, pivot)
            if r is NOT_RESOLVABLE or r is TAUTOLOGY:
                return bad(f"cut parents are {r} on x{pivot}")
            if r != s.clause:
                return bad("cut result differs from the resolvent")
            continue
        return bad(f"unknown rule {s.rule!r}")
    if require_refutation and not proof.is_refutation():
        return CheckResult(False, len(steps) - 1 if steps else None, "last clause is not empty")
    return CheckResult(True)


def restrict_proof(proof: ResolutionProof, rho, phi: Cnf) -> ResolutionProof:
    """Substitute ``C|rho`` for every clause and re-justify each step
    against ``phi|rho``.

    Witnessed-true steps become top marks; a cut whose pivot is assigned
    becomes a weakening of the parent whose pivot literal was falsified.
    """
    restricted = restrict_cnf(phi, rho)
    if restricted is BOTTOM:
        raise ValueError("phi|rho is BOTTOM; there is nothing to refute")
    axiom_map = {}
    k = 0
    for idx, c in enumerate(phi.clauses):
        if restrict_clause(c, rho) is not TOP:
            axiom_map[idx] = k
            k += 1
    out: list[ProofStep] = []
    for s in proof.steps:
        if s.clause is TOP:
            out.append(ProofStep(TOP, TOPMARK))
            continue
        r = restrict_clause(s.clause, rho)
        if r is TOP:
            out.append(ProofStep(TOP, TOPMARK))
        elif s.rule == AXIOM:
            out.append(ProofStep(r, AXIOM, (axiom_map[s.refs[0]],)))
        elif s.rule == WEAKENING:
            out.append(ProofStep(r, WEAKENING, s.refs))
        elif s.rule == CUT:
            j, kk, pivot = s.refs
            val = rho[pivot - 1]
            if val is None or val == -1:
                out.append(ProofStep(r, CUT, s.refs))
            else:
                # keep the parent whose pivot literal is falsified by rho
                satisfied = pivot if val == 1 else -pivot
                keep = kk if satisfied in proof.steps[j].clause.litset else j
                out.append(ProofStep(r, WEAKENING, (keep,)))
        else:
            raise ValueError(f"cannot restrict step with rule {s.rule!r}")
    return ResolutionProof(out)


def _prune(steps: list[ProofStep], last: int) -> ResolutionProof:
    """Keep only ancestors of step ``last``, renumbered in order."""
    need = set()
    stack = [last]
    while stack:
        i = stack.pop()
        if i in need:
            continue
        need.add(i)
        s = steps[i]
        if s.rule == WEAKENING:
            stack.append(s.refs[0])
        elif s.rule == CUT:
            stack.extend(s.refs[:2])
    order = sorted(need)
    renum = {old: new for new, old in enumerate(order)}
    out = []
    for old in order:
        s = steps[old]
        if s.rule == WEAKENING:
            refs = (renum[s.refs[0]],)
        elif s.rule == CUT:
            refs = (renum[s.refs[0]], renum[s.refs[1]], s.refs[2])
        else:
            refs = s.refs
        out.append(ProofStep(s.clause, s.rule, refs))
    return ResolutionProof(out)


def eliminate_weakening(proof: ResolutionProof, phi: Cnf) -> tuple[ResolutionProof, list[int | None]]:
    """Replay the proof with cuts applied to the un-weakened clauses.

    Returns the new refutation and, for every original step, the index of
    the new step whose clause is a subclause of it (``None`` for top marks).
    """
    steps: list[ProofStep] = []
    where: list[int | None] = []
    for s in proof.steps:
        if s.clause is TOP or s.rule == TOPMARK:
            where.append(None)
        elif s.rule == AXIOM:
            steps.append(s)
            where.append(len(steps) - 1)
        elif s.rule == WEAKENING:
            where.append(where[s.refs[0]])
        elif s.rule == CUT:
            j, k, pivot = s.refs
            nj, nk = where[j], where[k]
            a, b = steps[nj].clause, steps[nk].clause
            r = resolve(a, b, pivot)
            if isinstance(r, Clause):
                steps.append(ProofStep(r, CUT, (nj, nk, pivot)))
                where.append(len(steps) - 1)
            else:
                # one side lost its pivot literal and is already a subclause
                orig = proof.steps[j].clause
                sign = pivot if pivot in orig.litset else -pivot
                where.append(nj if sign not in a.litset else nk)
        else:
            raise ValueError(f"unknown rule {s.rule!r}")
    final = where[-1] if where else None
    if final is None:
        raise ValueError("proof does not end in a clause")
    pruned = _prune(steps, final)
    # renumber the correspondence to the pruned proof
    kept = sorted(_ancestors(steps, final))
    renum = {old: new for new, old in enumerate(kept)}
    mapping = [renum.get(w) if w is not None else None for w in where]
    return pruned, mapping


def _ancestors(steps, last):
    need, stack = set(), [last]
    while stack:
        i = stack.pop()
        if i in need:
            continue
        need.add(i)
        s = steps[i]
        if s.rule == WEAKENING:
            stack.append(s.refs[0])
        elif s.rule == CUT:
            stack.extend(s.refs[:2])
    return need


def _canon(litset):
    lits = sorted(litset, key=lambda l: (abs(l), l > 0))
    return (len(lits), tuple(abs(l) for l in lits), tuple(l > 0 for l in lits))


def _subsumed(r: frozenset, seen) -> bool:
    """Whether some proper subset of ``r`` is already derived."""
    lits = tuple(r)
    for k in range(len(lits)):
        for sub in combinations(lits, k):
            if frozenset(sub) in seen:
                return True
    return False


def w_refute(
    phi: Cnf, w: int, include_wide_axioms: bool = False, subsumption: bool = True
) -> ResolutionProof | None:
    """Search for a refutation all of whose derived clauses have width <= w.

    Saturation by the given-clause loop: each clause, once given, is cut
    against every earlier given clause; new non-tautological resolvents of
    width <= w are appended in canonical order. Returns a checked-format
    proof reconstructed from first-derivation parent links, or ``None``
    when the closure contains no empty clause.

    Input clauses wider than ``w`` are left out of the seed unless
    ``include_wide_axioms`` is set. With ``subsumption`` a resolvent that
    contains an already derived clause is dropped; this never changes the
    verdict, since any width-bounded derivation replays on the smaller
    clauses without growing.
    """
    if w < 0:
        raise ValueError("width bound must be non-negative")
    seen: dict[frozenset, int] = {}
    sets: list[frozenset] = []
    origin: list[tuple] = []

    def add(ls, how):
        seen[ls] = len(sets)
        sets.append(ls)
        origin.append(how)

    seeds = []
    for k, c in enumerate(phi.clauses):
        if c.width <= w or include_wide_axioms:
            seeds.append((_canon(c.litset), k, c.litset))
    seeds.sort(key=lambda t: (t[0], t[1]))
    empty = None
    for _, k, ls in seeds:
        if ls not in seen:
            add(ls, (AXIOM, k))
            if not ls:
                empty = seen[ls]
                break

    by_lit: dict[int, list[int]] = {}
    i = 0
    while empty is None and i < len(sets):
        g = sets[i]
        fresh = {}
        for lit in g:
            others = by_lit.get(-lit)
            if not others:
                continue
            rest_g = g - {lit}
            for j in others:
                rest_o = sets[j] - {-lit}
                r = rest_g | rest_o
                if len(r) > w or r in seen or r in fresh:
                    continue
                if any(-l in r for l in rest_g):
                    continue
                if subsumption and _subsumed(r, seen):
                    continue
                # store as (positive parent, negative parent, pivot)
                fresh[r] = (CUT, i, j, lit) if lit > 0 else (CUT, j, i, -lit)
        for lit in g:
            by_lit.setdefault(lit, []).append(i)
        for r in sorted(fresh, key=_canon):
            add(r, fresh[r])
            if not r:
                empty = seen[r]
                break
        i += 1
    if empty is None:
        return None
    return _reconstruct(sets, origin, empty)


def _reconstruct(sets, origin, last) -> ResolutionProof:
    need, stack = set(), [last]
    while stack:
        i = stack.pop()
        if i in need:
            continue
        need.add(i)
        how = origin[i]
        if how[0] == CUT:
            stack.extend(how[1:3])
    order = sorted(need)  # parents always precede children
    renum = {old: new for new, old in enumerate(order)}
    steps = []
    for old in order:
        how = origin[old]
        clause = Clause._trusted(sets[old])
        if how[0] == AXIOM:
            steps.append(ProofStep(clause, AXIOM, (how[1],)))
        else:
            steps.append(ProofStep(clause, CUT, (renum[how[1]], renum[how[2]], how[3])))
    return ResolutionProof(steps)
