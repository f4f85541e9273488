"""Command-line entry point.

Exit status: 0 accept/success, 10 reject (or no bounded refutation),
2 usage or input error, 3 infeasible parameters or size guard.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import deciders, formats, oracles, plots
from .distributions import UniformSource, audit_correlation_gap
from .errors import FormatError, InfeasibleParameters, SizeLimitError
from .masking import MaskedSampleSet, draw_masked_samples, mask_rows, seed_streams
from .resolution import w_refute

EXIT_OK, EXIT_REJECT, EXIT_USAGE, EXIT_INFEASIBLE = 0, 10, 2, 3
MAX_DRAW = 5_000_000


class UsageError(Exception):
    pass


def _read(path, kind):
    if path is None:
        raise UsageError(f"missing --{kind}")
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _input(path, text, fmt):
    return {"name": Path(path).name, "sha256": formats.digest(text), "format": fmt}


def _load_query(args, inputs):
    text = _read(args.query, "query")
    inputs["query"] = _input(args.query, text, "dimacs")
    return formats.parse_dimacs(text)


def _load_dist(args, inputs):
    text = _read(args.dist, "dist")
    src = formats.parse_distribution(text)
    inputs["dist"] = _input(args.dist, text, src.kind)
    return src


def _load_samples(args, inputs):
    text = _read(args.samples, "samples")
    inputs["samples"] = _input(args.samples, text, "samples")
    return formats.parse_samples(text)


def _emit(args, doc, figures=None):
    formats.validate_report(doc)
    text = formats.dump_report(doc)
    if args.report:
        Path(args.report).write_text(text)
        if figures and not args.no_figures:
            figures(args.report)
        print(f"{doc['command']}: {doc['status']}")
    else:
        sys.stdout.write(text)


def _config(args, n):
    return deciders.RunConfig(
        mu=args.mu, beta=args.beta, gamma=args.gamma, eps=args.eps, delta=args.delta,
        pn=args.pn, n=n, w=args.w, m0=args.m0, m1=args.m1, seed=args.seed,
    )


def _samples_for(args, inputs, n, needed, default_source=None):
    if needed is None or needed > MAX_DRAW:
        raise InfeasibleParameters(
            f"run needs {needed if needed is not None else 'overflowing'} samples; pass --w/--m0/--m1 overrides"
        )
    if args.samples:
        s = _load_samples(args, inputs)
        if s.n != n:
            raise UsageError(f"samples have n={s.n}, query has n={n}")
        if len(s) < needed:
            raise UsageError(f"samples file has {len(s)} rows, run needs {needed}")
        return s.rows[:needed]
    if args.dist:
        src = _load_dist(args, inputs)
    elif default_source is not None:
        src = default_source
    else:
        raise UsageError("need --samples or --dist")
    if src.n != n:
        raise UsageError(f"distribution has n={src.n}, query has n={n}")
    return draw_masked_samples(src, args.mu, needed, args.seed).rows


def _decider_figures(result):
    def render(report_path):
        plots.write_outcomes_csv(result, plots.sibling(report_path, ".outcomes.csv"))
        plots.plot_decider_run(result, plots.sibling(report_path, ".png"))

    return render


def _run_decider(args, name):
    inputs = {}
    phi = _load_query(args, inputs)
    cfg = _config(args, phi.n)
    if name == "learnres":
        p = deciders.params_learnres(cfg)
        needed = None if p.m0 is None or p.m1 is None else p.m0 + p.m1
        rows = _samples_for(args, inputs, phi.n, needed)
        rep = deciders.learn_res(phi, cfg, rows)
    elif name == "cnfeval":
        p = deciders.params_cnfeval(cfg, len(phi))
        needed = None if p.m0 is None or p.m1 is None else p.m0 + p.m1
        rows = _samples_for(args, inputs, phi.n, needed)
        rep = deciders.cnf_eval(phi, cfg, rows)
    else:
        p = deciders.params_uniform(cfg)
        rows = _samples_for(args, inputs, phi.n, p.m1, default_source=UniformSource(phi.n))
        rep = deciders.uniform_decider(phi, cfg, rows)
    result = rep.to_dict()
    elapsed = result.pop("elapsed")
    doc = formats.make_report(name, rep.decision, result, inputs, {"elapsed_s": elapsed})
    _emit(args, doc, _decider_figures(result))
    return EXIT_OK if rep.decision == deciders.ACCEPT else EXIT_REJECT


def cmd_sample(args):
    inputs = {}
    src = _load_dist(args, inputs)
    if args.m < 1:
        raise UsageError("--m must be positive")
    s = draw_masked_samples(src, args.mu, args.m, args.seed)
    _write_samples(args, s)
    return EXIT_OK


def cmd_mask(args):
    inputs = {}
    s = _load_samples(args, inputs)
    _, mask_rng = seed_streams(args.seed)
    out = MaskedSampleSet(mask_rows(s.rows, args.mu, mask_rng), args.mu, args.seed)
    _write_samples(args, out)
    return EXIT_OK


def _write_samples(args, s):
    text = formats.emit_samples(s)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_wrefute(args):
    inputs = {}
    phi = _load_query(args, inputs)
    if args.w is None:
        raise UsageError("missing --w")
    proof = w_refute(phi, args.w, include_wide_axioms=args.include_wide)
    result = {"w": args.w, "refuted": proof is not None}
    if proof is not None:
        result["size"] = proof.size
        result["proof"] = proof.to_text().splitlines()
        if args.proof_out:
            Path(args.proof_out).write_text(proof.to_text())
    status = "accept" if proof is not None else "reject"
    _emit(args, formats.make_report("wrefute", status, result, inputs))
    return EXIT_OK if proof is not None else EXIT_REJECT


def cmd_auditgap(args):
    inputs = {}
    src = _load_dist(args, inputs)
    if args.w is None:
        raise UsageError("missing --w")
    gap = audit_correlation_gap(src, args.w, beta=args.gap_beta, gamma=args.gap_gamma)
    result = gap.to_dict()

    def render(report_path):
        plots.write_margins_csv(gap.margins, plots.sibling(report_path, ".margins.csv"))
        plots.plot_gap_audit(result, gap.margins, plots.sibling(report_path, ".png"))

    _emit(args, formats.make_report("auditgap", "ok", result, inputs), render)
    return EXIT_OK


def cmd_verify(args):
    inputs = {}
    phi = _load_query(args, inputs)
    if args.oracle == "validity":
        src = _load_dist(args, inputs)
        v = oracles.brute_validity(phi, src)
        result = {"oracle": "validity", "validity": str(v), "float": float(v)}
    elif args.oracle == "sat":
        x = oracles.brute_sat(phi)
        result = {"oracle": "sat", "satisfiable": x is not None, "witness": list(x) if x else None}
    else:
        if args.w is None:
            raise UsageError("missing --w")
        result = {"oracle": "widthref", "w": args.w, "refutable": oracles.brute_width_refutable(phi, args.w)}
    _emit(args, formats.make_report(f"verify-{args.oracle}", "ok", result, inputs))
    return EXIT_OK


def _decider_flags(p):
    p.add_argument("--query", required=True, help="DIMACS CNF query")
    p.add_argument("--dist", help="distribution file to draw samples from")
    p.add_argument("--samples", help="masked sample file (takes precedence over --dist)")
    p.add_argument("--mu", type=float, default=0.5)
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--gamma", type=float, default=0.1)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--pn", type=int, default=10, help="proof-size bound p(n)")
    p.add_argument("--w", type=int)
    p.add_argument("--m0", type=int)
    p.add_argument("--m1", type=int, help="test samples (sample count m for unifdecide)")
    p.add_argument("--seed", type=int, default=0)


def _report_flags(p):
    p.add_argument("--report", help="write the JSON report here (figures and CSV go alongside)")
    p.add_argument("--no-figures", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pacreason",
        description="Decide CNF queries against a distribution known only through masked samples.",
        epilog="exit status: 0 accept/ok, 10 reject, 2 usage or input error, 3 infeasible parameters",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw masked samples from a distribution")
    p.add_argument("--dist", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("mask", help="apply independent masking to a sample file")
    p.add_argument("--samples", required=True)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_mask)

    for name, helptext in (
        ("learnres", "learned clauses + width-bounded resolution"),
        ("cnfeval", "near-perfect validity of a CNF query"),
        ("unifdecide", "width-bounded resolution under the uniform distribution"),
    ):
        p = sub.add_parser(name, help=helptext)
        _decider_flags(p)
        _report_flags(p)
        p.set_defaults(func=lambda a, _n=name: _run_decider(a, _n))

    p = sub.add_parser("wrefute", help="search for a width-bounded refutation")
    p.add_argument("--query", required=True)
    p.add_argument("--w", type=int)
    p.add_argument("--include-wide", action="store_true", help="seed with axioms wider than w too")
    p.add_argument("--proof-out")
    _report_flags(p)
    p.set_defaults(func=cmd_wrefute)

    p = sub.add_parser("auditgap", help="measure the correlation gap of a distribution")
    p.add_argument("--dist", required=True)
    p.add_argument("--w", type=int)
    p.add_argument("--beta", dest="gap_beta", type=float)
    p.add_argument("--gamma", dest="gap_gamma", type=float)
    _report_flags(p)
    p.set_defaults(func=cmd_auditgap)

    p = sub.add_parser("verify", help="brute-force oracles")
    p.add_argument("oracle", choices=["validity", "sat", "widthref"])
    p.add_argument("--query", required=True)
    p.add_argument("--dist")
    p.add_argument("--w", type=int)
    _report_flags(p)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, FormatError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (InfeasibleParameters, SizeLimitError) as e:
        print(f"infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
