"""Figures written next to a report file."""

from __future__ import annotations

import csv
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_SAVE = {"dpi": 120, "metadata": {"Software": None}}


def sibling(report_path, suffix: str) -> Path:
    p = Path(report_path)
    return p.with_name(p.stem + suffix)


def write_outcomes_csv(result: dict, path) -> Path:
    """Per-sample outcome with the running failure count."""
    path = Path(path)
    bad = {"failed", "falsified"}
    running = 0
    with path.open("w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["index", "outcome", "failed_so_far", "limit"])
        for i, o in enumerate(result["outcomes"]):
            running += o in bad
            out.writerow([i, o, running, result["limit"]])
    return path


def plot_decider_run(result: dict, path) -> Path:
    outcomes = result["outcomes"]
    bad = {"failed", "falsified"}
    running, acc = [], 0
    for o in outcomes:
        acc += o in bad
        running.append(acc)
    limit = float(Fraction(result["limit"]))
    counts = result.get("learn_counts") or []

    fig, axes = plt.subplots(1, 2 if counts else 1, figsize=(10 if counts else 5.5, 3.6), squeeze=False)
    ax = axes[0, 0]
    ax.step(range(1, len(running) + 1), running, where="post", color="C0", label="failures")
    ax.axhline(limit, color="C3", ls="--", lw=1, label="reject above")
    ax.set_xlabel("test sample")
    ax.set_ylabel("cumulative failures")
    ax.set_title(f"{result['algorithm']}: {result['decision']}")
    ax.legend(frameon=False, fontsize=8)

    if counts:
        ax = axes[0, 1]
        ax.hist(counts, bins=min(40, max(5, len(set(counts)))), color="C0", alpha=0.8)
        params = result["params"]
        thr = Fraction(params["learn_threshold"]) * (params["m0"] or 0)
        ax.axvline(float(thr), color="C3", ls="--", lw=1, label="learn threshold")
        ax.set_xlabel("samples witnessing the clause false")
        ax.set_ylabel("clauses")
        ax.set_yscale("log")
        ax.set_title(f"{result['learned']} learned of {len(counts)}")
        ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE)
    plt.close(fig)
    return Path(path)


def write_margins_csv(margins, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["margin"])
        for m in margins:
            out.writerow([str(m)])
    return path


def plot_gap_audit(gap: dict, margins, path) -> Path:
    fig, ax = plt.subplots(figsize=(5.5, 3.6))
    ax.hist([float(m) for m in margins], bins=50, range=(0, 0.5), color="C0")
    lo, hi = (float(Fraction(s)) for s in gap["split"])
    ax.axvspan(lo, hi, color="C2", alpha=0.15, label="gap")
    ax.set_xlabel("min(Pr[x=1 | cond], Pr[x=0 | cond])")
    ax.set_ylabel("(condition, variable) pairs")
    ax.set_title(f"width-{gap['width']} gap: beta={float(Fraction(gap['beta_found'])):.3g}, "
                 f"gamma={float(Fraction(gap['gamma_found'])):.3g}")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE)
    plt.close(fig)
    return Path(path)
