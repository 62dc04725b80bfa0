"""Report rendering: canonical JSON, delimited results, and figures.

The ``eval`` report path writes three artifact groups next to each other:
the canonical machine-readable report, a per-entry CSV, and matplotlib
figures (per-tag detection rates, score distribution by tag) rendered to
PNG files.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from ..engine.weights import LABELS
from ..profiles.canonical import canonical_dict_bytes
from .runner import EvalReport

_TAG_COLORS = {
    "benign": "#27ae60",
    "funding_agency": "#c0392b",
    "internal_it": "#8e44ad",
    "conference_organizer": "#d35400",
    "research_collaborator": "#2980b9",
    "executive": "#7f8c8d",
}


def format_table(report: EvalReport) -> str:
    lines = [
        f"corpus {report.corpus_version}  engine {report.engine_version}  "
        f"analysis date {report.analysis_date}",
        "",
        f"{'entry':26s} {'tag':24s} {'score':>5s}  {'label':18s} truth",
    ]
    for row in report.rows:
        marker = "" if row.label == row.ground_truth else "  <- differs"
        lines.append(
            f"{row.entry_id:26s} {row.scenario_tag:24s} {row.score:5d}  "
            f"{row.label:18s} {row.ground_truth}{marker}"
        )
    lines.append("")
    lines.append("detection rate (label >= suspicious) by tag:")
    for tag, rate in report.detection_rates.items():
        lines.append(f"  {tag:24s} {rate:6.2%}")
    lines.append("")
    lines.append(
        f"defective entries: {report.defective_entries}  "
        f"oracle mismatches: {report.oracle_mismatches}  "
        f"monotonicity violations: {report.monotonicity_violations}"
    )
    return "\n".join(lines)


def write_results_csv(report: EvalReport, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["entry_id", "scenario_tag", "ground_truth", "label", "score", "zero_feature"])
        for row in report.rows:
            writer.writerow(
                [row.entry_id, row.scenario_tag, row.ground_truth, row.label, row.score, row.zero_feature]
            )


def render_detection_figure(report: EvalReport, path: Path) -> None:
    tags = list(report.detection_rates)
    rates = [report.detection_rates[t] for t in tags]
    fig, ax = plt.subplots(figsize=(7, 3.2))
    colors = [_TAG_COLORS.get(t, "#555555") for t in tags]
    ax.bar(range(len(tags)), rates, color=colors)
    ax.set_xticks(range(len(tags)))
    ax.set_xticklabels(tags, rotation=20, ha="right", fontsize=8)
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("detection rate")
    ax.set_title("Fraction labeled suspicious or worse, by scenario tag")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_score_figure(report: EvalReport, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(7, 3.2))
    tags = sorted({row.scenario_tag for row in report.rows})
    for i, tag in enumerate(tags):
        values = [row.score for row in report.rows if row.scenario_tag == tag]
        ax.scatter(values, [i] * len(values), color=_TAG_COLORS.get(tag, "#555555"), s=28)
    ax.set_yticks(range(len(tags)))
    ax.set_yticklabels(tags, fontsize=8)
    ax.set_xlim(-2, 102)
    ax.set_xlabel("risk score")
    ax.axvspan(0, 30, color="#27ae60", alpha=0.08)
    ax.axvspan(30, 65, color="#f39c12", alpha=0.08)
    ax.axvspan(65, 100, color="#c0392b", alpha=0.08)
    ax.set_title("Score distribution by scenario tag (band shading: safe / suspicious / high)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report_files(report: EvalReport, out_dir: Path | str) -> dict[str, Path]:
    """Write report.json, results.csv, and the two figures under ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "report": out / "report.json",
        "csv": out / "results.csv",
        "detection_figure": out / "detection_rates.png",
        "score_figure": out / "score_distribution.png",
    }
    paths["report"].write_bytes(canonical_dict_bytes(report.to_dict()))
    write_results_csv(report, paths["csv"])
    render_detection_figure(report, paths["detection_figure"])
    render_score_figure(report, paths["score_figure"])
    return paths


def confusion_summary(report: EvalReport) -> str:
    title = "truth / predicted"
    header = f"{title:20s}" + "".join(f"{p:>20s}" for p in LABELS)
    lines = [header]
    for truth in LABELS:
        row = report.confusion.get(truth, {})
        lines.append(f"{truth:20s}" + "".join(f"{row.get(p, 0):20d}" for p in LABELS))
    return "\n".join(lines)
