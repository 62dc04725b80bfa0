"""Fixture-based evaluation harness over the built-in corpus."""

from .corpus import CorpusEntry, CorpusError, builtin_corpus_path, builtin_profile, load_corpus, load_manifest
from .oracle import oracle_score
from .report import confusion_summary, format_table, write_report_files
from .runner import EVIDENCE_FLAGS, EvalReport, EvalRow, run_eval, sweep_evidence_grid, synthetic_features

__all__ = [
    "EVIDENCE_FLAGS",
    "CorpusEntry",
    "CorpusError",
    "EvalReport",
    "EvalRow",
    "builtin_corpus_path",
    "builtin_profile",
    "confusion_summary",
    "format_table",
    "load_corpus",
    "load_manifest",
    "oracle_score",
    "run_eval",
    "sweep_evidence_grid",
    "synthetic_features",
    "write_report_files",
]
