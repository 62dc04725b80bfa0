"""Run the engine over the built-in corpus and report per-entry details.

With --freeze, rewrite the manifest ground_truth_label fields from the
computed labels (they are derived fixtures, recomputed whenever messages
or scoring defaults change).
"""

from __future__ import annotations

import json
import pathlib
import sys
from datetime import date

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from whaling_guard.engine import assess
from whaling_guard.ingest import extract_features, parse_email
from whaling_guard.profiles import parse_document

ROOT = pathlib.Path(__file__).resolve().parents[1] / "src/whaling_guard/evalharness/corpus_builtin"


def main() -> None:
    freeze = "--freeze" in sys.argv
    manifest = json.loads((ROOT / "manifest.json").read_text(encoding="utf-8"))
    analysis_date = date.fromisoformat(manifest["analysis_date"])
    pvp = parse_document((ROOT / "profile/pvp.json").read_bytes(), "pvp")
    scenarios = parse_document((ROOT / "profile/scenarios.json").read_bytes(), "scenario_set")
    pdp = parse_document((ROOT / "profile/pdp.json").read_bytes(), "pdp")

    for entry in manifest["entries"]:
        raw = (ROOT / entry["file"]).read_bytes()
        email = parse_email(raw)
        feats = extract_features(email, analysis_date=analysis_date)
        result = assess(email, pdp, scenarios, "deterministic", analysis_date=analysis_date)
        top = result.matched_scenarios[0] if result.matched_scenarios else None
        print(
            f"{entry['entry_id']:24s} tag={entry['scenario_tag']:22s} "
            f"score={result.score:3d} label={result.label:18s} "
            f"cat={feats.sender_claimed_category} "
            f"trig={sorted(feats.triggers)} act={sorted(feats.requested_actions)} "
            f"money={feats.money_reference} cred={feats.credential_request} "
            f"links={feats.link_count}/{feats.link_mismatch} "
            f"att={feats.attachment_count}/{feats.risky_attachment} "
            f"anom={sorted(feats.header_anomalies)} "
            f"top={top.scenario_id if top else '-'}:{top.match_score if top else 0:.3f}"
        )
        if freeze:
            entry["ground_truth_label"] = result.label

    if freeze:
        (ROOT / "manifest.json").write_text(
            json.dumps(manifest, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        print("manifest ground truths frozen")


if __name__ == "__main__":
    main()
