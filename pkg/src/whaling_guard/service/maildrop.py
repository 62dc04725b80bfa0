"""Optional batch ingestion: watch a drop directory for raw message files.

Each ``*.eml`` file found is analyzed for the configured target and moved
to ``processed/`` (or ``failed/`` when it cannot be parsed), so reprocessing
is idempotent. Intended for cron- or thread-driven batch operation next to
the HTTP service.
"""

from __future__ import annotations

import logging
import shutil
import threading
import time
from datetime import date
from pathlib import Path

from ..engine.assess import assess
from ..engine.weights import DEFAULT_WEIGHTS, ScoringWeights
from ..ingest.features import LexiconSet
from ..ingest.parser import ParseError, parse_email
from .store import Store, StoreError

logger = logging.getLogger(__name__)


def scan_maildrop(
    store: Store,
    drop_dir: Path | str,
    target_id: str,
    weights: ScoringWeights = DEFAULT_WEIGHTS,
    lexicons: LexiconSet | None = None,
    analysis_date: date | None = None,
) -> list[dict]:
    """Process every pending message file once; returns the stored records."""
    drop = Path(drop_dir)
    processed_dir = drop / "processed"
    failed_dir = drop / "failed"
    records = []
    for message_file in sorted(drop.glob("*.eml")):
        raw = message_file.read_bytes()
        try:
            trio = store.get_profile(target_id)
            email = parse_email(raw)
        except (ParseError, StoreError) as exc:
            logger.warning("maildrop: %s failed: %s", message_file.name, exc)
            failed_dir.mkdir(exist_ok=True)
            shutil.move(str(message_file), failed_dir / message_file.name)
            continue
        allowlisted = store.is_allowlisted(email.from_address, email.from_domain())
        assessment = assess(
            email,
            trio.pdp,
            trio.scenarios,
            "deterministic",
            analysis_date=analysis_date,
            weights=weights,
            lexicons=lexicons,
            allowlisted=allowlisted,
        )
        record = store.save_assessment(
            target_id=target_id,
            assessment=assessment.to_dict(),
            subject=email.subject,
            from_address=email.from_address,
            raw_message=raw,
        )
        records.append(record)
        processed_dir.mkdir(exist_ok=True)
        shutil.move(str(message_file), processed_dir / message_file.name)
    return records


class MaildropWatcher(threading.Thread):
    """Daemon thread polling a drop directory at a fixed interval."""

    def __init__(
        self,
        store: Store,
        drop_dir: Path | str,
        target_id: str,
        interval: float = 5.0,
        weights: ScoringWeights = DEFAULT_WEIGHTS,
        lexicons: LexiconSet | None = None,
    ):
        super().__init__(daemon=True, name="maildrop-watcher")
        self.store = store
        self.drop_dir = Path(drop_dir)
        self.target_id = target_id
        self.interval = interval
        self.weights = weights
        self.lexicons = lexicons
        self._stop = threading.Event()

    def stop(self) -> None:
        self._stop.set()

    def run(self) -> None:
        while not self._stop.is_set():
            try:
                scan_maildrop(
                    self.store, self.drop_dir, self.target_id, self.weights, self.lexicons
                )
            except Exception:
                logger.exception("maildrop scan failed")
            self._stop.wait(self.interval)
