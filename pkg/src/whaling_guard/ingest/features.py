"""Deterministic feature extraction from parsed emails.

Every signal is derived from keyword lexicons and structural rules alone --
no model calls. Lexicons are shipped as data files (one category per file,
one keyword per line, UTF-8) under per-language directories; extraction
always scans the union of all languages so that appending text in another
language can only add signals, never remove them (required for the
monotonicity guarantee).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import date
from importlib import resources
from pathlib import Path

from .parser import ParsedEmail

TRIGGER_NAMES = ("urgency", "authority", "cooperation", "deadline", "confidentiality")

ACTION_NAMES = (
    "click_link",
    "open_attachment",
    "reply_with_credentials",
    "wire_or_budget_action",
    "provide_data",
    "schedule_meeting",
)

HEADER_ANOMALY_NAMES = (
    "reply_to_mismatch",
    "freemail_claiming_institution",
    "display_name_spoof_suspect",
)

# Categories whose impersonation from a consumer mailbox is inherently odd.
_INSTITUTIONAL_CATEGORIES = frozenset(
    {"internal_it", "research_support_office", "funding_agency", "executive", "conference_organizer"}
)

# Entity inference scans these category lexicons in declared order; first hit
# in the highest-priority source (display name > signature > subject) wins.
ENTITY_CATEGORY_ORDER = (
    "internal_it",
    "research_support_office",
    "conference_organizer",
    "research_collaborator",
    "funding_agency",
    "student",
    "media",
    "executive",
)

# "reply by Friday", "no later than March 31", etc.
_DATE_BEFORE_RE = re.compile(
    r"\b(?:by|before|no later than|until)\s+"
    r"(?:monday|tuesday|wednesday|thursday|friday|saturday|sunday|"
    r"jan(?:uary)?|feb(?:ruary)?|mar(?:ch)?|apr(?:il)?|may|jun(?:e)?|jul(?:y)?|"
    r"aug(?:ust)?|sep(?:tember)?|oct(?:ober)?|nov(?:ember)?|dec(?:ember)?|"
    r"\d{1,2}[/.-]\d{1,2}|\d{1,2}(?:st|nd|rd|th)?\b)",
    re.IGNORECASE,
)

_EMAIL_TOKEN_RE = re.compile(r"[A-Za-z0-9._%+-]+@([A-Za-z0-9.-]+\.[A-Za-z]{2,})")

_WORDISH_RE = re.compile(r"^[A-Za-z0-9' -]+$")


def _compile_keyword(keyword: str) -> re.Pattern:
    if _WORDISH_RE.match(keyword):
        escaped = re.escape(keyword).replace(r"\ ", r"\s+")
        return re.compile(rf"\b{escaped}\b", re.IGNORECASE)
    return re.compile(re.escape(keyword), re.IGNORECASE)


def _read_keywords(path: Path) -> list[str]:
    words = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.append(line)
    return words


def default_lexicon_root() -> Path:
    return Path(str(resources.files("whaling_guard.ingest").joinpath("lexicons")))


@dataclass(frozen=True)
class LexiconSet:
    """Compiled keyword lexicons plus the structural data lists."""

    triggers: dict[str, tuple[re.Pattern, ...]]
    actions: dict[str, tuple[re.Pattern, ...]]
    money: tuple[re.Pattern, ...]
    credential: tuple[re.Pattern, ...]
    entities: dict[str, tuple[re.Pattern, ...]]
    risky_extensions: frozenset[str]
    freemail_domains: frozenset[str]

    @classmethod
    def load(cls, root: Path | str | None = None) -> "LexiconSet":
        root = Path(root) if root is not None else default_lexicon_root()
        triggers: dict[str, list[re.Pattern]] = {n: [] for n in TRIGGER_NAMES}
        actions: dict[str, list[re.Pattern]] = {n: [] for n in ACTION_NAMES}
        money: list[re.Pattern] = []
        credential: list[re.Pattern] = []
        entities: dict[str, list[re.Pattern]] = {n: [] for n in ENTITY_CATEGORY_ORDER}

        for lang_dir in sorted(p for p in root.iterdir() if p.is_dir()):
            for f in sorted(lang_dir.glob("*.txt")):
                name = f.stem
                patterns = [_compile_keyword(w) for w in _read_keywords(f)]
                if name.startswith("trigger_") and name[8:] in triggers:
                    triggers[name[8:]].extend(patterns)
                elif name.startswith("action_") and name[7:] in actions:
                    actions[name[7:]].extend(patterns)
                elif name.startswith("entity_") and name[7:] in entities:
                    entities[name[7:]].extend(patterns)
                elif name == "money":
                    money.extend(patterns)
                elif name == "credential":
                    credential.extend(patterns)

        risky = frozenset(w.lower() for w in _read_keywords(root / "risky_extensions.txt"))
        freemail = frozenset(w.lower() for w in _read_keywords(root / "freemail_domains.txt"))
        return cls(
            triggers={k: tuple(v) for k, v in triggers.items()},
            actions={k: tuple(v) for k, v in actions.items()},
            money=tuple(money),
            credential=tuple(credential),
            entities={k: tuple(v) for k, v in entities.items()},
            risky_extensions=risky,
            freemail_domains=freemail,
        )


_DEFAULT_LEXICONS: LexiconSet | None = None


def default_lexicons() -> LexiconSet:
    global _DEFAULT_LEXICONS
    if _DEFAULT_LEXICONS is None:
        _DEFAULT_LEXICONS = LexiconSet.load()
    return _DEFAULT_LEXICONS


@dataclass(frozen=True)
class EmailFeatures:
    sender_domain: str
    sender_claimed_category: str | None
    requested_actions: frozenset[str]
    triggers: frozenset[str]
    money_reference: bool
    credential_request: bool
    link_count: int
    link_mismatch: bool
    attachment_count: int
    risky_attachment: bool
    header_anomalies: frozenset[str]

    def to_dict(self) -> dict:
        return {
            "sender_domain": self.sender_domain,
            "sender_claimed_category": self.sender_claimed_category,
            "requested_actions": sorted(self.requested_actions),
            "triggers": sorted(self.triggers),
            "money_reference": self.money_reference,
            "credential_request": self.credential_request,
            "link_count": self.link_count,
            "link_mismatch": self.link_mismatch,
            "attachment_count": self.attachment_count,
            "risky_attachment": self.risky_attachment,
            "header_anomalies": sorted(self.header_anomalies),
        }


def _any_match(patterns: tuple[re.Pattern, ...], text: str) -> bool:
    return any(p.search(text) for p in patterns)


def _signature_block(body: str) -> str:
    lines = [l for l in body.splitlines() if l.strip()]
    return "\n".join(lines[-6:])


def _claimed_category(email: ParsedEmail, lexicons: LexiconSet) -> str | None:
    sources = (email.from_display, _signature_block(email.body_text), email.subject)
    for source in sources:
        if not source:
            continue
        for category in ENTITY_CATEGORY_ORDER:
            if _any_match(lexicons.entities[category], source):
                return category
    return None


def extract_features(
    email: ParsedEmail, lexicons: LexiconSet | None = None, analysis_date: date | None = None
) -> EmailFeatures:
    """Extract risk-relevant signals from one parsed email.

    Pure function of its inputs; ``analysis_date`` is part of the signature
    so callers fix the reference date explicitly (calendar matching itself
    happens at scenario-matching time).
    """
    lexicons = lexicons or default_lexicons()
    text = f"{email.subject}\n{email.body_text}"

    triggers = {name for name in TRIGGER_NAMES if _any_match(lexicons.triggers[name], text)}
    if _DATE_BEFORE_RE.search(text):
        triggers.add("deadline")

    actions = {name for name in ACTION_NAMES if _any_match(lexicons.actions[name], text)}

    money_reference = _any_match(lexicons.money, text)

    credential_request = _any_match(lexicons.credential, text)
    if credential_request and not actions & {"reply_with_credentials", "click_link"}:
        # A credential request has to be actioned somehow; attribute it to the
        # embedded link when one exists, otherwise to a reply.
        actions.add("click_link" if email.links else "reply_with_credentials")

    link_count = len(email.links)
    link_mismatch = any(
        l.anchor_host() and l.host() and l.anchor_host() != l.host() for l in email.links
    )

    attachment_count = len(email.attachments)
    risky_attachment = any(a.extension in lexicons.risky_extensions for a in email.attachments)

    claimed = _claimed_category(email, lexicons)
    sender_domain = email.from_domain()

    anomalies = set()
    if email.reply_to_address and email.reply_to_domain() != sender_domain:
        anomalies.add("reply_to_mismatch")
    if sender_domain in lexicons.freemail_domains and claimed in _INSTITUTIONAL_CATEGORIES:
        anomalies.add("freemail_claiming_institution")
    for m in _EMAIL_TOKEN_RE.finditer(email.from_display):
        if m.group(1).lower() != sender_domain:
            anomalies.add("display_name_spoof_suspect")
            break

    return EmailFeatures(
        sender_domain=sender_domain,
        sender_claimed_category=claimed,
        requested_actions=frozenset(actions),
        triggers=frozenset(triggers),
        money_reference=money_reference,
        credential_request=credential_request,
        link_count=link_count,
        link_mismatch=link_mismatch,
        attachment_count=attachment_count,
        risky_attachment=risky_attachment,
        header_anomalies=frozenset(anomalies),
    )
