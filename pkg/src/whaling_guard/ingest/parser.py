"""Raw message parsing into a normalized, markup-free structure.

Accepts internet-message format (folded headers, optional multipart body)
and, as a convenience for batch feeds, a structured JSON envelope
``{from, reply_to, to, subject, date, body, attachments[]}`` in the same
serialized text format used for profiles.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from datetime import datetime
from email import message_from_bytes, policy
from email.message import EmailMessage
from email.utils import getaddresses, parseaddr, parsedate_to_datetime
from html import unescape
from html.parser import HTMLParser
from typing import Any
from urllib.parse import urlparse

ADDR_SPEC_RE = re.compile(r"^[^@\s<>]+@[^@\s<>]+\.[^@\s<>]+$")
BARE_URL_RE = re.compile(r"https?://[^\s<>\"')\]]+", re.IGNORECASE)


class ParseError(Exception):
    """Irrecoverably malformed input; carries the byte offset of the failure."""

    def __init__(self, message: str, byte_offset: int = 0):
        super().__init__(message)
        self.code = "parse_error"
        self.byte_offset = byte_offset


@dataclass(frozen=True)
class Link:
    anchor_text: str
    href: str

    def host(self) -> str:
        return (urlparse(self.href).hostname or "").lower()

    def anchor_host(self) -> str:
        """Host named by the anchor text, when the text looks like a URL or bare host."""
        text = self.anchor_text.strip()
        if not text:
            return ""
        if "://" in text:
            return (urlparse(text).hostname or "").lower()
        candidate = text.split("/")[0].lower()
        if re.fullmatch(r"[a-z0-9.-]+\.[a-z]{2,}", candidate):
            return candidate
        return ""


@dataclass(frozen=True)
class AttachmentInfo:
    filename: str
    declared_type: str
    extension: str


@dataclass(frozen=True)
class ParsedEmail:
    from_display: str
    from_address: str
    reply_to_address: str | None
    to_addresses: tuple[str, ...]
    subject: str
    date: datetime | None
    body_text: str
    links: tuple[Link, ...]
    attachments: tuple[AttachmentInfo, ...]
    parse_flags: tuple[str, ...] = ()

    def from_domain(self) -> str:
        if "@" not in self.from_address:
            return ""
        return self.from_address.rsplit("@", 1)[1].lower()

    def reply_to_domain(self) -> str:
        if not self.reply_to_address or "@" not in self.reply_to_address:
            return ""
        return self.reply_to_address.rsplit("@", 1)[1].lower()


class _HtmlTextExtractor(HTMLParser):
    """Strips markup, keeping text content and anchor (text, href) pairs."""

    _SKIP = {"script", "style", "head"}
    _BREAKS = {"p", "br", "div", "tr", "li", "table", "ul", "ol", "h1", "h2", "h3", "h4"}

    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.chunks: list[str] = []
        self.links: list[Link] = []
        self._anchor_href: str | None = None
        self._anchor_text: list[str] = []
        self._skip_depth = 0

    def handle_starttag(self, tag: str, attrs) -> None:
        if tag in self._SKIP:
            self._skip_depth += 1
            return
        if tag in self._BREAKS:
            self.chunks.append("\n")
        if tag == "a":
            href = dict(attrs).get("href") or ""
            self._anchor_href = href
            self._anchor_text = []

    def handle_endtag(self, tag: str) -> None:
        if tag in self._SKIP:
            self._skip_depth = max(0, self._skip_depth - 1)
            return
        if tag in self._BREAKS:
            self.chunks.append("\n")
        if tag == "a" and self._anchor_href is not None:
            text = "".join(self._anchor_text).strip()
            if self._anchor_href:
                self.links.append(Link(anchor_text=text, href=self._anchor_href))
            self._anchor_href = None
            self._anchor_text = []

    def handle_data(self, data: str) -> None:
        if self._skip_depth:
            return
        if self._anchor_href is not None:
            self._anchor_text.append(data)
        self.chunks.append(data)


def strip_markup(html: str) -> tuple[str, list[Link]]:
    extractor = _HtmlTextExtractor()
    extractor.feed(html)
    extractor.close()
    text = "".join(extractor.chunks)
    text = re.sub(r"[ \t]+", " ", text)
    text = re.sub(r"\n\s*\n+", "\n\n", text)
    return text.strip(), extractor.links


def _harvest_bare_urls(text: str, known_hrefs: set[str]) -> list[Link]:
    found = []
    for match in BARE_URL_RE.finditer(text):
        url = match.group(0).rstrip(".,;:!?")
        if url not in known_hrefs:
            known_hrefs.add(url)
            found.append(Link(anchor_text="", href=url))
    return found


def _first_address(value: str | None) -> tuple[str, str]:
    if not value:
        return "", ""
    display, addr = parseaddr(value)
    return display.strip(), addr.strip()


def _collect_attachments(msg: EmailMessage) -> list[AttachmentInfo]:
    out = []
    for part in msg.walk():
        filename = part.get_filename()
        if not filename:
            continue
        ext = filename.rsplit(".", 1)[1].lower() if "." in filename else ""
        out.append(
            AttachmentInfo(
                filename=filename,
                declared_type=part.get_content_type(),
                extension=ext,
            )
        )
    return out


def _parse_rfc_message(raw: bytes) -> ParsedEmail:
    try:
        msg = message_from_bytes(raw, policy=policy.default)
    except Exception as exc:  # the compat parser raises only on truly hostile input
        raise ParseError(f"cannot parse message: {exc}", byte_offset=0) from exc

    flags: list[str] = []

    from_display, from_address = _first_address(msg.get("From"))
    if not msg.get("From"):
        flags.append("missing_from")
    elif not ADDR_SPEC_RE.match(from_address):
        flags.append("malformed_from")

    _, reply_to = _first_address(msg.get("Reply-To"))
    to_addresses = tuple(addr for _, addr in getaddresses(msg.get_all("To", [])) if addr)

    date = None
    if msg.get("Date"):
        try:
            date = parsedate_to_datetime(msg.get("Date"))
        except (ValueError, TypeError):
            flags.append("malformed_date")

    body_text = ""
    links: list[Link] = []
    try:
        body_part = msg.get_body(preferencelist=("plain", "html"))
    except Exception:
        body_part = None
    if body_part is not None:
        try:
            content = body_part.get_content()
        except Exception:
            content = body_part.get_payload(decode=False) or ""
        if body_part.get_content_subtype() == "html":
            body_text, links = strip_markup(content)
        else:
            body_text = unescape(content)
    elif not msg.is_multipart():
        payload = msg.get_payload(decode=True)
        if payload:
            body_text = payload.decode("utf-8", errors="replace")

    # Anchors hidden in non-preferred html alternatives still count as links.
    seen_pairs = {(l.anchor_text, l.href) for l in links}
    for part in msg.walk():
        if part is body_part or part.get_content_type() != "text/html" or part.get_filename():
            continue
        try:
            _, part_links = strip_markup(part.get_content())
        except Exception:
            continue
        for link in part_links:
            if (link.anchor_text, link.href) not in seen_pairs:
                seen_pairs.add((link.anchor_text, link.href))
                links.append(link)

    known = {l.href for l in links}
    links.extend(_harvest_bare_urls(body_text, known))

    return ParsedEmail(
        from_display=from_display,
        from_address=from_address,
        reply_to_address=reply_to or None,
        to_addresses=to_addresses,
        subject=str(msg.get("Subject", "") or ""),
        date=date,
        body_text=body_text,
        links=tuple(links),
        attachments=tuple(_collect_attachments(msg)),
        parse_flags=tuple(flags),
    )


def _parse_envelope(raw: bytes) -> ParsedEmail:
    try:
        data: Any = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        offset = getattr(exc, "pos", 0) if isinstance(exc, json.JSONDecodeError) else 0
        raise ParseError(f"malformed envelope: {exc}", byte_offset=offset) from exc
    if not isinstance(data, dict):
        raise ParseError("envelope root must be an object", byte_offset=0)

    flags: list[str] = []
    from_display, from_address = _first_address(str(data.get("from", "")))
    if not data.get("from"):
        flags.append("missing_from")
    elif not ADDR_SPEC_RE.match(from_address):
        flags.append("malformed_from")
    _, reply_to = _first_address(str(data.get("reply_to") or ""))

    to_value = data.get("to", [])
    if isinstance(to_value, str):
        to_value = [to_value]
    to_addresses = tuple(addr for _, addr in getaddresses([str(v) for v in to_value]) if addr)

    date = None
    if data.get("date"):
        try:
            date = datetime.fromisoformat(str(data["date"]))
        except ValueError:
            flags.append("malformed_date")

    body = str(data.get("body", ""))
    if re.search(r"<[a-zA-Z][^>]*>", body):
        body_text, links = strip_markup(body)
    else:
        body_text, links = body, []
    known = {l.href for l in links}
    links.extend(_harvest_bare_urls(body_text, known))

    attachments = []
    for item in data.get("attachments", []) or []:
        if not isinstance(item, dict):
            continue
        filename = str(item.get("filename", ""))
        ext = filename.rsplit(".", 1)[1].lower() if "." in filename else ""
        attachments.append(
            AttachmentInfo(
                filename=filename,
                declared_type=str(item.get("declared_type", item.get("content_type", ""))),
                extension=ext,
            )
        )

    return ParsedEmail(
        from_display=from_display,
        from_address=from_address,
        reply_to_address=reply_to or None,
        to_addresses=to_addresses,
        subject=str(data.get("subject", "")),
        date=date,
        body_text=body_text,
        links=tuple(links),
        attachments=tuple(attachments),
        parse_flags=tuple(flags),
    )


def parse_email(raw: bytes) -> ParsedEmail:
    """Parse raw message bytes (internet-message format or JSON envelope)."""
    if not raw or not raw.strip():
        raise ParseError("empty message", byte_offset=0)
    stripped = raw.lstrip()
    if stripped.startswith(b"{"):
        return _parse_envelope(raw)
    return _parse_rfc_message(raw)
