"""Regenerate the built-in evaluation corpus (hand-authored template emails).

Every message below is synthetic template text written for this repository;
none is real correspondence and none was model-generated. Ground-truth
labels in the manifest are derived by running the engine at the pinned
analysis date (2026-02-10); scripts/check_corpus.py recomputes and freezes
them.
"""

from __future__ import annotations

import json
import pathlib
import sys
from email import policy
from email.message import EmailMessage

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

ROOT = pathlib.Path(__file__).resolve().parents[1] / "src/whaling_guard/evalharness/corpus_builtin"

CORPUS_VERSION = "1.0"
ANALYSIS_DATE = "2026-02-10"

DATE = "Tue, 10 Feb 2026 09:12:00 +0900"
TO = "a.tanaka@example-univ.ac.jp"

ENTRIES: list[dict] = []


def build(
    headers: dict[str, str],
    text: str,
    html: str | None = None,
    attachment: tuple[str, str, str] | None = None,
) -> bytes:
    msg = EmailMessage(policy=policy.SMTP)
    for key, value in headers.items():
        msg[key] = value
    msg.set_content(text)
    if html is not None:
        msg.add_alternative(html, subtype="html")
    if attachment is not None:
        filename, maintype, subtype = attachment
        msg.add_attachment(
            b"fixture-bytes", maintype=maintype, subtype=subtype, filename=filename
        )
    return msg.as_bytes()


def add(entry_id: str, scenario_tag: str, notes: str, raw: bytes) -> None:
    ENTRIES.append(
        {"entry_id": entry_id, "scenario_tag": scenario_tag, "notes": notes, "raw": raw}
    )


# --- funding-agency impersonation -------------------------------------------

add(
    "f-01-grant-suspension",
    "funding_agency",
    "expenditure deficiency pretext with portal link",
    build(
        {
            "From": "Research Grants Office <grants-admin@grants-support.example>",
            "To": TO,
            "Subject": "Urgent: deficiencies in your grant expenditure report",
            "Date": DATE,
        },
        """A review found deficiencies in the expenditure report for your research
grant. Budget execution will be suspended unless the corrections are
submitted no later than February 14.

Please access the portal and correct the account information for the
affected grant funds:

https://grants-support.example/portal/confirm

Research Grants Office""",
    ),
)

add(
    "f-02-anchor-mismatch",
    "funding_agency",
    "html anchor names the university host, href goes elsewhere",
    build(
        {
            "From": "Grants Management Division <notice@grants-management.example>",
            "To": TO,
            "Subject": "Immediate action: grant payment verification",
            "Date": DATE,
        },
        """On behalf of the funding program, we ask you to verify the pending
payment for your research grant. The verification must be completed no
later than February 13 or budget execution will be interrupted.

Access the portal at grants.example-univ.ac.jp/portal.

Grants Management Division""",
        html="""<html><body>
<p>On behalf of the funding program, we ask you to verify the pending
payment for your research grant. The verification must be completed
no later than February 13 or budget execution will be interrupted.</p>
<p>Access the portal here:
<a href="https://grants-verify.attacker.test/login">grants.example-univ.ac.jp/portal</a></p>
<p>Grants Management Division</p>
</body></html>""",
    ),
)

add(
    "f-03-freemail",
    "funding_agency",
    "funding office claimed from a consumer mailbox",
    build(
        {
            "From": "Funding Office <funding.office.notice@gmail.com>",
            "To": TO,
            "Subject": "Research grants: urgent compliance check",
            "Date": DATE,
        },
        """Our compliance unit flagged your latest expenditure filing. To keep the
grant funds available, reply before the end of this week with the revised
budget table. This is urgent; the review closes on Friday.

Funding Office, Grants Program""",
    ),
)

add(
    "f-04-ja-grant",
    "funding_agency",
    "Japanese-language grant procedure pretext",
    build(
        {
            "From": "研究費助成財団事務局 <jimu@kenkyu-josei.example>",
            "To": TO,
            "Subject": "【至急】研究費の払込手続について",
            "Date": DATE,
        },
        """研究費の振込口座に不備が見つかりました。至急、下記リンクから口座の再登録を
お願いいたします。締切は2月14日です。

https://kenkyu-josei.example/saitoroku

研究費助成財団事務局""",
    ),
)

add(
    "f-05-replyto",
    "funding_agency",
    "spoofed institutional From with external Reply-To",
    build(
        {
            "From": "Office of Research Grants <grants-office@example-univ.ac.jp>",
            "Reply-To": "grants-office@secure-reply.attacker.test",
            "To": TO,
            "Subject": "Grant expenditure report: correction required",
            "Date": DATE,
        },
        """The expenditure report for your grant was rejected by the funding agency.
Reply immediately with the corrected budget sheet so the payment is not
returned. The resubmission window closes no later than February 12.

Office of Research Grants""",
    ),
)

# --- internal-IT impersonation -----------------------------------------------

add(
    "i-01-mail-migration",
    "internal_it",
    "password harvest behind a migration notice",
    build(
        {
            "From": "IT Help Desk <helpdesk@campus-systems.example>",
            "To": TO,
            "Subject": "Mail system migration: verify your account",
            "Date": DATE,
        },
        """The campus mail system is being migrated this week. Your password will
expire tonight unless the account is re-validated. Sign in here to keep
your mailbox active:

https://campus-systems.example/verify

This step is urgent and takes one minute.

IT Help Desk""",
    ),
)

add(
    "i-02-csirt-audit",
    "internal_it",
    "account audit framed as an instruction from above",
    build(
        {
            "From": "University CSIRT <csirt-notice@sec-audit.example>",
            "To": TO,
            "Subject": "Account audit: immediate confirmation required",
            "Date": DATE,
        },
        """As instructed by the university information security committee, all
privileged accounts are being audited this week. Confirm your login
information today via the audit portal; accounts not confirmed will be
locked immediately.

https://sec-audit.example/confirm

University CSIRT""",
    ),
)

add(
    "i-03-ja-it",
    "internal_it",
    "Japanese-language password reset pretext",
    build(
        {
            "From": "情報システム部 <info-sys@campus-jousys.example>",
            "To": TO,
            "Subject": "【至急】メールシステム更新のお知らせ",
            "Date": DATE,
        },
        """情報システムの更新に伴い、パスワードの再設定が必要です。至急、
こちらからログインして手続きを完了してください。

https://campus-jousys.example/reset

情報システム部""",
    ),
)

add(
    "i-04-quota",
    "internal_it",
    "storage quota pretext with mismatched anchor",
    build(
        {
            "From": "Information Systems Center <quota@it-notice.example>",
            "To": TO,
            "Subject": "Mailbox storage limit reached",
            "Date": DATE,
        },
        """Your mailbox reached its storage limit and incoming mail will bounce
within 24 hours. Sign in to the storage console and confirm your account
to restore delivery. This is urgent.

Console: webmail.example-univ.ac.jp/quota

Information Systems Center""",
        html="""<html><body>
<p>Your mailbox reached its storage limit and incoming mail will bounce
within 24 hours. Sign in to the storage console and confirm your account
to restore delivery. This is urgent.</p>
<p><a href="https://storage-console.attacker.test/login">webmail.example-univ.ac.jp/quota</a></p>
<p>Information Systems Center</p>
</body></html>""",
    ),
)

# --- conference-organizer impersonation ---------------------------------------

add(
    "c-01-registration",
    "conference_organizer",
    "registration credential phish out of season",
    build(
        {
            "From": "Symposium Registration Desk <registration@symp-portal.example>",
            "To": TO,
            "Subject": "Action needed: registration account update",
            "Date": DATE,
        },
        """The registration platform moved to a new provider. To keep your program
committee access, sign in here with your current password and confirm the
update by Friday. We appreciate your cooperation during the transition.

https://symp-portal.example/account

Symposium Registration Desk""",
    ),
)

add(
    "c-02-pc-package",
    "conference_organizer",
    "review package delivered as an archive attachment",
    build(
        {
            "From": "Program Committee <pc-chair@symp-review.example>",
            "To": TO,
            "Subject": "Review package for the spring cycle",
            "Date": DATE,
        },
        """The review package for the spring cycle is attached as an archive.
The review deadline is March 2; late reviews delay the notification.

Program Committee""",
        attachment=("review_package.zip", "application", "zip"),
    ),
)

add(
    "c-03-ja-conf",
    "conference_organizer",
    "Japanese-language registration update request",
    build(
        {
            "From": "大会事務局 <desk@taikai-jimu.example>",
            "To": TO,
            "Subject": "登録情報の更新のお願い",
            "Date": DATE,
        },
        """大会システムの移行に伴い、登録情報の更新が必要です。締切までに
こちらからログインし、ログイン情報をご確認ください。

https://taikai-jimu.example/update

大会事務局""",
    ),
)

# --- research-collaborator impersonation --------------------------------------

add(
    "r-01-dataset",
    "research_collaborator",
    "dataset exfiltration through a cooperation pretext",
    build(
        {
            "From": "Prof. K. Lindt <k.lindt@partner-inst.example>",
            "To": TO,
            "Subject": "Measurement data for the joint project",
            "Date": DATE,
        },
        """For the next phase of our joint research project I need the measurement
series from last autumn. Could you share the dataset this week? Please keep
this between us until the draft is out; the co-authors have not seen the
numbers yet.

K. Lindt, joint research partner""",
    ),
)

add(
    "r-02-roster",
    "research_collaborator",
    "member list harvesting via collaboration framing",
    build(
        {
            "From": "Dr. M. Castellan <m.castellan@cooperativelab.example>",
            "To": TO,
            "Subject": "Updated member list for the collaboration project",
            "Date": DATE,
        },
        """We are assembling the consortium annex for our collaboration project.
Please send the list of laboratory members with their roles so I can merge
it into the annex. Treat the annex as confidential until submission.

M. Castellan""",
    ),
)

add(
    "r-03-ja-collab",
    "research_collaborator",
    "Japanese-language joint-research data request",
    build(
        {
            "From": "共同研究プロジェクト担当 <aite@kyodo-kenkyu.example>",
            "To": TO,
            "Subject": "共同研究データの共有のお願い",
            "Date": DATE,
        },
        """共同研究の次の段階に向けて、昨年度の測定データを送付いただけますか。
ご協力のほどよろしくお願いいたします。ドラフト公開までは機密として
お取り扱いください。

共同研究プロジェクト担当""",
    ),
)

# --- executive impersonation ----------------------------------------------------

add(
    "e-01-dean-transfer",
    "executive",
    "budget action ordered from above, discretion demanded",
    build(
        {
            "From": "Office of the Dean <dean-office@exec-notice.example>",
            "To": TO,
            "Subject": "Confidential: budget reallocation before the closing",
            "Date": DATE,
        },
        """On behalf of the Dean, I must ask you to process the payment for the
pending reallocation today. The bank transfer details follow in a separate
message. This is urgent and strictly private until the closing is
announced; route all questions only to this address.

Office of the Dean""",
    ),
)

add(
    "e-02-provost-invoice",
    "executive",
    "invoice settlement pressed with executive authority",
    build(
        {
            "From": "Provost Secretariat <secretariat@provost-office.example>",
            "To": TO,
            "Subject": "Outstanding invoice for the strategic program",
            "Date": DATE,
        },
        """The provost has asked that this be handled quickly: an outstanding
invoice for the strategic program must be settled from your project budget
before the end of this month. Confirm today that you will process the
payment.

Provost Secretariat""",
    ),
)

# --- benign ----------------------------------------------------------------------

add(
    "b-01-seminar-thanks",
    "benign",
    "zero_feature plain collegial note",
    build(
        {
            "From": "Taro Watanabe <t.watanabe@example-univ.ac.jp>",
            "To": TO,
            "Subject": "Notes from the seminar",
            "Date": DATE,
        },
        """Thank you for the seminar talk yesterday. Several colleagues asked for
the reading notes, and I have passed them along. The discussion on
measurement design was particularly well received.

Taro""",
    ),
)

add(
    "b-02-room-change",
    "benign",
    "zero_feature room change notice",
    build(
        {
            "From": "Faculty Affairs <affairs@example-univ.ac.jp>",
            "To": TO,
            "Subject": "Room change for the faculty meeting",
            "Date": DATE,
        },
        """The faculty meeting on Thursday will take place in Room 402 instead of
Room 318. The agenda remains unchanged and minutes will follow as usual.

Faculty Affairs""",
    ),
)

add(
    "b-03-ja-thanks",
    "benign",
    "zero_feature Japanese-language thank-you note",
    build(
        {
            "From": "山田 <yamada@example-univ.ac.jp>",
            "To": TO,
            "Subject": "お礼と次回のご案内",
            "Date": DATE,
        },
        """先日はお時間をいただきありがとうございました。次回の検討会は来月上旬を
予定しています。詳細が決まり次第、改めてご連絡いたします。

山田""",
    ),
)

add(
    "b-04-journal-toc",
    "benign",
    "zero_feature journal table of contents",
    build(
        {
            "From": "Journal Office <toc@journal-office.example>",
            "To": TO,
            "Subject": "Current issue contents",
            "Date": DATE,
        },
        """The current issue lists the following articles:

1. Measurement stability in long-running network observatories
2. A survey of consent models for shared research infrastructures
3. Reproducibility notes for distributed trace collection

The full issue appears in print next month.

Journal Office""",
    ),
)

add(
    "b-05-oped-attachment",
    "benign",
    "oped_analogue column introduction with document attachment",
    build(
        {
            "From": "Hiroshi Mori <h.mori@daily-news.example>",
            "To": TO,
            "Subject": "Column on research security",
            "Date": DATE,
        },
        """I enjoyed our conversation last week. The column on research security I
mentioned ran in this morning's edition; the piece is enclosed for your
reference. No action is needed; I simply thought the framing would
interest you.

Hiroshi Mori
Editorial desk, Daily News""",
        attachment=("op_ed_column.pdf", "application", "pdf"),
    ),
)

add(
    "b-06-newsletter",
    "benign",
    "department newsletter with one matching link",
    build(
        {
            "From": "Department Newsletter <newsletter@example-univ.ac.jp>",
            "To": TO,
            "Subject": "Department newsletter, February issue",
            "Date": DATE,
        },
        """The February issue of the department newsletter is online at
https://www.example-univ.ac.jp/newsletter/feb

It covers the open-house schedule and two new laboratory portraits.""",
        html="""<html><body>
<p>The February issue of the department newsletter is online:</p>
<p><a href="https://www.example-univ.ac.jp/newsletter/feb">www.example-univ.ac.jp/newsletter/feb</a></p>
<p>It covers the open-house schedule and two new laboratory portraits.</p>
</body></html>""",
    ),
)


def main() -> None:
    messages = ROOT / "messages"
    messages.mkdir(parents=True, exist_ok=True)
    for stale in messages.glob("*.eml"):
        stale.unlink()
    manifest_entries = []
    for entry in ENTRIES:
        filename = f"{entry['entry_id']}.eml"
        (messages / filename).write_bytes(entry["raw"])
        manifest_entries.append(
            {
                "entry_id": entry["entry_id"],
                "file": f"messages/{filename}",
                "scenario_tag": entry["scenario_tag"],
                "ground_truth_label": "TBD",
                "notes": entry["notes"],
            }
        )
    manifest = {
        "corpus_version": CORPUS_VERSION,
        "analysis_date": ANALYSIS_DATE,
        "entries": manifest_entries,
    }
    (ROOT / "manifest.json").write_text(
        json.dumps(manifest, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    print(f"wrote {len(manifest_entries)} corpus entries")


if __name__ == "__main__":
    main()
