"""Durable annotation store: append-only JSON-lines event log.

Every acknowledged write is one fsynced line in ``events.jsonl``; the
in-memory state is rebuilt by replaying the log on start, so a kill at
any point between requests loses nothing that was acknowledged.  All
event payloads carry their own ids, timestamps, and password hashes, so
replay is free of fresh randomness.

A single store lock serializes mutations (log append + state update as
one atomic step), which subsumes the required per-word mutual exclusion;
reads work on snapshots taken under the same lock.  Conflict resolution
re-runs inside the lock with each annotation write.
"""

from __future__ import annotations

import hashlib
import json
import os
import secrets
import threading
import time
from dataclasses import dataclass
from typing import Callable, Iterator

from ..errors import (
    BadCredentials,
    DuplicateEmail,
    EmptyField,
    FormatError,
    IncompleteQuiz,
    InvalidSession,
    NoTasksLeft,
    NotPending,
    Unauthorized,
    UnknownRequest,
    UnknownWord,
)
from ..inventory import KIND_VALUES, POS_VALUES, SenseInventory
from ..lexicon import (
    Annotation,
    Annotator,
    LexiconEntry,
    ResolvedTags,
    resolve,
    uncertainty_flag,
    validate_annotation,
)
from ..lexio import LexiconRecord, record_lines

DEFAULT_SESSION_TTL = 24 * 3600.0


def _score_from_answers(correct: int, total: int) -> int:
    """Scale correct/total onto 0-10, rounding half-up, in integer math."""
    return (20 * correct + total) // (2 * total)


def _hash_password(salt: str, password: str) -> str:
    return hashlib.sha256((salt + password).encode("utf-8")).hexdigest()


@dataclass
class QuizQuestion:
    question: str
    options: list[str]
    answer: int


def load_quiz_bank(path: str) -> list[QuizQuestion]:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    bank = []
    for i, item in enumerate(raw):
        try:
            q = QuizQuestion(item["question"], list(item["options"]),
                             int(item["answer"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"{path}: bad question #{i}: {exc}") from exc
        if not 0 <= q.answer < len(q.options):
            raise FormatError(f"{path}: answer index out of range in question #{i}")
        bank.append(q)
    if not bank:
        raise FormatError(f"{path}: quiz bank is empty")
    return bank


@dataclass
class CredentialRequest:
    request_id: str
    name: str
    email: str
    profession: str
    education: str
    quiz_answers: list[int]
    computed_score: int
    state: str = "pending"         # pending | approved | rejected


@dataclass
class Account:
    annotator: Annotator
    role: str                      # annotator | admin
    password_salt: str
    password_hash: str

    def check_password(self, password: str) -> bool:
        return secrets.compare_digest(
            _hash_password(self.password_salt, password), self.password_hash)


@dataclass
class Session:
    token: str
    annotator_id: str
    expires_at: float


@dataclass
class WordSubmission:
    submission_id: str
    surface: str
    gloss: str
    example: str
    submitter_id: str
    state: str = "queued"          # queued | accepted | rejected
    word_id: str | None = None


@dataclass
class AnnotationTask:
    word_id: str
    surface: str
    glosses: list[str]
    example: str
    kind: str
    pos: str
    allowed_tags: dict[str, list[str]]


class Store:
    """Event-sourced lexicon, account, and session state."""

    def __init__(self, root: str,
                 inventory: SenseInventory | None = None,
                 quiz_bank: list[QuizQuestion] | None = None,
                 session_ttl: float = DEFAULT_SESSION_TTL,
                 uncertainty_threshold: float = 0.5,
                 uncertainty_min: int = 3,
                 clock: Callable[[], float] = time.time):
        os.makedirs(root, exist_ok=True)
        self.root = root
        self.log_path = os.path.join(root, "events.jsonl")
        self.outbox_path = os.path.join(root, "outbox.jsonl")
        self.inventory = inventory or SenseInventory()
        self.quiz_bank = quiz_bank or []
        self.session_ttl = session_ttl
        self.uncertainty_threshold = uncertainty_threshold
        self.uncertainty_min = uncertainty_min
        self.clock = clock

        self._lock = threading.RLock()
        self.accounts: dict[str, Account] = {}
        self.accounts_by_email: dict[str, str] = {}
        self.requests: dict[str, CredentialRequest] = {}
        self.sessions: dict[str, Session] = {}
        self.entries: dict[str, LexiconEntry] = {}
        self.submissions: dict[str, WordSubmission] = {}
        self._counters = {"request": 0, "annotator": 0, "word": 0, "submission": 0}
        self._replay()

    # ------------------------------------------------------------------ log

    def _replay(self) -> None:
        if not os.path.exists(self.log_path):
            return
        with open(self.log_path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line:
                    continue
                try:
                    event = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise FormatError(
                        f"{self.log_path}: corrupt event at line {lineno}: {exc}",
                        line=lineno) from exc
                self._apply(event)

    def _append(self, event: dict) -> None:
        with open(self.log_path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, ensure_ascii=False) + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        self._apply(event)

    def _next_id(self, kind: str, prefix: str) -> str:
        self._counters[kind] += 1
        return f"{prefix}{self._counters[kind]:06d}"

    def _bump_counter(self, kind: str, ident: str, prefix: str) -> None:
        if ident.startswith(prefix):
            try:
                value = int(ident[len(prefix):])
            except ValueError:
                return
            self._counters[kind] = max(self._counters[kind], value)

    # ---------------------------------------------------------------- apply

    def _apply(self, event: dict) -> None:
        handler = getattr(self, "_apply_" + event["type"])
        handler(event)

    def _apply_credential_requested(self, e: dict) -> None:
        req = CredentialRequest(
            request_id=e["request_id"], name=e["name"], email=e["email"],
            profession=e.get("profession", ""), education=e.get("education", ""),
            quiz_answers=list(e["quiz_answers"]),
            computed_score=int(e["computed_score"]))
        self.requests[req.request_id] = req
        self._bump_counter("request", req.request_id, "r")

    def _apply_request_reviewed(self, e: dict) -> None:
        req = self.requests[e["request_id"]]
        req.state = e["state"]
        if e["state"] != "approved":
            return
        account = Account(
            annotator=Annotator(
                annotator_id=e["annotator_id"], name=req.name, email=req.email,
                profession=req.profession, education=req.education,
                score=req.computed_score, registered_at=e["ts"]),
            role="annotator",
            password_salt=e["password_salt"],
            password_hash=e["password_hash"])
        self.accounts[e["annotator_id"]] = account
        self.accounts_by_email[req.email] = e["annotator_id"]
        self._bump_counter("annotator", e["annotator_id"], "a")

    def _apply_account_created(self, e: dict) -> None:
        account = Account(
            annotator=Annotator(
                annotator_id=e["annotator_id"], name=e["name"], email=e["email"],
                score=int(e.get("score", 10)), registered_at=e["ts"]),
            role=e.get("role", "annotator"),
            password_salt=e["password_salt"],
            password_hash=e["password_hash"])
        self.accounts[e["annotator_id"]] = account
        self.accounts_by_email[e["email"]] = e["annotator_id"]
        self._bump_counter("annotator", e["annotator_id"], "a")

    def _apply_session_opened(self, e: dict) -> None:
        self.sessions[e["token"]] = Session(
            token=e["token"], annotator_id=e["annotator_id"],
            expires_at=e["expires_at"])

    def _apply_entry_created(self, e: dict) -> None:
        entry = LexiconEntry(
            word_id=e["word_id"], surface=e["surface"], pos=e["pos"],
            gloss=e["gloss"], example=e.get("example", ""),
            status=e.get("status", "active"))
        for kind, rt in e.get("resolved", {}).items():
            entry.resolved[kind] = ResolvedTags(
                rt["primary"], rt.get("secondary"), rt["resolution"])
        self.entries[entry.word_id] = entry
        self._bump_counter("word", entry.word_id, "w")

    def _apply_word_submitted(self, e: dict) -> None:
        sub = WordSubmission(
            submission_id=e["submission_id"], surface=e["surface"],
            gloss=e["gloss"], example=e["example"], submitter_id=e["submitter_id"])
        self.submissions[sub.submission_id] = sub
        self._bump_counter("submission", sub.submission_id, "s")

    def _apply_submission_reviewed(self, e: dict) -> None:
        sub = self.submissions[e["submission_id"]]
        sub.state = e["state"]
        if e["state"] == "accepted":
            sub.word_id = e["word_id"]
            self._apply_entry_created({
                "word_id": e["word_id"], "surface": sub.surface,
                "pos": e.get("pos", "verb"), "gloss": sub.gloss,
                "example": sub.example, "status": "active"})

    def _apply_annotation_submitted(self, e: dict) -> None:
        entry = self.entries[e["word_id"]]
        annotation = Annotation(
            annotator_id=e["annotator_id"], kind=e["kind"],
            primary_tag=e["primary"], secondary_tag=e.get("secondary"),
            timestamp=e["ts"])
        entry.annotations = [
            a for a in entry.annotations
            if not (a.annotator_id == annotation.annotator_id
                    and a.kind == annotation.kind)
        ] + [annotation]
        self._rederive(entry)

    def _rederive(self, entry: LexiconEntry) -> None:
        """Recompute resolved tags and the uncertainty status from annotations."""
        annotators = {aid: acc.annotator for aid, acc in self.accounts.items()}
        for kind in KIND_VALUES:
            of_kind = [a for a in entry.annotations if a.kind == kind]
            if of_kind:
                entry.resolved[kind] = resolve(of_kind, annotators)
            else:
                entry.resolved.pop(kind, None)
        if entry.status in ("active", "flagged_uncertain"):
            flagged = uncertainty_flag(entry, self.uncertainty_threshold,
                                       self.uncertainty_min)
            entry.status = "flagged_uncertain" if flagged else "active"

    # ----------------------------------------------------------- operations

    def request_credentials(self, name: str, email: str, profession: str,
                            education: str, quiz_answers: list[int]
                            ) -> CredentialRequest:
        if not self.quiz_bank:
            raise FormatError("no quiz bank configured")
        if not name.strip() or not email.strip():
            raise EmptyField("name and email are required")
        if len(quiz_answers) != len(self.quiz_bank):
            raise IncompleteQuiz(
                f"expected {len(self.quiz_bank)} answers, got {len(quiz_answers)}")
        with self._lock:
            if email in self.accounts_by_email or any(
                    r.email == email and r.state != "rejected"
                    for r in self.requests.values()):
                raise DuplicateEmail(f"{email} is already registered")
            correct = sum(1 for q, a in zip(self.quiz_bank, quiz_answers)
                          if a == q.answer)
            score = _score_from_answers(correct, len(self.quiz_bank))
            request_id = self._next_id("request", "r")
            self._append({
                "type": "credential_requested", "request_id": request_id,
                "name": name, "email": email, "profession": profession,
                "education": education, "quiz_answers": list(quiz_answers),
                "computed_score": score, "ts": self.clock()})
            return self.requests[request_id]

    def approve_request(self, request_id: str, caller_id: str) -> dict:
        with self._lock:
            self._require_admin(caller_id)
            req = self.requests.get(request_id)
            if req is None:
                raise UnknownRequest(f"no request {request_id}")
            if req.state != "pending":
                raise NotPending(f"request {request_id} is {req.state}")
            annotator_id = self._next_id("annotator", "a")
            password = secrets.token_urlsafe(9)
            salt = secrets.token_hex(8)
            self._append({
                "type": "request_reviewed", "request_id": request_id,
                "state": "approved", "annotator_id": annotator_id,
                "password_salt": salt,
                "password_hash": _hash_password(salt, password),
                "ts": self.clock()})
            self._send_outbox(
                to=req.email, subject="Your annotation login",
                body=f"email: {req.email}\npassword: {password}")
            return {"annotator_id": annotator_id, "request_id": request_id,
                    "state": "approved"}

    def create_account(self, name: str, email: str, password: str,
                       role: str = "annotator", score: int = 10) -> str:
        """Direct account creation; used to bootstrap the admin."""
        with self._lock:
            if email in self.accounts_by_email:
                raise DuplicateEmail(f"{email} is already registered")
            annotator_id = self._next_id("annotator", "a")
            salt = secrets.token_hex(8)
            self._append({
                "type": "account_created", "annotator_id": annotator_id,
                "name": name, "email": email, "role": role, "score": score,
                "password_salt": salt,
                "password_hash": _hash_password(salt, password),
                "ts": self.clock()})
            return annotator_id

    def login(self, email: str, password: str) -> Session:
        with self._lock:
            annotator_id = self.accounts_by_email.get(email)
            if annotator_id is None:
                raise BadCredentials("bad email or password")
            if not self.accounts[annotator_id].check_password(password):
                raise BadCredentials("bad email or password")
            token = secrets.token_hex(16)  # 128 bits
            self._append({
                "type": "session_opened", "token": token,
                "annotator_id": annotator_id,
                "expires_at": self.clock() + self.session_ttl,
                "ts": self.clock()})
            return self.sessions[token]

    def session_annotator(self, token: str | None) -> str:
        if not token:
            raise InvalidSession("missing session token")
        session = self.sessions.get(token)
        if session is None or session.expires_at <= self.clock():
            raise InvalidSession("unknown or expired session")
        return session.annotator_id

    def _require_admin(self, annotator_id: str) -> None:
        account = self.accounts.get(annotator_id)
        if account is None or account.role != "admin":
            raise Unauthorized("admin access required")

    def next_task(self, annotator_id: str, kind: str,
                  pos: str | None = None) -> AnnotationTask:
        if kind not in KIND_VALUES:
            raise FormatError(f"kind must be one of {KIND_VALUES}")
        if pos is not None and pos not in POS_VALUES:
            raise FormatError(f"pos must be one of {POS_VALUES}")
        with self._lock:
            candidates = []
            for entry in self.entries.values():
                if entry.status not in ("active", "flagged_uncertain"):
                    continue
                if pos is not None and entry.pos != pos:
                    continue
                of_kind = [a for a in entry.annotations if a.kind == kind]
                if any(a.annotator_id == annotator_id for a in of_kind):
                    continue
                candidates.append((len(of_kind), entry.word_id))
            if not candidates:
                raise NoTasksLeft("no unannotated words for this annotator")
            _, word_id = min(candidates)
            entry = self.entries[word_id]
            allowed = {"primary": list(self.inventory.allowed_primary(entry.pos, kind))}
            if kind == "sense" and entry.pos == "verb":
                allowed["secondary"] = list(
                    self.inventory.allowed_primary(entry.pos, kind))
            return AnnotationTask(
                word_id=entry.word_id, surface=entry.surface,
                glosses=[entry.gloss], example=entry.example, kind=kind,
                pos=entry.pos, allowed_tags=allowed)

    def submit_annotation(self, annotator_id: str, word_id: str, kind: str,
                          primary: str, secondary: str | None = None) -> dict:
        if kind not in KIND_VALUES:
            raise FormatError(f"kind must be one of {KIND_VALUES}")
        with self._lock:
            entry = self.entries.get(word_id)
            if entry is None:
                raise UnknownWord(f"no word {word_id}")
            annotation = Annotation(annotator_id=annotator_id, kind=kind,
                                    primary_tag=primary, secondary_tag=secondary,
                                    timestamp=self.clock())
            validate_annotation(annotation, entry, self.inventory)
            self._append({
                "type": "annotation_submitted", "word_id": word_id,
                "annotator_id": annotator_id, "kind": kind, "primary": primary,
                "secondary": secondary, "ts": annotation.timestamp})
            resolved = entry.resolved.get(kind)
            return {
                "word_id": word_id, "kind": kind,
                "annotations": len([a for a in entry.annotations if a.kind == kind]),
                "status": entry.status,
                "resolved": None if resolved is None else {
                    "primary": resolved.primary_tag,
                    "secondary": resolved.secondary_tag,
                    "resolution": resolved.resolution,
                },
            }

    def add_word(self, annotator_id: str, surface: str, gloss: str,
                 example: str) -> WordSubmission:
        if not surface.strip():
            raise EmptyField("surface is required")
        if not gloss.strip():
            raise EmptyField("gloss is required")
        if not example.strip():
            raise EmptyField("example sentence is required")
        with self._lock:
            submission_id = self._next_id("submission", "s")
            self._append({
                "type": "word_submitted", "submission_id": submission_id,
                "surface": surface, "gloss": gloss, "example": example,
                "submitter_id": annotator_id, "ts": self.clock()})
            return self.submissions[submission_id]

    def review_submission(self, caller_id: str, submission_id: str,
                          decision: str, pos: str = "verb") -> WordSubmission:
        if decision not in ("accept", "reject"):
            raise FormatError("decision must be accept or reject")
        if pos not in POS_VALUES:
            raise FormatError(f"pos must be one of {POS_VALUES}")
        with self._lock:
            self._require_admin(caller_id)
            sub = self.submissions.get(submission_id)
            if sub is None:
                raise UnknownRequest(f"no submission {submission_id}")
            if sub.state != "queued":
                raise NotPending(f"submission {submission_id} is {sub.state}")
            event = {"type": "submission_reviewed",
                     "submission_id": submission_id,
                     "state": "accepted" if decision == "accept" else "rejected",
                     "ts": self.clock()}
            if decision == "accept":
                event["word_id"] = self._next_id("word", "w")
                event["pos"] = pos
            self._append(event)
            return sub

    def import_lexicon(self, records: list[LexiconRecord]) -> int:
        with self._lock:
            count = 0
            for rec in records:
                if rec.word_id in self.entries:
                    continue
                event = {
                    "type": "entry_created", "word_id": rec.word_id,
                    "surface": rec.surface, "pos": rec.pos, "gloss": rec.gloss,
                    "example": rec.example, "status": rec.status,
                    "ts": self.clock()}
                if rec.resolved:
                    event["resolved"] = {
                        kind: {"primary": primary, "secondary": secondary,
                               "resolution": "unanimous"}
                        for kind, (primary, secondary) in rec.resolved.items()}
                self._append(event)
                count += 1
            return count

    def create_entry(self, surface: str, pos: str, gloss: str,
                     example: str = "", status: str = "active") -> LexiconEntry:
        with self._lock:
            word_id = self._next_id("word", "w")
            self._append({
                "type": "entry_created", "word_id": word_id, "surface": surface,
                "pos": pos, "gloss": gloss, "example": example,
                "status": status, "ts": self.clock()})
            return self.entries[word_id]

    def export_records(self, pos: str | None = None, kind: str | None = None,
                       status: str | None = None) -> list[LexiconRecord]:
        with self._lock:
            entries = sorted(self.entries.values(), key=lambda e: e.word_id)
            records = []
            for entry in entries:
                if pos is not None and entry.pos != pos:
                    continue
                if status is not None and entry.status != status:
                    continue
                resolved = {
                    k: (rt.primary_tag, rt.secondary_tag)
                    for k, rt in entry.resolved.items()
                    if rt.primary_tag is not None
                    and (kind is None or k == kind)}
                if kind is not None and not resolved:
                    continue
                records.append(LexiconRecord(
                    word_id=entry.word_id, surface=entry.surface, pos=entry.pos,
                    gloss=entry.gloss, example=entry.example,
                    status=entry.status, resolved=resolved))
            return records

    def export_lines(self, pos: str | None = None, kind: str | None = None,
                     status: str | None = None) -> Iterator[str]:
        for rec in self.export_records(pos=pos, kind=kind, status=status):
            yield from record_lines(rec)

    # -------------------------------------------------------------- outbox

    def _send_outbox(self, to: str, subject: str, body: str) -> None:
        with open(self.outbox_path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps({"to": to, "subject": subject, "body": body,
                                 "ts": self.clock()}, ensure_ascii=False) + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    def read_outbox(self) -> list[dict]:
        if not os.path.exists(self.outbox_path):
            return []
        with open(self.outbox_path, encoding="utf-8") as fh:
            return [json.loads(line) for line in fh if line.strip()]
