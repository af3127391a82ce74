"""HTTP/JSON front end over the store, plus static assets for the web UI.

Errors travel as ``{"code", "message"}`` with a status chosen from the
error code; sessions ride in the ``Authorization: Bearer <token>`` header.
The threading server gives one thread per request; the store's locking
provides the write serialization.
"""

from __future__ import annotations

import json
import mimetypes
import os
import re
import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from ..config import env_override, parse_kv_file
from ..errors import (
    BadCredentials,
    DuplicateEmail,
    EmptyField,
    FormatError,
    IncompleteQuiz,
    InvalidSession,
    NoTasksLeft,
    NotPending,
    SenselexError,
    Unauthorized,
    UnknownRequest,
    UnknownWord,
    ValidationError,
)
from ..inventory import SenseInventory, load_inventory
from .store import DEFAULT_SESSION_TTL, Store, load_quiz_bank

_STATUS_BY_CODE = {
    ValidationError: 400, IncompleteQuiz: 400, EmptyField: 400, FormatError: 400,
    BadCredentials: 401, InvalidSession: 401,
    Unauthorized: 403,
    UnknownWord: 404, UnknownRequest: 404, NoTasksLeft: 404,
    DuplicateEmail: 409, NotPending: 409,
}


def _status_for(exc: SenselexError) -> int:
    for klass, status in _STATUS_BY_CODE.items():
        if isinstance(exc, klass):
            return status
    return 500


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8787
    store_dir: str = "store"
    session_ttl: float = DEFAULT_SESSION_TTL
    quiz_bank: str | None = None
    inventory: str | None = None
    guidelines: str | None = None
    static_dir: str | None = None
    admin_email: str = "admin@senselex.local"
    admin_password: str | None = None
    uncertainty_threshold: float = 0.5
    uncertainty_min: int = 3
    extra: dict = field(default_factory=dict)

    KEYS = ("host", "port", "store_dir", "session_ttl", "quiz_bank",
            "inventory", "guidelines", "static_dir", "admin_email",
            "admin_password", "uncertainty_threshold", "uncertainty_min")

    @classmethod
    def load(cls, path: str | None = None) -> "ServiceConfig":
        raw = parse_kv_file(path) if path else {}
        raw = env_override(raw, list(cls.KEYS))
        cfg = cls()
        for key in cls.KEYS:
            if key in raw:
                value = raw[key]
                if key in ("port", "uncertainty_min"):
                    setattr(cfg, key, int(value))
                elif key in ("session_ttl", "uncertainty_threshold"):
                    setattr(cfg, key, float(value))
                else:
                    setattr(cfg, key, value)
        return cfg


def build_store(cfg: ServiceConfig) -> Store:
    inventory = load_inventory(cfg.inventory) if cfg.inventory else SenseInventory()
    quiz = load_quiz_bank(cfg.quiz_bank) if cfg.quiz_bank else []
    store = Store(cfg.store_dir, inventory=inventory, quiz_bank=quiz,
                  session_ttl=cfg.session_ttl,
                  uncertainty_threshold=cfg.uncertainty_threshold,
                  uncertainty_min=cfg.uncertainty_min)
    if cfg.admin_email not in store.accounts_by_email:
        password = cfg.admin_password
        if password is None:
            import secrets
            password = secrets.token_urlsafe(9)
        store.create_account(name="admin", email=cfg.admin_email,
                             password=password, role="admin")
        store._send_outbox(to=cfg.admin_email, subject="Admin credentials",
                           body=f"email: {cfg.admin_email}\npassword: {password}")
    return store


class ApiHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    store: Store = None            # type: ignore  # set by make_server
    config: ServiceConfig = None   # type: ignore
    quiet = True

    # ------------------------------------------------------------- plumbing

    def log_message(self, fmt, *args):
        if not self.quiet:
            super().log_message(fmt, *args)

    def _drain_body(self) -> bytes:
        # always consume the request body, read or not, so keep-alive
        # connections stay framed for the next request
        length = int(self.headers.get("Content-Length") or 0)
        self._body = self.rfile.read(length) if length else b""
        return self._body

    def _json_body(self) -> dict:
        if not getattr(self, "_body", b""):
            return {}
        try:
            return json.loads(self._body.decode("utf-8"))
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise FormatError(f"request body is not valid JSON: {exc}") from exc

    def _send(self, status: int, payload: bytes,
              content_type: str = "application/json") -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def _send_json(self, obj, status: int = 200) -> None:
        self._send(status, (json.dumps(obj, ensure_ascii=False) + "\n").encode("utf-8"))

    def _send_error_json(self, exc: SenselexError) -> None:
        self._send_json({"code": exc.code, "message": exc.message},
                        status=_status_for(exc))

    def _session_token(self) -> str | None:
        auth = self.headers.get("Authorization", "")
        if auth.startswith("Bearer "):
            return auth[len("Bearer "):].strip()
        return None

    def _annotator(self) -> str:
        return self.store.session_annotator(self._session_token())

    # --------------------------------------------------------------- routes

    def do_POST(self):
        try:
            self._drain_body()
            self._route_post()
        except SenselexError as exc:
            self._send_error_json(exc)
        except Exception as exc:  # noqa: BLE001 - last-resort 500
            self._send_json({"code": "InternalError", "message": str(exc)}, 500)

    def do_GET(self):
        try:
            self._drain_body()
            self._route_get()
        except SenselexError as exc:
            self._send_error_json(exc)
        except Exception as exc:  # noqa: BLE001
            self._send_json({"code": "InternalError", "message": str(exc)}, 500)

    def _route_post(self):
        path = urlparse(self.path).path
        if path == "/api/credential-requests":
            body = self._json_body()
            req = self.store.request_credentials(
                name=body.get("name", ""), email=body.get("email", ""),
                profession=body.get("profession", ""),
                education=body.get("education", ""),
                quiz_answers=list(body.get("quiz_answers", [])))
            self._send_json({"request_id": req.request_id, "state": req.state}, 201)
            return
        match = re.fullmatch(r"/api/requests/([^/]+)/approve", path)
        if match:
            result = self.store.approve_request(match.group(1), self._annotator())
            self._send_json(result)
            return
        if path == "/api/login":
            body = self._json_body()
            session = self.store.login(body.get("email", ""),
                                       body.get("password", ""))
            self._send_json({"token": session.token,
                             "annotator_id": session.annotator_id,
                             "expires_at": session.expires_at})
            return
        if path == "/api/annotations":
            annotator_id = self._annotator()
            body = self._json_body()
            ack = self.store.submit_annotation(
                annotator_id, word_id=body.get("word_id", ""),
                kind=body.get("kind", ""), primary=body.get("primary_tag", ""),
                secondary=body.get("secondary_tag"))
            self._send_json(ack)
            return
        if path == "/api/words":
            annotator_id = self._annotator()
            body = self._json_body()
            sub = self.store.add_word(
                annotator_id, surface=body.get("surface", ""),
                gloss=body.get("gloss", ""), example=body.get("example", ""))
            self._send_json({"submission_id": sub.submission_id,
                             "state": sub.state}, 201)
            return
        match = re.fullmatch(r"/api/submissions/([^/]+)/review", path)
        if match:
            caller = self._annotator()
            body = self._json_body()
            sub = self.store.review_submission(
                caller, match.group(1), decision=body.get("decision", ""),
                pos=body.get("pos", "verb"))
            self._send_json({"submission_id": sub.submission_id,
                             "state": sub.state, "word_id": sub.word_id})
            return
        raise UnknownRequest(f"no such endpoint: POST {path}")

    def _route_get(self):
        parsed = urlparse(self.path)
        path = parsed.path
        query = {k: v[0] for k, v in parse_qs(parsed.query).items()}
        if path == "/api/tasks/next":
            annotator_id = self._annotator()
            task = self.store.next_task(annotator_id,
                                        kind=query.get("kind", "sense"),
                                        pos=query.get("pos") or None)
            self._send_json({
                "word_id": task.word_id, "surface": task.surface,
                "glosses": task.glosses, "example": task.example,
                "kind": task.kind, "pos": task.pos,
                "allowed_tags": task.allowed_tags})
            return
        if path == "/api/export":
            lines = self.store.export_lines(
                pos=query.get("pos") or None, kind=query.get("kind") or None,
                status=query.get("status") or None)
            payload = "".join(line + "\n" for line in lines).encode("utf-8")
            self._send(200, payload, content_type="application/x-ndjson")
            return
        if path == "/api/quiz":
            questions = [{"question": q.question, "options": q.options}
                         for q in self.store.quiz_bank]
            self._send_json({"questions": questions})
            return
        if path == "/api/inventory":
            inv = self.store.inventory
            self._send_json({
                "verb_types": list(inv.verb_types),
                "adverb_classes": list(inv.adverb_classes),
                "adjective_types": list(inv.adjective_types),
                "polarity_labels": list(inv.polarity_labels)})
            return
        if path == "/api/guidelines":
            text = "No annotation guidelines configured."
            if self.config.guidelines and os.path.exists(self.config.guidelines):
                with open(self.config.guidelines, encoding="utf-8") as fh:
                    text = fh.read()
            self._send(200, text.encode("utf-8"),
                       content_type="text/markdown; charset=utf-8")
            return
        if path.startswith("/api/"):
            raise UnknownRequest(f"no such endpoint: GET {path}")
        self._serve_static(path)

    def _serve_static(self, path: str) -> None:
        root = self.config.static_dir
        if not root:
            raise UnknownRequest("no static assets configured")
        relative = path.lstrip("/") or "index.html"
        full = os.path.realpath(os.path.join(root, relative))
        if not full.startswith(os.path.realpath(root)):
            raise UnknownRequest("path escapes static root")
        if os.path.isdir(full):
            full = os.path.join(full, "index.html")
        if not os.path.exists(full):
            raise UnknownRequest(f"no such asset: {path}")
        content_type = mimetypes.guess_type(full)[0] or "application/octet-stream"
        with open(full, "rb") as fh:
            self._send(200, fh.read(), content_type=content_type)


def make_server(cfg: ServiceConfig, store: Store | None = None
                ) -> ThreadingHTTPServer:
    store = store or build_store(cfg)
    handler = type("BoundApiHandler", (ApiHandler,),
                   {"store": store, "config": cfg})
    server = ThreadingHTTPServer((cfg.host, cfg.port), handler)
    server.daemon_threads = True
    return server


def serve_forever(cfg: ServiceConfig) -> None:
    server = make_server(cfg)
    host, port = server.server_address[:2]
    print(f"serving on http://{host}:{port} (store: {cfg.store_dir})")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()


def start_background(cfg: ServiceConfig, store: Store | None = None
                     ) -> tuple[ThreadingHTTPServer, threading.Thread]:
    """Run the server on a daemon thread; used by tests and the UI e2e."""
    server = make_server(cfg, store=store)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return server, thread
