"""Annotation service: event-sourced store plus the HTTP/JSON API."""

from .app import ServiceConfig, build_store, make_server, serve_forever, start_background
from .store import Store, load_quiz_bank

__all__ = ["ServiceConfig", "Store", "build_store", "load_quiz_bank",
           "make_server", "serve_forever", "start_background"]
