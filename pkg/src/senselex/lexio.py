"""Reading and writing the lexicon interchange format.

One JSON object per line:

    {"word_id", "surface", "pos", "gloss", "example",
     "resolved": {"kind", "primary", "secondary"?}, "status"}

An entry with resolutions of both kinds occupies one record per kind, so
``word_id`` may repeat; readers merge on it.  Records without a
``resolved`` key carry entries that have not been adjudicated yet.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator

from .errors import FormatError
from .inventory import UNCERTAIN


@dataclass
class LexiconRecord:
    word_id: str
    surface: str
    pos: str
    gloss: str
    example: str = ""
    status: str = "active"
    # kind -> (primary, secondary or None)
    resolved: dict[str, tuple[str, str | None]] = field(default_factory=dict)


def read_lexicon(stream: IO[str]) -> list[LexiconRecord]:
    """Parse lexicon JSON lines, merging repeated word_ids."""
    records: dict[str, LexiconRecord] = {}
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise FormatError(f"bad JSON at line {lineno}: {exc}", line=lineno) from exc
        try:
            word_id = obj["word_id"]
            rec = records.get(word_id)
            if rec is None:
                rec = LexiconRecord(
                    word_id=word_id,
                    surface=obj["surface"],
                    pos=obj["pos"],
                    gloss=obj.get("gloss", ""),
                    example=obj.get("example", ""),
                    status=obj.get("status", "active"),
                )
                records[word_id] = rec
        except KeyError as exc:
            raise FormatError(f"missing field {exc} at line {lineno}", line=lineno) from exc
        resolved = obj.get("resolved")
        if resolved is not None:
            rec.resolved[resolved["kind"]] = (
                resolved["primary"], resolved.get("secondary"))
    return sorted(records.values(), key=lambda r: r.word_id)


def load_lexicon(path: str) -> list[LexiconRecord]:
    with open(path, encoding="utf-8") as fh:
        return read_lexicon(fh)


def record_lines(rec: LexiconRecord) -> Iterator[str]:
    """Serialize one record back into export lines (one per resolved kind)."""
    base = {
        "word_id": rec.word_id,
        "surface": rec.surface,
        "pos": rec.pos,
        "gloss": rec.gloss,
        "example": rec.example,
        "status": rec.status,
    }
    if not rec.resolved:
        yield json.dumps(base, ensure_ascii=False)
        return
    for kind in sorted(rec.resolved):
        primary, secondary = rec.resolved[kind]
        resolved: dict[str, str] = {"kind": kind, "primary": primary}
        if secondary is not None:
            resolved["secondary"] = secondary
        yield json.dumps({**base, "resolved": resolved}, ensure_ascii=False)


def write_lexicon(records: Iterable[LexiconRecord], stream: IO[str]) -> None:
    for rec in sorted(records, key=lambda r: r.word_id):
        for line in record_lines(rec):
            stream.write(line + "\n")


class SenseLookup:
    """Surface-keyed access to resolved primary sense tags.

    Uncertain or missing resolutions count as unannotated.  Lookups are
    exact matches on the surface form.
    """

    def __init__(self, records: Iterable[LexiconRecord]):
        self.verb_tag: dict[str, str] = {}
        self.adverb_tag: dict[str, str] = {}
        for rec in records:
            sense = rec.resolved.get("sense")
            if sense is None or sense[0] == UNCERTAIN:
                continue
            if rec.pos == "verb":
                self.verb_tag[rec.surface] = sense[0]
            elif rec.pos == "adverb":
                self.adverb_tag[rec.surface] = sense[0]

    def __len__(self) -> int:
        return len(self.verb_tag) + len(self.adverb_tag)
