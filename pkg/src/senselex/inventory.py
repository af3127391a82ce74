"""Closed tag inventories for sense and polarity annotation.

The verb sense-types and adverb sense-classes are fixed vocabularies; the
six adjective sense-type labels are data (loaded from a config file) and
default to placeholders.  ``Uncertain`` is an abstention marker, not an
inventory member: it is offered alongside every sense tag set and is one
of the four polarity labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FormatError

UNCERTAIN = "Uncertain"

VERB_TYPES = ("ToKnow", "ToMove", "ToDo", "ToHave", "ToBe", "ToCut", "ToBound")
ADVERB_CLASSES = ("Spatial", "Temporal", "Force", "Measure")
ADJECTIVE_TYPES = ("ADJ-1", "ADJ-2", "ADJ-3", "ADJ-4", "ADJ-5", "ADJ-6")
POLARITY_LABELS = ("Positive", "Negative", "Neutral", UNCERTAIN)

POS_VALUES = ("verb", "adverb", "adjective")
KIND_VALUES = ("sense", "polarity")


@dataclass(frozen=True)
class SenseInventory:
    verb_types: tuple[str, ...] = VERB_TYPES
    adverb_classes: tuple[str, ...] = ADVERB_CLASSES
    adjective_types: tuple[str, ...] = ADJECTIVE_TYPES
    polarity_labels: tuple[str, ...] = field(default=POLARITY_LABELS, init=False)

    def __post_init__(self):
        if len(self.verb_types) != 7:
            raise ValueError("verb_types must have exactly 7 labels")
        if len(self.adverb_classes) != 4:
            raise ValueError("adverb_classes must have exactly 4 labels")
        if len(self.adjective_types) != 6:
            raise ValueError("adjective_types must have exactly 6 labels")
        for labels in (self.verb_types, self.adverb_classes,
                       self.adjective_types, self.polarity_labels):
            if len(set(labels)) != len(labels):
                raise ValueError("labels within a list must be distinct")

    def sense_tags(self, pos: str) -> tuple[str, ...]:
        """Inventory labels for sense annotation of the given POS (no Uncertain)."""
        if pos == "verb":
            return self.verb_types
        if pos == "adverb":
            return self.adverb_classes
        if pos == "adjective":
            return self.adjective_types
        raise ValueError(f"unknown pos: {pos!r}")

    def allowed_primary(self, pos: str, kind: str) -> tuple[str, ...]:
        """Selectable primary tags for an annotation task (Uncertain included)."""
        if kind == "polarity":
            return self.polarity_labels
        return self.sense_tags(pos) + (UNCERTAIN,)


_INVENTORY_KEYS = ("verb_types", "adverb_classes", "adjective_types", "polarity_labels")


def load_inventory(path: str) -> SenseInventory:
    """Read an inventory config file: ``key = label, label, ...`` per line."""
    values: dict[str, tuple[str, ...]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise FormatError(f"expected 'key = labels' at line {lineno}", line=lineno)
            key, _, rest = line.partition("=")
            key = key.strip()
            if key not in _INVENTORY_KEYS:
                raise FormatError(f"unknown inventory key {key!r} at line {lineno}", line=lineno)
            labels = tuple(part.strip() for part in rest.split(",") if part.strip())
            values[key] = labels
    if "polarity_labels" in values and values.pop("polarity_labels") != POLARITY_LABELS:
        raise FormatError("polarity_labels are fixed: " + ", ".join(POLARITY_LABELS))
    return SenseInventory(**values)


def dump_inventory(inv: SenseInventory) -> str:
    lines = [f"{key} = " + ", ".join(getattr(inv, key)) for key in _INVENTORY_KEYS]
    return "\n".join(lines) + "\n"
