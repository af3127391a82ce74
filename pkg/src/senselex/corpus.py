"""POS-tagged corpus ingestion and adverb/verb co-occurrence statistics.

A "pair" is an adverb and a verb adjacent in the running text (window=1);
wider windows are available for exploration.  Pair counts are aggregated
into a 4x7 matrix (adverb sense-class rows, verb sense-type columns) whose
percentages are kept as exact rationals internally, so every non-empty row
sums to 100 before display rounding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable

from .errors import EmptyLexicon, FormatError, UnknownTag
from .inventory import ADVERB_CLASSES, VERB_TYPES
from .lexio import SenseLookup

ORDER_ADVERB_VERB = "AdverbVerb"
ORDER_VERB_ADVERB = "VerbAdverb"

CATEGORY_VALUES = ("verb", "adverb", "other")

DEFAULT_TAGSET = {
    "verb": ("VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "VM", "VAUX", "V"),
    "adverb": ("RB", "RBR", "RBS", "ADV"),
}


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    tag: str


@dataclass(frozen=True)
class TaggedSentence:
    tokens: tuple[TaggedToken, ...]

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("a tagged sentence cannot be empty")


@dataclass(frozen=True)
class BigramPair:
    adverb_surface: str
    verb_surface: str
    order: str                     # AdverbVerb | VerbAdverb
    sentence_index: int
    position: int                  # index of the left token


class TagsetMap:
    """Maps raw POS tags onto {verb, adverb, other}."""

    def __init__(self, mapping: dict[str, tuple[str, ...]] | None = None):
        mapping = DEFAULT_TAGSET if mapping is None else mapping
        self._category: dict[str, str] = {}
        for category, tags in mapping.items():
            if category not in CATEGORY_VALUES:
                raise ValueError(f"unknown tag category: {category!r}")
            for tag in tags:
                self._category[tag] = category

    @classmethod
    def load(cls, path: str) -> "TagsetMap":
        mapping: dict[str, tuple[str, ...]] = {}
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise FormatError(
                        f"expected 'category = tags' at line {lineno}", line=lineno)
                category, _, rest = line.partition("=")
                mapping[category.strip()] = tuple(
                    t.strip() for t in rest.split(",") if t.strip())
        return cls(mapping)

    def known(self, tag: str) -> bool:
        return tag in self._category

    def category(self, tag: str) -> str:
        return self._category.get(tag, "other")


def parse_tagged_corpus(stream: IO[str],
                        tagset: TagsetMap | None = None,
                        strict: bool = False) -> list[TaggedSentence]:
    """Parse `surface<TAB>tag` lines; a blank line closes a sentence.

    Raises FormatError with the offending line number for untabbed lines,
    and UnknownTag in strict mode when a tag has no category mapping.
    """
    tagset = tagset or TagsetMap()
    sentences: list[TaggedSentence] = []
    tokens: list[TaggedToken] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            if tokens:
                sentences.append(TaggedSentence(tuple(tokens)))
                tokens = []
            continue
        if "\t" not in line:
            raise FormatError(f"no tab separator at line {lineno}", line=lineno)
        surface, _, tag = line.partition("\t")
        surface, tag = surface.strip(), tag.strip()
        if not surface or not tag:
            raise FormatError(f"empty surface or tag at line {lineno}", line=lineno)
        if strict and not tagset.known(tag):
            raise UnknownTag(f"unmapped tag {tag!r} at line {lineno}", line=lineno)
        tokens.append(TaggedToken(surface, tag))
    if tokens:
        sentences.append(TaggedSentence(tuple(tokens)))
    return sentences


def extract_pairs(sentences: Iterable[TaggedSentence],
                  tagset: TagsetMap | None = None,
                  window: int = 1) -> list[BigramPair]:
    """Enumerate adverb/verb pairs within ``window`` tokens of each other.

    Every qualifying (left, right) token pair yields exactly one BigramPair;
    a token may participate in several pairs.  Output order is by sentence,
    left position, then gap width.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    tagset = tagset or TagsetMap()
    pairs: list[BigramPair] = []
    for s_index, sentence in enumerate(sentences):
        cats = [tagset.category(tok.tag) for tok in sentence.tokens]
        for i in range(len(cats)):
            for offset in range(1, window + 1):
                j = i + offset
                if j >= len(cats):
                    break
                left, right = cats[i], cats[j]
                if left == "adverb" and right == "verb":
                    pairs.append(BigramPair(
                        adverb_surface=sentence.tokens[i].surface,
                        verb_surface=sentence.tokens[j].surface,
                        order=ORDER_ADVERB_VERB,
                        sentence_index=s_index,
                        position=i,
                    ))
                elif left == "verb" and right == "adverb":
                    pairs.append(BigramPair(
                        adverb_surface=sentence.tokens[j].surface,
                        verb_surface=sentence.tokens[i].surface,
                        order=ORDER_VERB_ADVERB,
                        sentence_index=s_index,
                        position=i,
                    ))
    return pairs


def pair_order_stats(pairs: Iterable[BigramPair]) -> dict[str, int]:
    counts = {"adverb_verb_count": 0, "verb_adverb_count": 0}
    for pair in pairs:
        if pair.order == ORDER_ADVERB_VERB:
            counts["adverb_verb_count"] += 1
        else:
            counts["verb_adverb_count"] += 1
    return counts


def write_pairs(pairs: Iterable[BigramPair], stream: IO[str]) -> None:
    for p in pairs:
        stream.write(json.dumps({
            "adverb": p.adverb_surface,
            "verb": p.verb_surface,
            "order": p.order,
            "sentence": p.sentence_index,
            "position": p.position,
        }, ensure_ascii=False) + "\n")


def read_pairs(stream: IO[str]) -> list[BigramPair]:
    pairs = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            pairs.append(BigramPair(
                adverb_surface=obj["adverb"],
                verb_surface=obj["verb"],
                order=obj["order"],
                sentence_index=obj.get("sentence", 0),
                position=obj.get("position", 0),
            ))
        except (json.JSONDecodeError, KeyError) as exc:
            raise FormatError(f"bad pair record at line {lineno}: {exc}",
                              line=lineno) from exc
    return pairs


def round_half_up_1dp(value: Fraction) -> str:
    """Exact half-up rounding of a non-negative rational to one decimal."""
    tenths = (value * 10 + Fraction(1, 2)).__floor__()
    return f"{tenths // 10}.{tenths % 10}"


@dataclass
class DistributionMatrix:
    """Adverb sense-class (rows) vs verb sense-type (columns) pair counts."""

    adverb_classes: tuple[str, ...] = ADVERB_CLASSES
    verb_types: tuple[str, ...] = VERB_TYPES
    counts: list[list[int]] = field(default_factory=list)
    skipped: int = 0

    def __post_init__(self):
        if not self.counts:
            self.counts = [[0] * len(self.verb_types)
                           for _ in self.adverb_classes]

    @property
    def row_totals(self) -> list[int]:
        return [sum(row) for row in self.counts]

    @property
    def percentages(self) -> list[list[Fraction]]:
        """Row-normalized percentages; empty rows stay all-zero."""
        result = []
        for row, total in zip(self.counts, self.row_totals):
            if total == 0:
                result.append([Fraction(0)] * len(row))
            else:
                result.append([Fraction(100 * c, total) for c in row])
        return result

    def to_json_dict(self) -> dict:
        return {
            "adverb_classes": list(self.adverb_classes),
            "verb_types": list(self.verb_types),
            "counts": self.counts,
            "percentages": [[float(p) for p in row] for row in self.percentages],
            "row_totals": self.row_totals,
            "skipped": self.skipped,
        }

    def render_text(self) -> str:
        """Aligned table with one-decimal percentages, empty rows marked."""
        header = [""] + list(self.verb_types) + ["pairs"]
        rows = [header]
        totals = self.row_totals
        for r, label in enumerate(self.adverb_classes):
            if totals[r] == 0:
                cells = ["-"] * len(self.verb_types)
            else:
                cells = [round_half_up_1dp(p) + "%" for p in self.percentages[r]]
            rows.append([label] + cells + [str(totals[r])])
        widths = [max(len(row[c]) for row in rows) for c in range(len(header))]
        lines = ["  ".join(cell.rjust(widths[c]) for c, cell in enumerate(row))
                 for row in rows]
        lines.append(f"skipped pairs (unannotated words): {self.skipped}")
        return "\n".join(lines)


def distribution_matrix(pairs: Iterable[BigramPair],
                        lookup: SenseLookup,
                        order: str | None = None) -> DistributionMatrix:
    """Count pairs by (adverb sense-class, verb sense-type).

    Pairs whose adverb or verb has no resolved sense are skipped and
    tallied.  ``order`` restricts to AdverbVerb or VerbAdverb pairs;
    the default pools both surface orders.
    """
    if len(lookup) == 0:
        raise EmptyLexicon("sense lexicon has no resolved verbs or adverbs")
    matrix = DistributionMatrix()
    class_index = {c: i for i, c in enumerate(matrix.adverb_classes)}
    type_index = {t: i for i, t in enumerate(matrix.verb_types)}
    for pair in pairs:
        if order is not None and pair.order != order:
            continue
        adv_tag = lookup.adverb_tag.get(pair.adverb_surface)
        verb_tag = lookup.verb_tag.get(pair.verb_surface)
        if adv_tag is None or verb_tag is None:
            matrix.skipped += 1
            continue
        matrix.counts[class_index[adv_tag]][type_index[verb_tag]] += 1
    return matrix
