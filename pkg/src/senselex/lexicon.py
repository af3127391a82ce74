"""Lexicon domain types, annotation validation, and conflict resolution.

Adjudication policy: annotators carry a proficiency score in [0, 10]; when
annotators disagree, the tags of the strictly highest-scoring annotator win.
An equally-scored disagreement at the top escalates to ``needs_review``
instead of picking arbitrarily, so resolution is deterministic and
order-invariant.  Annotations that abstain (Uncertain anywhere in the tag
pair) never win a resolution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    EmptyInput,
    MissingSecondary,
    UnexpectedSecondary,
    UnknownAnnotator,
    WrongTagSet,
)
from .inventory import KIND_VALUES, POS_VALUES, UNCERTAIN, SenseInventory

STATUS_VALUES = ("pending_review", "active", "flagged_uncertain", "removed")

RESOLUTION_UNANIMOUS = "unanimous"
RESOLUTION_SCORE_WIN = "score_win"
RESOLUTION_NEEDS_REVIEW = "needs_review"

DEFAULT_UNCERTAINTY_THRESHOLD = 0.5
DEFAULT_UNCERTAINTY_MIN_ANNOTATIONS = 3


@dataclass(frozen=True)
class Annotation:
    annotator_id: str
    kind: str                      # sense | polarity
    primary_tag: str
    secondary_tag: str | None = None
    timestamp: float = 0.0

    def __post_init__(self):
        if self.kind not in KIND_VALUES:
            raise ValueError(f"unknown annotation kind: {self.kind!r}")

    @property
    def abstains(self) -> bool:
        """True when this annotation cannot win a resolution."""
        return self.primary_tag == UNCERTAIN or self.secondary_tag == UNCERTAIN


@dataclass
class Annotator:
    annotator_id: str
    name: str
    email: str
    profession: str = ""
    education: str = ""
    score: int = 0
    registered_at: float = 0.0

    def __post_init__(self):
        if not 0 <= self.score <= 10:
            raise ValueError(f"score must be in [0, 10], got {self.score}")


@dataclass(frozen=True)
class ResolvedTags:
    primary_tag: str | None
    secondary_tag: str | None
    resolution: str

    def __post_init__(self):
        if (self.resolution == RESOLUTION_NEEDS_REVIEW) != (self.primary_tag is None):
            raise ValueError("needs_review iff primary_tag absent")


@dataclass
class LexiconEntry:
    word_id: str
    surface: str
    pos: str                       # verb | adverb | adjective
    gloss: str
    example: str = ""
    annotations: list[Annotation] = field(default_factory=list)
    resolved: dict[str, ResolvedTags] = field(default_factory=dict)  # keyed by kind
    status: str = "active"

    def __post_init__(self):
        if self.pos not in POS_VALUES:
            raise ValueError(f"unknown pos: {self.pos!r}")
        if self.status not in STATUS_VALUES:
            raise ValueError(f"unknown status: {self.status!r}")
        if self.status == "active" and (not self.surface or not self.gloss):
            raise ValueError("active entries need a non-empty surface and gloss")


def validate_annotation(a: Annotation, entry: LexiconEntry, inv: SenseInventory) -> None:
    """Check tag-set membership and secondary-tag arity for entry.pos.

    Raises WrongTagSet / MissingSecondary / UnexpectedSecondary; returns
    None when the annotation satisfies the invariants.  No state change.
    """
    if a.kind == "polarity":
        if a.primary_tag not in inv.polarity_labels:
            raise WrongTagSet(
                f"{a.primary_tag!r} is not a polarity label")
        if a.secondary_tag is not None:
            raise UnexpectedSecondary("polarity annotations take no secondary tag")
        return

    allowed = inv.sense_tags(entry.pos) + (UNCERTAIN,)
    if a.primary_tag not in allowed:
        raise WrongTagSet(
            f"{a.primary_tag!r} is not a sense tag for pos={entry.pos}")
    if entry.pos == "verb":
        if a.secondary_tag is None:
            raise MissingSecondary("verb sense annotations need a secondary tag")
        if a.secondary_tag not in allowed:
            raise WrongTagSet(
                f"{a.secondary_tag!r} is not a sense tag for pos=verb")
    elif a.secondary_tag is not None:
        raise UnexpectedSecondary(
            f"{entry.pos} sense annotations take no secondary tag")


def resolve(annotations: list[Annotation],
            annotators: dict[str, Annotator]) -> ResolvedTags:
    """Derive a single ResolvedTags from one word's annotations of one kind.

    Unanimity among non-abstaining annotations wins as ``unanimous``; a
    disagreement is settled by the highest annotator score (``score_win``);
    a top-score tie that still disagrees, or a set with only abstentions,
    yields ``needs_review`` with no tags.  The result does not depend on
    the order of the input list.
    """
    if not annotations:
        raise EmptyInput("no annotations to resolve")
    for a in annotations:
        if a.annotator_id not in annotators:
            raise UnknownAnnotator(f"no annotator {a.annotator_id!r}")

    candidates = [a for a in annotations if not a.abstains]
    if not candidates:
        return ResolvedTags(None, None, RESOLUTION_NEEDS_REVIEW)

    pairs = {(a.primary_tag, a.secondary_tag) for a in candidates}
    if len(pairs) == 1:
        primary, secondary = next(iter(pairs))
        return ResolvedTags(primary, secondary, RESOLUTION_UNANIMOUS)

    top_score = max(annotators[a.annotator_id].score for a in candidates)
    top_pairs = {(a.primary_tag, a.secondary_tag)
                 for a in candidates
                 if annotators[a.annotator_id].score == top_score}
    if len(top_pairs) == 1:
        primary, secondary = next(iter(top_pairs))
        return ResolvedTags(primary, secondary, RESOLUTION_SCORE_WIN)
    return ResolvedTags(None, None, RESOLUTION_NEEDS_REVIEW)


def uncertainty_flag(entry: LexiconEntry,
                     theta: float = DEFAULT_UNCERTAINTY_THRESHOLD,
                     n_min: int = DEFAULT_UNCERTAINTY_MIN_ANNOTATIONS) -> bool:
    """True when the entry is consistently tagged Uncertain.

    Requires at least ``n_min`` annotations, and the fraction whose primary
    tag is Uncertain to reach ``theta``.  Flagged entries re-enter the
    annotation queue and are ultimately reviewed for removal.
    """
    if not 0 < theta <= 1:
        raise ValueError("theta must be in (0, 1]")
    if n_min < 1:
        raise ValueError("n_min must be >= 1")
    total = len(entry.annotations)
    if total < n_min:
        return False
    uncertain = sum(1 for a in entry.annotations if a.primary_tag == UNCERTAIN)
    # Exact comparison: float theta * total can round past an exact ratio.
    return Fraction(uncertain, total) >= Fraction(theta)
