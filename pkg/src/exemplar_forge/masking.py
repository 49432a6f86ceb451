"""Template masking: POS-rule masking plus Bernoulli mask-out at probability p.

First-order masking removes content words (nouns, proper nouns, adjectives,
adverbs, verbs, and non-modal auxiliaries) from a template, keeping wh-words,
question "be", and all function words/punctuation. Second-order masking then
hides each surviving token independently with probability ``p``; higher p
leaves the downstream generator less template evidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .corpus import TaggedSentence, Token
from .seeding import check_seed, unit_uniform

MASKABLE_UPOS = frozenset({"NOUN", "PROPN", "ADJ", "ADV", "VERB", "AUX"})
MODAL_LEMMAS = frozenset(
    {"can", "could", "may", "might", "must", "shall", "should", "will", "would"}
)
WH_LEMMAS = frozenset(
    {"what", "which", "who", "whom", "whose", "when", "where", "why", "how"}
)

POS_RULE = 1       # masked by the tag rule
RANDOM_DROP = 2    # masked by the Bernoulli pass

DEFAULT_MASK_TOKEN = "<|endoftext|>"


@dataclass(frozen=True)
class Mask:
    stage: int  # POS_RULE or RANDOM_DROP

    def __post_init__(self):
        if self.stage not in (POS_RULE, RANDOM_DROP):
            raise ValueError(f"unknown mask stage {self.stage}")


Slot = Union[Token, Mask]


@dataclass(frozen=True)
class MaskedTemplate:
    origin_id: str
    slots: tuple[Slot, ...]

    def __post_init__(self):
        if not self.slots:
            raise ValueError("template must have at least one slot")

    @property
    def visible_count(self) -> int:
        return sum(1 for slot in self.slots if isinstance(slot, Token))

    def surfaces(self, mask_token: str = DEFAULT_MASK_TOKEN) -> list[str]:
        return [slot.surface if isinstance(slot, Token) else mask_token for slot in self.slots]

    def __len__(self) -> int:
        return len(self.slots)


@dataclass(frozen=True)
class MaskConfig:
    p: float
    seed: int
    mask_token: str = DEFAULT_MASK_TOKEN

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"masking probability must be in [0, 1], got {self.p}")
        check_seed(self.seed)


def is_maskable(token: Token, in_question: bool) -> bool:
    """Tag rule for a single token; see first_order_mask."""
    if token.upos not in MASKABLE_UPOS:
        return False
    if token.lemma in WH_LEMMAS:
        return False
    if token.upos == "AUX" and token.lemma in MODAL_LEMMAS:
        return False
    if token.lemma == "be" and in_question:
        return False
    return True


def first_order_mask(sentence: TaggedSentence) -> MaskedTemplate:
    """Mask every content token of the sentence; deterministic."""
    in_question = sentence.is_question
    slots: list[Slot] = [
        Mask(POS_RULE) if is_maskable(token, in_question) else token
        for token in sentence.tokens
    ]
    return MaskedTemplate(origin_id=sentence.id, slots=tuple(slots))


def second_order_mask(template: MaskedTemplate, cfg: MaskConfig) -> MaskedTemplate:
    """Hide each visible slot independently with probability cfg.p.

    The draw for slot i is keyed by (seed, origin_id, i), so masking a corpus
    is order-independent, and a higher p always masks a superset of the slots
    masked at a lower p with the same seed.
    """
    slots: list[Slot] = []
    for index, slot in enumerate(template.slots):
        if isinstance(slot, Token) and unit_uniform(cfg.seed, "slot", template.origin_id, index) < cfg.p:
            slots.append(Mask(RANDOM_DROP))
        else:
            slots.append(slot)
    return MaskedTemplate(origin_id=template.origin_id, slots=tuple(slots))


def mask_count_probability(k: int, l: int, p: float) -> float:
    """P(exactly k of l independent visible tokens are hidden at probability p)."""
    if l < 0 or k < 0:
        raise ValueError("k and l must be non-negative")
    if k > l:
        raise ValueError(f"k={k} exceeds l={l}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    if p == 0.0:
        return 1.0 if k == 0 else 0.0
    if p == 1.0:
        return 1.0 if k == l else 0.0
    log_choose = math.lgamma(l + 1) - math.lgamma(k + 1) - math.lgamma(l - k + 1)
    return math.exp(log_choose + k * math.log(p) + (l - k) * math.log1p(-p))


def template_from_surfaces(
    surfaces: list[str], origin_id: str, mask_token: str = DEFAULT_MASK_TOKEN
) -> MaskedTemplate:
    """Rebuild a template from rendered slot strings (as written by the CLI).

    Tag and lemma information is not recoverable from the rendered form; kept
    slots get the catch-all tag, which is never maskable, so a rebuilt template
    behaves identically under second-order masking.
    """
    slots: list[Slot] = [
        Mask(POS_RULE) if s == mask_token else Token(s, "X", s.lower()) for s in surfaces
    ]
    return MaskedTemplate(origin_id=origin_id, slots=tuple(slots))
