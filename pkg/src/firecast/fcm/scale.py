"""Linguistic scales mapping verbal influence terms to weights in [-1, 1]."""

from __future__ import annotations

import math
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field

from firecast.common.errors import MapValidationError, UnknownTermError

NEGATIVE_PREFIX = "negative:"

DEFAULT_TERMS: dict[str, float] = {
    "extremely weak": 0.1,
    "weak": 0.3,
    "moderately": 0.5,
    "stronger than usual": 0.7,
    "strong": 0.9,
}


@dataclass(frozen=True)
class LinguisticScale:
    """Ordered ``term -> value`` mapping.

    A term written as ``"negative:<term>"`` resolves to the negated value of
    ``<term>`` unless the scale defines the prefixed term itself.
    """

    terms: Mapping[str, float] = field(default_factory=lambda: dict(DEFAULT_TERMS))

    def __post_init__(self):
        cleaned: dict[str, float] = {}
        for term, value in self.terms.items():
            if not isinstance(term, str) or not term.strip():
                raise MapValidationError(f"linguistic term must be a non-empty string, got {term!r}")
            value = float(value)
            if not (math.isfinite(value) and -1.0 <= value <= 1.0):
                raise MapValidationError(f"linguistic term '{term}' has value {value} outside [-1, 1]", value=value)
            cleaned[term] = value
        object.__setattr__(self, "terms", cleaned)

    def __iter__(self) -> Iterator[str]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def merged(self, overrides: Mapping[str, float]) -> LinguisticScale:
        """New scale with ``overrides`` added to (or replacing) these terms."""
        return LinguisticScale({**self.terms, **overrides})

    def to_dict(self) -> dict[str, float]:
        return dict(self.terms)


DEFAULT_SCALE = LinguisticScale()


def resolve_linguistic(scale: LinguisticScale, term: str) -> float:
    """Exact lookup of ``term``; no fuzzy matching.

    Raises:
        ValueError: If the scale is empty.
        UnknownTermError: If the term (or its un-negated form) is not defined.
    """
    if len(scale) == 0:
        raise ValueError("linguistic scale is empty")
    if term in scale.terms:
        return scale.terms[term]
    if term.startswith(NEGATIVE_PREFIX):
        base = term[len(NEGATIVE_PREFIX) :].strip()
        if base in scale.terms:
            return -scale.terms[base]
    raise UnknownTermError(term, list(scale.terms))
