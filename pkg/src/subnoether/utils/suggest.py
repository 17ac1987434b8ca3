"""Fuzzy name suggestions for error messages."""

from collections.abc import Iterable

from rapidfuzz import fuzz, process

SUGGESTION_CUTOFF = 60.0


def suggest(name: str, choices: Iterable[str]) -> str | None:
    """Return the closest known name, or None when nothing is close enough."""
    options = sorted(set(choices))
    if not options:
        return None
    match = process.extractOne(name, options, scorer=fuzz.ratio, score_cutoff=SUGGESTION_CUTOFF)
    return match[0] if match else None


__all__ = ["suggest"]
