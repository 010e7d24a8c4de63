"""Exception types shared across the package."""

from __future__ import annotations


class CapacityError(RuntimeError):
    """Requested sample array would exceed the element budget."""


class TruncationError(ValueError):
    """A functional or coordinate index lies outside the truncation."""


class ConfigError(ValueError):
    """Malformed configuration document.

    Carries the offending key and/or one-based line number so callers can
    point at the exact spot in the document.
    """

    def __init__(self, message: str, *, key: str | None = None, line: int | None = None):
        self.key = key
        self.line = line
        parts = [message]
        if key is not None:
            parts.append(f"(key {key!r})")
        if line is not None:
            parts.append(f"(line {line})")
        super().__init__(" ".join(parts))
