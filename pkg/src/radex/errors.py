"""Exception hierarchy shared across the toolkit.

Every error raised by library code derives from :class:`RadexError` so the
CLI and server can map failures to exit codes / HTTP statuses uniformly.
"""

from __future__ import annotations


class RadexError(Exception):
    """Base class for all toolkit errors."""


# --- fact schema -----------------------------------------------------------

class MalformedInput(RadexError):
    """Input is not parseable at all (bad JSON, missing or mistyped fields)."""


class SchemaInvariantViolation(RadexError):
    """A fact schema or template violates one or more model invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        detail = "; ".join(f"{v.code} at {v.path}" for v in self.violations)
        super().__init__(f"invariants violated: {detail}")


class UnknownFactId(RadexError):
    """A referenced fact id does not exist in the schema."""


class EmptySelection(RadexError):
    """A template was requested with no facts selected."""


# --- CAS / XMI -------------------------------------------------------------

class MalformedXmi(RadexError):
    """XMI input cannot be parsed or is inconsistent with the type system."""


class UnknownType(RadexError):
    """The XMI contains a feature-structure type outside the expected set."""


class OffsetOutOfBounds(RadexError):
    """A span offset lies outside the document text (or splits a surrogate pair)."""


class UnmappedType(RadexError):
    """A conversion mapping is incomplete or maps to an unknown label."""


class OrphanEntity(RadexError):
    """Containment violations found while converting external annotations.

    ``spans`` holds the offending entries as ``(layer, label, begin, end, reason)``.
    """

    def __init__(self, message, spans):
        self.spans = list(spans)
        super().__init__(message)


# --- corpus ----------------------------------------------------------------

class SampleTooLarge(RadexError):
    """Requested sample size exceeds the corpus size."""


class AuthenticationFailure(RadexError):
    """Sealed container failed authentication (wrong key or tampered bytes)."""


class MalformedContainer(RadexError):
    """Sealed container bytes do not follow the container layout."""


# --- agreement -------------------------------------------------------------

class TextMismatch(RadexError):
    """Two annotators hold different texts for the same document id."""


class NoSharedDocuments(RadexError):
    """Annotation sets have no document id in common."""


# --- extraction ------------------------------------------------------------

class Unreachable(RadexError):
    """A remote inference endpoint could not be reached."""


class ProtocolError(RadexError):
    """A remote inference endpoint answered outside the wire protocol."""


class InvalidSpans(RadexError):
    """A remote extractor returned spans violating the information model.

    ``entries`` lists the offending wire objects together with a reason.
    """

    def __init__(self, message, entries=()):
        self.entries = list(entries)
        super().__init__(message)


# --- filling / server ------------------------------------------------------

class SchemaMismatch(RadexError):
    """Schema reference of one artifact does not match the other."""


class UnknownLinkId(RadexError):
    """A questionnaire linkId does not follow the template linkId scheme."""
