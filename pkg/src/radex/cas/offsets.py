"""Translation between code-point and UTF-16 span offsets.

Internally every span is indexed in Unicode code points, which is neutral
across implementation languages. UIMA's CAS/XMI serialization counts
UTF-16 code units instead, so characters outside the Basic Multilingual
Plane (emoji, some mathematical letters) occupy two units there. For a
fixed text the mapping between the two conventions is a bijection on
valid boundaries; landing inside a surrogate pair is an error, never
silently rounded.
"""

from __future__ import annotations

from radex.errors import OffsetOutOfBounds


def codepoint_to_utf16(text: str, index: int) -> int:
    """Number of UTF-16 units before code point ``index`` of ``text``."""
    if index < 0 or index > len(text):
        raise OffsetOutOfBounds(
            f"code point index {index} outside text of length {len(text)}"
        )
    return index + sum(1 for c in text[:index] if ord(c) > 0xFFFF)


def utf16_to_codepoint(text: str, units: int) -> int:
    """Code point index corresponding to ``units`` UTF-16 units into ``text``."""
    if units < 0:
        raise OffsetOutOfBounds(f"UTF-16 offset {units} is negative")
    seen = 0
    for i, c in enumerate(text):
        if seen == units:
            return i
        seen += 2 if ord(c) > 0xFFFF else 1
        if seen > units:
            raise OffsetOutOfBounds(
                f"UTF-16 offset {units} splits a surrogate pair at code point {i}"
            )
    if seen == units:
        return len(text)
    raise OffsetOutOfBounds(
        f"UTF-16 offset {units} outside text of UTF-16 length {seen}"
    )


def span_to_utf16(text: str, begin: int, end: int) -> tuple[int, int]:
    return codepoint_to_utf16(text, begin), codepoint_to_utf16(text, end)


def span_to_codepoint(text: str, begin: int, end: int) -> tuple[int, int]:
    return utf16_to_codepoint(text, begin), utf16_to_codepoint(text, end)
