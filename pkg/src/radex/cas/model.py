"""Span annotation model for RadEx CAS documents.

Offsets are Unicode code-point indices into the document text, begin
inclusive, end exclusive. Fact spans of different annotations may overlap;
within one annotation the anchor and all modifiers must lie inside the
fact span.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from radex.schema.model import FactSchema


@dataclass(frozen=True)
class SpanOffset:
    begin: int
    end: int

    def length(self) -> int:
        return self.end - self.begin

    def contains(self, other: "SpanOffset") -> bool:
        return self.begin <= other.begin and other.end <= self.end

    def as_tuple(self) -> tuple[int, int]:
        return (self.begin, self.end)


@dataclass(frozen=True)
class ModifierSpan:
    modifier_id: str
    span: SpanOffset


@dataclass(frozen=True)
class FactAnnotation:
    fact_id: str
    span: SpanOffset
    anchor_span: SpanOffset
    modifiers: tuple[ModifierSpan, ...] = ()


@dataclass(frozen=True)
class SchemaRef:
    schema_id: str
    version: str


@dataclass(frozen=True)
class RadExCasDocument:
    doc_id: str
    text: str
    language: str
    schema: SchemaRef
    annotations: tuple[FactAnnotation, ...] = ()


def _check_span(span: SpanOffset, length: int, what: str, out: list[str]) -> None:
    if not (0 <= span.begin < span.end <= length):
        out.append(f"{what} span ({span.begin}, {span.end}) outside text of length {length}")


def validate_document(doc: RadExCasDocument, schema: Optional[FactSchema] = None) -> list[str]:
    """Return human-readable invariant violations; empty list means valid.

    With a ``schema`` the fact/anchor/modifier ids are also resolved against
    it (the anchor id is implied by the fact, so only fact and modifier ids
    need lookup).
    """
    out: list[str] = []
    length = len(doc.text)
    for i, ann in enumerate(doc.annotations):
        what = f"annotations[{i}]"
        _check_span(ann.span, length, f"{what} fact", out)
        _check_span(ann.anchor_span, length, f"{what} anchor", out)
        if not ann.span.contains(ann.anchor_span):
            out.append(f"{what}: anchor span not contained in fact span")
        for j, mod in enumerate(ann.modifiers):
            _check_span(mod.span, length, f"{what}.modifiers[{j}]", out)
            if not ann.span.contains(mod.span):
                out.append(f"{what}.modifiers[{j}]: modifier span not contained in fact span")
        if schema is not None:
            fact = schema.fact_by_id(ann.fact_id)
            if fact is None:
                out.append(f"{what}: unknown fact id {ann.fact_id!r}")
            for j, mod in enumerate(ann.modifiers):
                if schema.modifier_by_id(mod.modifier_id) is None:
                    out.append(f"{what}.modifiers[{j}]: unknown modifier id {mod.modifier_id!r}")
    if schema is not None and (doc.schema.schema_id, doc.schema.version) != (
        schema.schema_id,
        schema.version,
    ):
        out.append(
            f"document references schema {doc.schema.schema_id} {doc.schema.version}, "
            f"expected {schema.schema_id} {schema.version}"
        )
    return out
