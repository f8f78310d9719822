"""Conversion of annotation-tool XMI exports into RadEx CAS documents.

Tools export three flat span layers (fact, anchor, modifier). A mapping
file names the external type and label feature for each layer and states
the offset encoding of the export. Conversion re-encodes offsets to code
points, resolves labels against the schema, and attaches each anchor and
modifier to the smallest enclosing fact span.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import xml.etree.ElementTree as ET

from radex.cas.model import (
    FactAnnotation,
    ModifierSpan,
    RadExCasDocument,
    SchemaRef,
    SpanOffset,
)
from radex.cas.offsets import span_to_codepoint
from radex.errors import MalformedInput, MalformedXmi, OrphanEntity, UnmappedType
from radex.schema import FactSchema

CAS_NS = "http:///uima/cas.ecore"

LAYER_FACT = "fact"
LAYER_ANCHOR = "anchor"
LAYER_MODIFIER = "modifier"
_LAYERS = (LAYER_FACT, LAYER_ANCHOR, LAYER_MODIFIER)

ENCODING_UTF16 = "utf16"
ENCODING_CODEPOINT = "codepoint"


@dataclass(frozen=True)
class ExternalLayer:
    """One external annotation type and the feature holding its label."""

    type_name: str
    feature: str


@dataclass(frozen=True)
class ExternalCasMapping:
    offset_encoding: str
    fact: ExternalLayer
    anchor: ExternalLayer
    modifier: ExternalLayer

    def layer(self, name: str) -> ExternalLayer:
        return {
            LAYER_FACT: self.fact,
            LAYER_ANCHOR: self.anchor,
            LAYER_MODIFIER: self.modifier,
        }[name]


#: Stand-in type names for Inception span-layer exports; adjust per project.
DEFAULT_INCEPTION_MAPPING = ExternalCasMapping(
    offset_encoding=ENCODING_UTF16,
    fact=ExternalLayer("webanno.custom.Fact", "value"),
    anchor=ExternalLayer("webanno.custom.Anchor", "value"),
    modifier=ExternalLayer("webanno.custom.Modifier", "value"),
)


def parse_external_mapping(doc: object) -> ExternalCasMapping:
    """Build a mapping from its JSON form, rejecting incomplete ones."""
    if not isinstance(doc, dict):
        raise MalformedInput("mapping must be a JSON object")
    encoding = doc.get("offset_encoding")
    if encoding not in (ENCODING_UTF16, ENCODING_CODEPOINT):
        raise MalformedInput(
            "offset_encoding must be 'utf16' or 'codepoint', "
            f"got {encoding!r}"
        )
    layers = doc.get("layers")
    if not isinstance(layers, dict) or set(layers) != set(_LAYERS):
        raise MalformedInput("layers must map exactly fact, anchor and modifier")
    parsed: dict[str, ExternalLayer] = {}
    for name in _LAYERS:
        entry = layers[name]
        if not isinstance(entry, dict):
            raise MalformedInput(f"layers.{name} must be an object")
        type_name = entry.get("type")
        feature = entry.get("feature")
        if not isinstance(type_name, str) or not type_name:
            raise MalformedInput(f"layers.{name}.type must be a non-empty string")
        if not isinstance(feature, str) or not feature:
            raise MalformedInput(f"layers.{name}.feature must be a non-empty string")
        parsed[name] = ExternalLayer(type_name, feature)
    return ExternalCasMapping(
        offset_encoding=encoding,
        fact=parsed[LAYER_FACT],
        anchor=parsed[LAYER_ANCHOR],
        modifier=parsed[LAYER_MODIFIER],
    )


def load_external_mapping(data: bytes | str) -> ExternalCasMapping:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"mapping is not valid JSON: {exc}") from exc
    return parse_external_mapping(doc)


def _xmi_tag(type_name: str) -> str:
    """UIMA type name to XMI element tag, e.g. a.b.C -> {http:///a/b.ecore}C."""
    package, _, local = type_name.rpartition(".")
    if not package:
        return type_name
    return "{http:///" + package.replace(".", "/") + ".ecore}" + local


def _find_sofa_text(root: ET.Element) -> str:
    sofas = [el for el in root if el.tag == f"{{{CAS_NS}}}Sofa"]
    if not sofas:
        raise MalformedXmi("no cas:Sofa element")
    for el in sofas:
        if el.get("sofaID") == "_InitialView":
            return el.get("sofaString", "")
    return sofas[0].get("sofaString", "")


def _collect_spans(
    root: ET.Element,
    text: str,
    layer: ExternalLayer,
    encoding: str,
) -> list[tuple[str, SpanOffset]]:
    tag = _xmi_tag(layer.type_name)
    out = []
    for el in root:
        if el.tag != tag:
            continue
        label = el.get(layer.feature)
        if label is None:
            raise MalformedXmi(
                f"{layer.type_name} annotation has no feature {layer.feature!r}"
            )
        try:
            begin = int(el.get("begin", ""))
            end = int(el.get("end", ""))
        except ValueError as exc:
            raise MalformedXmi(f"{layer.type_name}: non-integer offsets") from exc
        if encoding == ENCODING_UTF16:
            begin, end = span_to_codepoint(text, begin, end)
        if not (0 <= begin < end <= len(text)):
            raise MalformedXmi(
                f"{layer.type_name}: span ({begin}, {end}) outside text bounds"
            )
        out.append((label, SpanOffset(begin, end)))
    return out


def _enclosing_fact(
    span: SpanOffset, facts: list[tuple[str, SpanOffset]]
) -> int | None:
    """Index of the smallest fact span containing `span`, ties by order."""
    best = None
    best_len = None
    for i, (_, fact_span) in enumerate(facts):
        if fact_span.contains(span) and (best is None or fact_span.length < best_len):
            best = i
            best_len = fact_span.length
    return best


def convert_external_cas(
    data: bytes | str,
    mapping: ExternalCasMapping,
    schema: FactSchema,
    doc_id: str = "",
) -> RadExCasDocument:
    """Convert a tool XMI export into a RadEx CAS document.

    Raises UnmappedType when a label does not resolve against the schema
    and OrphanEntity when attachment fails; the OrphanEntity collects
    every offending span rather than stopping at the first.
    """
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedXmi(f"not well-formed XMI: {exc}") from exc
    text = _find_sofa_text(root)
    enc = mapping.offset_encoding

    fact_spans = _collect_spans(root, text, mapping.fact, enc)
    anchor_spans = _collect_spans(root, text, mapping.anchor, enc)
    modifier_spans = _collect_spans(root, text, mapping.modifier, enc)

    fact_ids = set(schema.fact_ids)
    anchor_ids = set(schema.anchor_ids)
    modifier_ids = set(schema.modifier_ids)
    for label, span in fact_spans:
        if label not in fact_ids:
            raise UnmappedType(f"unknown fact id {label!r} at ({span.begin}, {span.end})")
    for label, span in anchor_spans:
        if label not in anchor_ids:
            raise UnmappedType(
                f"unknown anchor id {label!r} at ({span.begin}, {span.end})"
            )
    for label, span in modifier_spans:
        if label not in modifier_ids:
            raise UnmappedType(
                f"unknown modifier id {label!r} at ({span.begin}, {span.end})"
            )

    orphans: list[tuple[str, str, int, int, str]] = []
    anchors_by_fact: dict[int, list[SpanOffset]] = {}
    for label, span in anchor_spans:
        idx = _enclosing_fact(span, fact_spans)
        if idx is None:
            orphans.append(
                (LAYER_ANCHOR, label, span.begin, span.end, "no enclosing fact")
            )
        else:
            anchors_by_fact.setdefault(idx, []).append(span)
    modifiers_by_fact: dict[int, list[ModifierSpan]] = {}
    for label, span in modifier_spans:
        idx = _enclosing_fact(span, fact_spans)
        if idx is None:
            orphans.append(
                (LAYER_MODIFIER, label, span.begin, span.end, "no enclosing fact")
            )
        else:
            modifiers_by_fact.setdefault(idx, []).append(ModifierSpan(label, span))

    for i, (label, span) in enumerate(fact_spans):
        count = len(anchors_by_fact.get(i, []))
        if count != 1:
            orphans.append(
                (
                    LAYER_FACT,
                    label,
                    span.begin,
                    span.end,
                    f"fact contains {count} anchors, expected exactly 1",
                )
            )
    if orphans:
        raise OrphanEntity(
            f"{len(orphans)} annotation(s) violate fact/anchor containment",
            spans=orphans,
        )

    annotations = tuple(
        FactAnnotation(
            fact_id=label,
            span=span,
            anchor_span=anchors_by_fact[i][0],
            modifiers=tuple(modifiers_by_fact.get(i, [])),
        )
        for i, (label, span) in enumerate(fact_spans)
    )
    return RadExCasDocument(
        doc_id=doc_id,
        text=text,
        language=schema.language,
        schema=SchemaRef(schema.schema_id, schema.version),
        annotations=annotations,
    )
