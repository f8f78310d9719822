"""XMI (UIMA 2.x) serialization of RadEx CAS documents.

The serialized subset is deliberately small: the initial-view sofa, one
metadata feature structure, and the Fact/Anchor/Modifier annotations.
Facts reference their anchor and modifiers by xmi:id, so documents with
overlapping fact spans round-trip without guessing containment. Offsets
are stored in UTF-16 code units as UIMA requires and converted back to
code points on parse.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from radex.cas.model import (
    FactAnnotation,
    ModifierSpan,
    RadExCasDocument,
    SchemaRef,
    SpanOffset,
    validate_document,
)
from radex.cas.offsets import span_to_codepoint, span_to_utf16
from radex.errors import MalformedXmi, OffsetOutOfBounds, UnknownType

XMI_NS = "http://www.omg.org/XMI"
CAS_NS = "http:///uima/cas.ecore"
RADEX_NS = "http:///org/radex/types.ecore"

_TAG_XMI = f"{{{XMI_NS}}}XMI"
_TAG_NULL = f"{{{CAS_NS}}}NULL"
_TAG_SOFA = f"{{{CAS_NS}}}Sofa"
_TAG_VIEW = f"{{{CAS_NS}}}View"
_TAG_FACT = f"{{{RADEX_NS}}}Fact"
_TAG_ANCHOR = f"{{{RADEX_NS}}}Anchor"
_TAG_MODIFIER = f"{{{RADEX_NS}}}Modifier"
_TAG_METADATA = f"{{{RADEX_NS}}}CasMetadata"
_ATTR_ID = f"{{{XMI_NS}}}id"


def _xml_char_ok(c: str) -> bool:
    o = ord(c)
    return (
        o in (0x9, 0xA, 0xD)
        or 0x20 <= o <= 0xD7FF
        or 0xE000 <= o <= 0xFFFD
        or 0x10000 <= o <= 0x10FFFF
    )


def serialize_radex_cas(doc: RadExCasDocument) -> bytes:
    """Serialize to XMI bytes; deterministic for equal documents."""
    problems = validate_document(doc)
    if problems:
        raise OffsetOutOfBounds("; ".join(problems))
    for c in doc.text:
        if not _xml_char_ok(c):
            raise MalformedXmi(
                f"text contains U+{ord(c):04X}, not representable in XML 1.0"
            )

    root = ET.Element(
        "xmi:XMI",
        {
            "xmlns:xmi": XMI_NS,
            "xmlns:cas": CAS_NS,
            "xmlns:radex": RADEX_NS,
            "xmi:version": "2.0",
        },
    )
    ET.SubElement(root, "cas:NULL", {"xmi:id": "0"})
    ET.SubElement(
        root,
        "cas:Sofa",
        {
            "xmi:id": "1",
            "sofaNum": "1",
            "sofaID": "_InitialView",
            "mimeType": "text/plain",
            "sofaString": doc.text,
        },
    )
    next_id = 2
    member_ids = [str(next_id)]
    ET.SubElement(
        root,
        "radex:CasMetadata",
        {
            "xmi:id": str(next_id),
            "sofa": "1",
            "begin": "0",
            "end": "0",
            "docId": doc.doc_id,
            "language": doc.language,
            "schemaId": doc.schema.schema_id,
            "schemaVersion": doc.schema.version,
        },
    )
    next_id += 1

    def span_attrs(span: SpanOffset) -> dict[str, str]:
        begin, end = span_to_utf16(doc.text, span.begin, span.end)
        return {"sofa": "1", "begin": str(begin), "end": str(end)}

    for ann in doc.annotations:
        anchor_id = str(next_id)
        next_id += 1
        ET.SubElement(
            root,
            "radex:Anchor",
            {"xmi:id": anchor_id, **span_attrs(ann.anchor_span)},
        )
        member_ids.append(anchor_id)
        modifier_ids = []
        for mod in ann.modifiers:
            mod_id = str(next_id)
            next_id += 1
            ET.SubElement(
                root,
                "radex:Modifier",
                {"xmi:id": mod_id, **span_attrs(mod.span), "modifierId": mod.modifier_id},
            )
            member_ids.append(mod_id)
            modifier_ids.append(mod_id)
        fact_id = str(next_id)
        next_id += 1
        fact_attrs = {
            "xmi:id": fact_id,
            **span_attrs(ann.span),
            "factId": ann.fact_id,
            "anchor": anchor_id,
        }
        if modifier_ids:
            fact_attrs["modifiers"] = " ".join(modifier_ids)
        ET.SubElement(root, "radex:Fact", fact_attrs)
        member_ids.append(fact_id)

    ET.SubElement(root, "cas:View", {"sofa": "1", "members": " ".join(member_ids)})
    ET.indent(root, space="  ")
    return ET.tostring(root, encoding="UTF-8", xml_declaration=True)


def _require(el: ET.Element, attr: str) -> str:
    value = el.get(attr)
    if value is None:
        raise MalformedXmi(f"{el.tag} is missing attribute {attr!r}")
    return value


def _parse_span(el: ET.Element, text: str) -> SpanOffset:
    try:
        begin_u = int(_require(el, "begin"))
        end_u = int(_require(el, "end"))
    except ValueError as exc:
        raise MalformedXmi(f"{el.tag}: non-integer offsets") from exc
    begin, end = span_to_codepoint(text, begin_u, end_u)
    if begin >= end:
        raise MalformedXmi(f"{el.tag}: empty or inverted span ({begin_u}, {end_u})")
    return SpanOffset(begin, end)


def parse_radex_cas(data: bytes | str) -> RadExCasDocument:
    """Parse XMI produced against the RadEx type system."""
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedXmi(f"not well-formed XMI: {exc}") from exc
    if root.tag != _TAG_XMI:
        raise MalformedXmi(f"root element is {root.tag}, expected xmi:XMI")

    sofa = None
    metadata = None
    anchors: dict[str, ET.Element] = {}
    modifiers: dict[str, ET.Element] = {}
    facts: list[ET.Element] = []
    for el in root:
        if el.tag in (_TAG_NULL, _TAG_VIEW):
            continue
        if el.tag == _TAG_SOFA:
            sofa = el
        elif el.tag == _TAG_METADATA:
            metadata = el
        elif el.tag == _TAG_ANCHOR:
            anchors[_require(el, _ATTR_ID)] = el
        elif el.tag == _TAG_MODIFIER:
            modifiers[_require(el, _ATTR_ID)] = el
        elif el.tag == _TAG_FACT:
            facts.append(el)
        else:
            raise UnknownType(f"unexpected feature structure {el.tag}")
    if sofa is None:
        raise MalformedXmi("no cas:Sofa element")
    text = sofa.get("sofaString", "")

    used_anchors: set[str] = set()
    used_modifiers: set[str] = set()
    annotations = []
    for fact_el in facts:
        anchor_ref = _require(fact_el, "anchor")
        anchor_el = anchors.get(anchor_ref)
        if anchor_el is None:
            raise MalformedXmi(f"fact references unknown anchor xmi:id {anchor_ref}")
        used_anchors.add(anchor_ref)
        span = _parse_span(fact_el, text)
        anchor_span = _parse_span(anchor_el, text)
        mods = []
        for ref in fact_el.get("modifiers", "").split():
            mod_el = modifiers.get(ref)
            if mod_el is None:
                raise MalformedXmi(f"fact references unknown modifier xmi:id {ref}")
            if ref in used_modifiers:
                raise MalformedXmi(f"modifier xmi:id {ref} attached to two facts")
            used_modifiers.add(ref)
            mods.append(
                ModifierSpan(
                    modifier_id=_require(mod_el, "modifierId"),
                    span=_parse_span(mod_el, text),
                )
            )
        ann = FactAnnotation(
            fact_id=_require(fact_el, "factId"),
            span=span,
            anchor_span=anchor_span,
            modifiers=tuple(mods),
        )
        if not ann.span.contains(ann.anchor_span):
            raise MalformedXmi("anchor span not contained in its fact span")
        for mod in ann.modifiers:
            if not ann.span.contains(mod.span):
                raise MalformedXmi("modifier span not contained in its fact span")
        annotations.append(ann)

    if used_anchors != set(anchors):
        raise MalformedXmi("anchor feature structures not attached to any fact")
    if used_modifiers != set(modifiers):
        raise MalformedXmi("modifier feature structures not attached to any fact")

    if metadata is not None:
        doc_id = metadata.get("docId", "")
        language = metadata.get("language", "")
        schema = SchemaRef(
            schema_id=metadata.get("schemaId", ""),
            version=metadata.get("schemaVersion", ""),
        )
    else:
        doc_id = ""
        language = ""
        schema = SchemaRef(schema_id="", version="")
    return RadExCasDocument(
        doc_id=doc_id,
        text=text,
        language=language,
        schema=schema,
        annotations=tuple(annotations),
    )
