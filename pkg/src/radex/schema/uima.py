"""UIMA 2.x type-system descriptor export.

The information model is published as three span types under the
``org.radex.types`` namespace — Fact, Anchor and Modifier — whose id
features range over string subtypes enumerating the schema's ids as
allowed values. The Fact type additionally carries references to its
anchor and modifiers so a serialized CAS stays unambiguous when fact
spans overlap. Output is byte-deterministic for a given schema.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from radex.schema.model import FactSchema

NAMESPACE = "org.radex.types"
RESOURCE_SPECIFIER_NS = "http://uima.apache.org/resourceSpecifier"

TYPE_FACT = f"{NAMESPACE}.Fact"
TYPE_ANCHOR = f"{NAMESPACE}.Anchor"
TYPE_MODIFIER = f"{NAMESPACE}.Modifier"
TYPE_CAS_METADATA = f"{NAMESPACE}.CasMetadata"
TYPE_FACT_ID = f"{NAMESPACE}.FactId"
TYPE_ANCHOR_ID = f"{NAMESPACE}.AnchorId"
TYPE_MODIFIER_ID = f"{NAMESPACE}.ModifierId"


def _text_child(parent: ET.Element, tag: str, text: str = "") -> ET.Element:
    el = ET.SubElement(parent, tag)
    if text:
        el.text = text
    return el


def _string_subtype(types: ET.Element, name: str, description: str, allowed: list[tuple[str, str]]) -> None:
    td = ET.SubElement(types, "typeDescription")
    _text_child(td, "name", name)
    _text_child(td, "description", description)
    _text_child(td, "supertypeName", "uima.cas.String")
    allowed_el = ET.SubElement(td, "allowedValues")
    for value, display in allowed:
        v = ET.SubElement(allowed_el, "value")
        _text_child(v, "string", value)
        _text_child(v, "description", display)


def _feature(features: ET.Element, name: str, range_type: str, element_type: str | None = None) -> None:
    fd = ET.SubElement(features, "featureDescription")
    _text_child(fd, "name", name)
    _text_child(fd, "description")
    _text_child(fd, "rangeTypeName", range_type)
    if element_type is not None:
        _text_child(fd, "elementType", element_type)
        _text_child(fd, "multipleReferencesAllowed", "false")


def _annotation_type(types: ET.Element, name: str, description: str) -> ET.Element:
    td = ET.SubElement(types, "typeDescription")
    _text_child(td, "name", name)
    _text_child(td, "description", description)
    _text_child(td, "supertypeName", "uima.tcas.Annotation")
    return ET.SubElement(td, "features")


def export_uima_type_system(schema: FactSchema) -> bytes:
    """Render the type-system descriptor XML for ``schema``."""
    root = ET.Element("typeSystemDescription", {"xmlns": RESOURCE_SPECIFIER_NS})
    _text_child(root, "name", NAMESPACE)
    _text_child(
        root,
        "description",
        f"Span types generated from fact schema {schema.schema_id} {schema.version}.",
    )
    _text_child(root, "version", schema.version)
    types = ET.SubElement(root, "types")

    _string_subtype(
        types,
        TYPE_FACT_ID,
        "Allowed fact identifiers.",
        [(f.id, f.label) for f in schema.facts],
    )
    _string_subtype(
        types,
        TYPE_ANCHOR_ID,
        "Allowed anchor identifiers.",
        [(f.anchor.id, f.anchor.label) for f in schema.facts],
    )
    _string_subtype(
        types,
        TYPE_MODIFIER_ID,
        "Allowed modifier identifiers.",
        [(m.id, m.label) for m in schema.modifiers],
    )

    fact_features = _annotation_type(
        types, TYPE_FACT, "A clinical assertion manifested as one contiguous text span."
    )
    _feature(fact_features, "factId", TYPE_FACT_ID)
    _feature(fact_features, "anchor", TYPE_ANCHOR)
    _feature(fact_features, "modifiers", "uima.cas.FSArray", element_type=TYPE_MODIFIER)

    anchor_features = _annotation_type(
        types, TYPE_ANCHOR, "The central word or phrase within a fact."
    )
    _feature(anchor_features, "anchorId", TYPE_ANCHOR_ID)

    modifier_features = _annotation_type(
        types, TYPE_MODIFIER, "An optional span providing additional information about a fact."
    )
    _feature(modifier_features, "modifierId", TYPE_MODIFIER_ID)

    metadata_features = _annotation_type(
        types, TYPE_CAS_METADATA, "Document metadata: id, language and schema reference."
    )
    _feature(metadata_features, "docId", "uima.cas.String")
    _feature(metadata_features, "language", "uima.cas.String")
    _feature(metadata_features, "schemaId", "uima.cas.String")
    _feature(metadata_features, "schemaVersion", "uima.cas.String")

    ET.indent(root, space="  ")
    return ET.tostring(root, encoding="UTF-8", xml_declaration=True)
