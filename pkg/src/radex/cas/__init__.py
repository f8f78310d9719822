"""Annotation artifacts: CAS document model, XMI round trip, tool adapters."""

from radex.cas.config import (
    AnnotationConfiguration,
    LayerSpec,
    config_to_json_bytes,
    config_to_json_dict,
    generate_annotation_config,
    to_inception_layers,
)
from radex.cas.convert import (
    DEFAULT_INCEPTION_MAPPING,
    ExternalCasMapping,
    ExternalLayer,
    convert_external_cas,
    load_external_mapping,
    parse_external_mapping,
)
from radex.cas.model import (
    FactAnnotation,
    ModifierSpan,
    RadExCasDocument,
    SchemaRef,
    SpanOffset,
    validate_document,
)
from radex.cas.offsets import (
    codepoint_to_utf16,
    span_to_codepoint,
    span_to_utf16,
    utf16_to_codepoint,
)
from radex.cas.xmi import parse_radex_cas, serialize_radex_cas

__all__ = [
    "AnnotationConfiguration",
    "DEFAULT_INCEPTION_MAPPING",
    "ExternalCasMapping",
    "ExternalLayer",
    "FactAnnotation",
    "LayerSpec",
    "ModifierSpan",
    "RadExCasDocument",
    "SchemaRef",
    "SpanOffset",
    "codepoint_to_utf16",
    "config_to_json_bytes",
    "config_to_json_dict",
    "convert_external_cas",
    "generate_annotation_config",
    "load_external_mapping",
    "parse_external_mapping",
    "parse_radex_cas",
    "serialize_radex_cas",
    "span_to_codepoint",
    "span_to_utf16",
    "to_inception_layers",
    "utf16_to_codepoint",
    "validate_document",
]
