"""Fact schemas, value standardizers, report templates, UIMA export."""

from radex.schema.model import (
    AnchorDef,
    CodedValue,
    FactDef,
    FactSchema,
    ModifierDef,
    ReportTemplate,
    TemplateEntry,
    ValueSet,
    ValueStandardizer,
    ValueUnit,
    derive_report_template,
    normalize_surface,
)
from radex.schema.jsonio import (
    parse_fact_schema,
    parse_report_template,
    schema_to_json_bytes,
    schema_to_json_dict,
    template_to_json_bytes,
    template_to_json_dict,
)
from radex.schema.validate import Violation, validate_schema, validate_template
from radex.schema.uima import export_uima_type_system

__all__ = [
    "AnchorDef",
    "CodedValue",
    "FactDef",
    "FactSchema",
    "ModifierDef",
    "ReportTemplate",
    "TemplateEntry",
    "ValueSet",
    "ValueStandardizer",
    "ValueUnit",
    "Violation",
    "derive_report_template",
    "export_uima_type_system",
    "normalize_surface",
    "parse_fact_schema",
    "parse_report_template",
    "schema_to_json_bytes",
    "schema_to_json_dict",
    "template_to_json_bytes",
    "template_to_json_dict",
    "validate_schema",
    "validate_template",
]
