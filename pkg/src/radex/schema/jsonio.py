"""Canonical JSON layout for fact schemas and report templates.

The canonical layout is the single wire/file format understood by every
component: top-level ``schema_id`` / ``version`` / ``language`` /
``modifiers`` / ``facts``, written UTF-8 with two-space indentation, fixed
key order, a trailing newline, and unit conversion factors rendered as
decimal strings (so that parse -> serialize is byte-stable and exact).
Serializing a freshly parsed document is a fixed point.
"""

from __future__ import annotations

import json
from decimal import Decimal, InvalidOperation
from typing import Any, Optional

from radex.errors import MalformedInput, SchemaInvariantViolation
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
)
from radex.schema.validate import validate_schema, validate_template


def canonical_json_bytes(doc: Any) -> bytes:
    """Render a JSON document in the canonical on-disk form."""
    return (json.dumps(doc, ensure_ascii=False, indent=2) + "\n").encode("utf-8")


def _load_json(data: bytes | str) -> Any:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedInput(f"input is not UTF-8: {exc}") from exc
    try:
        return json.loads(data, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"input is not JSON: {exc}") from exc


def _expect(obj: Any, key: str, kind: type, path: str, default: Any = ...) -> Any:
    if not isinstance(obj, dict):
        raise MalformedInput(f"{path}: expected an object")
    if key not in obj:
        if default is not ...:
            return default
        raise MalformedInput(f"{path}.{key}: missing required field")
    value = obj[key]
    if kind is int and isinstance(value, bool):
        raise MalformedInput(f"{path}.{key}: expected {kind.__name__}")
    if not isinstance(value, kind):
        raise MalformedInput(f"{path}.{key}: expected {kind.__name__}")
    return value


def _string_list(obj: Any, key: str, path: str, default: Any = ...) -> tuple[str, ...]:
    raw = _expect(obj, key, list, path, default)
    if raw is default and default is not ...:
        return tuple(default)
    for i, item in enumerate(raw):
        if not isinstance(item, str):
            raise MalformedInput(f"{path}.{key}[{i}]: expected string")
    return tuple(raw)


def _parse_decimal(value: Any, path: str) -> Decimal:
    if isinstance(value, bool):
        raise MalformedInput(f"{path}: expected a number or decimal string")
    if isinstance(value, Decimal):
        return value
    if isinstance(value, int):
        return Decimal(value)
    if isinstance(value, str):
        try:
            return Decimal(value)
        except InvalidOperation as exc:
            raise MalformedInput(f"{path}: {value!r} is not a decimal") from exc
    raise MalformedInput(f"{path}: expected a number or decimal string")


def _parse_value_set(obj: Any, path: str) -> ValueSet:
    values = []
    raw_values = _expect(obj, "values", list, path)
    for j, raw in enumerate(raw_values):
        vpath = f"{path}.values[{j}]"
        values.append(
            CodedValue(
                code=_expect(raw, "code", str, vpath),
                system=_expect(raw, "system", str, vpath),
                display=_expect(raw, "display", str, vpath, ""),
                synonyms=_string_list(raw, "synonyms", vpath, ()),
            )
        )
    max_card_raw = obj.get("max_card", 1) if isinstance(obj, dict) else 1
    if max_card_raw is not None and not isinstance(max_card_raw, int):
        raise MalformedInput(f"{path}.max_card: expected integer or null")
    return ValueSet(
        values=tuple(values),
        min_card=_expect(obj, "min_card", int, path, 0),
        max_card=max_card_raw,
    )


def _parse_value_unit(obj: Any, path: str) -> ValueUnit:
    raw_units = _expect(obj, "accepted_units", dict, path)
    accepted = {
        unit: _parse_decimal(raw, f'{path}.accepted_units["{unit}"]')
        for unit, raw in raw_units.items()
    }
    return ValueUnit(target_unit=_expect(obj, "target_unit", str, path), accepted_units=accepted)


def _parse_standardizer(obj: Any, path: str) -> ValueStandardizer:
    kind = _expect(obj, "kind", str, path)
    if kind == "free_text":
        return ValueStandardizer.free_text()
    if kind == "value_set":
        return ValueStandardizer.of_value_set(
            _parse_value_set(_expect(obj, "value_set", dict, path), f"{path}.value_set")
        )
    if kind == "value_unit":
        return ValueStandardizer.of_value_unit(
            _parse_value_unit(_expect(obj, "value_unit", dict, path), f"{path}.value_unit")
        )
    raise MalformedInput(f"{path}.kind: unknown standardizer kind {kind!r}")


def parse_fact_schema(data: bytes | str) -> FactSchema:
    """Parse and validate the canonical fact-schema JSON.

    Raises :class:`MalformedInput` when the document is not JSON or lacks
    required structure, and :class:`SchemaInvariantViolation` (carrying the
    full violation list) when the parsed schema breaks model invariants.
    """
    doc = _load_json(data)
    schema = _schema_from_json_dict(doc)
    violations = validate_schema(schema)
    if violations:
        raise SchemaInvariantViolation(violations)
    return schema


def _schema_from_json_dict(doc: Any) -> FactSchema:
    if not isinstance(doc, dict):
        raise MalformedInput("top level: expected an object")
    modifiers = []
    for i, raw in enumerate(_expect(doc, "modifiers", list, "$", [])):
        path = f"modifiers[{i}]"
        role = _expect(raw, "role", str, path, "plain")
        if role not in ("plain", "negation"):
            raise MalformedInput(f"{path}.role: expected 'plain' or 'negation'")
        modifiers.append(
            ModifierDef(
                id=_expect(raw, "id", str, path),
                label=_expect(raw, "label", str, path, ""),
                role=role,
                standardizer=_parse_standardizer(
                    _expect(raw, "standardizer", dict, path, {"kind": "free_text"}),
                    f"{path}.standardizer",
                ),
            )
        )
    facts = []
    for i, raw in enumerate(_expect(doc, "facts", list, "$")):
        path = f"facts[{i}]"
        raw_anchor = _expect(raw, "anchor", dict, path)
        anchor = AnchorDef(
            id=_expect(raw_anchor, "id", str, f"{path}.anchor"),
            label=_expect(raw_anchor, "label", str, f"{path}.anchor", ""),
            lexicon=_string_list(raw_anchor, "lexicon", f"{path}.anchor", ()),
        )
        facts.append(
            FactDef(
                id=_expect(raw, "id", str, path),
                label=_expect(raw, "label", str, path, ""),
                description=_expect(raw, "description", str, path, ""),
                anchor=anchor,
                modifier_ids=_string_list(raw, "modifier_ids", path, ()),
            )
        )
    return FactSchema(
        schema_id=_expect(doc, "schema_id", str, "$"),
        version=_expect(doc, "version", str, "$"),
        language=_expect(doc, "language", str, "$"),
        modifiers=tuple(modifiers),
        facts=tuple(facts),
    )


def _value_set_to_json(vs: ValueSet) -> dict:
    return {
        "min_card": vs.min_card,
        "max_card": vs.max_card,
        "values": [
            {
                "code": v.code,
                "system": v.system,
                "display": v.display,
                "synonyms": list(v.synonyms),
            }
            for v in vs.values
        ],
    }


def _value_unit_to_json(vu: ValueUnit) -> dict:
    return {
        "target_unit": vu.target_unit,
        "accepted_units": {unit: str(vu.accepted_units[unit]) for unit in sorted(vu.accepted_units)},
    }


def _standardizer_to_json(std: ValueStandardizer) -> dict:
    if std.value_set is not None:
        return {"kind": "value_set", "value_set": _value_set_to_json(std.value_set)}
    if std.value_unit is not None:
        return {"kind": "value_unit", "value_unit": _value_unit_to_json(std.value_unit)}
    return {"kind": "free_text"}


def schema_to_json_dict(schema: FactSchema) -> dict:
    return {
        "schema_id": schema.schema_id,
        "version": schema.version,
        "language": schema.language,
        "modifiers": [
            {
                "id": m.id,
                "label": m.label,
                "role": m.role,
                "standardizer": _standardizer_to_json(m.standardizer),
            }
            for m in schema.modifiers
        ],
        "facts": [
            {
                "id": f.id,
                "label": f.label,
                "description": f.description,
                "anchor": {
                    "id": f.anchor.id,
                    "label": f.anchor.label,
                    "lexicon": list(f.anchor.lexicon),
                },
                "modifier_ids": list(f.modifier_ids),
            }
            for f in schema.facts
        ],
    }


def schema_to_json_bytes(schema: FactSchema) -> bytes:
    return canonical_json_bytes(schema_to_json_dict(schema))


def parse_report_template(data: bytes | str, schema: Optional[FactSchema] = None) -> ReportTemplate:
    """Parse template JSON; validate against ``schema`` when given."""
    doc = _load_json(data)
    if not isinstance(doc, dict):
        raise MalformedInput("top level: expected an object")
    entries = []
    for i, raw in enumerate(_expect(doc, "entries", list, "$")):
        entries.append(
            TemplateEntry(
                fact_id=_expect(raw, "fact_id", str, f"entries[{i}]"),
                modifier_ids=_string_list(raw, "modifier_ids", f"entries[{i}]", ()),
            )
        )
    template = ReportTemplate(
        template_id=_expect(doc, "template_id", str, "$"),
        schema_id=_expect(doc, "schema_id", str, "$"),
        schema_version=_expect(doc, "schema_version", str, "$"),
        entries=tuple(entries),
    )
    if schema is not None:
        violations = validate_template(template, schema)
        if violations:
            raise SchemaInvariantViolation(violations)
    return template


def template_to_json_dict(template: ReportTemplate) -> dict:
    return {
        "template_id": template.template_id,
        "schema_id": template.schema_id,
        "schema_version": template.schema_version,
        "entries": [
            {"fact_id": e.fact_id, "modifier_ids": list(e.modifier_ids)}
            for e in template.entries
        ],
    }


def template_to_json_bytes(template: ReportTemplate) -> bytes:
    return canonical_json_bytes(template_to_json_dict(template))
