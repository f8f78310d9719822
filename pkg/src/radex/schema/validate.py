"""Invariant checking for fact schemas and report templates.

Violations are data, not exceptions: each one carries a stable
machine-readable code and the path of the offending element. Paths use
numeric indices for positional problems (``facts[0].modifier_ids[2]``) and
the element id once identity is established (``modifiers["laterality"].value_set``).
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

from radex.schema.model import (
    LANGUAGE_RE,
    ROLE_NEGATION,
    SEMVER_RE,
    SLUG_RE,
    FactSchema,
    ReportTemplate,
    ValueSet,
    ValueUnit,
    normalize_surface,
)

# Stable violation codes. Keep values frozen; clients switch on them.
EMPTY_SCHEMA_ID = "EMPTY_SCHEMA_ID"
INVALID_VERSION = "INVALID_VERSION"
INVALID_LANGUAGE = "INVALID_LANGUAGE"
EMPTY_FACTS = "EMPTY_FACTS"
INVALID_SLUG = "INVALID_SLUG"
DUPLICATE_FACT_ID = "DUPLICATE_FACT_ID"
DUPLICATE_ANCHOR_ID = "DUPLICATE_ANCHOR_ID"
DUPLICATE_MODIFIER_ID = "DUPLICATE_MODIFIER_ID"
DANGLING_MODIFIER_REF = "DANGLING_MODIFIER_REF"
DUPLICATE_MODIFIER_REF = "DUPLICATE_MODIFIER_REF"
MULTIPLE_NEGATION_MODIFIERS = "MULTIPLE_NEGATION_MODIFIERS"
NON_NORMALIZED_LEXICON = "NON_NORMALIZED_LEXICON"
EMPTY_VALUE_SET = "EMPTY_VALUE_SET"
CARDINALITY_ORDER = "CARDINALITY_ORDER"
CARDINALITY_BOUNDS = "CARDINALITY_BOUNDS"
EMPTY_CODE = "EMPTY_CODE"
DUPLICATE_CODE = "DUPLICATE_CODE"
NON_NORMALIZED_SYNONYM = "NON_NORMALIZED_SYNONYM"
TARGET_UNIT_MISSING = "TARGET_UNIT_MISSING"
TARGET_UNIT_FACTOR = "TARGET_UNIT_FACTOR"
NONPOSITIVE_UNIT_FACTOR = "NONPOSITIVE_UNIT_FACTOR"
# template-specific
UNKNOWN_FACT = "UNKNOWN_FACT"
UNKNOWN_MODIFIER = "UNKNOWN_MODIFIER"
DUPLICATE_TEMPLATE_FACT = "DUPLICATE_TEMPLATE_FACT"
EMPTY_TEMPLATE = "EMPTY_TEMPLATE"
SCHEMA_REF_MISMATCH = "SCHEMA_REF_MISMATCH"


@dataclass(frozen=True)
class Violation:
    code: str
    path: str
    message: str

    def to_json_dict(self) -> dict:
        return {"code": self.code, "path": self.path, "message": self.message}


def _check_value_set(vs: ValueSet, path: str, out: list[Violation]) -> None:
    if not vs.values:
        out.append(Violation(EMPTY_VALUE_SET, path, "value set has no values"))
    if vs.min_card < 0 or (vs.max_card is not None and vs.max_card < 1):
        out.append(
            Violation(
                CARDINALITY_BOUNDS,
                path,
                f"cardinality bounds out of range: min={vs.min_card} max={vs.max_card}",
            )
        )
    if vs.max_card is not None and vs.min_card > vs.max_card:
        out.append(
            Violation(
                CARDINALITY_ORDER,
                path,
                f"min_card {vs.min_card} exceeds max_card {vs.max_card}",
            )
        )
    seen: set[tuple[str, str]] = set()
    for j, value in enumerate(vs.values):
        if not value.code:
            out.append(Violation(EMPTY_CODE, f"{path}.values[{j}].code", "empty code"))
        key = (value.system, value.code)
        if key in seen:
            out.append(
                Violation(
                    DUPLICATE_CODE,
                    f"{path}.values[{j}]",
                    f"duplicate (system, code) pair {key}",
                )
            )
        seen.add(key)
        for k, syn in enumerate(value.synonyms):
            if normalize_surface(syn) != syn:
                out.append(
                    Violation(
                        NON_NORMALIZED_SYNONYM,
                        f"{path}.values[{j}].synonyms[{k}]",
                        f"synonym {syn!r} is not in normalized form",
                    )
                )


def _check_value_unit(vu: ValueUnit, path: str, out: list[Violation]) -> None:
    if vu.target_unit not in vu.accepted_units:
        out.append(
            Violation(
                TARGET_UNIT_MISSING,
                path,
                f"target unit {vu.target_unit!r} missing from accepted_units",
            )
        )
    elif vu.accepted_units[vu.target_unit] != Decimal(1):
        out.append(
            Violation(
                TARGET_UNIT_FACTOR,
                f'{path}.accepted_units["{vu.target_unit}"]',
                "target unit factor must be exactly 1",
            )
        )
    for unit, factor in vu.accepted_units.items():
        if factor <= 0:
            out.append(
                Violation(
                    NONPOSITIVE_UNIT_FACTOR,
                    f'{path}.accepted_units["{unit}"]',
                    f"conversion factor must be > 0, got {factor}",
                )
            )


def validate_schema(schema: FactSchema) -> list[Violation]:
    """Return every violated invariant; an empty list means the schema is valid."""
    out: list[Violation] = []
    if not schema.schema_id:
        out.append(Violation(EMPTY_SCHEMA_ID, "schema_id", "schema_id is empty"))
    if not SEMVER_RE.match(schema.version):
        out.append(
            Violation(
                INVALID_VERSION,
                "version",
                f"version {schema.version!r} is not MAJOR.MINOR.PATCH",
            )
        )
    if not LANGUAGE_RE.match(schema.language):
        out.append(
            Violation(
                INVALID_LANGUAGE,
                "language",
                f"language {schema.language!r} is not a BCP-47 tag",
            )
        )
    if not schema.facts:
        out.append(Violation(EMPTY_FACTS, "facts", "a schema needs at least one fact"))

    seen_modifiers: set[str] = set()
    for i, modifier in enumerate(schema.modifiers):
        if not SLUG_RE.match(modifier.id):
            out.append(
                Violation(
                    INVALID_SLUG,
                    f"modifiers[{i}].id",
                    f"modifier id {modifier.id!r} is not a slug",
                )
            )
        if modifier.id in seen_modifiers:
            out.append(
                Violation(
                    DUPLICATE_MODIFIER_ID,
                    f"modifiers[{i}].id",
                    f"modifier id {modifier.id!r} occurs more than once",
                )
            )
        seen_modifiers.add(modifier.id)
        std = modifier.standardizer
        if std.value_set is not None:
            _check_value_set(std.value_set, f'modifiers["{modifier.id}"].value_set', out)
        if std.value_unit is not None:
            _check_value_unit(std.value_unit, f'modifiers["{modifier.id}"].value_unit', out)

    negation_ids = {m.id for m in schema.modifiers if m.role == ROLE_NEGATION}
    seen_facts: set[str] = set()
    seen_anchors: set[str] = set()
    for i, fact in enumerate(schema.facts):
        if not SLUG_RE.match(fact.id):
            out.append(
                Violation(INVALID_SLUG, f"facts[{i}].id", f"fact id {fact.id!r} is not a slug")
            )
        if fact.id in seen_facts:
            out.append(
                Violation(
                    DUPLICATE_FACT_ID,
                    f"facts[{i}].id",
                    f"fact id {fact.id!r} occurs more than once",
                )
            )
        seen_facts.add(fact.id)

        anchor = fact.anchor
        if not SLUG_RE.match(anchor.id):
            out.append(
                Violation(
                    INVALID_SLUG,
                    f"facts[{i}].anchor.id",
                    f"anchor id {anchor.id!r} is not a slug",
                )
            )
        if anchor.id in seen_anchors:
            out.append(
                Violation(
                    DUPLICATE_ANCHOR_ID,
                    f"facts[{i}].anchor.id",
                    f"anchor id {anchor.id!r} occurs more than once",
                )
            )
        seen_anchors.add(anchor.id)
        for j, entry in enumerate(anchor.lexicon):
            if normalize_surface(entry) != entry:
                out.append(
                    Violation(
                        NON_NORMALIZED_LEXICON,
                        f"facts[{i}].anchor.lexicon[{j}]",
                        f"lexicon entry {entry!r} is not in normalized form",
                    )
                )

        seen_refs: set[str] = set()
        negation_refs = 0
        for j, modifier_id in enumerate(fact.modifier_ids):
            if modifier_id not in seen_modifiers:
                out.append(
                    Violation(
                        DANGLING_MODIFIER_REF,
                        f"facts[{i}].modifier_ids[{j}]",
                        f"modifier {modifier_id!r} is not in the modifier pool",
                    )
                )
            if modifier_id in seen_refs:
                out.append(
                    Violation(
                        DUPLICATE_MODIFIER_REF,
                        f"facts[{i}].modifier_ids[{j}]",
                        f"modifier {modifier_id!r} referenced twice by fact {fact.id!r}",
                    )
                )
            seen_refs.add(modifier_id)
            if modifier_id in negation_ids:
                negation_refs += 1
        if negation_refs > 1:
            out.append(
                Violation(
                    MULTIPLE_NEGATION_MODIFIERS,
                    f"facts[{i}].modifier_ids",
                    f"fact {fact.id!r} references {negation_refs} negation modifiers",
                )
            )
    return out


def validate_template(template: ReportTemplate, schema: FactSchema) -> list[Violation]:
    """Check a template against the schema it references."""
    out: list[Violation] = []
    if not template.entries:
        out.append(Violation(EMPTY_TEMPLATE, "entries", "template has no entries"))
    if (template.schema_id, template.schema_version) != (schema.schema_id, schema.version):
        out.append(
            Violation(
                SCHEMA_REF_MISMATCH,
                "schema_id",
                f"template references {template.schema_id} {template.schema_version}, "
                f"got schema {schema.schema_id} {schema.version}",
            )
        )
    seen: set[str] = set()
    for i, entry in enumerate(template.entries):
        fact = schema.fact_by_id(entry.fact_id)
        if fact is None:
            out.append(
                Violation(
                    UNKNOWN_FACT,
                    f"entries[{i}].fact_id",
                    f"fact {entry.fact_id!r} not in schema",
                )
            )
            continue
        if entry.fact_id in seen:
            out.append(
                Violation(
                    DUPLICATE_TEMPLATE_FACT,
                    f"entries[{i}].fact_id",
                    f"fact {entry.fact_id!r} listed twice",
                )
            )
        seen.add(entry.fact_id)
        for j, modifier_id in enumerate(entry.modifier_ids):
            if modifier_id not in fact.modifier_ids:
                out.append(
                    Violation(
                        UNKNOWN_MODIFIER,
                        f"entries[{i}].modifier_ids[{j}]",
                        f"modifier {modifier_id!r} is not a modifier of fact {entry.fact_id!r}",
                    )
                )
    return out
