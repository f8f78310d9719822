"""Domain model for fact schemas and report templates.

All types are immutable value objects. Construction is permissive on
cross-object invariants (duplicate ids, dangling references, ...) so that
partially edited schemas can be represented and then checked with
:func:`radex.schema.validate.validate_schema`; only structural sanity that
would make an instance meaningless (e.g. a standardizer with two variants)
is enforced in constructors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Mapping, Optional, Sequence

from radex.errors import EmptySelection, UnknownFactId

SLUG_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
SEMVER_RE = re.compile(r"\d+\.\d+\.\d+\Z")
LANGUAGE_RE = re.compile(r"[A-Za-z]{2,8}(-[A-Za-z0-9]{1,8})*\Z")

ROLE_PLAIN = "plain"
ROLE_NEGATION = "negation"


def normalize_surface(text: str) -> str:
    """Normal form for synonyms, lexicon entries and phrases.

    Lowercased, trimmed, internal whitespace collapsed to single spaces.
    Normalization is idempotent.
    """
    return " ".join(text.lower().split())


@dataclass(frozen=True)
class CodedValue:
    """A code within a code system, e.g. a SNOMED CT coding."""

    code: str
    system: str
    display: str
    synonyms: tuple[str, ...] = ()


@dataclass(frozen=True)
class ValueSet:
    """Enumerated coded values with single/multiple-choice cardinality.

    ``max_card`` of ``None`` means unbounded.
    """

    values: tuple[CodedValue, ...]
    min_card: int = 0
    max_card: Optional[int] = 1


@dataclass(frozen=True)
class ValueUnit:
    """Target measurement unit plus accepted source units.

    ``accepted_units`` maps a UCUM code to the decimal factor that converts
    one source unit into the target unit. The target unit itself must be
    present with factor 1.
    """

    target_unit: str
    accepted_units: Mapping[str, Decimal]


@dataclass(frozen=True)
class ValueStandardizer:
    """Exactly one of: a value set, a value unit, or free text.

    Free text (no standardization) is represented by both payloads being
    absent.
    """

    value_set: Optional[ValueSet] = None
    value_unit: Optional[ValueUnit] = None

    def __post_init__(self) -> None:
        if self.value_set is not None and self.value_unit is not None:
            raise ValueError("standardizer cannot carry both a value set and a value unit")

    @property
    def kind(self) -> str:
        if self.value_set is not None:
            return "value_set"
        if self.value_unit is not None:
            return "value_unit"
        return "free_text"

    @classmethod
    def free_text(cls) -> "ValueStandardizer":
        return cls()

    @classmethod
    def of_value_set(cls, value_set: ValueSet) -> "ValueStandardizer":
        return cls(value_set=value_set)

    @classmethod
    def of_value_unit(cls, value_unit: ValueUnit) -> "ValueStandardizer":
        return cls(value_unit=value_unit)


@dataclass(frozen=True)
class ModifierDef:
    """Optional span kind providing additional information about a fact."""

    id: str
    label: str
    role: str = ROLE_PLAIN
    standardizer: ValueStandardizer = field(default_factory=ValueStandardizer.free_text)

    def __post_init__(self) -> None:
        if self.role not in (ROLE_PLAIN, ROLE_NEGATION):
            raise ValueError(f"unknown modifier role: {self.role!r}")


@dataclass(frozen=True)
class AnchorDef:
    """The central word or phrase of a fact; one anchor per fact.

    ``lexicon`` lists surface forms used by the rule-based extractor.
    """

    id: str
    label: str
    lexicon: tuple[str, ...] = ()


@dataclass(frozen=True)
class FactDef:
    """A clinical assertion kind with its anchor and referenced modifiers."""

    id: str
    label: str
    anchor: AnchorDef
    modifier_ids: tuple[str, ...] = ()
    description: str = ""


@dataclass(frozen=True)
class FactSchema:
    """The complete set of facts, anchors and modifiers for one domain."""

    schema_id: str
    version: str
    language: str
    modifiers: tuple[ModifierDef, ...]
    facts: tuple[FactDef, ...]

    def modifier_by_id(self, modifier_id: str) -> Optional[ModifierDef]:
        for m in self.modifiers:
            if m.id == modifier_id:
                return m
        return None

    def fact_by_id(self, fact_id: str) -> Optional[FactDef]:
        for f in self.facts:
            if f.id == fact_id:
                return f
        return None

    def counts(self) -> tuple[int, int, int]:
        """(facts, anchors, modifiers) — facts and anchors are always 1:1."""
        return len(self.facts), len(self.facts), len(self.modifiers)

    @property
    def fact_ids(self) -> tuple[str, ...]:
        return tuple(f.id for f in self.facts)

    @property
    def anchor_ids(self) -> tuple[str, ...]:
        return tuple(f.anchor.id for f in self.facts)

    @property
    def modifier_ids(self) -> tuple[str, ...]:
        return tuple(m.id for m in self.modifiers)


@dataclass(frozen=True)
class TemplateEntry:
    fact_id: str
    modifier_ids: tuple[str, ...]


@dataclass(frozen=True)
class ReportTemplate:
    """A subset of a schema's facts selected for filling.

    Templates pin the exact schema version they were derived from.
    """

    template_id: str
    schema_id: str
    schema_version: str
    entries: tuple[TemplateEntry, ...]

    @property
    def fact_ids(self) -> tuple[str, ...]:
        return tuple(e.fact_id for e in self.entries)


def derive_report_template(
    schema: FactSchema,
    fact_ids: Sequence[str],
    modifier_filter: Optional[Mapping[str, Sequence[str]]] = None,
    template_id: Optional[str] = None,
) -> ReportTemplate:
    """Project a template from a schema.

    Entries keep the order of ``fact_ids``. Without a ``modifier_filter``
    every entry carries all of the fact's modifiers; with one, only the
    listed subset (which must be a subset of the fact's modifiers).
    """
    if not fact_ids:
        raise EmptySelection("a template needs at least one fact")
    entries = []
    for fact_id in fact_ids:
        fact = schema.fact_by_id(fact_id)
        if fact is None:
            raise UnknownFactId(f"fact {fact_id!r} not in schema {schema.schema_id!r}")
        if modifier_filter is not None and fact_id in modifier_filter:
            wanted = tuple(modifier_filter[fact_id])
            unknown = [m for m in wanted if m not in fact.modifier_ids]
            if unknown:
                raise UnknownFactId(
                    f"modifiers {unknown} are not modifiers of fact {fact_id!r}"
                )
            included = wanted
        else:
            included = fact.modifier_ids
        entries.append(TemplateEntry(fact_id=fact_id, modifier_ids=included))
    return ReportTemplate(
        template_id=template_id or f"{schema.schema_id}_template",
        schema_id=schema.schema_id,
        schema_version=schema.version,
        entries=tuple(entries),
    )
