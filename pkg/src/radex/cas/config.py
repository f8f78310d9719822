"""Annotation-tool layer configuration generated from a fact schema."""

from __future__ import annotations

from dataclasses import dataclass

from radex.errors import SchemaInvariantViolation
from radex.schema import FactSchema, validate_schema
from radex.schema.jsonio import canonical_json_bytes

GRANULARITY_CHARACTERS = "characters"


@dataclass(frozen=True)
class LayerSpec:
    name: str
    granularity: str
    feature: str
    tags: tuple[str, ...]


@dataclass(frozen=True)
class AnnotationConfiguration:
    tool_id: str
    layers: tuple[LayerSpec, ...]


def generate_annotation_config(
    schema: FactSchema, tool_id: str = "inception"
) -> AnnotationConfiguration:
    """Derive the three span layers (Fact/Anchor/Modifier) from a schema."""
    violations = validate_schema(schema)
    if violations:
        raise SchemaInvariantViolation(violations)
    return AnnotationConfiguration(
        tool_id=tool_id,
        layers=(
            LayerSpec(
                name="Fact",
                granularity=GRANULARITY_CHARACTERS,
                feature="factId",
                tags=tuple(sorted(schema.fact_ids)),
            ),
            LayerSpec(
                name="Anchor",
                granularity=GRANULARITY_CHARACTERS,
                feature="anchorId",
                tags=tuple(sorted(set(schema.anchor_ids))),
            ),
            LayerSpec(
                name="Modifier",
                granularity=GRANULARITY_CHARACTERS,
                feature="modifierId",
                tags=tuple(sorted(schema.modifier_ids)),
            ),
        ),
    )


def config_to_json_dict(config: AnnotationConfiguration) -> dict:
    return {
        "tool_id": config.tool_id,
        "layers": [
            {
                "name": layer.name,
                "granularity": layer.granularity,
                "feature": layer.feature,
                "tags": list(layer.tags),
            }
            for layer in config.layers
        ],
    }


def config_to_json_bytes(config: AnnotationConfiguration) -> bytes:
    return canonical_json_bytes(config_to_json_dict(config))


def to_inception_layers(config: AnnotationConfiguration) -> dict:
    """Shape the configuration like an Inception layer export.

    Span layers with a single string feature whose tagset enumerates the
    schema ids. Field names follow the tool's JSON export conventions.
    """
    layers = []
    for layer in config.layers:
        tagset = {
            "name": f"{layer.name} tags",
            "typeUiName": None,
            "description": "",
            "language": None,
            "type_name": None,
            "createTag": False,
            "tags": [
                {"tag_name": tag, "tag_description": ""} for tag in layer.tags
            ],
        }
        layers.append(
            {
                "name": f"webanno.custom.{layer.name}",
                "uiName": layer.name,
                "type": "span",
                "description": "",
                "enabled": True,
                "built_in": False,
                "readonly": False,
                "attach_type": None,
                "attach_feature": None,
                "allow_stacking": True,
                "cross_sentence": False,
                "anchoring_mode": GRANULARITY_CHARACTERS,
                "overlap_mode": "ANY_OVERLAP",
                "features": [
                    {
                        "name": layer.feature,
                        "uiName": layer.feature,
                        "type": "uima.cas.String",
                        "enabled": True,
                        "visible": True,
                        "required": layer.name != "Modifier",
                        "tag_set": tagset,
                    }
                ],
            }
        )
    return {"name": config.tool_id, "layers": layers}
