"""Gradable-adjective dataset generator and evaluation workbench."""

import json

from ._malevic import (
    CANVAS_SIZE,
    GENERATOR_VERSION,
    SCHEMA_VERSION,
    SHARP_K,
    Manifest,
    MalevicError,
    build,
    evaluate,
    flip_fraction,
    load,
    parse_sentence,
    realize_text,
    render,
    run_strategy,
    sample_k,
    threshold,
    validate,
)


def records(manifest):
    """Header dict and record dicts of a manifest, as written to JSONL."""
    lines = manifest.to_jsonl().splitlines()
    return json.loads(lines[0]), [json.loads(line) for line in lines[1:]]


__all__ = [
    "CANVAS_SIZE",
    "GENERATOR_VERSION",
    "SCHEMA_VERSION",
    "SHARP_K",
    "Manifest",
    "MalevicError",
    "build",
    "evaluate",
    "flip_fraction",
    "load",
    "parse_sentence",
    "realize_text",
    "records",
    "render",
    "run_strategy",
    "sample_k",
    "threshold",
    "validate",
]
