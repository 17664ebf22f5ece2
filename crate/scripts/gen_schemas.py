#!/usr/bin/env python3
"""Write the JSON Schemas of the CLI and HTTP outputs to docs/schemas.

Each schema is self-contained; shared definitions are copied into `$defs`.
"""

import json
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "docs", "schemas")
DRAFT = "https://json-schema.org/draft/2020-12/schema"


def obj(props, required=None):
    return {
        "type": "object",
        "properties": props,
        "required": list(props) if required is None else required,
        "additionalProperties": False,
    }


def arr(items):
    return {"type": "array", "items": items}


STR = {"type": "string"}
INT = {"type": "integer", "minimum": 0}
NUM = {"type": "number"}
UNIT = {"type": "number", "minimum": 0, "maximum": 1}
NONNEG = {"type": "number", "minimum": 0}
REF = lambda name: {"$ref": f"#/$defs/{name}"}

DEFS = {
    "token": obj({"text": STR, "lemma": STR, "index": INT, "tag": STR}),
    "noun_phrase": obj({"start": INT, "end": INT, "tokens": arr(STR), "tags": arr(STR)}),
    "analysis": obj(
        {
            "raw": STR,
            "tokens": arr(REF("token")),
            "noun_phrases": arr(REF("noun_phrase")),
            "content_terms": arr(STR),
            "anchor_terms": arr(STR),
            "is_location_query": {"type": "boolean"},
            "location_terms": arr(STR),
        }
    ),
    "concept_match": obj(
        {
            "query_term": STR,
            "terms": arr(STR),
            "forms": arr(STR),
            "concept": INT,
            "kind": {"enum": ["exact-label", "label-token"]},
        }
    ),
    "domain_keyword": obj(
        {
            "relation": {"enum": ["self", "equivalent", "parent", "child", "sibling", "location"]},
            "weight": UNIT,
            "source": {"type": ["string", "null"]},
        }
    ),
    "keywords": {"type": "object", "additionalProperties": REF("domain_keyword")},
    "expansion": obj(
        {
            "lemma": STR,
            "source": {"enum": ["self", "ontology", "wordnet"]},
            "weight": UNIT,
        }
    ),
    "expansions": {
        "type": "object",
        "additionalProperties": {**arr(REF("expansion")), "minItems": 1},
    },
    "slot_choice": obj(
        {
            "term": STR,
            "lemma": STR,
            "source": {"enum": ["self", "ontology", "wordnet"]},
            "weight": UNIT,
        }
    ),
    "refined_query": obj(
        {"id": INT, "terms": arr(STR), "prior": UNIT, "provenance": arr(REF("slot_choice"))}
    ),
    "breakdown": obj({"rrf": UNIT, "title": UNIT, "snippet": UNIT, "url": UNIT, "phrase": UNIT}),
    "ranked_result": obj(
        {
            "rank": {"type": "integer", "minimum": 1},
            "url": STR,
            "title": STR,
            "snippet": STR,
            "score": NONNEG,
            "breakdown": REF("breakdown"),
        }
    ),
    "ranked_results": arr(REF("ranked_result")),
    "backend_error": obj({"query_id": INT, "kind": STR}),
    "timings": obj(
        {
            "analyze_ms": NONNEG,
            "expand_ms": NONNEG,
            "refine_ms": NONNEG,
            "search_ms": NONNEG,
            "rank_ms": NONNEG,
            "total_ms": NONNEG,
        }
    ),
}


def closure(root):
    """Names of the definitions reachable from `root`."""
    seen = set()

    def walk(node):
        if isinstance(node, dict):
            ref = node.get("$ref")
            if ref and ref.startswith("#/$defs/"):
                name = ref.rsplit("/", 1)[1]
                if name not in seen:
                    seen.add(name)
                    walk(DEFS[name])
            for v in node.values():
                walk(v)
        elif isinstance(node, list):
            for v in node:
                walk(v)

    walk(root)
    return seen


def schema(title, description, root):
    used = closure(root)
    doc = {"$schema": DRAFT, "title": title, "description": description, **root}
    if used:
        doc["$defs"] = {k: DEFS[k] for k in sorted(used)}
    return doc


SCHEMAS = {
    "search_response.schema.json": schema(
        "SearchResponse",
        "Body of GET /api/search and of `sieu search --format json`.",
        obj(
            {
                "query": STR,
                "analysis": REF("analysis"),
                "matches": arr(REF("concept_match")),
                "keywords": REF("keywords"),
                "expansions": REF("expansions"),
                "refined_queries": arr(REF("refined_query")),
                "results": REF("ranked_results"),
                "failures": arr(REF("backend_error")),
                "timings": REF("timings"),
            }
        ),
    ),
    "expand_response.schema.json": schema(
        "ExpandResponse",
        "Body of GET /api/expand: every stage up to refined-query generation.",
        obj(
            {
                "query": STR,
                "analysis": REF("analysis"),
                "matches": arr(REF("concept_match")),
                "keywords": REF("keywords"),
                "expansions": REF("expansions"),
                "refined_queries": arr(REF("refined_query")),
            }
        ),
    ),
    "expand_cli.schema.json": schema(
        "ExpandOutput",
        "Output of `sieu expand`.",
        obj(
            {
                "terms": REF("expansions"),
                "queries": arr(obj({"id": INT, "terms": arr(STR), "prior": UNIT})),
            }
        ),
    ),
    "ranked_results.schema.json": schema(
        "RankedResults",
        "Ranked result list, ordered by rank.",
        REF("ranked_results"),
    ),
    "health.schema.json": schema(
        "Health",
        "Body of GET /health.",
        obj({"status": {"const": "ok"}}),
    ),
    "error.schema.json": schema(
        "ErrorBody",
        "Body of every 4xx and 5xx response of the HTTP API.",
        obj({"error": STR}),
    ),
}


def main():
    os.makedirs(OUT, exist_ok=True)
    for name, doc in SCHEMAS.items():
        with open(os.path.join(OUT, name), "w", encoding="utf-8") as f:
            json.dump(doc, f, indent=2)
            f.write("\n")
    print(f"wrote {len(SCHEMAS)} schemas to {os.path.normpath(OUT)}")


if __name__ == "__main__":
    main()
