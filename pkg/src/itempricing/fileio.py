"""JSON instance/cell files with rationals written as strings, never floats."""

from __future__ import annotations

import hashlib
import json
import math
from fractions import Fraction
from typing import Any, Iterable

from .cells import CellDescription, Constraint, Relation
from .errors import ParseError, ValidationError
from .model import PricingInstance, validate_instance

_ITEM_KEYS = {"values", "probs"}


def format_rational(x: Any) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(tok: Any) -> Fraction:
    """Strict parse of ``"p"`` or ``"p/q"`` (``q > 0``, lowest terms); JSON ints are accepted too."""
    if isinstance(tok, bool) or isinstance(tok, float):
        raise ParseError(f"{tok!r}: rationals must be strings like '3/4', not floats or booleans")
    if isinstance(tok, int):
        return Fraction(tok)
    if not isinstance(tok, str):
        raise ParseError(f"{tok!r} is not a rational string")
    num, sep, den = tok.strip().partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError as exc:
        raise ParseError(f"{tok!r} is not a rational string") from exc
    if q <= 0:
        raise ParseError(f"{tok!r}: denominator must be positive")
    if math.gcd(p, q) != 1:
        raise ParseError(f"{tok!r} is not in lowest terms")
    return Fraction(p, q)


def parse_rational_list(text: str) -> list[Fraction]:
    """Comma-separated rationals, e.g. ``"10,25/2"``."""
    return [parse_rational(tok) for tok in text.split(",") if tok.strip()]


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def parse_instance(text: str) -> PricingInstance:
    doc = load_json(text)
    if not isinstance(doc, dict):
        raise ParseError("instance document must be a JSON object")
    extra = set(doc) - {"items"}
    if extra:
        raise ParseError(f"unknown top-level fields: {sorted(extra)}")
    items = doc.get("items")
    if not isinstance(items, list):
        raise ParseError("'items' must be a list")
    parsed = []
    for k, rec in enumerate(items):
        if not isinstance(rec, dict):
            raise ParseError(f"item {k} must be an object")
        extra = set(rec) - _ITEM_KEYS
        if extra:
            raise ParseError(f"item {k}: unknown fields {sorted(extra)}")
        if not isinstance(rec.get("values"), list) or not isinstance(rec.get("probs"), list):
            raise ParseError(f"item {k}: 'values' and 'probs' must be lists")
        parsed.append(
            {
                "values": [parse_rational(x) for x in rec["values"]],
                "probs": [parse_rational(x) for x in rec["probs"]],
            }
        )
    return validate_instance({"items": parsed})


def instance_to_dict(inst: PricingInstance) -> dict:
    return {
        "items": [
            {
                "values": [format_rational(v) for v in it.values],
                "probs": [format_rational(q) for q in it.probs],
            }
            for it in inst.items
        ]
    }


def serialize_instance(inst: PricingInstance) -> str:
    """Canonical text: fixed key order, two-space indent, trailing newline."""
    return json.dumps(instance_to_dict(inst), indent=2) + "\n"


def instance_digest(inst: PricingInstance) -> str:
    return hashlib.sha256(serialize_instance(inst).encode()).hexdigest()


def constraints_to_dict(constraints: Iterable[Constraint]) -> dict:
    out = []
    for c in constraints:
        lhs = [c.i] if c.j is None else [c.i, c.j]
        out.append([lhs, c.rel.value, format_rational(c.bound)])
    return {"constraints": out}


def cell_to_dict(cell: CellDescription) -> dict:
    return constraints_to_dict(cell.constraints())


def parse_cell(text: str) -> list[Constraint]:
    """Cell file: ``{"constraints": [[[i], "<=", "5"], [[i, j], ">", "-2"], ...]}``.

    ``[i]`` stands for ``p_i`` and ``[i, j]`` for ``p_i - p_j``; indices are 0-based.
    """
    doc = load_json(text)
    if not isinstance(doc, dict) or set(doc) != {"constraints"}:
        raise ParseError("cell document must be an object with exactly one field 'constraints'")
    out = []
    for k, triple in enumerate(doc["constraints"]):
        if not isinstance(triple, list) or len(triple) != 3:
            raise ParseError(f"constraint {k} is not a [lhs, relation, bound] triple")
        lhs, rel, bound = triple
        if (
            not isinstance(lhs, list)
            or len(lhs) not in (1, 2)
            or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in lhs)
        ):
            raise ParseError(f"constraint {k}: lhs must be [i] or [i, j]")
        try:
            relation = Relation.parse(rel)
        except ValueError as exc:
            raise ParseError(f"constraint {k}: unknown relation {rel!r}") from exc
        j = lhs[1] if len(lhs) == 2 else None
        out.append(Constraint(lhs[0], j, relation, parse_rational(bound)))
    return out


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"


__all__ = [
    "ParseError",
    "ValidationError",
    "cell_to_dict",
    "constraints_to_dict",
    "format_rational",
    "instance_digest",
    "instance_to_dict",
    "parse_cell",
    "parse_instance",
    "parse_rational",
    "parse_rational_list",
    "serialize_instance",
]
