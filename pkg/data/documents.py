"""
JSON documents for families and hitting instances.
Rationals always travel as "p/q" strings so round trips are bit-exact.
"""
import hashlib
import json
import re
from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional, Tuple, Union
import structlog
from pydantic import BaseModel, ConfigDict, StrictInt, ValidationError

from config.constants import Ambient, BodyKind
from config.settings import get_settings
from data.models.errors import (
    DocumentSyntaxError, DocumentValidationError, FamilyValidationError, InvalidParameter
)
from data.models.schemas import ConvexBody, Family, Halfplane, Rational2
from geometry.predicates import is_canonical_polygon

logger = structlog.get_logger()
settings = get_settings()

RATIONAL_PATTERN = re.compile(r"^[+-]?\d+(/\d+)?$")

Coordinate = Union[StrictInt, str]


class BodyDocument(BaseModel):
    """One body: id, kind and vertex list as rational strings."""
    model_config = ConfigDict(extra="forbid")

    id: StrictInt
    kind: Literal["point", "segment", "polygon"]
    vertices: List[Tuple[Coordinate, Coordinate]]
    level: Optional[StrictInt] = None


class FamilyDocument(BaseModel):
    """Canonical family file."""
    model_config = ConfigDict(extra="forbid")

    version: StrictInt
    ambient: Literal["planar", "lifted-3d"] = "planar"
    bodies: List[BodyDocument]
    certificate: Optional[Dict[str, Any]] = None


class HalfplaneDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    a: Coordinate
    b: Coordinate
    c: Coordinate


class HittingInstanceDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    version: StrictInt = 1
    segments: List[BodyDocument]
    halfplanes: List[HalfplaneDocument]


def parse_rational(text: Union[str, int]) -> Fraction:
    """Parse "p/q" or "p" (optional sign) into a reduced Fraction.

    Raises:
        DocumentValidationError: malformed literal or zero denominator
    """
    literal = str(text).strip()
    if not RATIONAL_PATTERN.match(literal):
        raise DocumentValidationError("rational", f"malformed rational literal {literal!r}")
    if "/" in literal:
        numerator, denominator = literal.split("/")
        if int(denominator) == 0:
            raise DocumentValidationError("rational", f"zero denominator in {literal!r}")
        return Fraction(int(numerator), int(denominator))
    return Fraction(int(literal))


def format_rational(value: Fraction) -> str:
    """Render a Fraction as "p" or "p/q"."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _point(pair: Tuple[Coordinate, Coordinate]) -> Rational2:
    return Rational2(parse_rational(pair[0]), parse_rational(pair[1]))


def _body(doc: BodyDocument, position: int) -> ConvexBody:
    if doc.id != position:
        raise DocumentValidationError("ids", f"body at position {position} has id {doc.id}",
                                      position=position)
    vertices = tuple(_point(pair) for pair in doc.vertices)
    if not vertices:
        raise DocumentValidationError("nonempty", f"body {doc.id} has no vertices", body=doc.id)

    expected = {1: "point", 2: "segment"}.get(len(vertices), "polygon")
    if doc.kind != expected:
        raise DocumentValidationError(
            "kind", f"body {doc.id} declares {doc.kind} but has {len(vertices)} vertices",
            body=doc.id
        )
    if len(set(vertices)) != len(vertices):
        raise DocumentValidationError("distinct_vertices", f"body {doc.id} repeats a vertex",
                                      body=doc.id)
    if len(vertices) >= 3 and not is_canonical_polygon(vertices):
        raise DocumentValidationError(
            "convexity", f"body {doc.id} is not a strictly convex CCW polygon", body=doc.id
        )
    return ConvexBody(doc.id, vertices)


def family_from_document(doc: FamilyDocument) -> Family:
    """Validate a parsed document and build the Family it describes."""
    if doc.version != settings.document_version:
        raise DocumentValidationError("version", f"unsupported document version {doc.version}")

    bodies = tuple(_body(body, position) for position, body in enumerate(doc.bodies))
    ambient = Ambient(doc.ambient)
    levels = [body.level for body in doc.bodies]

    if ambient == Ambient.LIFTED_3D:
        if any(level is None for level in levels):
            raise DocumentValidationError("levels", "lifted family needs a level on every body")
        return Family(bodies, ambient, tuple(levels))

    if any(level is not None for level in levels):
        raise DocumentValidationError("levels", "planar family must not carry levels")
    return Family(bodies, ambient)


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentSyntaxError(e.msg, line=e.lineno, column=e.colno)


def _schema_error(e: ValidationError) -> DocumentValidationError:
    first = e.errors()[0]
    location = ".".join(str(part) for part in first.get("loc", ()))
    return DocumentValidationError("schema", f"{location}: {first.get('msg')}", location=location)


def parse_family(text: str) -> Family:
    """Parse and validate a FamilyDocument.

    Args:
        text: JSON document

    Returns:
        Validated Family

    Raises:
        DocumentSyntaxError: not valid JSON (carries line and column)
        DocumentValidationError: invalid family (carries the invariant name)
    """
    raw = _load_json(text)
    try:
        doc = FamilyDocument.model_validate(raw)
    except ValidationError as e:
        raise _schema_error(e)

    try:
        family = family_from_document(doc)
    except DocumentValidationError:
        raise
    except FamilyValidationError as e:
        raise DocumentValidationError(e.invariant, e.message)

    logger.debug("parsed_family", n=family.n, ambient=family.ambient.value)
    return family


def read_certificate(text: str) -> Optional[Dict[str, Any]]:
    """Certificate object embedded in a family document, if any."""
    raw = _load_json(text)
    if isinstance(raw, dict):
        return raw.get("certificate")
    return None


def body_to_document(body: ConvexBody, level: Optional[int] = None) -> BodyDocument:
    return BodyDocument(
        id=body.id,
        kind=body.kind.value,
        vertices=[(format_rational(v.x), format_rational(v.y)) for v in body.vertices],
        level=level,
    )


def family_to_document(family: Family, certificate: Optional[Dict[str, Any]] = None) -> FamilyDocument:
    levels = family.levels or (None,) * family.n
    return FamilyDocument(
        version=settings.document_version,
        ambient=family.ambient.value,
        bodies=[body_to_document(body, level) for body, level in zip(family.bodies, levels)],
        certificate=certificate,
    )


def family_to_dict(family: Family, certificate: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """JSON-ready dict with optional fields left out."""
    return family_to_document(family, certificate).model_dump(exclude_none=True)


def serialize_family(family: Family, certificate: Optional[Dict[str, Any]] = None) -> str:
    """Canonical JSON text (sorted keys, two-space indent, trailing newline)."""
    return json.dumps(family_to_dict(family, certificate), sort_keys=True, indent=2) + "\n"


def content_digest(text: str) -> str:
    """sha256 of document text."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def family_digest(family: Family) -> str:
    """Digest of the canonical serialization, independent of input formatting."""
    return content_digest(serialize_family(family))


def parse_hitting_document(text: str) -> Tuple[Family, List[Halfplane]]:
    """Parse {"segments": [...], "halfplanes": [{"a","b","c"}, ...]}.

    Feasibility is checked when the solver builds the instance.
    """
    raw = _load_json(text)
    try:
        doc = HittingInstanceDocument.model_validate(raw)
    except ValidationError as e:
        raise _schema_error(e)

    family = family_from_document(
        FamilyDocument(version=settings.document_version, bodies=doc.segments)
    )
    halfplanes = []
    for index, entry in enumerate(doc.halfplanes):
        try:
            halfplanes.append(Halfplane(parse_rational(entry.a), parse_rational(entry.b),
                                        parse_rational(entry.c)))
        except InvalidParameter:
            raise DocumentValidationError("halfplane", f"halfplane {index} has a zero normal",
                                          index=index)
    return family, halfplanes


def halfplane_to_dict(h: Halfplane) -> Dict[str, str]:
    return {"a": format_rational(h.a), "b": format_rational(h.b), "c": format_rational(h.c)}


def hitting_instance_to_text(family: Family, halfplanes: List[Halfplane]) -> str:
    payload = {
        "version": settings.document_version,
        "segments": [body_to_document(b).model_dump(exclude_none=True) for b in family.bodies],
        "halfplanes": [halfplane_to_dict(h) for h in halfplanes],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"
