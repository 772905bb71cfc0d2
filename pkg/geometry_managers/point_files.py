"""Point list files.

One point per line, comma-separated coordinates (integers, ``a/b`` rationals
or ``#n`` encodings in GF(p^k)). An optional ``field ...`` header selects the
field; ``#`` starts a comment line.
"""
import re
from pathlib import Path
from typing import List

from app_managers.core.errors import FieldMismatchError, InputError
from arith_managers.fields import RATIONALS, ExactField, FiniteField, parse_field_spec
from geometry_managers.points import PointConfig, ProjPoint

_HEADER = re.compile(r"^\s*field\s+(?P<spec>.+?)\s*$", re.IGNORECASE)
_ENCODED = re.compile(r"^#(\d+)$")
# "#4, 1, 0" is a point with an encoded coordinate, not a comment
_COMMENT = re.compile(r"^#(?!\d)")


def parse_field_header(line: str) -> ExactField | None:
    match = _HEADER.match(line)
    if not match:
        return None
    return parse_field_spec(match.group("spec"))


def parse_coordinate(field: ExactField, token: str):
    token = token.strip()
    if not token:
        raise InputError("Empty coordinate")
    encoded = _ENCODED.match(token)
    if encoded:
        if not field.is_finite:
            raise InputError(f"Encoded literal {token} needs a finite field, got {field}")
        return field.from_encoding(int(encoded.group(1)))
    return field.convert(token)


def _working_field(field: ExactField, header_field: ExactField) -> ExactField:
    """A header naming the prime subfield of ``field`` is accepted; any other disagreement is an error."""
    if field is None or header_field is None or header_field == field:
        return field or header_field or RATIONALS
    if isinstance(header_field, FiniteField) and isinstance(field, FiniteField) and header_field.subfield_of(field):
        return field
    raise FieldMismatchError(f"Points over {header_field} cannot be read as points over {field}")


def parse_points(text: str, field: ExactField = None, ambient: int = None) -> PointConfig:
    points: List[ProjPoint] = []
    header_field = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        header = parse_field_header(line)
        if header is not None:
            if points:
                raise InputError(f"Line {lineno}: the field header must precede the points")
            header_field = header
            continue
        if _COMMENT.match(line):
            continue
        working = _working_field(field, header_field)
        try:
            coords = tuple(parse_coordinate(working, tok) for tok in line.split(","))
            point = ProjPoint(field=working, coords=coords)
        except InputError as exc:
            raise InputError(f"Line {lineno}: {exc}") from exc
        except FieldMismatchError as exc:
            raise FieldMismatchError(f"Line {lineno}: {exc}") from exc
        points.append(point)
    working = _working_field(field, header_field)
    if ambient is None and not points:
        raise InputError("Point file contains no points")
    return PointConfig.of(points, field=working, ambient=ambient)


def read_points(path: str, field: ExactField = None, ambient: int = None) -> PointConfig:
    file = Path(path)
    if not file.is_file():
        raise InputError(f"Point file {path} does not exist")
    return parse_points(file.read_text(encoding="utf-8"), field=field, ambient=ambient)


def format_points(cfg: PointConfig) -> str:
    lines = [f"field {cfg.field.descriptor if cfg.field.is_finite else 'QQ'}"]
    for pt in cfg:
        lines.append(", ".join(_format_coordinate(cfg.field, c) for c in pt.coords))
    return "\n".join(lines) + "\n"


def _format_coordinate(field: ExactField, value) -> str:
    if field.is_finite and field.k > 1 and value >= field.p:
        return f"#{value}"
    return str(field.to_json(value))
