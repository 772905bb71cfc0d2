"""Quartic instance files.

    field GF(11)
    # comment
    Q: x0*x1 - x2^2
    Q': x3^2 + 2*x0*x4
    L: x4
    C: x0^3 + x1*x2*x3
       - 5*x4^3

Either the four blocks Q, Q', L, C or a single block F. Indented lines continue
the block above. The field header is optional and defaults to QQ.
"""
import re
from pathlib import Path
from typing import Dict, List

from app_managers.core.errors import InputError, ParseError
from arith_managers.fields import RATIONALS, ExactField
from geometry_managers.point_files import format_points, parse_field_header
from poly_managers.parser import parse_poly
from quartic_managers.types import DECOMPOSITION_DEGREES, QUARTIC_NVARS, Decomposition, QuarticInput

_BLOCK = re.compile(r"^(?P<name>Q'|Q|L|C|F)\s*:(?P<body>.*)$")
_COMMENT = re.compile(r"^#(?!\d)")


def _blocks(text: str) -> tuple:
    field = None
    blocks: Dict[str, List[str]] = {}
    lines: Dict[str, int] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or _COMMENT.match(raw.lstrip()):
            continue
        header = parse_field_header(raw)
        if header is not None:
            if blocks:
                raise InputError(f"Line {lineno}: the field header must precede the polynomials")
            field = header
            continue
        if raw[0].isspace():
            if current is None:
                raise InputError(f"Line {lineno}: continuation line without a block")
            blocks[current].append(raw.strip())
            continue
        match = _BLOCK.match(raw.strip())
        if not match:
            raise InputError(f"Line {lineno}: expected one of Q:, Q':, L:, C:, F:")
        current = match.group("name")
        if current in blocks:
            raise InputError(f"Line {lineno}: block {current} appears twice")
        blocks[current] = [match.group("body").strip()]
        lines[current] = lineno
    return field or RATIONALS, blocks, lines


def parse_instance(text: str, field: ExactField = None) -> QuarticInput:
    header_field, blocks, lines = _blocks(text)
    field = field or header_field
    if not blocks:
        raise InputError("Instance file contains no polynomial")
    polys = {}
    for name, parts in blocks.items():
        degree = 4 if name == "F" else DECOMPOSITION_DEGREES[name]
        try:
            polys[name] = parse_poly(" ".join(parts), QUARTIC_NVARS, field, degree=degree)
        except ParseError as exc:
            raise ParseError(f"Block {name} (line {lines[name]}): {exc}", text=exc.text) from exc
        except InputError as exc:
            raise InputError(f"Block {name} (line {lines[name]}): {exc}") from exc
    names = set(polys)
    if names == set(DECOMPOSITION_DEGREES) | {"F"}:
        d = Decomposition(Q=polys["Q"], Qp=polys["Q'"], L=polys["L"], C=polys["C"])
        return QuarticInput(F=polys["F"], decomposition=d)
    if names == set(DECOMPOSITION_DEGREES):
        d = Decomposition(Q=polys["Q"], Qp=polys["Q'"], L=polys["L"], C=polys["C"])
        return QuarticInput(F=d.quartic(), decomposition=d)
    if names == {"F"}:
        return QuarticInput(F=polys["F"])
    raise InputError(f"Instance needs blocks Q, Q', L, C or F; got {', '.join(sorted(names))}")


def read_instance(path: str, field: ExactField = None) -> QuarticInput:
    file = Path(path)
    if not file.is_file():
        raise InputError(f"Instance file {path} does not exist")
    return parse_instance(file.read_text(encoding="utf-8"), field=field)


def format_instance(inp: QuarticInput, comments: List[str] = None) -> str:
    lines = [f"field {inp.field}"]
    lines.extend(f"# {c}" for c in comments or [])
    if inp.decomposition is not None:
        for name, poly in inp.decomposition.named().items():
            lines.append(f"{name}: {poly.to_text()}")
    else:
        lines.append(f"F: {inp.F.to_text()}")
    if inp.supplied_points is not None and len(inp.supplied_points):
        lines.extend(f"# node: {row}" for row in format_points(inp.supplied_points).splitlines()[1:])
    return "\n".join(lines) + "\n"


def write_instance(path: str, inp: QuarticInput, comments: List[str] = None) -> None:
    file = Path(path)
    file.parent.mkdir(parents=True, exist_ok=True)
    file.write_text(format_instance(inp, comments), encoding="utf-8")
