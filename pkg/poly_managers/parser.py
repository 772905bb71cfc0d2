"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace is insignificant)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT | "x" INT | "#" INT | "(" expr ")"

Division is only allowed by nonzero constants, which covers rational literals
such as ``2/3*x0``. ``#n`` is the raw encoding of an element of GF(p^k).
"""
import re
from dataclasses import dataclass
from typing import Dict, List, Sequence

from app_managers.core.errors import FieldMismatchError, InputError, ParseError
from arith_managers.fields import RATIONALS, ExactField, FiniteField
from poly_managers.polynomials import MultiPoly

_TOKEN = re.compile(r"\s*(?:(?P<NUMBER>\d+)|(?P<VAR>x\d+)|(?P<ENC>#\d+)|(?P<POW>\*\*)|(?P<OP>[-+*/^()]))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN.match(text, pos)
        if not match or match.end() == pos:
            raise ParseError(f"Unexpected character {text[pos]!r}", position=pos, text=text)
        kind = match.lastgroup
        start = match.start(kind)
        token_text = match.group(kind)
        if kind == "POW":
            kind, token_text = "OP", "^"
        tokens.append(Token(kind=kind, text=token_text, position=start))
        pos = match.end()
    tokens.append(Token(kind="END", text="", position=len(text)))
    return tokens


class _Parser:
    """Builds a possibly non-homogeneous term map {exponent: raw coefficient}."""

    def __init__(self, text: str, nvars: int, field: ExactField) -> None:
        self.text = text
        self.nvars = nvars
        self.field = field
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def error(self, message: str, token: Token = None) -> ParseError:
        token = token or self.current
        return ParseError(message, position=token.position, text=self.text)

    def expect(self, text: str) -> Token:
        if self.current.text != text or self.current.kind != "OP":
            found = self.current.text or "end of input"
            raise self.error(f"Expected {text!r} but found {found!r}")
        return self.advance()

    def parse(self) -> Dict:
        if self.current.kind == "END":
            raise self.error("Empty polynomial")
        value = self.expr()
        if self.current.kind != "END":
            raise self.error(f"Unexpected token {self.current.text!r}")
        return value

    def expr(self) -> Dict:
        value = self.term()
        while self.current.kind == "OP" and self.current.text in "+-":
            op = self.advance().text
            rhs = self.term()
            value = _add(self.field, value, rhs if op == "+" else _neg(self.field, rhs))
        return value

    def term(self) -> Dict:
        value = self.unary()
        while self.current.kind == "OP" and self.current.text in "*/":
            op_token = self.advance()
            rhs = self.unary()
            if op_token.text == "*":
                value = _mul(self.field, value, rhs)
            else:
                constant = _as_constant(self.field, rhs, self.nvars)
                if constant is None:
                    raise self.error("Division is only allowed by constants", op_token)
                if self.field.is_zero(constant):
                    raise self.error("Division by zero", op_token)
                inv = self.field.inv(constant)
                value = {e: self.field.mul(c, inv) for e, c in value.items()}
        return value

    def unary(self) -> Dict:
        if self.current.kind == "OP" and self.current.text in "+-":
            op = self.advance().text
            value = self.unary()
            return value if op == "+" else _neg(self.field, value)
        return self.power()

    def power(self) -> Dict:
        base = self.atom()
        if self.current.kind == "OP" and self.current.text == "^":
            self.advance()
            token = self.current
            if token.kind != "NUMBER":
                raise self.error("Exponent must be a non-negative integer")
            self.advance()
            n = int(token.text)
            result = {(0,) * self.nvars: self.field.one}
            for _ in range(n):
                result = _mul(self.field, result, base)
            return result
        return base

    def atom(self) -> Dict:
        token = self.current
        if token.kind == "NUMBER":
            self.advance()
            return _constant(self.field, self.field.convert(int(token.text)), self.nvars)
        if token.kind == "ENC":
            self.advance()
            if not isinstance(self.field, FiniteField):
                raise self.error("Encoded literals are only valid over finite fields", token)
            try:
                value = self.field.from_encoding(int(token.text[1:]))
            except InputError as exc:
                raise self.error(str(exc), token)
            except FieldMismatchError as exc:
                raise FieldMismatchError(f"{exc} at position {token.position}") from exc
            return _constant(self.field, value, self.nvars)
        if token.kind == "VAR":
            self.advance()
            i = int(token.text[1:])
            if i >= self.nvars:
                raise self.error(f"Variable {token.text} is out of range for {self.nvars} variables", token)
            exp = [0] * self.nvars
            exp[i] = 1
            return {tuple(exp): self.field.one}
        if token.kind == "OP" and token.text == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        found = token.text or "end of input"
        raise self.error(f"Unexpected token {found!r}")


def _constant(field: ExactField, value, nvars: int) -> Dict:
    return {} if field.is_zero(value) else {(0,) * nvars: value}


def _as_constant(field: ExactField, value: Dict, nvars: int):
    if not value:
        return field.zero
    if set(value) == {(0,) * nvars}:
        return value[(0,) * nvars]
    return None


def _add(field: ExactField, a: Dict, b: Dict) -> Dict:
    out = dict(a)
    for e, c in b.items():
        total = field.add(out[e], c) if e in out else c
        if field.is_zero(total):
            out.pop(e, None)
        else:
            out[e] = total
    return out


def _neg(field: ExactField, a: Dict) -> Dict:
    return {e: field.neg(c) for e, c in a.items()}


def _mul(field: ExactField, a: Dict, b: Dict) -> Dict:
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            prod = field.mul(c1, c2)
            out[e] = field.add(out[e], prod) if e in out else prod
    return {e: c for e, c in out.items() if not field.is_zero(c)}


def parse_poly(text: str, nvars: int, field: ExactField = RATIONALS, degree: int = None) -> MultiPoly:
    """Parse ``text`` into a homogeneous MultiPoly in x0..x{nvars-1}."""
    terms = _Parser(text, nvars, field).parse()
    if not terms:
        return MultiPoly.zero(nvars, degree or 0, field)
    degrees = sorted({sum(e) for e in terms})
    expected = degree if degree is not None else max(degrees)
    offending = [e for e in terms if sum(e) != expected]
    if offending:
        names = ", ".join(_term_text(e, terms[e], field) for e in sorted(offending, reverse=True))
        raise InputError(f"Polynomial is not homogeneous of degree {expected}: offending terms {names}")
    return MultiPoly(nvars=nvars, degree=expected, field=field, terms=terms)


def _term_text(exp, coeff, field: ExactField) -> str:
    return MultiPoly._trusted(len(exp), sum(exp), field, {exp: coeff}).to_text()


def serialize_poly(f: MultiPoly, names: Sequence[str] = None) -> str:
    return f.to_text(names)
