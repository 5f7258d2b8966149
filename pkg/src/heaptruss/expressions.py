"""Expression language for heap words, truss products and ternary brackets.

Grammar (whitespace insignificant):

    expr  := mul
    mul   := prim { "*" prim }              left-associative
    prim  := IDENT
           | "(" expr ")"
           | "[" expr ("," expr)+ "]"       total arity odd, >= 3
           | "{" expr "," expr "," expr "}"
    IDENT := letter { letter | digit | "_" }

Identities are written "LHS == RHS".
"""
from __future__ import annotations

from dataclasses import dataclass


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class HeapOp:
    items: tuple


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Bracket3:
    first: object
    middle: object
    last: object


Expr = Var | HeapOp | Mul | Bracket3

_SYMBOLS = "*[]{}(),"


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    col: int


def _lex(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch in _SYMBOLS:
            tokens.append(_Token(ch, ch, line, col))
            col += 1
            i += 1
            continue
        if ch.isalpha():
            start = i
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(_Token("ident", text[start:i], line, col))
            col += i - start
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _lex(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self, kind: str) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != kind:
            what = tok.text or "end of input"
            raise ParseError(f"expected {kind!r}, found {what!r}", tok.line, tok.col)
        self.pos += 1
        return tok

    def parse_expr(self):
        node = self.parse_prim()
        while self.peek().kind == "*":
            self.take("*")
            node = Mul(node, self.parse_prim())
        return node

    def parse_prim(self):
        tok = self.peek()
        if tok.kind == "ident":
            self.take("ident")
            return Var(tok.text)
        if tok.kind == "(":
            self.take("(")
            node = self.parse_expr()
            self.take(")")
            return node
        if tok.kind == "[":
            self.take("[")
            items = [self.parse_expr()]
            while self.peek().kind == ",":
                self.take(",")
                items.append(self.parse_expr())
            self.take("]")
            if len(items) < 3 or len(items) % 2 == 0:
                raise ParseError(f"heap word arity must be odd and >= 3, got {len(items)}",
                                 tok.line, tok.col)
            return HeapOp(tuple(items))
        if tok.kind == "{":
            self.take("{")
            first = self.parse_expr()
            self.take(",")
            middle = self.parse_expr()
            self.take(",")
            last = self.parse_expr()
            self.take("}")
            return Bracket3(first, middle, last)
        what = tok.text or "end of input"
        raise ParseError(f"expected an expression, found {what!r}", tok.line, tok.col)


def parse(text: str):
    """Parse a single expression."""
    parser = _Parser(text)
    node = parser.parse_expr()
    parser.take("eof")
    return node


def parse_identity(text: str):
    """Parse 'LHS == RHS' into a pair of expressions."""
    parts = text.split("==")
    if len(parts) != 2:
        raise ParseError("an identity needs exactly one '=='", 1, 1)
    return parse(parts[0]), parse(parts[1])


def to_text(expr) -> str:
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, HeapOp):
        return "[" + ",".join(to_text(x) for x in expr.items) + "]"
    if isinstance(expr, Bracket3):
        return "{%s,%s,%s}" % (to_text(expr.first), to_text(expr.middle),
                               to_text(expr.last))
    if isinstance(expr, Mul):
        right = to_text(expr.right)
        if isinstance(expr.right, Mul):
            right = f"({right})"
        return f"{to_text(expr.left)}*{right}"
    raise TypeError(f"not an expression: {expr!r}")


def variables(expr) -> set[str]:
    if isinstance(expr, Var):
        return {expr.name}
    if isinstance(expr, HeapOp):
        out = set()
        for item in expr.items:
            out |= variables(item)
        return out
    if isinstance(expr, Mul):
        return variables(expr.left) | variables(expr.right)
    if isinstance(expr, Bracket3):
        return variables(expr.first) | variables(expr.middle) | variables(expr.last)
    raise TypeError(f"not an expression: {expr!r}")
