"""Recursive-descent parser for class expressions.

    expr  := term (('+' | '-') term)*
    term  := unary ('*' unary)*
    unary := '-' unary | power
    power := atom ('^' ['-'] INT)?
    atom  := INT | NAME | '(' expr ')'

NAME is ``L``, ``P`` or a registered symbol. Negative powers are only
accepted on units of the form +-L^k.
"""
from dataclasses import dataclass
from typing import List, Optional

from logring.services.log_ring import LogClass
from logring.services.motive_ring import MotiveClass, SymbolTable, SymbolTableError


class InputError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None, source: str = None):
        self.line = line
        self.column = column
        self.source = source
        location = ""
        if line is not None:
            location = f"{source or '<expr>'}:{line}:{column}: "
        super().__init__(f"{location}{message}")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


_OPERATORS = set("+-*^()")


def tokenize(text: str, source: str = None) -> List[Token]:
    tokens: List[Token] = []
    line, column, i = 1, 1, 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line, column, i = line + 1, 1, i + 1
            continue
        if ch.isspace():
            column, i = column + 1, i + 1
            continue
        start = i
        if ch.isdigit():
            while i < len(text) and text[i].isdigit():
                i += 1
            kind = "int"
        elif ch.isalpha() or ch == "_":
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            kind = "name"
        elif ch in _OPERATORS:
            i += 1
            kind = ch
        else:
            raise InputError(f"unexpected character '{ch}'", line, column, source)
        tokens.append(Token(kind, text[start:i], line, column))
        column += i - start
    tokens.append(Token("end", "", line, column))
    return tokens


class ExpressionParser:
    def __init__(self, table: SymbolTable, text: str, source: str = None):
        self.table = table
        self.source = source
        self.tokens = tokenize(text, source)
        self.position = 0

    def _peek(self) -> Token:
        return self.tokens[self.position]

    def _advance(self) -> Token:
        token = self.tokens[self.position]
        self.position += 1
        return token

    def _error(self, message: str, token: Token) -> InputError:
        return InputError(message, token.line, token.column, self.source)

    def _expect(self, kind: str) -> Token:
        token = self._peek()
        if token.kind != kind:
            found = token.text or "end of input"
            raise self._error(f"expected '{kind}' but found '{found}'", token)
        return self._advance()

    def parse(self) -> LogClass:
        if self._peek().kind == "end":
            raise self._error("empty expression", self._peek())
        value = self._expr()
        token = self._peek()
        if token.kind != "end":
            raise self._error(f"unexpected '{token.text}'", token)
        return value

    def _expr(self) -> LogClass:
        value = self._term()
        while self._peek().kind in ("+", "-"):
            op = self._advance()
            rhs = self._term()
            value = value + rhs if op.kind == "+" else value - rhs
        return value

    def _term(self) -> LogClass:
        value = self._unary()
        while self._peek().kind == "*":
            self._advance()
            value = value * self._unary()
        return value

    def _unary(self) -> LogClass:
        if self._peek().kind == "-":
            self._advance()
            return -self._unary()
        return self._power()

    def _power(self) -> LogClass:
        base_token = self._peek()
        base = self._atom()
        if self._peek().kind != "^":
            return base
        self._advance()
        negative = False
        if self._peek().kind == "-":
            self._advance()
            negative = True
        exponent = int(self._expect("int").text)
        if not negative:
            return base ** exponent
        if not base.p_part.is_zero():
            raise self._error("negative powers are only allowed on units +-L^k", base_token)
        try:
            inverse = base.scalar_part.inverse()
        except ValueError:
            raise self._error("negative powers are only allowed on units +-L^k", base_token) from None
        return LogClass(inverse ** exponent)

    def _atom(self) -> LogClass:
        token = self._advance()
        if token.kind == "int":
            return LogClass.constant(self.table, int(token.text))
        if token.kind == "name":
            if token.text == "P":
                return LogClass.log_point(self.table)
            if token.text == "L":
                return LogClass(self.table.lefschetz())
            try:
                return LogClass(self.table.symbol(token.text))
            except SymbolTableError as exc:
                raise self._error(str(exc), token) from None
        if token.kind == "(":
            value = self._expr()
            self._expect(")")
            return value
        found = token.text or "end of input"
        raise self._error(f"unexpected '{found}'", token)


def parse_log_class(text: str, table: SymbolTable, source: str = None) -> LogClass:
    return ExpressionParser(table, text, source).parse()


def parse_motive_class(text: str, table: SymbolTable, source: str = None) -> MotiveClass:
    value = parse_log_class(text, table, source)
    if not value.p_part.is_zero():
        raise InputError(f"'{text}' involves P but a class in K0(Var) is expected", source=source)
    return value.scalar_part
