"""Recursive-descent parser for profile text.

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('+' | '-') factor | number | 'pi' | 'xi' | atom '(' args ')' | '(' expr ')'

Atom arguments are expressions that must fold to real constants. Division is only
allowed by constants.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from psdo.errors import ProfileArgumentError, ProfileSyntaxError
from psdo.symbols.profile import Const, XiProfile, bump, dirstep, jbracket, xi

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?j?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/(),])
    """,
    re.VERBOSE,
)

_ATOM_ARITY = {"const": 1, "dirstep": 3, "bump": 3, "jbracket": 1}


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    for offset, char in enumerate(text):
        # everything before the first non-ASCII char is one byte per char
        if ord(char) > 127:
            raise ProfileSyntaxError("non-ASCII character", offset)
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ProfileSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup or ""
        if kind != "ws":
            tokens.append(_Token(kind, match.group(), pos))
        pos = match.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self._tokens = _tokenize(text)
        self._index = 0

    @property
    def _current(self) -> _Token:
        return self._tokens[self._index]

    def _advance(self) -> _Token:
        token = self._tokens[self._index]
        self._index += 1
        return token

    def _expect(self, text: str) -> _Token:
        token = self._current
        if token.text != text:
            found = repr(token.text) if token.kind != "end" else "end of input"
            raise ProfileSyntaxError(f"expected {text!r}, found {found}", token.offset)
        return self._advance()

    def parse(self) -> XiProfile:
        if self._current.kind == "end":
            raise ProfileSyntaxError("empty profile", 0)
        result = self._expr()
        if self._current.kind != "end":
            raise ProfileSyntaxError(f"unexpected {self._current.text!r}", self._current.offset)
        return result

    def _expr(self) -> XiProfile:
        result = self._term()
        while self._current.text in ("+", "-"):
            op = self._advance().text
            rhs = self._term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def _term(self) -> XiProfile:
        result = self._factor()
        while self._current.text in ("*", "/"):
            op = self._advance()
            rhs = self._factor()
            if op.text == "*":
                result = result * rhs
                continue
            if not isinstance(rhs, Const):
                raise ProfileSyntaxError("division is only allowed by constants", op.offset)
            if rhs.value == 0:
                raise ProfileArgumentError(f"division by zero at byte {op.offset}")
            result = result * (1.0 / complex(rhs.value))
        return result

    def _factor(self) -> XiProfile:
        token = self._current
        if token.text in ("+", "-"):
            self._advance()
            inner = self._factor()
            return inner if token.text == "+" else -inner
        if token.kind == "number":
            self._advance()
            if token.text.endswith("j"):
                return Const(complex(0.0, float(token.text[:-1])))
            return Const(complex(float(token.text)))
        if token.text == "(":
            self._advance()
            inner = self._expr()
            self._expect(")")
            return inner
        if token.kind == "name":
            return self._named(token)
        found = repr(token.text) if token.kind != "end" else "end of input"
        raise ProfileSyntaxError(f"expected a number, atom or '(', found {found}", token.offset)

    def _named(self, token: _Token) -> XiProfile:
        self._advance()
        name = token.text
        if name == "pi":
            return Const(complex(math.pi))
        if name == "xi":
            return xi
        if name not in _ATOM_ARITY:
            raise ProfileSyntaxError(f"unknown name {name!r}", token.offset)
        self._expect("(")
        args = [self._real_argument(name)]
        while self._current.text == ",":
            self._advance()
            args.append(self._real_argument(name))
        self._expect(")")
        arity = _ATOM_ARITY[name]
        if len(args) != arity:
            msg = f"{name} takes {arity} argument(s), got {len(args)} (at byte {token.offset})"
            raise ProfileArgumentError(msg)
        return _build_atom(name, args, token.offset)

    def _real_argument(self, name: str) -> float:
        start = self._current.offset
        value = self._expr()
        if not isinstance(value, Const):
            raise ProfileSyntaxError(f"arguments of {name} must be constant", start)
        if complex(value.value).imag != 0:
            raise ProfileSyntaxError(f"arguments of {name} must be real", start)
        number = complex(value.value).real
        if not math.isfinite(number):
            raise ProfileSyntaxError(f"arguments of {name} must be finite", start)
        return number


def _build_atom(name: str, args: list[float], offset: int) -> XiProfile:
    try:
        if name == "const":
            return Const(complex(args[0]))
        if name == "dirstep":
            return dirstep(*args)
        if name == "bump":
            return bump(*args)
        return jbracket(args[0])
    except ValueError as exc:
        msg = f"{exc} (at byte {offset})"
        raise ProfileArgumentError(msg) from exc


def parse_profile(text: str) -> XiProfile:
    """Parse profile text into a folded expression tree."""
    return _Parser(text).parse()


def canonical_text(profile: XiProfile) -> str:
    return profile.to_text()
