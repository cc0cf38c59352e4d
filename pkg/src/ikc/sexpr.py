"""Tiny s-expression reader shared by the term/type/env/derivation parsers.

Tokens: '(' ')' '[' ']', naturals, and identifiers.  Commas count as
whitespace so bracket lists may be written "[3, 2]" or "[3 2]".  The reader
returns nested Python lists; '[...]' becomes ("index", [ints]) so the
grammar layers above can tell the two bracket kinds apart.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputSyntaxError

IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
IDENT_CONT = IDENT_START | set("0123456789'") | {"-", ">", "^"}
# '-', '>' and '^' admit the operator heads "->" and "^" as plain atoms.


@dataclass(frozen=True)
class Token:
    kind: str  # "(" | ")" | "[" | "]" | "nat" | "ident"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace() or c == ",":
            i += 1
            continue
        if c in "()[]":
            toks.append(Token(c, c, i))
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token("nat", text[i:j], i))
            i = j
            continue
        if c in IDENT_START or c in "->^":
            j = i
            while j < n and text[j] in IDENT_CONT:
                j += 1
            toks.append(Token("ident", text[i:j], i))
            i = j
            continue
        raise InputSyntaxError(f"unexpected character {c!r} at offset {i}")
    return toks


# A parsed node is one of:
#   int                      natural
#   str                      identifier
#   ("index", [int, ...])    bracket list
#   [node, ...]              parenthesised list
Node = object


class _Reader:
    def __init__(self, toks: list[Token], text: str):
        self.toks = toks
        self.text = text
        self.i = 0

    def peek(self) -> Token | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self) -> Token:
        t = self.peek()
        if t is None:
            raise InputSyntaxError("unexpected end of input")
        self.i += 1
        return t

    def read(self) -> Node:
        t = self.next()
        if t.kind == "nat":
            return int(t.text)
        if t.kind == "ident":
            return t.text
        if t.kind == "[":
            items: list[int] = []
            while True:
                nxt = self.peek()
                if nxt is None:
                    raise InputSyntaxError(f"unclosed '[' at offset {t.pos}")
                if nxt.kind == "]":
                    self.next()
                    return ("index", items)
                if nxt.kind != "nat":
                    raise InputSyntaxError(
                        f"index entries must be naturals, got {nxt.text!r} at offset {nxt.pos}"
                    )
                items.append(int(self.next().text))
        if t.kind == "(":
            items2: list[Node] = []
            while True:
                nxt = self.peek()
                if nxt is None:
                    raise InputSyntaxError(f"unclosed '(' at offset {t.pos}")
                if nxt.kind == ")":
                    self.next()
                    return items2
                items2.append(self.read())
        raise InputSyntaxError(f"unexpected {t.text!r} at offset {t.pos}")


def read_one(text: str) -> Node:
    """Parse exactly one s-expression; trailing garbage is an error."""
    r = _Reader(tokenize(text), text)
    node = r.read()
    left = r.peek()
    if left is not None:
        raise InputSyntaxError(f"trailing input {left.text!r} at offset {left.pos}")
    return node


def is_index(node: Node) -> bool:
    return isinstance(node, tuple) and len(node) == 2 and node[0] == "index"
