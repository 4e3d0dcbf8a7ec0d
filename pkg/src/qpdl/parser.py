"""Tokenizer and recursive-descent parser for the concrete syntax.

Errors carry a 1-based line and column plus the set of token kinds that
would have been accepted there.  The only backtracking point is a
parenthesised group in program position, which may turn out to be a
parenthesised formula followed by ``?``; the parser reports the failure
that got farthest when both readings die.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from . import ast


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int, expected: frozenset = frozenset()):
        super().__init__(f"{message} at line {line} column {col}")
        self.line = line
        self.col = col
        self.expected = expected


@dataclass
class Token:
    kind: str
    value: object
    line: int
    col: int


_GATE1_RE = re.compile(r"^(X|Z|H)_([0-9]+)$")
_CNOT_RE = re.compile(r"^CNOT_([0-9]+)_([0-9]+)$")
_FLIP_RE = re.compile(r"^flip_([0-9]+)_([0-9]+)$")
_WORD_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_NUM_RE = re.compile(r"[0-9]+")

RESERVED = {
    "true", "false", "one", "plus", "id", "box", "dia", "T",
    "bell", "ghz", "gamma", "ent", "cmp", "local", "localp",
    "testable", "leq", "eqf", "eqi", "perpf", "sqcup",
    "img", "post", "dom", "vec", "set0", "proj0", "unary1", "mov",
    "adj", "X", "Z", "H", "CNOT", "flip",
}

_SYMBOLS = ("->", "?", ";", "&", "|", "!", "~", "[", "]", "<", ">",
            "(", ")", "{", "}", ",", "+", "-")


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        start_line, start_col = line, col

        def emit(kind, value, width):
            nonlocal i, col
            tokens.append(Token(kind, value, start_line, start_col))
            i += width
            col += width

        if ch in "+-" and i + 1 < n and text[i + 1] == "_":
            m = _NUM_RE.match(text, i + 2)
            if not m:
                raise ParseError("qubit index expected after '_'", line, col + 2)
            emit("const", (ch, int(m.group())), m.end() - i)
            continue
        if text.startswith("->", i):
            emit("->", "->", 2)
            continue
        m = _NUM_RE.match(text, i)
        if m:
            word = m.group()
            if len(word) > 1 and word[0] == "0":
                raise ParseError("number with a leading zero", line, col)
            rest = text[m.end():m.end() + 1]
            if word in ("0", "1") and rest == "_":
                m2 = _NUM_RE.match(text, m.end() + 1)
                if not m2:
                    raise ParseError("qubit index expected after '_'", line, col)
                emit("const", (word, int(m2.group())), m2.end() - i)
            else:
                emit("number", int(word), m.end() - i)
            continue
        m = _WORD_RE.match(text, i)
        if m:
            word = m.group()
            g = _GATE1_RE.match(word)
            if g:
                emit("gate", (g.group(1), (int(g.group(2)),)), len(word))
                continue
            g = _CNOT_RE.match(word)
            if g:
                emit("gate", ("CNOT", (int(g.group(1)), int(g.group(2)))), len(word))
                continue
            g = _FLIP_RE.match(word)
            if g:
                emit("flip", (int(g.group(1)), int(g.group(2))), len(word))
                continue
            emit("word", word, len(word))
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                emit(sym, sym, len(sym))
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("eof", None, line, col))
    return tokens


_PROGRAM_ONLY_WORDS = {"id", "set0", "proj0", "unary1", "mov", "adj"}


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.far_pos = 0
        self.far_expected: set = set()

    # ----- token plumbing ---------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def accept(self, kind: str) -> Optional[Token]:
        tok = self.tokens[self.pos]
        if tok.kind == kind:
            self.pos += 1
            return tok
        self._note(kind)
        return None

    def expect(self, kind: str) -> Token:
        tok = self.accept(kind)
        if tok is None:
            self.fail(f"expected {kind!r}")
        return tok

    def _note(self, kind: str):
        if self.pos > self.far_pos:
            self.far_pos = self.pos
            self.far_expected = set()
        if self.pos == self.far_pos:
            self.far_expected.add(kind)

    def fail(self, message: str):
        at = max(self.pos, self.far_pos)
        tok = self.tokens[min(at, len(self.tokens) - 1)]
        expected = frozenset(self.far_expected) if at == self.far_pos else frozenset()
        shown = message
        if expected and at > self.pos:
            shown = "expected one of " + ", ".join(sorted(expected))
        raise ParseError(f"{shown} (found {tok.kind})", tok.line, tok.col, expected)

    # ----- shared pieces ------------------------------------------------------

    def index_set(self) -> tuple:
        self.expect("{")
        out = [self.expect("number").value]
        while self.accept(","):
            out.append(self.expect("number").value)
        self.expect("}")
        return tuple(sorted(set(out)))

    def bracket_numbers(self, count: int) -> list[int]:
        self.expect("[")
        out = [self.expect("number").value]
        while self.accept(","):
            out.append(self.expect("number").value)
        self.expect("]")
        if len(out) != count:
            self.fail(f"expected {count} indices")
        return out

    # ----- formulas -----------------------------------------------------------

    def formula(self) -> ast.Formula:
        left = self.f_or()
        if self.accept("->"):
            return ast.Implies(left, self.formula())
        return left

    def f_or(self) -> ast.Formula:
        left = self.f_and()
        while self.accept("|"):
            left = ast.Or(left, self.f_and())
        return left

    def f_and(self) -> ast.Formula:
        left = self.f_unary()
        while self.accept("&"):
            left = ast.And(left, self.f_unary())
        return left

    def f_unary(self) -> ast.Formula:
        if self.accept("!"):
            return ast.Not(self.f_unary())
        if self.accept("~"):
            return ast.Ortho(self.f_unary())
        tok = self.peek()
        if tok.kind == "word" and tok.value == "box":
            self.pos += 1
            return ast.BoxM(self.f_unary())
        if tok.kind == "word" and tok.value == "dia":
            self.pos += 1
            return ast.DiaM(self.f_unary())
        if self.accept("["):
            prog = self.program()
            self.expect("]")
            return ast.Box(prog, self.f_unary())
        if self.accept("<"):
            prog = self.program()
            self.expect(">")
            return ast.Dia(prog, self.f_unary())
        return self.f_atom()

    def f_atom(self) -> ast.Formula:
        tok = self.peek()
        if self.accept("("):
            body = self.formula()
            self.expect(")")
            return body
        if tok.kind == "const":
            self.pos += 1
            return ast.Const(tok.value[0], tok.value[1])
        if tok.kind == "word":
            return self.f_word_atom(tok)
        self._note("formula")
        self.fail("expected a formula")

    def f_word_atom(self, tok: Token) -> ast.Formula:
        word = tok.value
        self.pos += 1
        if word == "true":
            return ast.TrueF()
        if word == "false":
            return ast.FalseF()
        if word == "one":
            return ast.One()
        if word == "plus":
            return ast.Plus()
        if word == "T":
            return ast.Top(self.index_set())
        if word == "vec":
            # Order is kept: the k-th symbol goes with the k-th listed qubit.
            self.expect("{")
            qs = [self.expect("number").value]
            while self.accept(","):
                qs.append(self.expect("number").value)
            self.expect("}")
            qs = tuple(qs)
            self.expect("(")
            chars = []
            chars.append(self.vec_char())
            while self.accept(","):
                chars.append(self.vec_char())
            self.expect(")")
            if len(chars) != len(qs):
                self.fail("one state symbol per qubit expected")
            return ast.VecC(qs, "".join(chars))
        if word == "bell":
            x, y, i, j = self.bracket_numbers(4)
            if x not in (0, 1) or y not in (0, 1):
                self.fail("bell bits must be 0 or 1")
            return ast.Bell(x, y, i, j)
        if word == "ghz":
            i, j, k = self.bracket_numbers(3)
            return ast.GHZ(i, j, k)
        if word == "gamma":
            i, j = self.bracket_numbers(2)
            return ast.Gamma(i, j)
        if word == "ent":
            i, j = self.bracket_numbers(2)
            self.expect("(")
            prog = self.program()
            self.expect(")")
            return ast.Ent(i, j, prog)
        if word == "cmp":
            qs = self.index_set()
            self.expect("(")
            body = self.formula()
            self.expect(")")
            return ast.Component(body, qs)
        if word == "local":
            qs = self.index_set()
            self.expect("(")
            body = self.formula()
            self.expect(")")
            return ast.LocalF(body, qs)
        if word == "localp":
            qs = self.index_set()
            self.expect("(")
            prog = self.program()
            self.expect(")")
            return ast.LocalP(prog, qs)
        if word == "eqi":
            qs = self.index_set()
            self.expect("(")
            left = self.formula()
            self.expect(",")
            right = self.formula()
            self.expect(")")
            return ast.EqI(left, right, qs)
        if word in ("testable",):
            self.expect("(")
            body = self.formula()
            self.expect(")")
            return ast.Testable(body)
        if word in ("leq", "eqf", "perpf", "sqcup"):
            self.expect("(")
            left = self.formula()
            self.expect(",")
            right = self.formula()
            self.expect(")")
            cls = {"leq": ast.Leq, "eqf": ast.EqF,
                   "perpf": ast.PerpF, "sqcup": ast.Sqcup}[word]
            return cls(left, right)
        if word == "dom":
            self.expect("(")
            prog = self.program()
            self.expect(")")
            return ast.Dom(prog)
        if word in ("img", "post"):
            self.expect("(")
            prog = self.program()
            self.expect(",")
            body = self.formula()
            self.expect(")")
            return (ast.Img if word == "img" else ast.PostF)(prog, body)
        if word in RESERVED:
            self.pos -= 1
            self._note("formula")
            self.fail(f"{word!r} cannot appear here")
        return ast.Var(word)

    def vec_char(self) -> str:
        tok = self.peek()
        if tok.kind == "number" and tok.value in (0, 1):
            self.pos += 1
            return str(tok.value)
        if tok.kind in ("+", "-"):
            self.pos += 1
            return tok.kind
        self._note("state symbol")
        self.fail("expected one of 0 1 + -")

    # ----- programs -----------------------------------------------------------

    def program(self) -> ast.Program:
        left = self.p_seq()
        while self.accept("+"):
            left = ast.UnionP(left, self.p_seq())
        return left

    def p_seq(self) -> ast.Program:
        left = self.p_factor()
        while self.accept(";"):
            left = ast.SeqP(left, self.p_factor())
        return left

    def p_factor(self) -> ast.Program:
        tok = self.peek()
        if tok.kind == "gate":
            self.pos += 1
            return ast.GateP(tok.value[0], tok.value[1])
        if tok.kind == "flip":
            self.pos += 1
            return ast.Flip(tok.value[0], tok.value[1])
        if tok.kind == "word" and tok.value in _PROGRAM_ONLY_WORDS:
            return self.p_word(tok)
        if tok.kind == "word" and tok.value == "T":
            self.pos += 1
            qs = self.index_set()
            if self.accept("?"):
                return ast.Test(ast.Top(qs))
            return ast.TopP(qs)
        # Anything else should be a test: a formula followed by '?'.
        save = self.pos
        try:
            body = self.formula()
            self.expect("?")
            return ast.Test(body)
        except ParseError:
            self.pos = save
        if self.accept("("):
            prog = self.program()
            self.expect(")")
            return prog
        self._note("program")
        self.fail("expected a program")

    def p_word(self, tok: Token) -> ast.Program:
        word = tok.value
        self.pos += 1
        if word == "id":
            return ast.Id()
        if word == "set0":
            return ast.Set0(self.index_set())
        if word == "proj0":
            return ast.Proj0(self.index_set())
        if word == "unary1":
            self.expect("(")
            prog = self.program()
            self.expect(")")
            return ast.Unary1(prog)
        if word == "mov":
            i, j = self.bracket_numbers(2)
            self.expect("(")
            prog = self.program()
            self.expect(")")
            return ast.Mov(i, j, prog)
        if word == "adj":
            self.expect("(")
            prog = self.program()
            self.expect(")")
            return ast.Adj(prog)
        raise AssertionError(word)


def parse_formula(text: str) -> ast.Formula:
    p = _Parser(text)
    node = p.formula()
    if p.peek().kind != "eof":
        p.fail("unparsed input after formula")
    return node


def parse_program(text: str) -> ast.Program:
    p = _Parser(text)
    node = p.program()
    if p.peek().kind != "eof":
        p.fail("unparsed input after program")
    return node
