"""Syntax of the two-agent propositional language.

Formulas are built from propositional variables with the connectives
`&` (and), `|` (or), `->` (implies, right-associative), `~` (not) and the
two unary agent operators `S1`, `S2`.  Concrete grammar:

    formula := imp
    imp     := or ( "->" imp )?
    or      := and ( "|" and )*
    and     := unary ( "&" unary )*
    unary   := ("~" | "S1" | "S2") unary | atom
    atom    := IDENT | "(" formula ")"

Unicode spellings are accepted on input (`∧ ∨ ⇒ ¬`); output is always
ASCII.  `S1` and `S2` are reserved words and cannot name variables.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Sequence

RESERVED_WORDS = frozenset({"S1", "S2"})


class ParseError(Exception):
    """Malformed formula text; carries the offset and the token set that
    would have been accepted there."""

    def __init__(self, message: str, position: int, expected: Sequence[str] = ()):
        self.position = position
        self.expected = frozenset(expected)
        detail = f"{message} at position {position}"
        if self.expected:
            detail += " (expected " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(detail)


@dataclass(frozen=True)
class Formula:
    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __rshift__(self, other: "Formula") -> "Formula":
        return Implies(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)

    def __str__(self) -> str:
        return render_formula(self)


@dataclass(frozen=True)
class Var(Formula):
    name: str

    def __post_init__(self):
        if not _is_identifier(self.name) or self.name in RESERVED_WORDS:
            raise ValueError(f"invalid variable name: {self.name!r}")


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True)
class S1(Formula):
    child: Formula


@dataclass(frozen=True)
class S2(Formula):
    child: Formula


def _is_identifier(name: str) -> bool:
    if not name or not name[0].isascii() or not name[0].isalpha():
        return False
    return all(ch.isascii() and (ch.isalnum() or ch == "_") for ch in name)


# --- tokenizer ---

_UNICODE_ALIASES = {"∧": "&", "∨": "|", "¬": "~", "⇒": "->"}

# (kind, text, position); kinds are the literal operator spellings plus
# IDENT and EOF.
Token = tuple[str, str, int]


def _tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _UNICODE_ALIASES:
            tokens.append((_UNICODE_ALIASES[ch], ch, i))
            i += 1
            continue
        if ch == "-":
            if text.startswith("->", i):
                tokens.append(("->", "->", i))
                i += 2
                continue
            raise ParseError(f"unexpected character {ch!r}", i, ["->"])
        if ch in "&|~()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isascii() and ch.isalpha():
            j = i + 1
            while j < n and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = word if word in RESERVED_WORDS else "IDENT"
            tokens.append((kind, word, i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("EOF", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def imp(self) -> Formula:
        left = self.disjunction()
        if self.peek()[0] == "->":
            self.advance()
            return Implies(left, self.imp())
        return left

    def disjunction(self) -> Formula:
        node = self.conjunction()
        while self.peek()[0] == "|":
            self.advance()
            node = Or(node, self.conjunction())
        return node

    def conjunction(self) -> Formula:
        node = self.unary()
        while self.peek()[0] == "&":
            self.advance()
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        kind, _, _ = self.peek()
        if kind == "~":
            self.advance()
            return Not(self.unary())
        if kind == "S1":
            self.advance()
            return S1(self.unary())
        if kind == "S2":
            self.advance()
            return S2(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        kind, text, pos = self.peek()
        if kind == "IDENT":
            self.advance()
            return Var(text)
        if kind == "(":
            self.advance()
            node = self.imp()
            kind, _, pos = self.peek()
            if kind != ")":
                raise ParseError("unbalanced parenthesis", pos, [")"])
            self.advance()
            return node
        raise ParseError(
            f"expected a formula, found {text or 'end of input'!r}",
            pos,
            ["identifier", "(", "~", "S1", "S2"],
        )


def parse_formula(text: str) -> Formula:
    """Parse `text` into a Formula, or raise ParseError."""
    parser = _Parser(_tokenize(text))
    node = parser.imp()
    kind, tail, pos = parser.peek()
    if kind != "EOF":
        raise ParseError(f"trailing input {tail!r}", pos, ["&", "|", "->", "end of input"])
    return node


# --- rendering ---

# Binding strength used for minimal parenthesisation; higher binds tighter.
_PREC_IMP, _PREC_OR, _PREC_AND, _PREC_UNARY = 1, 2, 3, 4


def render_formula(f: Formula) -> str:
    """Minimal-parentheses ASCII text; parse_formula inverts it exactly."""
    return _render(f, _PREC_IMP)


def _render(f: Formula, min_prec: int) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Implies):
        text = _render(f.left, _PREC_OR) + " -> " + _render(f.right, _PREC_IMP)
        prec = _PREC_IMP
    elif isinstance(f, Or):
        text = _render(f.left, _PREC_OR) + " | " + _render(f.right, _PREC_AND)
        prec = _PREC_OR
    elif isinstance(f, And):
        text = _render(f.left, _PREC_AND) + " & " + _render(f.right, _PREC_UNARY)
        prec = _PREC_AND
    elif isinstance(f, Not):
        text = "~" + _render(f.child, _PREC_UNARY)
        prec = _PREC_UNARY
    elif isinstance(f, S1):
        text = "S1 " + _render(f.child, _PREC_UNARY)
        prec = _PREC_UNARY
    elif isinstance(f, S2):
        text = "S2 " + _render(f.child, _PREC_UNARY)
        prec = _PREC_UNARY
    else:
        raise TypeError(f"not a formula: {f!r}")
    if prec < min_prec:
        return "(" + text + ")"
    return text


# --- traversal utilities ---

def variables(f: Formula) -> list[str]:
    """Variable names occurring in f, sorted lexicographically."""
    found: set[str] = set()
    _collect_vars(f, found)
    return sorted(found)


def _collect_vars(f: Formula, out: set[str]) -> None:
    if isinstance(f, Var):
        out.add(f.name)
    elif isinstance(f, (And, Or, Implies)):
        _collect_vars(f.left, out)
        _collect_vars(f.right, out)
    else:
        _collect_vars(f.child, out)


def depth(f: Formula) -> int:
    """Connective nesting depth; a bare variable has depth 0."""
    if isinstance(f, Var):
        return 0
    if isinstance(f, (And, Or, Implies)):
        return 1 + max(depth(f.left), depth(f.right))
    return 1 + depth(f.child)


_UNARY_OPS = (Not, S1, S2)
_BINARY_OPS = (And, Or, Implies)


def enumerate_formulas(max_depth: int, var_names: Sequence[str]) -> Iterator[Formula]:
    """Every formula over var_names of depth <= max_depth, deterministically
    ordered by depth tier.  Tier sizes explode quickly; consume lazily."""
    current = [Var(v) for v in var_names]
    yield from current
    lower: list[tuple[Formula, int]] = [(f, 0) for f in current]
    for d in range(1, max_depth + 1):
        tier: list[tuple[Formula, int]] = []
        for cls in _UNARY_OPS:
            for f, fd in lower:
                if fd == d - 1:
                    g = cls(f)
                    tier.append((g, d))
                    yield g
        for cls in _BINARY_OPS:
            for lf, ld in lower:
                for rf, rd in lower:
                    if ld == d - 1 or rd == d - 1:
                        g = cls(lf, rf)
                        tier.append((g, d))
                        yield g
        lower.extend(tier)


def random_formula(rng: random.Random, max_depth: int, var_names: Sequence[str]) -> Formula:
    """One random formula of depth <= max_depth over var_names."""
    if max_depth == 0:
        return Var(rng.choice(var_names))
    pick = rng.randrange(7)
    if pick == 0:
        return Var(rng.choice(var_names))
    if pick <= 3:
        cls = _BINARY_OPS[pick - 1]
        return cls(
            random_formula(rng, max_depth - 1, var_names),
            random_formula(rng, max_depth - 1, var_names),
        )
    return _UNARY_OPS[pick - 4](random_formula(rng, max_depth - 1, var_names))


def random_formulas(
    count: int,
    max_depth: int,
    var_names: Sequence[str],
    seed: int = 0,
    distinct: bool = False,
) -> list[Formula]:
    """Seeded list of `count` random formulas; with distinct=True, no
    duplicates (the space must be large enough)."""
    rng = random.Random(seed)
    if not distinct:
        return [random_formula(rng, max_depth, var_names) for _ in range(count)]
    seen: set[Formula] = set()
    out: list[Formula] = []
    while len(out) < count:
        f = random_formula(rng, max_depth, var_names)
        if f not in seen:
            seen.add(f)
            out.append(f)
    return out
