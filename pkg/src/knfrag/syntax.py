"""Formulas of multi-modal K, their clausal shape, and fragment classification.

Surface grammar (see `parse`):

    formula := imp
    imp     := or ("->" imp)?
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "~" unary | "<" ident ">" unary | "[" ident "]" unary | atom
    atom    := "T" | "F" | ident | "(" formula ")"
    ident   := [a-z][a-z0-9_]*

`T` is verum and `F` abbreviates `~T`.  `->` is right-associative and
desugars into negation and disjunction; `<a>` / `[a]` are the diamond and
box indexed by modality `a`.  Idents with a leading underscore are reserved
for machine-generated letters (the parser accepts them so that translated
formulas read back, but users should not introduce them).

A *positive literal* is built from `T`, letters, diamonds and boxes only.
A *clause* is a (possibly empty) chain of boxes over a disjunction of
literals and negated literals; a conjunction of clauses is a clausal
formula.  Clauses carry their negated and positive literals separately,
and print in implicative form (`p & q -> r`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator

__all__ = [
    "Modality",
    "Formula",
    "Top",
    "Prop",
    "Not",
    "Or",
    "And",
    "Diamond",
    "Box",
    "TOP",
    "BOTTOM",
    "Clause",
    "ClausalFormula",
    "FragmentDescriptor",
    "ParseError",
    "NotClausalError",
    "parse",
    "to_text",
    "recognize_clausal",
    "classify",
    "is_positive_literal",
    "modal_depth",
    "clause_letters",
    "consequent_letters",
    "letters",
    "formula_modalities",
    "node_count",
    "has_diamond",
    "has_box",
]

_IDENT_RE = re.compile(r"_?[a-z][a-z0-9_]*\Z")


@dataclass(frozen=True, order=True)
class Modality:
    """Index of an accessibility relation; identity is the name."""

    name: str

    def __post_init__(self):
        if not _IDENT_RE.match(self.name):
            raise ValueError(f"bad modality name: {self.name!r}")

    def __str__(self):
        return self.name


def _mod(m) -> Modality:
    return m if isinstance(m, Modality) else Modality(m)


# --- Abstract syntax ---


@dataclass(frozen=True)
class Formula:
    """Base class for formula nodes."""

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Prop(Formula):
    letter: str

    def __post_init__(self):
        if not _IDENT_RE.match(self.letter):
            raise ValueError(f"bad letter: {self.letter!r}")


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Diamond(Formula):
    modality: Modality
    operand: Formula

    def __post_init__(self):
        object.__setattr__(self, "modality", _mod(self.modality))


@dataclass(frozen=True)
class Box(Formula):
    modality: Modality
    operand: Formula

    def __post_init__(self):
        object.__setattr__(self, "modality", _mod(self.modality))


TOP = Top()
BOTTOM = Not(TOP)


def is_positive_literal(f: Formula) -> bool:
    """True for formulas built from T, letters, diamonds and boxes only."""
    while isinstance(f, (Diamond, Box)):
        f = f.operand
    return isinstance(f, (Top, Prop))


def letters(f: Formula) -> frozenset[str]:
    """All propositional letters occurring in f."""
    acc = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Prop):
            acc.add(g.letter)
        elif isinstance(g, Not):
            stack.append(g.operand)
        elif isinstance(g, (Or, And)):
            stack.append(g.left)
            stack.append(g.right)
        elif isinstance(g, (Diamond, Box)):
            stack.append(g.operand)
    return frozenset(acc)


def formula_modalities(f: Formula) -> frozenset[Modality]:
    """All modalities occurring in f."""
    acc = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Not):
            stack.append(g.operand)
        elif isinstance(g, (Or, And)):
            stack.append(g.left)
            stack.append(g.right)
        elif isinstance(g, (Diamond, Box)):
            acc.add(g.modality)
            stack.append(g.operand)
    return frozenset(acc)


def node_count(f: Formula) -> int:
    """Number of constructors in f (atoms count as one each)."""
    n = 0
    stack = [f]
    while stack:
        g = stack.pop()
        n += 1
        if isinstance(g, Not):
            stack.append(g.operand)
        elif isinstance(g, (Or, And)):
            stack.append(g.left)
            stack.append(g.right)
        elif isinstance(g, (Diamond, Box)):
            stack.append(g.operand)
    return n


def _has_node(f: Formula, cls) -> bool:
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, cls):
            return True
        if isinstance(g, Not):
            stack.append(g.operand)
        elif isinstance(g, (Or, And)):
            stack.append(g.left)
            stack.append(g.right)
        elif isinstance(g, (Diamond, Box)):
            stack.append(g.operand)
    return False


def has_diamond(f: Formula) -> bool:
    return _has_node(f, Diamond)


def has_box(f: Formula) -> bool:
    return _has_node(f, Box)


def modal_depth(lit: Formula) -> int:
    """Number of diamonds and boxes in a positive literal."""
    d = 0
    while isinstance(lit, (Diamond, Box)):
        d += 1
        lit = lit.operand
    if not isinstance(lit, (Top, Prop)):
        raise ValueError(f"not a positive literal: {lit}")
    return d


# --- Clausal form ---


def _lit_tuple(items: Iterable) -> tuple[Formula, ...]:
    out = []
    for l in items:
        if not isinstance(l, Formula) or not is_positive_literal(l):
            raise ValueError(f"not a positive literal: {l}")
        out.append(l)
    return tuple(out)


@dataclass(frozen=True)
class Clause:
    """A box prefix over a disjunction of negated and positive literals.

    `negatives` holds the literals that occur negated; `positives` the
    plain ones.  A bare literal is the clause with empty negatives, a bare
    negated literal the clause with empty positives.
    """

    prefix: tuple[Modality, ...] = ()
    negatives: tuple[Formula, ...] = ()
    positives: tuple[Formula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(_mod(m) for m in self.prefix))
        object.__setattr__(self, "negatives", _lit_tuple(self.negatives))
        object.__setattr__(self, "positives", _lit_tuple(self.positives))
        if not self.negatives and not self.positives:
            raise ValueError("empty clause")

    def to_formula(self) -> Formula:
        disjuncts = [Not(l) for l in self.negatives] + list(self.positives)
        body = reduce(Or, disjuncts)
        for m in reversed(self.prefix):
            body = Box(m, body)
        return body

    def __str__(self):
        return _clause_text(self)


@dataclass(frozen=True)
class ClausalFormula:
    """A non-empty conjunction of clauses."""

    clauses: tuple[Clause, ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if not self.clauses:
            raise ValueError("clausal formula needs at least one clause")
        if not all(isinstance(c, Clause) for c in self.clauses):
            raise ValueError("clauses must be Clause values")

    def to_formula(self) -> Formula:
        return reduce(And, (c.to_formula() for c in self.clauses))

    def alphabet(self) -> frozenset[str]:
        return frozenset().union(*(clause_letters(c) for c in self.clauses))

    def __str__(self):
        if len(self.clauses) == 1:
            return _clause_text(self.clauses[0])
        parts = []
        for c in self.clauses:
            text = _clause_text(c)
            if not c.prefix and len(c.negatives) + len(c.positives) >= 2:
                text = f"({text})"
            parts.append(text)
        return " & ".join(parts)


def clause_letters(c: Clause) -> frozenset[str]:
    """Letters occurring anywhere in the clause."""
    acc = frozenset()
    for l in c.negatives + c.positives:
        acc |= letters(l)
    return acc


def consequent_letters(c: Clause) -> frozenset[str]:
    """Letters occurring in the positive (consequent) literals."""
    acc = frozenset()
    for l in c.positives:
        acc |= letters(l)
    return acc


@dataclass(frozen=True)
class FragmentDescriptor:
    """Which clausal fragments a formula inhabits."""

    horn: bool
    krom: bool
    core: bool
    box_only: bool
    diamond_only: bool

    def as_dict(self) -> dict:
        return {
            "horn": self.horn,
            "krom": self.krom,
            "core": self.core,
            "box_only": self.box_only,
            "diamond_only": self.diamond_only,
        }


def classify(cf: ClausalFormula) -> FragmentDescriptor:
    """Fragment membership of a clausal formula.

    Horn: every clause has at most one positive literal.  Krom: every
    clause has at most two literals.  Core: both.  box_only/diamond_only:
    no diamond (resp. box) inside any literal; the clause prefix does not
    count.
    """
    horn = all(len(c.positives) <= 1 for c in cf.clauses)
    krom = all(len(c.negatives) + len(c.positives) <= 2 for c in cf.clauses)
    all_lits = [l for c in cf.clauses for l in c.negatives + c.positives]
    box_only = not any(has_diamond(l) for l in all_lits)
    diamond_only = not any(has_box(l) for l in all_lits)
    return FragmentDescriptor(horn, krom, horn and krom, box_only, diamond_only)


# --- Parsing ---


class ParseError(ValueError):
    """Syntax error with position and the token kinds that were expected."""

    def __init__(self, message, line, column, expected=()):
        super().__init__(f"{message} at {line}:{column}")
        self.line = line
        self.column = column
        self.expected = tuple(expected)


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<arrow>->)"
    r"|(?P<ident>_?[a-z][a-z0-9_]*)"
    r"|(?P<top>T)"
    r"|(?P<bot>F)"
    r"|(?P<punct>[~&|()<>\[\]])"
)


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        lexeme = m.group(0)
        if m.lastgroup != "ws":
            kind = m.lastgroup if m.lastgroup in ("ident", "arrow") else lexeme
            tokens.append((kind, lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    tokens.append(("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens, alphabet=None):
        self.tokens = tokens
        self.pos = 0
        self.alphabet = alphabet

    def peek(self):
        return self.tokens[self.pos][0]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        if self.peek() != kind:
            self.fail((kind,))
        return self.advance()

    def fail(self, expected):
        kind, lexeme, line, col = self.tokens[self.pos]
        shown = lexeme or "end of input"
        raise ParseError(
            f"expected {' or '.join(expected)}, found {shown!r}",
            line,
            col,
            expected,
        )

    def formula(self):
        return self.imp()

    def imp(self):
        left = self.disj()
        if self.peek() == "arrow":
            self.advance()
            right = self.imp()
            return _desugar_implies(left, right)
        return left

    def disj(self):
        f = self.conj()
        while self.peek() == "|":
            self.advance()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.peek() == "&":
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self):
        kind = self.peek()
        if kind == "~":
            self.advance()
            return Not(self.unary())
        if kind == "<":
            self.advance()
            name = self.expect("ident")[1]
            self.expect(">")
            return Diamond(Modality(name), self.unary())
        if kind == "[":
            self.advance()
            name = self.expect("ident")[1]
            self.expect("]")
            return Box(Modality(name), self.unary())
        return self.atom()

    def atom(self):
        kind, lexeme, line, col = self.tokens[self.pos]
        if kind == "T":
            self.advance()
            return TOP
        if kind == "F":
            self.advance()
            return BOTTOM
        if kind == "ident":
            self.advance()
            if self.alphabet is not None and lexeme not in self.alphabet:
                raise ParseError(f"letter {lexeme!r} not in the declared alphabet", line, col)
            return Prop(lexeme)
        if kind == "(":
            self.advance()
            f = self.formula()
            self.expect(")")
            return f
        self.fail(("T", "F", "ident", "(", "~", "<", "["))


def _and_chain(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        return _and_chain(f.left) + _and_chain(f.right)
    return [f]


def _desugar_implies(antecedent: Formula, consequent: Formula) -> Formula:
    # An implication whose antecedent is a conjunction desugars clause-style
    # (~a | ~b | c), so implicative clause text reads back as a clause.
    disjuncts = [Not(g) for g in _and_chain(antecedent)] + [consequent]
    return reduce(Or, disjuncts)


def parse(text: str, alphabet=None) -> Formula:
    """Parse `text` into a formula.

    If `alphabet` is given, letters outside it are rejected.  Raises
    `ParseError` with line/column and the expected-token set on bad input.
    """
    parser = _Parser(_tokenize(text), alphabet)
    f = parser.formula()
    if parser.peek() != "end":
        parser.fail(("end",))
    return f


# --- Printing ---

_PREC_OR, _PREC_AND, _PREC_UNARY = 1, 2, 3


def _prec(f: Formula) -> int:
    if isinstance(f, Or):
        return _PREC_OR
    if isinstance(f, And):
        return _PREC_AND
    return _PREC_UNARY


def _wrap(f: Formula, need: int) -> str:
    s = to_text(f)
    return f"({s})" if _prec(f) < need else s


def to_text(f) -> str:
    """Canonical text; reparsing yields a structurally identical value.

    Accepts formulas, clauses and clausal formulas; clauses print in
    implicative form.
    """
    if isinstance(f, (Clause, ClausalFormula)):
        return str(f)
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Prop):
        return f.letter
    if isinstance(f, Not):
        if isinstance(f.operand, Top):
            return "F"
        return "~" + _wrap(f.operand, _PREC_UNARY)
    if isinstance(f, Diamond):
        return f"<{f.modality}>" + _wrap(f.operand, _PREC_UNARY)
    if isinstance(f, Box):
        return f"[{f.modality}]" + _wrap(f.operand, _PREC_UNARY)
    if isinstance(f, And):
        return f"{_wrap(f.left, _PREC_AND)} & {_wrap(f.right, _PREC_AND + 1)}"
    if isinstance(f, Or):
        return f"{_wrap(f.left, _PREC_OR)} | {_wrap(f.right, _PREC_OR + 1)}"
    raise TypeError(f"not a formula: {f!r}")


def _clause_text(c: Clause) -> str:
    n, m = len(c.negatives), len(c.positives)
    if n == 0:
        body = " | ".join(to_text(l) for l in c.positives)
    elif m == 0:
        body = " | ".join("~" + _wrap(l, _PREC_UNARY) for l in c.negatives)
    else:
        ante = " & ".join(to_text(l) for l in c.negatives)
        cons = " | ".join(to_text(l) for l in c.positives)
        body = f"{ante} -> {cons}"
    if c.prefix and n + m >= 2:
        body = f"({body})"
    return "".join(f"[{a}]" for a in c.prefix) + body


# --- Clausal-form recognition ---


class NotClausalError(ValueError):
    """Raised when a formula is not literally in clausal form.

    `path` navigates from the root to the offending subformula via
    attribute names ("left", "right", "operand").
    """

    def __init__(self, message, path, offending=None):
        super().__init__(message)
        self.path = tuple(path)
        self.offending = offending


def _or_chain_with_paths(f, path) -> Iterator[tuple[tuple, Formula]]:
    if isinstance(f, Or):
        yield from _or_chain_with_paths(f.left, path + ("left",))
        yield from _or_chain_with_paths(f.right, path + ("right",))
    else:
        yield path, f


def _recognize_clause(f: Formula, path) -> Clause:
    if is_positive_literal(f):
        return Clause((), (), (f,))
    if isinstance(f, Not) and is_positive_literal(f.operand):
        return Clause((), (f.operand,), ())
    if isinstance(f, Box):
        inner = _recognize_clause(f.operand, path + ("operand",))
        return Clause((f.modality,) + inner.prefix, inner.negatives, inner.positives)
    if isinstance(f, Or):
        negatives, positives = [], []
        for subpath, d in _or_chain_with_paths(f, path):
            if is_positive_literal(d):
                positives.append(d)
            elif isinstance(d, Not) and is_positive_literal(d.operand):
                negatives.append(d.operand)
            else:
                raise NotClausalError(
                    f"disjunct is not a literal: {to_text(d)}", subpath, d
                )
        return Clause((), tuple(negatives), tuple(positives))
    raise NotClausalError(f"not a clause: {to_text(f)}", path, f)


def recognize_clausal(f: Formula) -> ClausalFormula:
    """Read a formula as a conjunction of clauses.

    Purely syntactic: conjunction and disjunction chains are flattened in
    order, nothing is reordered or simplified.  Leading boxes over a bare
    positive literal are absorbed into the literal (the literal-as-clause
    reading), not the prefix.  Raises `NotClausalError` otherwise.
    """
    clauses = []
    conjuncts = []

    def walk(g, path):
        if isinstance(g, And):
            walk(g.left, path + ("left",))
            walk(g.right, path + ("right",))
        else:
            conjuncts.append((path, g))

    walk(f, ())
    for path, g in conjuncts:
        clauses.append(_recognize_clause(g, path))
    return ClausalFormula(tuple(clauses))
