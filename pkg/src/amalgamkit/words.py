"""Words, presentations and the line-oriented presentation format.

A word is a tuple of nonzero ints: ``k`` is generator ``k`` (1-based) and
``-k`` its inverse.  The text format::

    gens: x y          # names, whitespace separated
    rel: x^2
    rel: [x,y]^4 * (x*y)^-1

``[u,v]`` is ``u^-1 v^-1 u v``.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")


def _free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise ValueError("letter 0 is not a generator")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _free_reduce(self.letters))

    @classmethod
    def gen(cls, k: int) -> "Word":
        return cls((k,))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def commutator(self, other: "Word") -> "Word":
        return self.inverse() * other.inverse() * self * other

    def cyclic_reduce(self) -> "Word":
        ls = list(self.letters)
        while len(ls) > 1 and ls[0] == -ls[-1]:
            ls = ls[1:-1]
        return Word(tuple(ls))

    def substitute(self, images: Sequence["Word"]) -> "Word":
        """Replace generator k by ``images[k-1]``."""
        out: tuple[int, ...] = ()
        for x in self.letters:
            w = images[abs(x) - 1]
            out += w.letters if x > 0 else w.inverse().letters
        return Word(out)

    def evaluate(self, images: Sequence[T], mul: Callable[[T, T], T], inv: Callable[[T], T], one: T) -> T:
        out = one
        for x in self.letters:
            g = images[abs(x) - 1]
            out = mul(out, g if x > 0 else inv(g))
        return out

    def format(self, names: Sequence[str]) -> str:
        """Compact text: runs of one letter become powers."""
        if not self.letters:
            return "1"
        parts = []
        i = 0
        ls = self.letters
        while i < len(ls):
            j = i
            while j < len(ls) and ls[j] == ls[i]:
                j += 1
            k = (j - i) * (1 if ls[i] > 0 else -1)
            nm = names[abs(ls[i]) - 1]
            parts.append(nm if k == 1 else f"{nm}^{k}")
            i = j
        return "*".join(parts)


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


@dataclass
class Presentation:
    names: tuple[str, ...]
    relators: list[Word] = field(default_factory=list)
    labels: list[str] | None = field(default=None, compare=False)

    def __post_init__(self):
        self.names = tuple(self.names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be unique")
        self.relators = [Word(r.letters) for r in self.relators]
        if any(len(r) == 0 for r in self.relators):
            raise ValueError("empty relator")

    @property
    def ngens(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        """1-based generator number."""
        return self.names.index(name) + 1

    def word(self, *names: str) -> Word:
        return Word(tuple(self.index(nm) for nm in names))

    def parse_word(self, text: str) -> Word:
        return _Parser(text, 1, 0, self.names).parse_expr_full()

    def involutions(self) -> set[int]:
        """Generators k with k^2 among the relators."""
        return {r.letters[0] for r in self.relators
                if len(r) == 2 and r.letters[0] == r.letters[1] and r.letters[0] > 0}

    def with_relators(self, extra: Iterable[Word], labels: Iterable[str] | None = None) -> "Presentation":
        extra = list(extra)
        lab = None
        if self.labels is not None or labels is not None:
            lab = list(self.labels or [""] * len(self.relators))
            lab += list(labels) if labels is not None else [""] * len(extra)
        return Presentation(self.names, self.relators + extra, lab)

    def restrict(self, names: Sequence[str]) -> "Presentation":
        """Relators involving only ``names``, renumbered for the new generator list."""
        old = {self.index(nm): i + 1 for i, nm in enumerate(names)}
        rels, labs = [], []
        for i, r in enumerate(self.relators):
            if all(abs(x) in old for x in r.letters):
                rels.append(Word(tuple(old[abs(x)] * (1 if x > 0 else -1) for x in r.letters)))
                if self.labels is not None:
                    labs.append(self.labels[i])
        return Presentation(tuple(names), rels, labs if self.labels is not None else None)

    def to_text(self) -> str:
        lines = ["gens: " + " ".join(self.names)]
        for i, r in enumerate(self.relators):
            line = "rel: " + r.format(self.names)
            if self.labels and self.labels[i]:
                line += "  # " + self.labels[i]
            lines.append(line)
        return "\n".join(lines) + "\n"

    def content_hash(self) -> bytes:
        import hashlib

        return hashlib.sha256(self.to_text_plain().encode()).digest()

    def to_text_plain(self) -> str:
        return Presentation(self.names, self.relators).to_text()


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>-?\d+)|(?P<sym>[()\[\],*^]))")


class _Parser:
    def __init__(self, text: str, line: int, offset: int, names: Sequence[str]):
        self.text = text
        self.line = line
        self.offset = offset  # column offset of text within its line
        self.names = {nm: i + 1 for i, nm in enumerate(names)}
        self.pos = 0
        self.open: list[int] = []  # positions of unclosed brackets

    def _err(self, msg: str, pos: int | None = None):
        p = self.pos if pos is None else pos
        return ParseError(msg, self.line, self.offset + p + 1)

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> tuple[str, str, int] | None:
        self._skip_ws()
        if self.pos >= len(self.text):
            return None
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            raise self._err(f"unexpected character {self.text[self.pos]!r}")
        kind = m.lastgroup
        return kind, m.group(kind), self.pos

    def take(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            if self.open:
                raise self._err("unclosed bracket", self.open[-1])
            raise self._err("unexpected end of input")
        m = _TOKEN.match(self.text, self.pos)
        self.pos = m.end()
        return tok

    def expect(self, sym: str, opener: int | None = None) -> None:
        tok = self.peek()
        if tok is None:
            if opener is not None:
                raise self._err(f"unclosed bracket, expected {sym!r}", opener)
            raise self._err(f"expected {sym!r}")
        if tok[1] != sym:
            raise self._err(f"expected {sym!r}, found {tok[1]!r}", tok[2])
        self.take()

    def parse_expr_full(self) -> Word:
        if self.peek() is None:
            raise self._err("empty expression")
        w = self.expr()
        tok = self.peek()
        if tok is not None:
            raise self._err(f"unexpected {tok[1]!r}", tok[2])
        return w

    def expr(self) -> Word:
        w = self.term()
        while True:
            tok = self.peek()
            if tok is None or tok[1] != "*":
                return w
            self.take()
            w = w * self.term()

    def term(self) -> Word:
        w = self.atom()
        tok = self.peek()
        if tok is not None and tok[1] == "^":
            self.take()
            kind, val, p = self.take()
            if kind != "int":
                raise self._err("expected an integer exponent", p)
            w = w ** int(val)
        return w

    def atom(self) -> Word:
        kind, val, p = self.take()
        if kind == "name":
            if val not in self.names:
                raise self._err(f"unknown generator {val!r}", p)
            return Word((self.names[val],))
        if val == "(":
            self.open.append(p)
            w = self.expr()
            self.expect(")", p)
            self.open.pop()
            return w
        if val == "[":
            self.open.append(p)
            u = self.expr()
            self.expect(",", p)
            v = self.expr()
            self.expect("]", p)
            self.open.pop()
            return u.commutator(v)
        raise self._err(f"unexpected {val!r}", p)


def parse_presentation(text: str) -> Presentation:
    names: list[str] | None = None
    rels: list[Word] = []
    labels: list[str] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition("#")
        stripped = body.strip()
        if not stripped:
            continue
        col0 = len(body) - len(body.lstrip())
        if stripped.startswith("gens:"):
            if names is not None:
                raise ParseError("second gens line", ln, col0 + 1)
            names = stripped[5:].split()
            if not names:
                raise ParseError("no generator names", ln, col0 + 6)
            bad = [nm for nm in names if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", nm)]
            if bad:
                raise ParseError(f"bad generator name {bad[0]!r}", ln, body.index(bad[0]) + 1)
            if len(set(names)) != len(names):
                raise ParseError("repeated generator name", ln, col0 + 1)
        elif stripped.startswith("rel:"):
            if names is None:
                raise ParseError("relator before gens line", ln, col0 + 1)
            start = body.index("rel:") + 4
            w = _Parser(body[start:], ln, start, names).parse_expr_full()
            if len(w) == 0:
                raise ParseError("relator reduces to the empty word", ln, start + 1)
            rels.append(w)
            labels.append(comment.strip())
        else:
            raise ParseError("expected 'gens:' or 'rel:'", ln, col0 + 1)
    if names is None:
        raise ParseError("missing gens line", 1, 1)
    return Presentation(tuple(names), rels, labels if any(labels) else None)
