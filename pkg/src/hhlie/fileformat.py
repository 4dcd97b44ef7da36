"""Line-oriented text format for presentations.

::

    # K[x]/(x^3) over GF(3)
    name  truncated cubic
    field GF 3
    vertex e
    arrow x e e
    rel   x^3

Directives: ``name``, ``field Q | GF p``, ``vertex id...``, ``arrow id s t``,
``rel expr``, ``weight arrow w``, ``order id...`` and ``truncate n``.  A ``#``
starts a comment.  Relation expressions use ``+``, ``-``, rational scalars,
``*`` for concatenation in traversal order, ``^`` for repetition and
parentheses.  A concatenation of paths that do not compose is rejected rather
than silently read as zero.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional

from .algebra import ZERO, Path, PathSum, Presentation, Quiver, compose, format_sum, validate
from .errors import InputError, ParseError
from .linalg import Field

__all__ = ["parse", "parse_file", "dump"]

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<id>[A-Za-z_][A-Za-z0-9_.']*)|(?P<op>[-+*^()]))")
_ID = re.compile(r"[A-Za-z_][A-Za-z0-9_.']*\Z")
_VID = re.compile(r"[A-Za-z0-9_.']+\Z")  # vertices may be numeric


class _Expr:
    """Recursive descent over one relation line."""

    def __init__(self, text: str, line: int, col0: int, field: Field, quiver: Quiver):
        self.text, self.line, self.col0 = text, line, col0
        self.field, self.quiver = field, quiver
        self.toks = self._lex()
        self.i = 0

    def _lex(self) -> list:
        toks, pos, s = [], 0, self.text
        while pos < len(s):
            if s[pos:].strip() == "":
                break
            m = _TOKEN.match(s, pos)
            if not m or m.end() == pos:
                col = pos + len(s[pos:]) - len(s[pos:].lstrip())
                raise ParseError(f"unexpected character {s[col]!r}", self.line, self.col0 + col)
            kind = m.lastgroup
            start = m.start(kind)
            toks.append((kind, m.group(kind), self.col0 + start))
            pos = m.end()
        toks.append(("end", "", self.col0 + len(s)))
        return toks

    def _peek(self):
        return self.toks[self.i]

    def _take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def _fail(self, msg, tok=None):
        tok = tok or self._peek()
        raise ParseError(msg, self.line, tok[2])

    def parse(self):
        if self._peek()[0] == "end":
            self._fail("empty relation")
        v = self._sum()
        if self._peek()[0] != "end":
            self._fail(f"unexpected {self._peek()[1]!r}")
        if not isinstance(v, PathSum):
            raise InputError(f"line {self.line}: relation is a bare scalar")
        return v

    # values are either a Fraction (a scalar) or a PathSum
    def _sum(self):
        v = self._signed()
        while self._peek()[1] in ("+", "-") and self._peek()[0] == "op":
            op = self._take()
            w = self._signed()
            v = self._add(v, w if op[1] == "+" else self._neg(w), op)
        return v

    def _signed(self):
        t = self._peek()
        if t[0] == "op" and t[1] in ("+", "-"):
            self._take()
            v = self._product()
            return self._neg(v) if t[1] == "-" else v
        return self._product()

    def _product(self):
        v = self._power()
        while self._peek()[0] == "op" and self._peek()[1] == "*":
            op = self._take()
            v = self._mul(v, self._power(), op)
        return v

    def _power(self):
        v = self._atom()
        if self._peek()[0] == "op" and self._peek()[1] == "^":
            op = self._take()
            t = self._take()
            if t[0] != "num" or "/" in t[1]:
                self._fail("exponent must be a non-negative integer", t)
            n = int(t[1])
            if n == 0:
                self._fail("exponent 0 is not allowed", t)
            out = v
            for _ in range(n - 1):
                out = self._mul(out, v, op)
            v = out
        return v

    def _atom(self):
        t = self._take()
        kind, val, _ = t
        if kind == "num":
            return Fraction(val)
        if kind == "id":
            q = self.quiver
            if val in q.arrow_index:
                return PathSum.of(self.field, q.arrow_path(val))
            if val in q.vertex_index:
                return PathSum.of(self.field, Path.vertex(val))
            raise ParseError(f"unknown id {val!r}", self.line, t[2])
        if kind == "op" and val == "(":
            v = self._sum()
            if self._peek()[1] != ")":
                self._fail("expected ')'")
            self._take()
            return v
        self._fail(f"unexpected {val!r}" if val else "unexpected end of relation", t)

    def _scalar(self, c):
        try:
            return self.field(c)
        except ZeroDivisionError as e:
            raise InputError(f"line {self.line}: {e}") from None

    def _neg(self, v):
        return -v

    def _add(self, v, w, tok):
        if isinstance(v, Fraction) and isinstance(w, Fraction):
            return v + w
        if isinstance(v, Fraction) or isinstance(w, Fraction):
            # constants have length 0; validate reports it as a short relation
            c, s = (v, w) if isinstance(v, Fraction) else (w, v)
            one = PathSum(self.field, {Path.vertex(x): 1 for x in self.quiver.vertices})
            return s + one.scaled(self._scalar(c))
        return v + w

    def _mul(self, v, w, tok):
        if isinstance(v, Fraction):
            return v * w if isinstance(w, Fraction) else w.scaled(self._scalar(v))
        if isinstance(w, Fraction):
            return v.scaled(self._scalar(w))
        for p, _ in v:
            for q, _ in w:
                if compose(p, q) is ZERO:
                    raise InputError(
                        f"line {self.line}, column {tok[2]}: {p} * {q} is zero "
                        f"({p} ends at {p.target}, {q} starts at {q.source})")
        return v * w


def _ids(args, line, col, what):
    pat = _VID if what == "vertex" else _ID
    for a in args:
        if not pat.match(a):
            raise ParseError(f"bad {what} id {a!r}", line, col)


def parse(text: str) -> Presentation:
    """Parse the text format into a validated :class:`Presentation`."""
    field: Optional[Field] = None
    vertices: list = []
    arrows: list = []
    rel_lines: list = []
    weights: list = []
    order = None
    trunc = None
    name = ""
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        col = len(line) - len(stripped) + 1
        key = stripped.split(None, 1)[0]
        rest = stripped[len(key):]
        rest_col = col + len(key) + (len(rest) - len(rest.lstrip()))
        rest = rest.strip()
        args = rest.split()
        if key == "name":
            name = rest
        elif key == "field":
            if field is not None:
                raise ParseError("field given twice", ln, col)
            field = _parse_field(args, ln, rest_col)
        elif key == "vertex":
            if not args:
                raise ParseError("vertex needs at least one id", ln, rest_col)
            _ids(args, ln, rest_col, "vertex")
            vertices += args
        elif key == "arrow":
            if len(args) != 3:
                raise ParseError("expected: arrow <id> <source> <target>", ln, rest_col)
            _ids(args[:1], ln, rest_col, "arrow")
            _ids(args[1:], ln, rest_col, "vertex")
            arrows.append(tuple(args))
        elif key == "rel":
            rel_lines.append((ln, rest_col, rest))
        elif key == "weight":
            if len(args) != 2 or not args[1].isdigit():
                raise ParseError("expected: weight <arrow> <non-negative integer>", ln, rest_col)
            weights.append((args[0], int(args[1])))
        elif key == "order":
            if order is not None:
                raise ParseError("order given twice", ln, col)
            order = tuple(args)
        elif key == "truncate":
            if len(args) != 1 or not args[0].isdigit():
                raise ParseError("expected: truncate <integer>", ln, rest_col)
            trunc = int(args[0])
        else:
            raise ParseError(f"unknown directive {key!r}", ln, col)
    if field is None:
        raise ParseError("missing field directive", 1, 1)
    quiver = Quiver(vertices, arrows)
    rels = []
    for ln, c, expr in rel_lines:
        rels.append(_Expr(expr, ln, c, field, quiver).parse())
    pres = Presentation(field, quiver, tuple(rels), weights=tuple(weights) or None,
                        order=order, truncation=trunc, name=name)
    return validate(pres)


def _parse_field(args, ln, col) -> Field:
    spec = "".join(args)
    m = re.fullmatch(r"(?:GF\(?(\d+)\)?|F_?(\d+))", spec)
    if spec in ("Q", "QQ", "0"):
        return Field(0)
    if not m:
        raise ParseError(f"unknown field {spec!r} (use Q or GF p)", ln, col)
    try:
        return Field(int(m.group(1) or m.group(2)))
    except ValueError as e:
        raise ParseError(str(e), ln, col) from None


def parse_file(path) -> Presentation:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    return parse(text)


def dump(pres: Presentation) -> str:
    """Text form of a presentation; ``parse(dump(p)) == p``."""
    out = []
    if pres.name:
        out.append(f"name {pres.name}")
    f = pres.field
    out.append("field Q" if f.characteristic == 0 else f"field GF {f.characteristic}")
    q = pres.quiver
    out.append("vertex " + " ".join(q.vertices))
    for a in q.arrows:
        out.append(f"arrow {a.id} {a.source} {a.target}")
    if pres.weights:
        out += [f"weight {a} {w}" for a, w in pres.weights]
    if pres.order is not None:
        out.append("order " + " ".join(pres.order))
    if pres.truncation is not None:
        out.append(f"truncate {pres.truncation}")
    for r in pres.relations:
        out.append("rel " + format_sum(r))
    return "\n".join(out) + "\n"
