"""Multi-circled singularity expressions.

An expression describes a germ ``u`` through its convex image
``t -> u(e^{t_1}, ..., e^{t_n})`` on the closed negative orthant.  The DSL
grammar is::

    expr   := sum
    sum    := term ('+' term)*
    term   := [rational '*'] factor | rational
    factor := 'max' '(' expr (',' expr)+ ')'
            | 'x'INT ['^' '(' rational ')']
            | '(' expr ')'

An atom ``c*xj^(p)`` stands for ``t -> -c * (-t_j)^p``; with ``p = 1`` this is
``c * log|z_j|``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import json
import re
from typing import Union

import mpmath

from .errors import DomainError, ParseError, ValidationError
from .rational import fmt_rational, parse_rational

# working precision of non-exact evaluation: 50 bits beyond IEEE double
EVAL_PREC_BITS = 53 + 60


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Atom:
    index: int
    power: Fraction = Fraction(1)
    coeff: Fraction = Fraction(1)


@dataclass(frozen=True)
class Sum:
    children: tuple


@dataclass(frozen=True)
class Max:
    children: tuple


@dataclass(frozen=True)
class Scale:
    factor: Fraction
    child: "Node"


Node = Union[Const, Atom, Sum, Max, Scale]


@dataclass(frozen=True)
class SingularityExpr:
    n: int
    root: Node
    notes: tuple = field(default=(), compare=False)

    def __post_init__(self):
        validate(self.root, self.n)

    def __str__(self):
        return to_text(self.root)

    @property
    def is_piecewise_linear(self) -> bool:
        return all(a.power == 1 for a in atoms(self.root))


@dataclass(frozen=True)
class MonomialIdealPresentation:
    n: int
    exponents: tuple

    def __post_init__(self):
        if not self.exponents:
            raise ValidationError("monomial list is empty")
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.exponents)
        for row in rows:
            if len(row) != self.n:
                raise ValidationError(f"exponent {row} has length != n={self.n}")
            if any(x < 0 for x in row):
                raise ValidationError(f"negative exponent in {row}")
        object.__setattr__(self, "exponents", rows)


# ---------------------------------------------------------------------------
# validation and traversal


def atoms(node: Node):
    if isinstance(node, Atom):
        yield node
    elif isinstance(node, (Sum, Max)):
        for c in node.children:
            yield from atoms(c)
    elif isinstance(node, Scale):
        yield from atoms(node.child)


def validate(node: Node, n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"dimension must be a positive integer, got {n!r}")
    if isinstance(node, Const):
        return
    if isinstance(node, Atom):
        if not 1 <= node.index <= n:
            raise ValidationError(f"atom index x{node.index} outside 1..{n}")
        if not 0 < node.power <= 1:
            raise ValidationError(f"power {fmt_rational(node.power)} outside (0,1]")
        if node.coeff < 0:
            raise ValidationError(f"negative coefficient on x{node.index}")
        return
    if isinstance(node, Scale):
        if node.factor < 0:
            raise ValidationError("negative scale factor")
        validate(node.child, n)
        return
    if isinstance(node, Max) and len(node.children) < 2:
        raise ValidationError("max needs at least two arguments")
    if isinstance(node, Sum) and not node.children:
        raise ValidationError("empty sum")
    for c in node.children:
        validate(c, n)


# ---------------------------------------------------------------------------
# printing


def to_text(node: Node) -> str:
    if isinstance(node, Const):
        return fmt_rational(node.value)
    if isinstance(node, Atom):
        s = f"x{node.index}"
        if node.power != 1:
            s += f"^({fmt_rational(node.power)})"
        if node.coeff != 1:
            s = f"{fmt_rational(node.coeff)}*{s}"
        return s
    if isinstance(node, Sum):
        return " + ".join(to_text(c) for c in node.children)
    if isinstance(node, Max):
        return "max(" + ", ".join(to_text(c) for c in node.children) + ")"
    return f"{fmt_rational(node.factor)}*({to_text(node.child)})"


def to_json(node: Node) -> dict:
    if isinstance(node, Const):
        return {"type": "const", "value": fmt_rational(node.value)}
    if isinstance(node, Atom):
        return {
            "type": "atom",
            "index": node.index,
            "power": fmt_rational(node.power),
            "coeff": fmt_rational(node.coeff),
        }
    if isinstance(node, Scale):
        return {"type": "scale", "factor": fmt_rational(node.factor), "child": to_json(node.child)}
    kind = "sum" if isinstance(node, Sum) else "max"
    return {"type": kind, "children": [to_json(c) for c in node.children]}


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(max)\b|x(\d+)|(-?\d+(?:/\d+)?)|([()+*,^])|(\S))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        kw, idx, num, punct, junk = m.groups()
        if junk is not None:
            raise ParseError(f"unexpected character {junk!r} at offset {m.start(5)}")
        if kw:
            tokens.append(("max", kw))
        elif idx is not None:
            tokens.append(("var", idx))
        elif num is not None:
            tokens.append(("num", num))
        else:
            tokens.append((punct, punct))
        pos = m.end()
    tokens.append(("eof", ""))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> str:
        return self.tokens[self.pos][0]

    def take(self, kind: str) -> str:
        tok_kind, value = self.tokens[self.pos]
        if tok_kind != kind:
            got = value or "end of input"
            raise ParseError(f"expected {kind!r}, got {got!r} (token {self.pos})")
        self.pos += 1
        return value

    def rational(self) -> Fraction:
        text = self.take("num")
        num, _, den = text.partition("/")
        if den and int(den) == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den) if den else 1)

    def expr(self) -> Node:
        terms = [self.term()]
        while self.peek() == "+":
            self.take("+")
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> Node:
        if self.peek() != "num":
            return self.factor()[0]
        r = self.rational()
        if self.peek() != "*":
            return Const(r)
        self.take("*")
        node, bare_atom = self.factor()
        if r < 0:
            raise ValidationError(f"negative coefficient {fmt_rational(r)}")
        if bare_atom:
            return Atom(node.index, node.power, r * node.coeff)
        return Scale(r, node)

    def factor(self) -> tuple[Node, bool]:
        kind = self.peek()
        if kind == "max":
            self.take("max")
            self.take("(")
            args = [self.expr()]
            while self.peek() == ",":
                self.take(",")
                args.append(self.expr())
            self.take(")")
            if len(args) < 2:
                raise ParseError("max requires at least two arguments")
            return Max(tuple(args)), False
        if kind == "var":
            j = int(self.take("var"))
            p = Fraction(1)
            if self.peek() == "^":
                self.take("^")
                self.take("(")
                p = self.rational()
                self.take(")")
            if j < 1:
                raise ValidationError("atom indices start at 1")
            if not 0 < p <= 1:
                raise ValidationError(f"power {fmt_rational(p)} outside (0,1]")
            return Atom(j, p, Fraction(1)), True
        if kind == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node, False
        raise ParseError(f"unexpected token {self.tokens[self.pos][1] or 'end of input'!r}")


def parse(text: str, n: int | None = None) -> SingularityExpr:
    """Parse DSL text into an (uncanonicalized) expression.

    The dimension defaults to the largest atom index; pass ``n`` to embed the
    germ in a larger space.
    """
    p = _Parser(text)
    root = p.expr()
    if p.peek() != "eof":
        raise ParseError(f"trailing input at token {p.pos}: {p.tokens[p.pos][1]!r}")
    top = max((a.index for a in atoms(root)), default=0)
    if n is None:
        n = top
    if n < 1:
        raise ValidationError("expression has no atoms; dimension cannot be inferred")
    if top > n:
        raise ValidationError(f"atom x{top} exceeds declared dimension {n}")
    return _with_notes(SingularityExpr(n, root))


def _with_notes(e: SingularityExpr) -> SingularityExpr:
    if eval_convex_image(e, [0] * e.n) > 0:
        note = "expression is positive at the origin; additive constants are ignored downstream"
        return SingularityExpr(e.n, e.root, (note,))
    return e


# ---------------------------------------------------------------------------
# constructors


def from_monomials(m: MonomialIdealPresentation) -> SingularityExpr:
    """``max_i log|z^{alpha_i}|`` for the generators ``z^{alpha_i}`` of an ideal."""
    terms = []
    for row in m.exponents:
        parts = tuple(Atom(j + 1, Fraction(1), a) for j, a in enumerate(row) if a != 0)
        if not parts:
            terms.append(Const(Fraction(0)))
        else:
            terms.append(parts[0] if len(parts) == 1 else Sum(parts))
    root = terms[0] if len(terms) == 1 else Max(tuple(terms))
    return SingularityExpr(m.n, root)


def phi_weight(a, n: int | None = None) -> SingularityExpr:
    """The weight ``max_k a_k^{-1} log|z_k|``."""
    a = [parse_rational(x) for x in a]
    if n is None:
        n = len(a)
    if len(a) != n or n < 2:
        raise ValidationError("weight vector must have length n >= 2")
    if any(x <= 0 for x in a):
        raise ValidationError("weights must be positive")
    return SingularityExpr(n, Max(tuple(Atom(k + 1, Fraction(1), 1 / x) for k, x in enumerate(a))))


def monomials_from_json(obj: dict) -> MonomialIdealPresentation:
    try:
        n = int(obj["n"])
        rows = tuple(tuple(parse_rational(x) for x in row) for row in obj["monomials"])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"bad monomial JSON: {exc}") from exc
    return MonomialIdealPresentation(n, rows)


def load_text(text: str) -> SingularityExpr:
    """Parse either DSL text or a ``{"n", "monomials"}`` JSON document."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from exc
        return from_monomials(monomials_from_json(obj))
    return parse(text)


# ---------------------------------------------------------------------------
# evaluation


def eval_convex_image(e: SingularityExpr, t):
    """Evaluate the convex image at a point of the closed negative orthant.

    Returns a Fraction when every atom has power 1, otherwise an ``mpmath.mpf``
    computed with ``EVAL_PREC_BITS`` bits of working precision.
    """
    if len(t) != e.n:
        raise DomainError(f"point has {len(t)} coordinates, expected {e.n}")
    exact = e.is_piecewise_linear
    if exact:
        pt = [Fraction(x) for x in t]
    else:
        with mpmath.workprec(EVAL_PREC_BITS):
            pt = [mpmath.mpf(x) if not isinstance(x, Fraction) else mpmath.mpf(x.numerator) / x.denominator
                  for x in t]
    if any(x > 0 for x in pt):
        raise DomainError("convex image is only defined on the closed negative orthant")
    if exact:
        return _eval(e.root, pt)
    with mpmath.workprec(EVAL_PREC_BITS):
        return _eval(e.root, pt)


def _eval(node: Node, t):
    if isinstance(node, Const):
        if isinstance(t[0], Fraction):
            return node.value
        return mpmath.mpf(node.value.numerator) / node.value.denominator
    if isinstance(node, Atom):
        x = -t[node.index - 1]
        if isinstance(x, Fraction):
            return -node.coeff * x
        c = mpmath.mpf(node.coeff.numerator) / node.coeff.denominator
        if node.power == 1:
            return -c * x
        p = mpmath.mpf(node.power.numerator) / node.power.denominator
        return -c * mpmath.power(x, p)
    if isinstance(node, Sum):
        total = _eval(node.children[0], t)
        for c in node.children[1:]:
            total = total + _eval(c, t)
        return total
    if isinstance(node, Max):
        return max(_eval(c, t) for c in node.children)
    f = node.factor
    if isinstance(t[0], Fraction):
        return f * _eval(node.child, t)
    return (mpmath.mpf(f.numerator) / f.denominator) * _eval(node.child, t)


# ---------------------------------------------------------------------------
# canonical form and homogenization


def _scaled(node: Node, f: Fraction) -> Node:
    if isinstance(node, Const):
        return Const(node.value * f)
    if isinstance(node, Atom):
        return Atom(node.index, node.power, node.coeff * f)
    if isinstance(node, Sum):
        return Sum(tuple(_scaled(c, f) for c in node.children))
    if isinstance(node, Max):
        return Max(tuple(_scaled(c, f) for c in node.children))
    return _scaled(node.child, f * node.factor)


def _canon(node: Node) -> Node:
    if isinstance(node, Const):
        return node
    if isinstance(node, Atom):
        return Const(Fraction(0)) if node.coeff == 0 else node
    if isinstance(node, Scale):
        return _canon(_scaled(node.child, node.factor))
    kids = []
    for c in node.children:
        c = _canon(c)
        if type(c) is type(node):
            kids.extend(c.children)
        else:
            kids.append(c)
    if isinstance(node, Sum):
        const = sum((c.value for c in kids if isinstance(c, Const)), Fraction(0))
        merged: dict[tuple, Fraction] = {}
        rest = []
        for c in kids:
            if isinstance(c, Atom):
                key = (c.index, c.power)
                merged[key] = merged.get(key, Fraction(0)) + c.coeff
            elif not isinstance(c, Const):
                rest.append(c)
        kids = rest + [Atom(j, p, cf) for (j, p), cf in merged.items()]
        if const != 0 or not kids:
            kids.append(Const(const))
    else:
        consts = [c.value for c in kids if isinstance(c, Const)]
        kids = [c for c in kids if not isinstance(c, Const)]
        if consts:
            kids.append(Const(max(consts)))
        kids = list({to_text(c): c for c in kids}.values())
    kids.sort(key=to_text)
    if len(kids) == 1:
        return kids[0]
    return type(node)(tuple(kids))


def canonical(e: SingularityExpr) -> SingularityExpr:
    """Push scales into coefficients, flatten, merge, and sort children."""
    return SingularityExpr(e.n, _canon(e.root), e.notes)


def _homog(node: Node) -> Node:
    if isinstance(node, Const):
        return Const(Fraction(0))
    if isinstance(node, Atom):
        return node if node.power == 1 else Const(Fraction(0))
    if isinstance(node, Scale):
        return Scale(node.factor, _homog(node.child))
    kids = [_homog(c) for c in node.children]
    zero = [isinstance(c, Const) and c.value == 0 for c in kids]
    if isinstance(node, Max):
        # every homogeneous node is <= 0 on the orthant, so max(0, .) == 0 there
        if any(zero):
            return Const(Fraction(0))
        return Max(tuple(kids))
    kids = [c for c, z in zip(kids, zero) if not z]
    if not kids:
        return Const(Fraction(0))
    return kids[0] if len(kids) == 1 else Sum(tuple(kids))


def indicator_of(e: SingularityExpr) -> SingularityExpr:
    """Positively homogeneous part ``lim c^{-1} u(ct)`` computed structurally."""
    return SingularityExpr(e.n, _canon(_homog(_canon(e.root))))
