"""Parsing and normalization of radical equations.

Grammar::

    equation := expr "=" expr ;
    expr     := term (("+"|"-") term)* ;
    term     := factor (("*"|"/") factor)* ;
    factor   := ["-"] atom ["^" integer] ;
    atom     := number | "x" | ident | "sqrt" "(" expr ")" | "(" expr ")" ;
    number   := integer ["/" positive-integer] | decimal ;

``-a^2`` reads as ``-(a^2)`` and a literal ``p/q`` is a single atom, so
``2/3^2`` is ``(2/3)^2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Union

from .algebra import Polynomial, RationalFunction


class EquationSyntaxError(ValueError):
    """Malformed equation text; ``offset`` is a 0-based byte offset."""

    def __init__(self, message: str, offset: int, expected: frozenset[str]):
        self.offset = offset
        self.expected = expected
        exp = ", ".join(sorted(expected))
        super().__init__(f"{message} at offset {offset} (expected one of: {exp})")


class UnsupportedForm(ValueError):
    """The equation parses but is not one of the solvable radical forms."""


# --- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Sqrt:
    radicand: "Expr"


Expr = Union[Const, Var, Param, Add, Sub, Neg, Mul, Div, Pow, Sqrt]


# --- tokenizer / parser ----------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<decimal>\d+\.\d*|\.\d+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()=])
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str  # "num", "int", "ident", "op", "end"
    text: str
    offset: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise EquationSyntaxError(f"unexpected character {text[pos]!r}",
                                      len(text[:pos].encode()),
                                      frozenset({"number", "x", "identifier", "operator"}))
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), len(text[:pos].encode())))
        pos = m.end()
    toks.append(_Tok("end", "", len(text.encode())))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, expected: set[str]):
        t = self.tok
        what = "end of input" if t.kind == "end" else repr(t.text)
        raise EquationSyntaxError(f"unexpected {what}", t.offset, frozenset(expected))

    def accept(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == op:
            self.i += 1
            return True
        return False

    def expect(self, op: str):
        if not self.accept(op):
            self.error({repr(op)})

    def equation(self):
        lhs = self.expr()
        self.expect_or({"=", "+", "-", "*", "/", "^"}, "=")
        rhs = self.expr()
        if self.tok.kind != "end":
            self.error({"end of input", "'+'", "'-'", "'*'", "'/'"})
        return lhs, rhs

    def expect_or(self, possible: set[str], op: str):
        if not self.accept(op):
            self.error({repr(p) for p in possible})

    def expr(self):
        node = self.term()
        while True:
            if self.accept("+"):
                node = Add(node, self.term())
            elif self.accept("-"):
                node = Sub(node, self.term())
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            if self.accept("*"):
                node = Mul(node, self.factor())
            elif self.accept("/"):
                node = Div(node, self.factor())
            else:
                return node

    def factor(self):
        neg = self.accept("-")
        node = self.atom()
        if self.accept("^"):
            if self.tok.kind != "int":
                self.error({"integer"})
            node = Pow(node, int(self.tok.text))
            self.i += 1
        return Neg(node) if neg else node

    _ATOM_START = {"number", "'x'", "identifier", "'sqrt'", "'('"}

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.i += 1
            value = Fraction(int(t.text))
            # "p/q" is a single rational literal
            nxt, after = self.toks[self.i], self.toks[self.i + 1] if self.i + 1 < len(self.toks) else None
            if (nxt.kind == "op" and nxt.text == "/" and after is not None
                    and after.kind == "int" and int(after.text) > 0):
                self.i += 2
                value = Fraction(int(t.text), int(after.text))
            return Const(value)
        if t.kind == "decimal":
            self.i += 1
            return Const(Fraction(t.text))
        if t.kind == "ident":
            self.i += 1
            if t.text == "x":
                return Var()
            if t.text == "sqrt":
                self.expect("(")
                inner = self.expr()
                self.expect_or({")", "+", "-", "*", "/", "^"}, ")")
                return Sqrt(inner)
            return Param(t.text)
        if self.accept("("):
            inner = self.expr()
            self.expect_or({")", "+", "-", "*", "/", "^"}, ")")
            return inner
        self.error(self._ATOM_START)


def parse(text: str) -> tuple[Expr, Expr]:
    """Parse ``lhs = rhs`` into a pair of expression trees."""
    return _Parser(text).equation()


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    e = p.expr()
    if p.tok.kind != "end":
        p.error({"end of input"})
    return e


# --- printer -------------------------------------------------------------------

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4}


def _prec(e: Expr) -> int:
    if isinstance(e, Const) and (e.value < 0 or e.value.denominator != 1):
        return 2  # "p/q" prints like a quotient
    return _PREC.get(type(e), 5)


def to_text(e: Expr) -> str:
    """Render an expression in the input grammar."""
    if isinstance(e, Const):
        v = e.value
        if v < 0:
            return "-" + to_text(Const(-v))
        return str(v)
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Param):
        return e.name
    if isinstance(e, Sqrt):
        return f"sqrt({to_text(e.radicand)})"
    if isinstance(e, Pow):
        base = to_text(e.base)
        if not isinstance(e.base, (Var, Param, Sqrt)) and not (
                isinstance(e.base, Const) and e.base.value >= 0):
            base = f"({base})"
        return f"{base}^{e.exponent}"
    if isinstance(e, Neg):
        inner = to_text(e.operand)
        if _prec(e.operand) < 3 or (isinstance(e.operand, Const) and e.operand.value < 0):
            inner = f"({inner})"
        return "-" + inner
    if isinstance(e, (Add, Sub)):
        op = "+" if isinstance(e, Add) else "-"
        left = to_text(e.left)
        right = to_text(e.right)
        if _prec(e.right) <= 1 or _starts_with_minus(e.right):
            right = f"({right})"
        return f"{left}{op}{right}"
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        left = to_text(e.left)
        right = to_text(e.right)
        if _prec(e.left) < 2:
            left = f"({left})"
        if _prec(e.right) <= 2 or _starts_with_minus(e.right):
            right = f"({right})"
        return f"{left}{op}{right}"
    raise TypeError(f"not an expression: {e!r}")


def _starts_with_minus(e: Expr) -> bool:
    return to_text(e).startswith("-")


def equation_to_text(lhs: Expr, rhs: Expr) -> str:
    return f"{to_text(lhs)}={to_text(rhs)}"


def rf_to_expr(f: RationalFunction) -> Expr:
    """Expression tree for a rational function (numerator over denominator)."""
    num = _poly_to_expr(f.num)
    if f.is_polynomial():
        return num
    return Div(num, _poly_to_expr(f.den))


def _poly_to_expr(p: Polynomial) -> Expr:
    if p.is_zero():
        return Const(Fraction(0))
    node: Optional[Expr] = None
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            mono: Expr = Const(mag)
        else:
            mono = Var() if i == 1 else Pow(Var(), i)
            if mag != 1:
                mono = Mul(Const(mag), mono)
        if node is None:
            if c < 0 and i > 0 and mag != 1:
                node = Mul(Const(c), mono.right)
            elif c < 0 and i == 0:
                node = Const(c)
            else:
                node = Neg(mono) if c < 0 else mono
        else:
            node = Sub(node, mono) if c < 0 else Add(node, mono)
    return node


# --- normalization ---------------------------------------------------------------

FORMS = ("FormRoots", "FormB", "FormD", "FormE", "FormF", "FormHF", "FormSumZero")

FORM_SHAPES = {
    "FormRoots": "sqrt(f) = sqrt(g)",
    "FormB": "sqrt(f) = g",
    "FormD": "sqrt(f) + sqrt(g) = h",
    "FormE": "sqrt(f) + sqrt(g) = sqrt(h)",
    "FormF": "sqrt(f) - sqrt(g) = h",
    "FormHF": "h*sqrt(f) = g",
    "FormSumZero": "sqrt(f1) + ... + sqrt(fn) = 0",
}


@dataclass(frozen=True)
class RadicalEquation:
    """A radical equation in one of the canonical forms.

    ``payload`` names depend on the form: (f, g) for FormRoots/FormB,
    (f, g, h) for FormD/FormE/FormF, (h, f, g) for FormHF and the radicand
    list for FormSumZero.
    """

    form: str
    payload: tuple[RationalFunction, ...]

    def __post_init__(self):
        if self.form not in FORMS:
            raise ValueError(f"unknown form {self.form!r}")
        n = len(self.payload)
        if self.form == "FormSumZero":
            if n < 2:
                raise ValueError("FormSumZero needs at least two radicands")
        elif n != (2 if self.form in ("FormRoots", "FormB") else 3):
            raise ValueError(f"{self.form} got {n} functions")

    @property
    def names(self) -> tuple[str, ...]:
        if self.form in ("FormRoots", "FormB"):
            return ("f", "g")
        if self.form == "FormHF":
            return ("h", "f", "g")
        if self.form == "FormSumZero":
            return tuple(f"f{i + 1}" for i in range(len(self.payload)))
        return ("f", "g", "h")

    def functions(self) -> dict[str, RationalFunction]:
        return dict(zip(self.names, self.payload))

    def sides(self) -> tuple[Expr, Expr]:
        """Expression trees of the canonical left and right sides."""
        fn = {k: rf_to_expr(v) for k, v in self.functions().items()}
        form = self.form
        if form == "FormRoots":
            return Sqrt(fn["f"]), Sqrt(fn["g"])
        if form == "FormB":
            return Sqrt(fn["f"]), fn["g"]
        if form == "FormD":
            return Add(Sqrt(fn["f"]), Sqrt(fn["g"])), fn["h"]
        if form == "FormE":
            return Add(Sqrt(fn["f"]), Sqrt(fn["g"])), Sqrt(fn["h"])
        if form == "FormF":
            return Sub(Sqrt(fn["f"]), Sqrt(fn["g"])), fn["h"]
        if form == "FormHF":
            return Mul(fn["h"], Sqrt(fn["f"])), fn["g"]
        lhs: Expr = Sqrt(fn["f1"])
        for name in self.names[1:]:
            lhs = Add(lhs, Sqrt(fn[name]))
        return lhs, Const(Fraction(0))

    def radicands(self) -> list[RationalFunction]:
        f = self.functions()
        if self.form == "FormSumZero":
            return list(self.payload)
        if self.form in ("FormB", "FormHF"):
            return [f["f"]]
        if self.form == "FormE":
            return [f["f"], f["g"], f["h"]]
        return [f["f"], f["g"]]

    def to_text(self) -> str:
        return equation_to_text(*self.sides())

    def __str__(self) -> str:
        return self.to_text()


@dataclass
class _Linear:
    """rational + sum(coef_i * sqrt(radicand_i)), radicals in source order."""

    rational: RationalFunction
    radicals: list[tuple[RationalFunction, RationalFunction]]

    @classmethod
    def const(cls, rf: RationalFunction) -> "_Linear":
        return cls(rf, [])

    def scaled(self, c: RationalFunction) -> "_Linear":
        return _Linear(self.rational * c, [(k * c, r) for k, r in self.radicals])

    def plus(self, other: "_Linear") -> "_Linear":
        return _Linear(self.rational + other.rational, self.radicals + other.radicals)


def _to_rf(e: Expr, bindings: Mapping[str, Fraction]) -> RationalFunction:
    lin = _linearize(e, bindings)
    if lin.radicals:
        raise UnsupportedForm("nested radical: a radicand may not contain sqrt")
    return lin.rational


def _linearize(e: Expr, bindings: Mapping[str, Fraction]) -> _Linear:
    if isinstance(e, Const):
        return _Linear.const(RationalFunction.constant(e.value))
    if isinstance(e, Var):
        return _Linear.const(RationalFunction.x())
    if isinstance(e, Param):
        if e.name not in bindings:
            raise UnsupportedForm(f"unbound parameter {e.name!r}")
        return _Linear.const(RationalFunction.constant(Fraction(bindings[e.name])))
    if isinstance(e, Add):
        return _linearize(e.left, bindings).plus(_linearize(e.right, bindings))
    if isinstance(e, Sub):
        return _linearize(e.left, bindings).plus(
            _linearize(e.right, bindings).scaled(RationalFunction.constant(-1)))
    if isinstance(e, Neg):
        return _linearize(e.operand, bindings).scaled(RationalFunction.constant(-1))
    if isinstance(e, Mul):
        a = _linearize(e.left, bindings)
        b = _linearize(e.right, bindings)
        if a.radicals and b.radicals:
            raise UnsupportedForm("product of radicals is not a supported form")
        if a.radicals:
            return a.scaled(b.rational)
        return b.scaled(a.rational)
    if isinstance(e, Div):
        a = _linearize(e.left, bindings)
        b = _linearize(e.right, bindings)
        if b.radicals:
            raise UnsupportedForm("radical in a denominator is not a supported form")
        if b.rational.is_zero():
            raise UnsupportedForm("division by an identically zero expression")
        return a.scaled(RationalFunction.constant(1) / b.rational)
    if isinstance(e, Pow):
        base = _linearize(e.base, bindings)
        if base.radicals:
            raise UnsupportedForm("power of a radical is not a supported form")
        return _Linear.const(base.rational ** e.exponent)
    if isinstance(e, Sqrt):
        return _Linear(RationalFunction.constant(0),
                       [(RationalFunction.constant(1), _to_rf(e.radicand, bindings))])
    raise TypeError(f"not an expression: {e!r}")


_ONE = RationalFunction.constant(1)
_MINUS_ONE = RationalFunction.constant(-1)


def normalize(lhs: Expr, rhs: Expr,
              bindings: Optional[Mapping[str, Fraction]] = None) -> RadicalEquation:
    """Reduce ``lhs = rhs`` to exactly one canonical radical form.

    Everything is moved to the left: ``R + sum(s_i*sqrt(f_i)) = 0``.  A
    single radical may carry any rational-function coefficient (FormHF);
    with two or more radicals every coefficient must be +1 or -1.
    """
    bindings = bindings or {}
    lin = _linearize(lhs, bindings).plus(
        _linearize(rhs, bindings).scaled(_MINUS_ONE))
    rads = lin.radicals
    R = lin.rational
    n = len(rads)
    if n == 0:
        raise UnsupportedForm("no radical in the equation")
    if n == 1:
        c, f = rads[0]
        # c*sqrt(f) + R = 0
        if c == _ONE:
            return RadicalEquation("FormB", (f, -R))
        if c == _MINUS_ONE:
            return RadicalEquation("FormB", (f, R))
        return RadicalEquation("FormHF", (c, f, -R))
    signs = []
    for c, _ in rads:
        if c == _ONE:
            signs.append(1)
        elif c == _MINUS_ONE:
            signs.append(-1)
        else:
            raise UnsupportedForm(
                "with two or more radicals each coefficient must be 1 or -1; "
                "fold constants into the radicand (2*sqrt(x) = sqrt(4*x))")
    fs = [f for _, f in rads]
    if n == 2:
        s1, s2 = signs
        if R.is_zero():
            if s1 == s2:
                return RadicalEquation("FormSumZero", tuple(fs))
            pos, neg = (fs[0], fs[1]) if s1 > 0 else (fs[1], fs[0])
            return RadicalEquation("FormRoots", (pos, neg))
        if s1 == s2:
            # s*(sqrt f + sqrt g) + R = 0  =>  sqrt f + sqrt g = -s*R
            h = -R if s1 > 0 else R
            return RadicalEquation("FormD", (fs[0], fs[1], h))
        pos, neg = (fs[0], fs[1]) if s1 > 0 else (fs[1], fs[0])
        # sqrt(pos) - sqrt(neg) + R = 0
        return RadicalEquation("FormF", (pos, neg, -R))
    if not R.is_zero():
        raise UnsupportedForm(
            f"{n} radicals plus a rational term is not a depth-2 form")
    if all(s == signs[0] for s in signs):
        return RadicalEquation("FormSumZero", tuple(fs))
    if n == 3:
        lone = 1 if signs.count(1) == 1 else -1
        others = [f for s, f in zip(signs, fs) if s != lone]
        single = next(f for s, f in zip(signs, fs) if s == lone)
        return RadicalEquation("FormE", (others[0], others[1], single))
    raise UnsupportedForm(f"{n} radicals with mixed signs are not a supported form")


def parse_equation(text: str,
                   bindings: Optional[Mapping[str, Fraction]] = None) -> RadicalEquation:
    lhs, rhs = parse(text)
    return normalize(lhs, rhs, bindings)


def parameters(e: Expr) -> set[str]:
    """Names of all parameter identifiers in an expression."""
    if isinstance(e, Param):
        return {e.name}
    if isinstance(e, (Add, Sub, Mul, Div)):
        return parameters(e.left) | parameters(e.right)
    if isinstance(e, Neg):
        return parameters(e.operand)
    if isinstance(e, Pow):
        return parameters(e.base)
    if isinstance(e, Sqrt):
        return parameters(e.radicand)
    return set()
