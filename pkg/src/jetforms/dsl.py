"""Text syntax for polynomials, jet polynomials and differential forms.

Grammar (whitespace insignificant)::

    expr    := term (("+" | "-") term)*
    term    := factor ("*" factor)*
    factor  := "-" factor | power
    power   := atom ("^" (INT | atom))*
    atom    := INT ["/" INT] | NAME | "d[" idx ("," idx)* [";" idx ("," idx)*] "]"
             | "(" expr ")"

``^`` followed by an integer is a power of a polynomial; between forms it is
the wedge product.  Names resolve to

* ``q1..qn``, ``u``, ``p1..pn``, ``e`` and declared parameters (polynomials),
* jet symbols ``phi``, ``phi_12``, ``psi_2`` for declared fields,
* ``dq1``, ``du``, ``dp1``, ``de``, ``dphi``, ``beta``, ``beta_k``, ``Omega``
  and ``contact`` (forms; need a jet context).

``d[1,2;3,4]`` is dq1^dq2^dp3^dp4, and ``d[1,2,3,4]`` is beta for n = 4.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exterior import DE, DifferentialForm, GeneratorSet, dp, dq, gen_from_name, wedge
from .jetcalc import JetContext
from .ratpoly import E, U, Polynomial, jet, p, param, q

RESERVED = {"u", "e", "beta", "Omega", "contact", "du", "de", "dphi", "d"}

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*(?:_[0-9]+)?)|(?P<op>[-+*/^()\[\];,]))"
)


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected: str = ""):
        super().__init__(f"{message} at position {position}" + (f" (expected {expected})" if expected else ""))
        self.position = position
        self.expected = expected


class DimensionError(ValueError):
    pass


class UnknownParameter(ValueError):
    pass


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(
        self,
        text: str,
        ctx: JetContext | None,
        params: Sequence[str],
        fields: Sequence[str],
        gens: GeneratorSet | None,
    ):
        self.toks = _tokenize(text)
        self.i = 0
        self.ctx = ctx
        self.params = set(params)
        self.fields = set(fields)
        self.gens = gens if gens is not None else (ctx.generators if ctx is not None else None)

    # token helpers --------------------------------------------------------
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            raise ParseError(f"unexpected {self.tok.text or 'end of input'!r}", self.tok.pos, repr(text))

    def expect_int(self) -> int:
        if self.tok.kind != "int":
            raise ParseError(f"unexpected {self.tok.text or 'end of input'!r}", self.tok.pos, "integer")
        v = int(self.tok.text)
        self.i += 1
        return v

    # grammar --------------------------------------------------------------
    def parse(self):
        value = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos, "end of input")
        return value

    def expr(self):
        value = self.term()
        while True:
            pos = self.tok.pos
            if self.accept("+"):
                value = self._add(value, self.term(), pos)
            elif self.accept("-"):
                value = self._add(value, _neg(self.term()), pos)
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            pos = self.tok.pos
            if not self.accept("*"):
                return value
            rhs = self.factor()
            if isinstance(value, DifferentialForm) and isinstance(rhs, DifferentialForm):
                if value.degree and rhs.degree:
                    raise ParseError("use ^ for the wedge of two forms", pos)
                value = wedge(value, rhs)
            else:
                value = value * rhs

    def factor(self):
        if self.accept("-"):
            return _neg(self.factor())
        return self.power()

    def power(self):
        value = self.atom()
        while True:
            pos = self.tok.pos
            if not self.accept("^"):
                return value
            if self.tok.kind == "int":
                k = self.expect_int()
                if isinstance(value, DifferentialForm):
                    if value.degree:
                        raise ParseError("cannot raise a form to a power", pos)
                    value = self._poly_of(value) ** k
                else:
                    value = value ** k
            else:
                rhs = self.atom()
                value = wedge(self._as_form(value, pos), self._as_form(rhs, pos))

    def atom(self):
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            num = int(tok.text)
            if self.accept("/"):
                den = self.expect_int()
                if den == 0:
                    raise ParseError("zero denominator", tok.pos)
                return Polynomial.const(Fraction(num, den))
            return Polynomial.const(num)
        if self.accept("("):
            value = self.expr()
            self.expect(")")
            return value
        if tok.kind == "name":
            self.i += 1
            if tok.text == "d" and self.tok.kind == "op" and self.tok.text == "[":
                return self.shorthand(tok.pos)
            return self.resolve(tok)
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.pos, "number, name or '('")

    def shorthand(self, pos: int) -> DifferentialForm:
        self.expect("[")
        ctx = self._need_ctx(pos)
        upper = [self.expect_int()]
        while self.accept(","):
            upper.append(self.expect_int())
        lower: list[int] = []
        if self.accept(";"):
            lower.append(self.expect_int())
            while self.accept(","):
                lower.append(self.expect_int())
        self.expect("]")
        for i in upper + lower:
            if not 1 <= i <= ctx.n:
                raise DimensionError(f"index {i} out of range for n={ctx.n}")
        gens = [dq(i) for i in upper] + [dp(i) for i in lower]
        return DifferentialForm.monomial(self.gens, gens)

    # name resolution --------------------------------------------------------
    def resolve(self, tok: _Tok):
        name = tok.text
        ctx = self.ctx
        n = ctx.n if ctx is not None else None

        def check_index(i: int) -> int:
            if n is not None and not 1 <= i <= n:
                raise DimensionError(f"{name}: index {i} out of range for n={n}")
            return i

        if name in self.params:
            return Polynomial.var(param(name))
        if name == "u":
            return Polynomial.var(U)
        if name == "e":
            return Polynomial.var(E)
        m = re.fullmatch(r"([qp])(\d+)", name)
        if m:
            i = check_index(int(m.group(2)))
            return Polynomial.var(q(i) if m.group(1) == "q" else p(i))
        m = re.fullmatch(r"([A-Za-z][A-Za-z0-9]*?)(?:_(\d+))?", name)
        if m and m.group(1) in self.fields:
            multi = tuple(check_index(int(ch)) for ch in (m.group(2) or ""))
            return Polynomial.var(jet(m.group(1), multi))
        # form atoms
        if name in ("du", "de", "dphi") or re.fullmatch(r"d[qp]\d+", name):
            self._need_ctx(tok.pos)
            g = gen_from_name(name)
            if g.rank in (0, 2):
                check_index(g.index)
            if g not in self.gens:
                raise DimensionError(f"generator {name} not available here")
            return DifferentialForm.monomial(self.gens, [g])
        if name == "beta":
            return self._need_ctx(tok.pos).beta.on(self.gens)
        if name.startswith("beta_"):
            mu = check_index(int(name[5:]))
            return self._need_ctx(tok.pos).beta_mu(mu).on(self.gens)
        if name == "Omega":
            return self._need_ctx(tok.pos).omega.on(self.gens)
        if name == "contact":
            return self._need_ctx(tok.pos).contact.on(self.gens)
        raise UnknownParameter(f"unknown name {name!r} at position {tok.pos}")

    def _need_ctx(self, pos: int) -> JetContext:
        if self.ctx is None:
            raise ParseError("differential forms need a dimension", pos)
        return self.ctx

    def _poly_of(self, f: DifferentialForm) -> Polynomial:
        return f.terms.get((), Polynomial())

    def _as_form(self, v, pos: int) -> DifferentialForm:
        if isinstance(v, DifferentialForm):
            return v
        self._need_ctx(pos)
        return DifferentialForm.scalar(self.gens, v)

    def _add(self, a, b, pos: int):
        if isinstance(a, DifferentialForm) or isinstance(b, DifferentialForm):
            a = self._as_form(a, pos)
            b = self._as_form(b, pos)
            if a.degree != b.degree and a and b:
                raise ParseError(f"cannot add a {a.degree}-form and a {b.degree}-form", pos)
        return a + b


def _neg(v):
    return -v


def parse_polynomial(text: str, params: Sequence[str] = (), fields: Sequence[str] = (), n: int | None = None) -> Polynomial:
    ctx = JetContext(n, tuple(params)) if n is not None else None
    value = _Parser(text, ctx, params, fields, None).parse()
    if isinstance(value, DifferentialForm):
        if value.degree:
            raise ParseError("expected a polynomial, got a form", 0)
        return value.terms.get((), Polynomial())
    return value


def parse_jet_polynomial(text: str, fields: Sequence[str] = ("phi",), params: Sequence[str] = (), n: int | None = None) -> Polynomial:
    return parse_polynomial(text, params=params, fields=fields, n=n)


def parse_form(
    text: str,
    ctx: JetContext,
    gens: GeneratorSet | None = None,
    fields: Sequence[str] = (),
    degree: int | None = None,
) -> DifferentialForm:
    """Parse a homogeneous form over ``gens`` (default: the jet generators of ``ctx``).

    ``degree`` fixes the degree of a zero result (the text ``0`` carries none)
    and is checked against nonzero results.
    """
    value = _Parser(text, ctx, ctx.params, fields, gens).parse()
    if isinstance(value, Polynomial):
        value = DifferentialForm.scalar(gens or ctx.generators, value)
    if degree is not None and value.degree != degree:
        if value:
            raise ParseError(f"expected a {degree}-form, got degree {value.degree}", 0)
        return DifferentialForm.zero(value.gens, degree)
    return value


def extended_generators(ctx: JetContext) -> GeneratorSet:
    """Jet generators plus de (the line-bundle fiber)."""
    return GeneratorSet.jet(ctx.n, extra=(DE,))


def helein_generators(ctx: JetContext) -> GeneratorSet:
    return GeneratorSet.helein(ctx.n)


__all__ = [
    "ParseError",
    "DimensionError",
    "UnknownParameter",
    "parse_polynomial",
    "parse_jet_polynomial",
    "parse_form",
    "extended_generators",
    "helein_generators",
    "RESERVED",
]
