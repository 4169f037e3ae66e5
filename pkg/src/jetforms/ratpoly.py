"""Exact multivariate polynomials over the rationals, plus exact linear algebra.

Coefficients are ``fractions.Fraction`` (always in lowest terms, positive
denominator).  A polynomial is a sparse map from monomials to coefficients,
where a monomial is a tuple of ``(Var, exponent)`` pairs sorted by the fixed
variable order

    q1 < ... < qn < u < p1 < ... < pn < e < jet symbols < parameters

Terms are printed in graded lexicographic order over that variable order.
Zero coefficients are never stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

_KIND_RANK = {"q": 0, "u": 1, "p": 2, "e": 3, "jet": 4, "param": 5}


@dataclass(frozen=True)
class Var:
    """A polynomial variable.

    ``kind`` is one of ``q`` (base coordinate, uses ``index``), ``u`` (fiber),
    ``p`` (momentum, uses ``index``), ``e`` (the extra fiber coordinate of the
    line bundle over the jet space), ``jet`` (a formal jet symbol, uses
    ``name`` for the field and ``multi`` for the sorted multi-index) and
    ``param`` (a named constant).
    """

    kind: str
    index: int = 0
    name: str = ""
    multi: tuple[int, ...] = ()
    key: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown variable kind {self.kind!r}")
        if self.kind == "jet":
            object.__setattr__(self, "multi", tuple(sorted(self.multi)))
        key = (_KIND_RANK[self.kind], self.name, len(self.multi), self.multi, self.index)
        object.__setattr__(self, "key", key)

    def __lt__(self, other: "Var") -> bool:
        return self.key < other.key

    @property
    def is_parameter(self) -> bool:
        return self.kind == "param"

    @property
    def order(self) -> int:
        """Jet order of a jet symbol (0 for every other kind)."""
        return len(self.multi)

    def __str__(self) -> str:
        if self.kind in ("q", "p"):
            return f"{self.kind}{self.index}"
        if self.kind in ("u", "e"):
            return self.kind
        if self.kind == "jet":
            if not self.multi:
                return self.name
            return self.name + "_" + "".join(str(i) for i in self.multi)
        return self.name


def q(i: int) -> Var:
    return Var("q", index=i)


def p(i: int) -> Var:
    return Var("p", index=i)


U = Var("u")
E = Var("e")


def param(name: str) -> Var:
    return Var("param", name=name)


def jet(fieldname: str, multi: Iterable[int] = ()) -> Var:
    return Var("jet", name=fieldname, multi=tuple(multi))


Monomial = tuple  # tuple[tuple[Var, int], ...], sorted by Var.key
Scalar = Union[int, Fraction]


class MissingAssignment(KeyError):
    """Raised by :meth:`Polynomial.eval` when a variable has no value."""

    def __init__(self, variable: Var):
        super().__init__(str(variable))
        self.variable = variable


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged: dict[Var, int] = dict(a)
    for v, k in b:
        merged[v] = merged.get(v, 0) + k
    return tuple(sorted(merged.items(), key=lambda item: item[0].key))


def _mono_degree(m: Monomial) -> int:
    return sum(k for _, k in m)


def mono_sort_key(m: Monomial) -> tuple:
    """Graded lexicographic key; smaller keys print first."""
    return (-_mono_degree(m), tuple((v.key, -k) for v, k in m))


class Polynomial:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = Fraction(c)
        self._terms = clean
        self._hash: int | None = None

    # construction -------------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> "Polynomial":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Scalar) -> "Polynomial":
        return cls({(): c})

    @classmethod
    def var(cls, v: Var) -> "Polynomial":
        return cls._raw({((v, 1),): Fraction(1)})

    @classmethod
    def coerce(cls, x: "Polynomial | Scalar | Var") -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, Var):
            return cls.var(x)
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Polynomial")

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def items(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical (graded lex) order."""
        return sorted(self._terms.items(), key=lambda kv: mono_sort_key(kv[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(m == () for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((), Fraction(0))

    def is_free_of_chart_variables(self) -> bool:
        """True when only parameters occur (constant for the exterior derivative)."""
        return all(v.is_parameter for m in self._terms for v, _ in m)

    def variables(self) -> set[Var]:
        return {v for m in self._terms for v, _ in m}

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(_mono_degree(m) for m in self._terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    # arithmetic ---------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, Var)):
            other = Polynomial.coerce(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Polynomial.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial._raw({})
            return Polynomial._raw({m: c * other for m, c in self._terms.items()})
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = Polynomial.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # calculus and evaluation -------------------------------------------
    def diff(self, v: Var) -> "Polynomial":
        """Formal partial derivative (parameters are ordinary variables here)."""
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            for i, (w, k) in enumerate(m):
                if w == v:
                    rest = m[:i] + (((w, k - 1),) if k > 1 else ()) + m[i + 1:]
                    out[rest] = out.get(rest, 0) + c * k
                    break
        return Polynomial({m: c for m, c in out.items() if c})

    def eval(self, assignment: Mapping[Var, Scalar]) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            val = c
            for v, k in m:
                if v not in assignment:
                    raise MissingAssignment(v)
                val *= Fraction(assignment[v]) ** k
            total += val
        return total

    def subs(self, mapping: Mapping[Var, "Polynomial | Scalar"]) -> "Polynomial":
        """Substitute polynomials for variables; unmapped variables are kept."""
        images = {v: Polynomial.coerce(x) for v, x in mapping.items()}
        powers: dict[tuple[Var, int], Polynomial] = {}

        def power(v: Var, k: int) -> Polynomial:
            if (v, k) not in powers:
                powers[(v, k)] = images[v] ** k
            return powers[(v, k)]

        out = Polynomial._raw({})
        for m, c in self._terms.items():
            kept = tuple((v, k) for v, k in m if v not in images)
            term = Polynomial._raw({kept: c})
            for v, k in m:
                if v in images:
                    term = term * power(v, k)
            out = out + term
        return out

    def split_by(self, predicate: Callable[[Var], bool]) -> dict[Monomial, "Polynomial"]:
        """Group terms by the part of each monomial whose variables satisfy ``predicate``.

        Returns ``{selected_monomial: cofactor}`` with ``self == sum(sel * cof)``.
        """
        groups: dict[Monomial, dict[Monomial, Fraction]] = {}
        for m, c in self._terms.items():
            sel = tuple((v, k) for v, k in m if predicate(v))
            rest = tuple((v, k) for v, k in m if not predicate(v))
            groups.setdefault(sel, {})[rest] = c
        return {sel: Polynomial._raw(t) for sel, t in groups.items()}

    # printing -----------------------------------------------------------
    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def monomial_poly(m: Monomial, c: Scalar = 1) -> Polynomial:
    return Polynomial({m: c})


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(m: Monomial) -> str:
    return "*".join(str(v) if k == 1 else f"{v}^{k}" for v, k in m)


def format_polynomial(poly: Polynomial) -> str:
    """Canonical text, parseable by :func:`jetforms.dsl.parse_polynomial`."""
    items = poly.items()
    if not items:
        return "0"
    parts = []
    for i, (m, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not m:
            body = format_scalar(a)
        elif a == 1:
            body = format_monomial(m)
        else:
            body = f"{format_scalar(a)}*{format_monomial(m)}"
        if i == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def monomials_up_to(variables: Sequence[Var], degree: int) -> list[Monomial]:
    """All monomials in ``variables`` of total degree <= ``degree``, in canonical order."""
    variables = sorted(variables, key=lambda v: v.key)
    out: list[Monomial] = []

    def rec(start: int, remaining: int, acc: list[tuple[Var, int]]) -> None:
        out.append(tuple(acc))
        for i in range(start, len(variables)):
            for k in range(1, remaining + 1):
                rec(i + 1, remaining - k, acc + [(variables[i], k)])

    rec(0, degree, [])
    return sorted(out, key=mono_sort_key)


# --------------------------------------------------------------------------
# exact linear algebra
# --------------------------------------------------------------------------

Matrix = list  # list[list[Fraction]]


class Cancelled(RuntimeError):
    """Raised when a cooperative cancellation check fires between pivots."""


def rref(
    rows: Sequence[Sequence[Scalar]],
    ncols: int | None = None,
    should_stop: Callable[[], bool] | None = None,
) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q. Returns (matrix, pivot columns).

    The input is not modified.  ``should_stop`` is polled before each pivot.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        if should_stop is not None and should_stop():
            raise Cancelled("elimination cancelled")
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        row_r = [x * inv for x in m[r]]
        m[r] = row_r
        nz = [j for j in range(c, len(row_r)) if row_r[j] != 0]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f != 0:
                    row_i = m[i]
                    for j in nz:
                        row_i[j] -= f * row_r[j]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(
    rows: Sequence[Sequence[Scalar]],
    ncols: int | None = None,
    should_stop: Callable[[], bool] | None = None,
) -> list[list[Fraction]]:
    """Basis of {x : M x = 0}, one vector per free column (empty iff trivial)."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    reduced, pivots = rref(rows, ncols, should_stop)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -reduced[i][free]
        basis.append(v)
    return basis


def solve(
    rows: Sequence[Sequence[Scalar]],
    rhs: Sequence[Scalar],
    should_stop: Callable[[], bool] | None = None,
) -> list[Fraction] | None:
    """One exact solution of M x = b (free variables set to 0), or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(aug, ncols + 1, should_stop)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = reduced[i][ncols]
    return x


def inverse(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    n = len(rows)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    reduced, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in reduced]


def matvec(m: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> list[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, v)), Fraction(0)) for row in m]


def iter_nonzero(v: Sequence[Fraction]) -> Iterator[tuple[int, Fraction]]:
    return ((i, x) for i, x in enumerate(v) if x != 0)
