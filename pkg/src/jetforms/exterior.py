"""Graded exterior algebra with polynomial coefficients.

Forms live over an ordered set of 1-form generators.  The canonical order is

    dq1 < ... < dqn < du < dp1 < ... < dpn < de < dphi

and a monomial is the strictly increasing tuple of its generators; the sign of
any other ordering is folded into the coefficient.  Every form is homogeneous.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .ratpoly import E, U, Polynomial, Scalar, Var, jet, p, q

_GEN_KINDS = ("dq", "du", "dp", "de", "dphi")


class GeneratorSetMismatch(ValueError):
    pass


class DegreeZero(ValueError):
    """Interior product of a 0-form."""


class MixedDegree(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Gen:
    """A basis 1-form (or, used as a direction, its dual coordinate vector)."""

    rank: int
    index: int = 0

    @property
    def kind(self) -> str:
        return _GEN_KINDS[self.rank]

    @property
    def name(self) -> str:
        return f"{self.kind}{self.index}" if self.rank in (0, 2) else self.kind

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return self.name


def dq(i: int) -> Gen:
    return Gen(0, i)


DU = Gen(1)


def dp(i: int) -> Gen:
    return Gen(2, i)


DE = Gen(3)
DPHI = Gen(4)

# the Hélein field coordinate shares its symbol with the order-0 jet symbol
PHI = jet("phi")


def gen_from_name(name: str) -> Gen:
    if name == "du":
        return DU
    if name == "de":
        return DE
    if name == "dphi":
        return DPHI
    for rank, prefix in ((0, "dq"), (2, "dp")):
        if name.startswith(prefix) and name[2:].isdigit():
            return Gen(rank, int(name[2:]))
    raise ValueError(f"not a generator name: {name!r}")


def variable_of(g: Gen) -> Var:
    return {0: lambda: q(g.index), 1: lambda: U, 2: lambda: p(g.index), 3: lambda: E, 4: lambda: PHI}[g.rank]()


@dataclass(frozen=True)
class GeneratorSet:
    n: int
    gens: tuple[Gen, ...]

    def __post_init__(self) -> None:
        if list(self.gens) != sorted(set(self.gens)):
            raise ValueError("generators must be distinct and in canonical order")
        for g in self.gens:
            if g.rank in (0, 2) and not 1 <= g.index <= self.n:
                raise ValueError(f"{g} out of range for n={self.n}")

    @classmethod
    def jet(cls, n: int, extra: Iterable[Gen] = ()) -> "GeneratorSet":
        gens = [dq(i) for i in range(1, n + 1)] + [DU] + [dp(i) for i in range(1, n + 1)]
        return cls(n, tuple(sorted(set(gens) | set(extra))))

    @classmethod
    def helein(cls, n: int) -> "GeneratorSet":
        gens = [dq(i) for i in range(1, n + 1)] + [dp(i) for i in range(1, n + 1)] + [DE, DPHI]
        return cls(n, tuple(sorted(gens)))

    def __contains__(self, g: Gen) -> bool:
        return g in self.gens

    def differential_of(self, v: Var) -> Gen | None:
        """Generator dv for a chart variable, None for parameters."""
        if v.is_parameter:
            return None
        if v.kind == "q":
            g = dq(v.index)
        elif v.kind == "p":
            g = dp(v.index)
        elif v.kind == "u":
            g = DU
        elif v.kind == "e":
            g = DE
        elif v == PHI:
            g = DPHI
        else:
            raise GeneratorSetMismatch(f"variable {v} has no differential")
        if g not in self:
            raise GeneratorSetMismatch(f"variable {v} needs generator {g}, absent from the set")
        return g


def _sort_sign(seq: Sequence[Gen]) -> tuple[int, tuple[Gen, ...]] | None:
    """Sign of the permutation sorting ``seq``; None if a generator repeats."""
    if len(set(seq)) != len(seq):
        return None
    lst = list(seq)
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(lst)


class DifferentialForm:
    """Homogeneous differential form: ``{monomial: Polynomial}`` over a GeneratorSet."""

    __slots__ = ("gens", "degree", "_terms")

    def __init__(self, gens: GeneratorSet, degree: int, terms: Mapping[tuple, Polynomial | Scalar] | None = None):
        self.gens = gens
        self.degree = degree
        clean: dict[tuple[Gen, ...], Polynomial] = {}
        for mono, c in (terms or {}).items():
            c = Polynomial.coerce(c)
            if not c:
                continue
            if len(mono) != degree:
                raise MixedDegree(f"monomial {mono} in a {degree}-form")
            res = _sort_sign(mono)
            if res is None:
                continue
            sign, key = res
            for g in key:
                if g not in gens:
                    raise GeneratorSetMismatch(f"{g} not in generator set")
            total = clean.get(key, Polynomial()) + (c if sign > 0 else -c)
            if total:
                clean[key] = total
            else:
                clean.pop(key, None)
        self._terms = clean

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, gens: GeneratorSet, degree: int) -> "DifferentialForm":
        return cls(gens, degree)

    @classmethod
    def scalar(cls, gens: GeneratorSet, c: Polynomial | Scalar) -> "DifferentialForm":
        return cls(gens, 0, {(): c})

    @classmethod
    def monomial(cls, gens: GeneratorSet, generators: Sequence[Gen], c: Polynomial | Scalar = 1) -> "DifferentialForm":
        return cls(gens, len(generators), {tuple(generators): c})

    # inspection -------------------------------------------------------------
    @property
    def terms(self) -> Mapping[tuple[Gen, ...], Polynomial]:
        return self._terms

    def items(self) -> list[tuple[tuple[Gen, ...], Polynomial]]:
        return sorted(self._terms.items())

    def coefficient(self, mono: Sequence[Gen]) -> Polynomial:
        res = _sort_sign(mono)
        if res is None:
            return Polynomial()
        sign, key = res
        c = self._terms.get(key, Polynomial())
        return c if sign > 0 else -c

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def has_constant_coefficients(self) -> bool:
        return all(c.is_free_of_chart_variables() for c in self._terms.values())

    def variables(self) -> set[Var]:
        return set().union(*(c.variables() for c in self._terms.values())) if self._terms else set()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return self.gens == other.gens and self.degree == other.degree and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.gens, self.degree, frozenset(self._terms.items())))

    # linear structure -------------------------------------------------------
    def _check(self, other: "DifferentialForm") -> None:
        if self.gens != other.gens:
            raise GeneratorSetMismatch("forms live over different generator sets")

    def __add__(self, other: "DifferentialForm") -> "DifferentialForm":
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        self._check(other)
        if other.degree != self.degree:
            if not other:
                return self
            if not self:
                return other
            raise MixedDegree(f"cannot add a {self.degree}-form and a {other.degree}-form")
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Polynomial()) + c
        return DifferentialForm(self.gens, self.degree, out)

    def __neg__(self) -> "DifferentialForm":
        return DifferentialForm(self.gens, self.degree, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "DifferentialForm") -> "DifferentialForm":
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        """Multiplication by a function (Polynomial or number)."""
        if isinstance(c, DifferentialForm):
            return NotImplemented
        c = Polynomial.coerce(c)
        return DifferentialForm(self.gens, self.degree, {m: c * a for m, a in self._terms.items()})

    __rmul__ = __mul__

    def map_coefficients(self, f) -> "DifferentialForm":
        return DifferentialForm(self.gens, self.degree, {m: f(c) for m, c in self._terms.items()})

    def on(self, gens: GeneratorSet) -> "DifferentialForm":
        """The same form regarded over a larger generator set."""
        if gens.n != self.gens.n:
            raise GeneratorSetMismatch("dimension differs")
        return DifferentialForm(gens, self.degree, self._terms)

    def wedge(self, other: "DifferentialForm") -> "DifferentialForm":
        return wedge(self, other)

    def __str__(self) -> str:
        return format_form(self)

    def __repr__(self) -> str:
        return f"DifferentialForm({format_form(self)!r}, degree={self.degree})"


def wedge(a: DifferentialForm, b: DifferentialForm) -> DifferentialForm:
    if a.gens != b.gens:
        raise GeneratorSetMismatch("wedge of forms over different generator sets")
    out: dict[tuple[Gen, ...], Polynomial] = {}
    for ma, ca in a.terms.items():
        sa = set(ma)
        for mb, cb in b.terms.items():
            if sa.intersection(mb):
                continue
            # inversions between two sorted runs
            inv = sum(1 for x in ma for y in mb if x > y)
            key = tuple(sorted(ma + mb))
            c = ca * cb
            out[key] = out.get(key, Polynomial()) + (-c if inv % 2 else c)
    return DifferentialForm(a.gens, a.degree + b.degree, out)


def wedge_all(forms: Sequence[DifferentialForm]) -> DifferentialForm:
    result = forms[0]
    for f in forms[1:]:
        result = wedge(result, f)
    return result


class PolyVectorField:
    """Vector field sum_g V[g] * d/dg with polynomial components."""

    def __init__(self, components: Mapping[Gen, Polynomial | Scalar]):
        self.components = {g: Polynomial.coerce(c) for g, c in components.items() if Polynomial.coerce(c)}

    def __repr__(self) -> str:
        return "PolyVectorField(" + ", ".join(f"{c}*d/d{variable_of(g)}" for g, c in sorted(self.components.items())) + ")"


class PolyBiVector:
    """Bivector sum w * A^B over ordered pairs of directions."""

    def __init__(self, pairs: Iterable[tuple[Gen, Gen, Polynomial | Scalar]]):
        self.pairs = []
        for a, b, w in pairs:
            if a == b:
                raise ValueError("bivector pair needs distinct directions")
            self.pairs.append((a, b, Polynomial.coerce(w)))


def contract_vector(v: PolyVectorField, a: DifferentialForm) -> DifferentialForm:
    """Interior product; graded Leibniz with respect to the wedge."""
    if a.degree == 0:
        raise DegreeZero("cannot contract a 0-form")
    for g in v.components:
        if g not in a.gens:
            raise GeneratorSetMismatch(f"direction {g} not in generator set")
    out: dict[tuple[Gen, ...], Polynomial] = {}
    for mono, c in a.terms.items():
        for i, g in enumerate(mono):
            comp = v.components.get(g)
            if comp is None:
                continue
            key = mono[:i] + mono[i + 1:]
            term = comp * c
            out[key] = out.get(key, Polynomial()) + (-term if i % 2 else term)
    return DifferentialForm(a.gens, a.degree - 1, out)


def direction(g: Gen, c: Polynomial | Scalar = 1) -> PolyVectorField:
    return PolyVectorField({g: c})


def contract_bivector(x: PolyBiVector, a: DifferentialForm) -> DifferentialForm:
    """(A^B) contracted into a means B contracted into (A contracted into a)."""
    if a.degree < 2:
        return DifferentialForm.zero(a.gens, 0)
    total = DifferentialForm.zero(a.gens, a.degree - 2)
    for ga, gb, w in x.pairs:
        inner = contract_vector(direction(ga), a)
        if not inner:
            continue
        total = total + contract_vector(direction(gb), inner) * w
    return total


def ext_d(a: DifferentialForm) -> DifferentialForm:
    """Exterior derivative; parameters are constants."""
    out: dict[tuple[Gen, ...], Polynomial] = {}
    for mono, c in a.terms.items():
        for v in c.variables():
            g = a.gens.differential_of(v)
            if g is None or g in mono:
                continue
            dc = c.diff(v)
            pos = sum(1 for h in mono if h < g)
            key = mono[:pos] + (g,) + mono[pos:]
            out[key] = out.get(key, Polynomial()) + (-dc if pos % 2 else dc)
    return DifferentialForm(a.gens, a.degree + 1, out)


def format_form(f: DifferentialForm) -> str:
    """Canonical text, parseable by :func:`jetforms.dsl.parse_form`."""
    items = f.items()
    if not items:
        return "0"
    parts = []
    for i, (mono, c) in enumerate(items):
        mono_txt = "^".join(g.name for g in mono)
        neg = False
        if len(c.terms) == 1:
            (m, k), = c.terms.items()
            neg = k < 0
            a = -c if neg else c
            if not mono_txt:
                body = str(a)
            elif a == 1:
                body = mono_txt
            else:
                body = f"{a}*{mono_txt}"
        else:
            body = f"({c})" + (f"*{mono_txt}" if mono_txt else "")
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(f" {'-' if neg else '+'} {body}")
    return "".join(parts)
