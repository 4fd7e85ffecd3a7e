"""Homogeneous polynomials in x, y, z over a cyclotomic field."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .scalars import FieldContext, Scalar

Monomial = tuple[int, int, int]

__all__ = [
    "GradedPoly",
    "LinearForm",
    "Monomial",
    "dim_graded_piece",
    "monomial_index",
    "monomials",
    "partials",
    "product_of_forms",
]


def dim_graded_piece(k: int) -> int:
    """Dimension of the degree-k part of C[x, y, z]."""
    return (k + 2) * (k + 1) // 2 if k >= 0 else 0


@lru_cache(maxsize=None)
def monomials(k: int) -> tuple[Monomial, ...]:
    """Degree-k monomials in graded-lexicographic order (x^k first)."""
    if k < 0:
        return ()
    return tuple((a, b, k - a - b) for a in range(k, -1, -1) for b in range(k - a, -1, -1))


@lru_cache(maxsize=None)
def monomial_index(k: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomials(k))}


class GradedPoly:
    """A homogeneous polynomial; ``terms`` maps exponent triples to nonzero scalars."""

    __slots__ = ("ctx", "degree", "terms")

    def __init__(self, ctx: FieldContext, degree: int, terms: Mapping[Monomial, Scalar]):
        clean = {}
        for m, c in terms.items():
            if sum(m) != degree or min(m) < 0:
                raise ValueError(f"monomial {m} does not have degree {degree}")
            c = ctx.scalar(c)
            if c:
                clean[tuple(m)] = c
        self.ctx = ctx
        self.degree = degree
        self.terms = clean

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedPoly):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __add__(self, other: GradedPoly) -> GradedPoly:
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise ValueError("cannot add polynomials of different degrees")
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return GradedPoly(self.ctx, self.degree, out)

    def __mul__(self, other) -> GradedPoly:
        if isinstance(other, GradedPoly):
            out: dict[Monomial, Scalar] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                    v = c1 * c2
                    out[m] = out[m] + v if m in out else v
            return GradedPoly(self.ctx, self.degree + other.degree, out)
        c = self.ctx.scalar(other)
        return GradedPoly(self.ctx, self.degree, {m: v * c for m, v in self.terms.items()})

    __rmul__ = __mul__

    def coefficient(self, m: Monomial) -> Scalar:
        return self.terms.get(tuple(m), self.ctx.zero)

    def dense(self) -> list[Scalar]:
        """Coefficient vector in the graded-lex basis of degree ``self.degree``."""
        zero = self.ctx.zero
        return [self.terms.get(m, zero) for m in monomials(self.degree)]

    def substitute(self, matrix) -> GradedPoly:
        """f(M·(x, y, z)) for a 3x3 matrix of scalars (rows give the new x, y, z)."""
        images = [LinearForm(self.ctx, tuple(row)).as_poly() for row in matrix]
        one = GradedPoly(self.ctx, 0, {(0, 0, 0): self.ctx.one})
        result = GradedPoly(self.ctx, self.degree, {})
        for (a, b, c), coeff in self.terms.items():
            term = one
            for img, e in zip(images, (a, b, c)):
                for _ in range(e):
                    term = term * img
            result = result + term * coeff
        return result

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in monomials(self.degree):
            if m in self.terms:
                mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip("xyz", m) if e)
                parts.append(f"({self.terms[m]})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


@dataclass(frozen=True)
class LinearForm:
    """a*x + b*y + c*z."""

    ctx: FieldContext
    coeffs: tuple[Scalar, Scalar, Scalar]

    def __post_init__(self):
        coeffs = tuple(self.ctx.scalar(c) for c in self.coeffs)
        if len(coeffs) != 3:
            raise ValueError("a linear form has exactly three coefficients")
        if not any(coeffs):
            raise ValueError("the zero form does not define a line")
        object.__setattr__(self, "coeffs", coeffs)

    def as_poly(self) -> GradedPoly:
        return GradedPoly(self.ctx, 1, dict(zip(((1, 0, 0), (0, 1, 0), (0, 0, 1)), self.coeffs)))

    def proportional_to(self, other: LinearForm) -> bool:
        a, b = self.coeffs, other.coeffs
        return not any(cross(a, b))

    def normalized(self) -> tuple[Scalar, Scalar, Scalar]:
        return normalize(self.coeffs)

    def transformed(self, matrix) -> LinearForm:
        """The form l(M·v), i.e. the row vector l times M."""
        return LinearForm(
            self.ctx,
            tuple(sum((self.coeffs[i] * matrix[i][j] for i in range(3)), self.ctx.zero) for j in range(3)),
        )


def cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def normalize(v):
    """Scale a nonzero projective triple so its first nonzero coordinate is 1."""
    for c in v:
        if c:
            inv = c.inverse()
            return tuple(x * inv for x in v)
    raise ValueError("zero vector has no projective normalization")


def product_of_forms(forms: Iterable[LinearForm]) -> GradedPoly:
    forms = list(forms)
    if not forms:
        raise ValueError("need at least one linear form")
    result = forms[0].as_poly()
    for form in forms[1:]:
        result = result * form.as_poly()
    return result


def partials(f: GradedPoly) -> tuple[GradedPoly, GradedPoly, GradedPoly]:
    """(f_x, f_y, f_z)."""
    if f.degree < 1:
        raise ValueError("partials need degree >= 1")
    out = []
    for var in range(3):
        terms = {}
        for m, c in f.terms.items():
            if m[var]:
                dm = list(m)
                dm[var] -= 1
                terms[tuple(dm)] = c * m[var]
        out.append(GradedPoly(f.ctx, f.degree - 1, terms))
    return tuple(out)
