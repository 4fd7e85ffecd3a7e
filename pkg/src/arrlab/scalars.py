"""Exact arithmetic in Q and cyclotomic fields Q(zeta_n), plus exact matrix rank.

Elements of Q(zeta_n) are stored in the power basis 1, z, ..., z^(phi(n)-1)
with rational coordinates, where z denotes a fixed primitive n-th root of unity.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import MixedContextError, ParseError

__all__ = [
    "FieldContext",
    "Scalar",
    "cyclotomic_context",
    "parse_scalar",
    "rank",
    "rank_exact",
    "rank_modular",
    "rank_multimodular",
]


# ---------------------------------------------------------------------------
# dense univariate helpers over Q, coefficient lists low -> high


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = Fraction(b[-1])
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a.pop()
    return _trim(q), a


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _int_poly_exact_div(a: list[int], b: list[int]) -> list[int]:
    # b monic
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for shift in range(len(a) - len(b), -1, -1):
        c = a[shift + len(b) - 1]
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
    if any(a):
        raise ArithmeticError("inexact division in cyclotomic recursion")
    return q


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldContext:
    """The field Q(zeta_n), described by the n-th cyclotomic polynomial."""

    order: int
    minimal_polynomial: tuple[int, ...]  # low -> high, monic

    @property
    def degree(self) -> int:
        return len(self.minimal_polynomial) - 1

    def __repr__(self) -> str:
        return f"FieldContext(order={self.order})"

    def __reduce__(self):
        # contexts are compared by identity; unpickling must return the cached one
        return cyclotomic_context, (self.order,)

    def scalar(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.ctx is not self:
                raise MixedContextError(f"scalar from {value.ctx!r} used in {self!r}")
            return value
        if isinstance(value, str):
            return parse_scalar(value, self)
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(value)
        return Scalar(self, tuple(coeffs))

    @property
    def zero(self) -> "Scalar":
        return _zero(self)

    @property
    def one(self) -> "Scalar":
        return self.scalar(1)

    @property
    def zeta(self) -> "Scalar":
        """A primitive n-th root of unity (the class of z)."""
        return self.from_poly([0, 1])

    def from_poly(self, coeffs: Sequence) -> "Scalar":
        """Reduce a polynomial in z (low -> high) modulo the cyclotomic polynomial."""
        return Scalar(self, self._reduce([Fraction(c) for c in coeffs]))

    def _reduce(self, p: list) -> tuple:
        deg = self.degree
        phi = self.minimal_polynomial
        p = list(p)
        for i in range(len(p) - 1, deg - 1, -1):
            c = p[i]
            if c:
                base = i - deg
                for j in range(deg):
                    if phi[j]:
                        p[base + j] -= c * phi[j]
        p = p[:deg]
        p.extend([Fraction(0)] * (deg - len(p)))
        return tuple(p)


@lru_cache(maxsize=None)
def cyclotomic_context(n: int) -> FieldContext:
    """Return the context for Q(zeta_n); n = 1 (and n = 2) give Q itself."""
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    # z^n - 1 divided by Phi_m for every proper divisor m of n
    poly = [-1] + [0] * (n - 1) + [1]
    for m in range(1, n):
        if n % m == 0:
            poly = _int_poly_exact_div(poly, list(cyclotomic_context(m).minimal_polynomial))
    return FieldContext(n, tuple(poly))


@lru_cache(maxsize=None)
def _zero(ctx: FieldContext) -> "Scalar":
    return Scalar(ctx, (Fraction(0),) * ctx.degree)


class Scalar:
    """An element of Q(zeta_n). Immutable."""

    __slots__ = ("ctx", "coeffs", "_hash")

    def __init__(self, ctx: FieldContext, coeffs: tuple):
        if len(coeffs) != ctx.degree:
            raise ValueError("coefficient vector length must equal phi(n)")
        self.ctx = ctx
        self.coeffs = coeffs
        self._hash = None

    # -- coercion --------------------------------------------------------
    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.ctx is not self.ctx:
                raise MixedContextError(f"cannot combine {self.ctx!r} and {other.ctx!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.scalar(other)
        return NotImplemented

    # -- predicates ------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return other.ctx is self.ctx and other.coeffs == self.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs[0]) if self.is_rational() else hash((self.ctx.order, self.coeffs))
        return self._hash

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.ctx, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.ctx, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.ctx, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.ctx.degree == 1:
            return Scalar(self.ctx, (self.coeffs[0] * other.coeffs[0],))
        return Scalar(self.ctx, self.ctx._reduce(_poly_mul(self.coeffs, other.coeffs)))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_n)")
        if self.ctx.degree == 1:
            return Scalar(self.ctx, (1 / self.coeffs[0],))
        # extended Euclid: s*a + t*phi = g, g a nonzero constant since phi is irreducible
        a = _trim(list(self.coeffs))
        b = [Fraction(c) for c in self.ctx.minimal_polynomial]
        s0, s1 = [Fraction(1)], []
        while b:
            q, r = _poly_divmod(a, b)
            a, b = b, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # a is the gcd (a nonzero constant) and s0 * self = a modulo phi
        g = a[0]
        return self.ctx.from_poly([c / g for c in s0])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.ctx.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- rendering -------------------------------------------------------
    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                body = str(c)
            else:
                zpow = "z" if i == 1 else f"z^{i}"
                body = zpow if abs(c) == 1 else f"{abs(c)}*{zpow}"
                body = ("-" if c < 0 else "") + body
            parts.append(body)
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"Scalar({self}, n={self.ctx.order})"

    def residue(self, p: int, root: int) -> int:
        """Image in F_p under z -> root, where root has order n modulo p."""
        acc = 0
        power = 1
        for c in self.coeffs:
            if c:
                den = c.denominator % p
                if den == 0:
                    raise _BadPrime(p)
                acc += c.numerator * power * pow(den, -1, p)
            power = power * root % p
        return acc % p


# ---------------------------------------------------------------------------
# literal parsing


_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def parse_scalar(text: str, ctx: FieldContext) -> Scalar:
    """Parse a literal such as ``"-2/3"`` or ``"1 - z^2/3"`` into Q(zeta_n)."""
    if not isinstance(text, str):
        raise ParseError(f"scalar literal must be a string, got {type(text).__name__}")
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"malformed scalar literal {text!r}") from exc

    def walk(node) -> Scalar:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return ctx.scalar(node.value)
        if isinstance(node, ast.Name) and node.id == "z":
            return ctx.zeta
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                sign = 1
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    exp, sign = exp.operand, -1
                if not (isinstance(exp, ast.Constant) and type(exp.value) is int):
                    raise ParseError(f"exponent must be an integer literal in {text!r}")
                return walk(node.left) ** (sign * exp.value)
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if right.is_zero():
                raise ParseError(f"division by zero in {text!r}")
            return left / right
        raise ParseError(f"unsupported syntax in scalar literal {text!r}")

    return walk(tree)


# ---------------------------------------------------------------------------
# rank


class _BadPrime(Exception):
    pass


def _matrix_context(matrix: Sequence[Sequence[Scalar]]) -> FieldContext | None:
    ctx = None
    for row in matrix:
        for s in row:
            if not isinstance(s, Scalar):
                raise TypeError(f"matrix entries must be Scalar, got {type(s).__name__}")
            if ctx is None:
                ctx = s.ctx
            elif s.ctx is not ctx:
                raise MixedContextError("matrix entries belong to different fields")
    return ctx


def _shape(matrix) -> tuple[int, int]:
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if any(len(r) != cols for r in matrix):
        raise ValueError("ragged matrix")
    return rows, cols


def rank_exact(matrix: Sequence[Sequence[Scalar]]) -> int:
    """Rank by fraction-free (Bareiss) elimination.

    Over Q the rows are first scaled to integers and the whole elimination runs
    on Python ints; over Q(zeta_n) the same recurrence runs on field elements,
    where every Bareiss division is exact.
    """
    ctx = _matrix_context(matrix)
    rows, cols = _shape(matrix)
    if ctx is None or rows == 0 or cols == 0:
        return 0
    if ctx.degree == 1:
        a = []
        for row in matrix:
            vals = [s.coeffs[0] for s in row]
            lcm = 1
            for v in vals:
                lcm = lcm * v.denominator // _gcd(lcm, v.denominator)
            a.append([int(v * lcm) for v in vals])
        zero, one = 0, 1
        div = lambda x, y: x // y  # noqa: E731  exact by Bareiss
    else:
        a = [list(row) for row in matrix]
        zero, one = ctx.zero, ctx.one
        div = lambda x, y: x / y  # noqa: E731

    r = 0
    prev = one
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != zero), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, rows):
            ai = a[i]
            f = ai[c]
            ar = a[r]
            for j in range(c + 1, cols):
                ai[j] = div(p * ai[j] - f * ar[j], prev)
            ai[c] = zero
        prev = p
        r += 1
        if r == rows:
            break
    return r


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _rank_mod_p_array(a: np.ndarray, p: int) -> int:
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if below.size:
            a[below, c:] = (a[below, c:] - np.outer(a[below, c], a[r, c:]) % p) % p
        r += 1
    return r


def _to_residues(matrix, p: int, root: int) -> np.ndarray:
    # entries are frequently shared objects, so cache by identity
    cache: dict[int, int] = {}
    rows, cols = _shape(matrix)
    out = np.zeros((rows, cols), dtype=np.int64)
    for i, row in enumerate(matrix):
        for j, s in enumerate(row):
            key = id(s)
            v = cache.get(key)
            if v is None:
                v = 0 if not s else s.residue(p, root)
                cache[key] = v
            if v:
                out[i, j] = v
    return out


def rank_modular(matrix: Sequence[Sequence[Scalar]], p: int, root: int | None = None) -> int:
    """Rank of the image of ``matrix`` in F_p (p = 1 mod n), a lower bound for the true rank.

    Raises ValueError if some denominator vanishes modulo p.
    """
    ctx = _matrix_context(matrix)
    rows, cols = _shape(matrix)
    if ctx is None or rows == 0 or cols == 0:
        return 0
    if root is None:
        root = _root_of_unity(p, ctx.order)
    try:
        a = _to_residues(matrix, p, root)
    except _BadPrime as exc:
        raise ValueError(f"prime {p} divides a denominator") from exc
    return _rank_mod_p_array(a, p)


_PRIME_CEILING = 2**31


def _root_of_unity(p: int, n: int) -> int:
    from sympy import primitive_root

    if (p - 1) % n:
        raise ValueError(f"prime {p} is not 1 mod {n}")
    return pow(primitive_root(p), (p - 1) // n, p)


@lru_cache(maxsize=None)
def _prime_list(n: int, count: int = 16) -> tuple[tuple[int, int], ...]:
    from sympy import isprime

    out = []
    # largest candidate below the ceiling with candidate = 1 mod n
    cand = (_PRIME_CEILING - 2) - ((_PRIME_CEILING - 2 - 1) % n)
    while len(out) < count:
        if isprime(cand):
            out.append((cand, _root_of_unity(cand, n)))
        cand -= n
    return tuple(out)


def good_primes(ctx: FieldContext) -> Iterator[tuple[int, int]]:
    """Primes p = 1 mod n below 2^31 with a chosen element of order n, largest first."""
    yield from _prime_list(ctx.order)


def rank_multimodular(matrix: Sequence[Sequence[Scalar]], n_primes: int = 2) -> int | None:
    """Modular ranks at ``n_primes`` good primes; the common value, or None on disagreement."""
    ctx = _matrix_context(matrix)
    rows, cols = _shape(matrix)
    if ctx is None or rows == 0 or cols == 0:
        return 0
    ranks = []
    for p, root in good_primes(ctx):
        try:
            a = _to_residues(matrix, p, root)
        except _BadPrime:
            continue
        ranks.append(_rank_mod_p_array(a, p))
        if len(ranks) == n_primes:
            break
    if len(ranks) < n_primes or len(set(ranks)) != 1:
        return None
    return ranks[0]


def rank(matrix: Sequence[Sequence[Scalar]], method: str = "auto") -> int:
    """Exact rank over Q(zeta_n).

    ``method`` is ``"auto"`` (two-prime modular ranks, falling back to exact
    elimination when they disagree), ``"exact"`` or ``"modular"`` (an alias of
    auto kept for symmetry).
    """
    if method == "exact":
        return rank_exact(matrix)
    if method not in ("auto", "modular"):
        raise ValueError(f"unknown rank method {method!r}")
    r = rank_multimodular(matrix)
    if r is None:
        return rank_exact(matrix)
    return r
