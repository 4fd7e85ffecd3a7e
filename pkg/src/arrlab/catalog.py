"""Deterministic constructors for named families of line arrangements.

Every constructor checks the lattice it built against the lattice the family
is supposed to have and raises ConstructionFailed otherwise.
"""

from __future__ import annotations

from math import comb
from typing import Sequence

from .arrangement import Arrangement
from .errors import ConstructionFailed, ParseError
from .polyring import LinearForm
from .scalars import cyclotomic_context

__all__ = [
    "FAMILIES",
    "build",
    "catalog_suite",
    "expected_nu",
    "expected_type",
    "generic",
    "lhat",
    "monomial",
    "parse_spec",
    "pencil",
    "pencil_plus",
]

Q = cyclotomic_context(1)

FAMILIES = ("generic", "L", "lhat", "monomial", "pencil")

_MAX_RETRIES = 32


def _line(ctx, a, b, c) -> LinearForm:
    return LinearForm(ctx, (ctx.scalar(a), ctx.scalar(b), ctx.scalar(c)))


def _moment(ctx, t) -> LinearForm:
    return _line(ctx, 1, t, t * t)


def _checked(arr: Arrangement, expected: dict[int, int]) -> Arrangement:
    got = dict(arr.lattice_summary().nu)
    if got != {j: c for j, c in expected.items() if c}:
        raise ConstructionFailed(f"{arr.name}: lattice {got} != expected {expected}")
    return arr


def expected_nu(family: str, *params: int) -> dict[int, int]:
    family = _family(family)
    if family == "generic":
        (d,) = params
        return {2: comb(d, 2)}
    if family == "L":
        d, m = params
        return {2: comb(d, 2) - comb(m, 2), m: 1}
    if family == "lhat":
        m1, m2 = params
        nu = {2: (m1 - 1) * (m2 - 1)}
        nu[m1] = nu.get(m1, 0) + 1
        nu[m2] = nu.get(m2, 0) + 1
        return nu
    if family == "monomial":
        (m,) = params
        nu = {3: m * m}
        nu[m] = nu.get(m, 0) + 3
        return nu
    if family == "pencil":
        (d,) = params
        return {d: 1}
    raise ValueError(family)


def expected_type(family: str, *params: int) -> str:
    """Lattice type tag the constructor's output must be detected as."""
    family = _family(family)
    if family == "generic":
        return "GENERIC"
    if family == "L":
        return "L({},{})".format(*params)
    if family == "lhat":
        return "LHAT({},{})".format(*params)
    if family == "monomial":
        return "DOUBLE_TRIPLE_ONLY" if params[0] <= 3 else "OTHER"
    return "PENCIL"


def generic(d: int, params: Sequence[int] | None = None) -> Arrangement:
    """d lines x + t y + t^2 z; distinct t give no three concurrent lines."""
    if d < 3:
        raise ValueError("generic arrangements need d >= 3")
    ts = list(params) if params is not None else list(range(1, d + 1))
    if len(ts) != d or len(set(ts)) != d:
        raise ValueError("need d distinct parameters")
    arr = Arrangement.from_lines(Q, [_moment(Q, t) for t in ts], name=f"catalog:generic:{d}")
    return _checked(arr, expected_nu("generic", d))


def pencil_plus(d: int, m: int) -> Arrangement:
    """Type L(d, m): m lines y = i z through (1:0:0) plus d - m lines in general position."""
    if d < 4 or not 3 <= m <= d - 1:
        raise ValueError(f"L(d,m) needs d >= 4 and 3 <= m <= d-1, got ({d},{m})")
    pencil_lines = [_line(Q, 0, 1, -i) for i in range(1, m + 1)]
    expected = expected_nu("L", d, m)
    for shift in range(_MAX_RETRIES):
        extra = [_moment(Q, m + 1 + shift + j) for j in range(d - m)]
        try:
            return _checked(
                Arrangement.from_lines(Q, pencil_lines + extra, name=f"catalog:L:{d}:{m}"), expected
            )
        except ConstructionFailed:
            continue
    raise ConstructionFailed(f"no L({d},{m}) realization after {_MAX_RETRIES} shifts")


def lhat(m1: int, m2: int) -> Arrangement:
    """Type LHAT(m1, m2): pencils through (1:0:0) and (0:1:0) sharing the line z = 0."""
    if not 3 <= m1 <= m2:
        raise ValueError(f"LHAT needs 3 <= m1 <= m2, got ({m1},{m2})")
    lines = [_line(Q, 0, 1, -i) for i in range(1, m1)]
    lines += [_line(Q, 1, 0, -j) for j in range(1, m2)]
    lines.append(_line(Q, 0, 0, 1))
    arr = Arrangement.from_lines(Q, lines, name=f"catalog:lhat:{m1}:{m2}")
    return _checked(arr, expected_nu("lhat", m1, m2))


def monomial(m: int) -> Arrangement:
    """(x^m - y^m)(x^m - z^m)(y^m - z^m) = 0 over Q(zeta_m)."""
    if m < 2:
        raise ValueError("monomial arrangement needs m >= 2")
    K = cyclotomic_context(m)
    powers = [K.zeta ** k for k in range(m)]
    lines = [LinearForm(K, (K.one, -w, K.zero)) for w in powers]
    lines += [LinearForm(K, (K.one, K.zero, -w)) for w in powers]
    lines += [LinearForm(K, (K.zero, K.one, -w)) for w in powers]
    arr = Arrangement.from_lines(K, lines, name=f"catalog:monomial:{m}")
    return _checked(arr, expected_nu("monomial", m))


def pencil(d: int) -> Arrangement:
    """d concurrent lines; not essential, used for the error paths."""
    if d < 2:
        raise ValueError("pencil needs d >= 2")
    arr = Arrangement.from_lines(Q, [_line(Q, 0, 1, -i) for i in range(1, d + 1)], name=f"catalog:pencil:{d}")
    return _checked(arr, expected_nu("pencil", d))


# ---------------------------------------------------------------------------
# spec strings: "catalog:generic:5", "L:7:5", "lhat:3:3", ...


def _family(name: str) -> str:
    lowered = name.lower()
    for fam in FAMILIES:
        if fam.lower() == lowered:
            return fam
    raise ParseError(f"unknown catalog family {name!r}")


def parse_spec(spec: str) -> tuple[str, tuple[int, ...]]:
    parts = spec.split(":")
    if parts and parts[0] == "catalog":
        parts = parts[1:]
    if not parts:
        raise ParseError(f"empty catalog spec {spec!r}")
    family = _family(parts[0])
    try:
        params = tuple(int(p) for p in parts[1:])
    except ValueError as exc:
        raise ParseError(f"non-integer parameter in {spec!r}") from exc
    arity = {"generic": 1, "L": 2, "lhat": 2, "monomial": 1, "pencil": 1}[family]
    if len(params) != arity:
        raise ParseError(f"{family} takes {arity} parameter(s), got {spec!r}")
    return family, params


def build(spec: str) -> Arrangement:
    family, params = parse_spec(spec)
    ctor = {"generic": generic, "L": pencil_plus, "lhat": lhat, "monomial": monomial, "pencil": pencil}[family]
    try:
        return ctor(*params)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def catalog_suite(max_d: int = 10, min_d: int = 3) -> list[str]:
    """Every essential catalog arrangement with min_d <= d <= max_d, as spec strings."""
    specs = [f"catalog:generic:{d}" for d in range(max(3, min_d), max_d + 1)]
    specs += [
        f"catalog:L:{d}:{m}" for d in range(max(4, min_d), max_d + 1) for m in range(3, d)
    ]
    specs += [
        f"catalog:lhat:{m1}:{m2}"
        for m1 in range(3, max_d + 1)
        for m2 in range(m1, max_d + 1)
        if min_d <= m1 + m2 - 1 <= max_d
    ]
    specs += [f"catalog:monomial:{m}" for m in range(2, max_d // 3 + 1) if 3 * m >= min_d]
    return specs
