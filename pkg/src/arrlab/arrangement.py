"""Line arrangements: input parsing, the intersection lattice and its combinatorial invariants."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Mapping, Sequence

from .errors import InternalError, NonReducedError, ParseError
from .polyring import GradedPoly, LinearForm, cross, normalize, product_of_forms
from .scalars import FieldContext, Scalar, cyclotomic_context, parse_scalar

__all__ = [
    "Arrangement",
    "HirzebruchResult",
    "IntersectionPoint",
    "LatticeSummary",
    "detect_type",
    "hirzebruch_check",
    "lattice",
    "parse",
    "summary",
    "summary_from_nu",
    "to_document",
]


@dataclass(frozen=True)
class IntersectionPoint:
    point: tuple[Scalar, Scalar, Scalar]
    incident_lines: tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.incident_lines)


@dataclass(frozen=True)
class LatticeSummary:
    d: int
    nu: Mapping[int, int]  # multiplicity -> number of points, nonzero entries only
    tau_comb: int
    m_max: int
    chi_curve: int
    type_tag: str = "OTHER"

    @property
    def essential(self) -> bool:
        return self.m_max < self.d

    @property
    def chi_complement(self) -> int:
        return 3 - self.chi_curve

    def nu_of(self, j: int) -> int:
        return self.nu.get(j, 0)

    def nu_vector(self) -> dict[int, int]:
        return {j: self.nu.get(j, 0) for j in range(2, self.d + 1)}

    def high_points(self) -> int:
        return sum(c for j, c in self.nu.items() if j >= 3)


@dataclass
class Arrangement:
    ctx: FieldContext
    lines: tuple[LinearForm, ...]
    poly: GradedPoly
    declared_lattice: LatticeSummary | None = None
    h1_minus: int | None = None
    rational_components: bool = False
    name: str = ""
    _points: list[IntersectionPoint] | None = field(default=None, repr=False, compare=False)

    @property
    def d(self) -> int:
        return self.poly.degree

    @property
    def has_lines(self) -> bool:
        return bool(self.lines)

    @classmethod
    def from_lines(cls, ctx: FieldContext, lines: Sequence[LinearForm], **kw) -> "Arrangement":
        lines = tuple(lines)
        if not lines:
            raise ParseError("an arrangement needs at least one line")
        for i in range(len(lines)):
            for j in range(i):
                if lines[i].proportional_to(lines[j]):
                    raise NonReducedError(f"lines {j} and {i} coincide")
        return cls(ctx, lines, product_of_forms(lines), **kw)

    def points(self) -> list[IntersectionPoint]:
        if self._points is None:
            self._points = lattice(self)
        return self._points

    def lattice_summary(self) -> LatticeSummary:
        if self.lines:
            return summary(self.points(), len(self.lines))
        if self.declared_lattice is None:
            raise ParseError("bare polynomial input carries no lattice data")
        return self.declared_lattice

    def transformed(self, matrix, name: str | None = None) -> "Arrangement":
        """Projective change of coordinates v -> M v applied to every line."""
        mat = [[self.ctx.scalar(c) for c in row] for row in matrix]
        return Arrangement.from_lines(
            self.ctx,
            [ln.transformed(mat) for ln in self.lines],
            h1_minus=self.h1_minus,
            rational_components=self.rational_components,
            name=name if name is not None else self.name,
        )


# ---------------------------------------------------------------------------
# parsing


def _parse_nu(data: Any, d: int) -> dict[int, int]:
    if not isinstance(data, Mapping) or "nu" not in data:
        raise ParseError('"lattice" must be an object with a "nu" map')
    nu = {}
    for k, v in data["nu"].items():
        try:
            j, count = int(k), int(v)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad lattice entry {k!r}: {v!r}") from exc
        if j < 2 or count < 0:
            raise ParseError(f"bad lattice entry {k!r}: {v!r}")
        if count:
            nu[j] = count
    return nu


def parse(document: str | Mapping, name: str = "") -> Arrangement:
    """Build an arrangement from the JSON input format (text or already-decoded object)."""
    if isinstance(document, (str, bytes)):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    else:
        data = document
    if not isinstance(data, Mapping):
        raise ParseError("top-level JSON value must be an object")

    try:
        n = int(data.get("cyclotomic_order", 1))
    except (TypeError, ValueError) as exc:
        raise ParseError("cyclotomic_order must be a positive integer") from exc
    if n < 1:
        raise ParseError("cyclotomic_order must be a positive integer")
    ctx = cyclotomic_context(n)

    assume = data.get("assume", {}) or {}
    h1 = assume.get("h1_minus")
    if h1 is not None and (not isinstance(h1, int) or h1 < 0):
        raise ParseError("assume.h1_minus must be a nonnegative integer")
    rational = bool(assume.get("rational_components", False))

    has_lines, has_poly = "lines" in data, "polynomial" in data
    if has_lines == has_poly:
        raise ParseError('exactly one of "lines" and "polynomial" is required')

    if has_lines:
        forms = []
        for row in data["lines"]:
            if not isinstance(row, Sequence) or isinstance(row, str) or len(row) != 3:
                raise ParseError(f"a line needs three coefficients, got {row!r}")
            coeffs = tuple(parse_scalar(s, ctx) for s in row)
            if not any(coeffs):
                raise ParseError("zero coefficient triple does not define a line")
            forms.append(LinearForm(ctx, coeffs))
        arr = Arrangement.from_lines(ctx, forms, h1_minus=h1, rational_components=True, name=name)
        if "lattice" in data:
            declared = summary_from_nu(arr.d, _parse_nu(data["lattice"], arr.d))
            computed = arr.lattice_summary()
            if dict(declared.nu) != dict(computed.nu):
                raise ParseError(f"declared lattice {dict(declared.nu)} != computed {dict(computed.nu)}")
            arr.declared_lattice = declared
        return arr

    spec = data["polynomial"]
    if not isinstance(spec, Mapping) or "degree" not in spec or "terms" not in spec:
        raise ParseError('"polynomial" needs "degree" and "terms"')
    d = spec["degree"]
    if not isinstance(d, int) or d < 1:
        raise ParseError("polynomial degree must be a positive integer")
    terms: dict[tuple[int, int, int], Scalar] = {}
    for t in spec["terms"]:
        try:
            m = tuple(int(e) for e in t["m"])
            c = parse_scalar(t["c"], ctx)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad polynomial term {t!r}") from exc
        if len(m) != 3 or min(m) < 0:
            raise ParseError(f"bad exponent triple {t['m']!r}")
        if sum(m) != d:
            raise ParseError(f"term {m} has degree {sum(m)}, polynomial declared degree {d}")
        terms[m] = terms[m] + c if m in terms else c
    poly = GradedPoly(ctx, d, terms)
    if poly.is_zero():
        raise ParseError("polynomial is zero")
    declared = summary_from_nu(d, _parse_nu(data["lattice"], d)) if "lattice" in data else None
    return Arrangement(
        ctx, (), poly, declared_lattice=declared, h1_minus=h1, rational_components=rational, name=name
    )


def to_document(arr: Arrangement) -> dict:
    """Inverse of :func:`parse` for arrangements given by lines."""
    doc: dict[str, Any] = {"cyclotomic_order": arr.ctx.order}
    if arr.lines:
        doc["lines"] = [[str(c) for c in ln.coeffs] for ln in arr.lines]
    else:
        doc["polynomial"] = {
            "degree": arr.d,
            "terms": [{"m": list(m), "c": str(c)} for m, c in sorted(arr.poly.terms.items(), reverse=True)],
        }
        if arr.declared_lattice is not None:
            doc["lattice"] = {"nu": {str(j): c for j, c in sorted(arr.declared_lattice.nu.items())}}
    assume = {}
    if arr.h1_minus is not None:
        assume["h1_minus"] = arr.h1_minus
    if not arr.lines and arr.rational_components:
        assume["rational_components"] = True
    if assume:
        doc["assume"] = assume
    return doc


# ---------------------------------------------------------------------------
# lattice


def lattice(arr: Arrangement) -> list[IntersectionPoint]:
    """All intersection points with the lines through them, ordered by first incident pair."""
    lines = arr.lines
    if len(lines) < 2:
        return []
    incidences: dict[tuple, set[int]] = {}
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            p = normalize(cross(lines[i].coeffs, lines[j].coeffs))
            incidences.setdefault(p, set()).update((i, j))
    points = [IntersectionPoint(p, tuple(sorted(s))) for p, s in incidences.items()]
    points.sort(key=lambda pt: pt.incident_lines)
    return points


def summary_from_nu(d: int, nu: Mapping[int, int], type_tag: str | None = None) -> LatticeSummary:
    nu = {j: c for j, c in sorted(nu.items()) if c}
    if any(j < 2 or j > d for j in nu):
        raise ParseError(f"multiplicities must lie in [2, {d}]")
    pairs = sum(c * comb(j, 2) for j, c in nu.items())
    if pairs != comb(d, 2):
        raise ParseError(f"lattice pairs {pairs} != C({d},2) = {comb(d, 2)}")
    tau = sum(c * (j - 1) ** 2 for j, c in nu.items())
    m_max = max(nu) if nu else (1 if d == 1 else 0)
    chi_curve = 2 * d - sum(c * (j - 1) for j, c in nu.items())
    s = LatticeSummary(d, nu, tau, m_max, chi_curve)
    tag = type_tag if type_tag is not None else detect_type(None, s)
    return LatticeSummary(d, nu, tau, m_max, chi_curve, tag)


def summary(points: Sequence[IntersectionPoint], d: int) -> LatticeSummary:
    nu: dict[int, int] = {}
    for pt in points:
        nu[pt.multiplicity] = nu.get(pt.multiplicity, 0) + 1
    pairs = sum(c * comb(j, 2) for j, c in nu.items())
    if pairs != comb(d, 2):
        raise InternalError(f"lattice covers {pairs} pairs of lines, expected {comb(d, 2)}")
    base = summary_from_nu(d, nu, type_tag="OTHER")
    return LatticeSummary(base.d, base.nu, base.tau_comb, base.m_max, base.chi_curve, detect_type(points, base))


def detect_type(points: Sequence[IntersectionPoint] | None, s: LatticeSummary) -> str:
    """Classify the lattice as PENCIL, GENERIC, L(d,m), LHAT(m1,m2), DOUBLE_TRIPLE_ONLY or OTHER.

    Without explicit points the LHAT test cannot be run and such lattices fall
    through to the later tags.
    """
    d = s.d
    high = {j: c for j, c in s.nu.items() if j >= 3}
    if d >= 2 and s.m_max == d:
        return "PENCIL"
    if not high:
        return "GENERIC"
    if d >= 4 and sum(high.values()) == 1:
        return f"L({d},{s.m_max})"
    if points is not None and sum(high.values()) == 2:
        p1, p2 = sorted((pt for pt in points if pt.multiplicity >= 3), key=lambda pt: pt.multiplicity)
        a, b = set(p1.incident_lines), set(p2.incident_lines)
        if a & b and a | b == set(range(d)):
            return f"LHAT({p1.multiplicity},{p2.multiplicity})"
    if s.m_max <= 3:
        return "DOUBLE_TRIPLE_ONLY"
    return "OTHER"


@dataclass(frozen=True)
class HirzebruchResult:
    applicable: bool
    holds: bool
    slack: Fraction


def hirzebruch_check(s: LatticeSummary) -> HirzebruchResult:
    """nu_2 + 3/4 nu_3 >= d + sum_{k>=5} (k-4) nu_k, meaningful only when nu_d = nu_{d-1} = 0."""
    d = s.d
    if s.nu_of(d) or s.nu_of(d - 1):
        return HirzebruchResult(False, True, Fraction(0))
    slack = (
        s.nu_of(2)
        + Fraction(3, 4) * s.nu_of(3)
        - d
        - sum((k - 4) * c for k, c in s.nu.items() if k >= 5)
    )
    return HirzebruchResult(True, slack >= 0, Fraction(slack))
