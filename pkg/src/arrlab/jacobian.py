"""Milnor algebra M(f) = S/J_f of a reduced plane curve and the invariants read off from it."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Sequence

from .errors import InternalError, NotStabilizedError
from .polyring import GradedPoly, dim_graded_piece, monomial_index, monomials, partials
from .scalars import Scalar, rank

__all__ = [
    "FreenessClassification",
    "JacobianProfile",
    "VanishingReport",
    "classify",
    "defect_table",
    "fermat_dims",
    "hilbert_milnor",
    "hs_vanishing_check",
    "jacobian_matrix",
    "mdr",
    "mdr_from_dims",
    "nu_from_mdr",
    "profile",
    "stability",
]


def jacobian_matrix(derivs: Sequence[GradedPoly], k: int) -> list[list[Scalar]]:
    """Matrix of (a, b, c) -> a*f_x + b*f_y + c*f_z from S_{k-d+1}^3 to S_k.

    Rows are indexed by degree-k monomials, columns by (partial, multiplier
    monomial), both in graded-lex order.
    """
    ctx = derivs[0].ctx
    e = derivs[0].degree
    src = monomials(k - e)
    row_of = monomial_index(k)
    zero = ctx.zero
    ncols = 3 * len(src)
    mat = [[zero] * ncols for _ in range(len(row_of))]
    for block, g in enumerate(derivs):
        items = list(g.terms.items())
        base = block * len(src)
        for ci, u in enumerate(src):
            col = base + ci
            for m, c in items:
                mat[row_of[(u[0] + m[0], u[1] + m[1], u[2] + m[2])]][col] = c
    return mat


def _jacobian_rank(derivs, k: int) -> int:
    if k - derivs[0].degree < 0:
        return 0
    return rank(jacobian_matrix(derivs, k))


def hilbert_milnor(f: GradedPoly, k_max: int) -> list[int]:
    """dim M(f)_k for k = 0..k_max."""
    derivs = partials(f)
    return [dim_graded_piece(k) - _jacobian_rank(derivs, k) for k in range(k_max + 1)]


def fermat_dims(d: int, k_max: int) -> list[int]:
    """Coefficients of (1 + t + ... + t^(d-2))^3, the Hilbert series of M(x^d + y^d + z^d)."""
    base = [1] * (d - 1)
    series = [1]
    for _ in range(3):
        nxt = [0] * (len(series) + len(base) - 1)
        for i, a in enumerate(series):
            for j, b in enumerate(base):
                nxt[i + j] += a * b
        series = nxt
    return [series[k] if k < len(series) else 0 for k in range(k_max + 1)]


def _koszul_count(m: int, d: int) -> int:
    return max(0, 3 * dim_graded_piece(m - d + 1) - dim_graded_piece(m - 2 * d + 2))


def _relations(m: int, d: int, dims: Sequence[int]) -> int:
    # kernel of S_m^3 -> S_{m+d-1}
    k = m + d - 1
    return 3 * dim_graded_piece(m) - (dim_graded_piece(k) - dims[k])


def mdr_from_dims(dims: Sequence[int], d: int) -> int:
    """mdr(f) read off a Hilbert function computed through degree 2d-3 at least.

    Below degree d-1 the Koszul relations do not exist yet, so any kernel
    vector is a genuine relation; in degree d-1 the Koszul relations themselves
    are nontrivial relations, which caps mdr at d-1.
    """
    for m in range(0, d - 1):
        if _relations(m, d, dims) > _koszul_count(m, d):
            return m
    return d - 1


def mdr(f: GradedPoly) -> int:
    """Minimal degree of a nontrivial relation a*f_x + b*f_y + c*f_z = 0."""
    d = f.degree
    derivs = partials(f)
    for m in range(0, d - 1):
        k = m + d - 1
        kernel = 3 * dim_graded_piece(m) - _jacobian_rank(derivs, k)
        if kernel > _koszul_count(m, d):
            return m
    return d - 1


def stability(dims: Sequence[int], d: int) -> tuple[int, int]:
    """(st(f), tau) from dims through degree 3d-5; raises if the last two values differ."""
    top = 3 * d - 5
    if len(dims) <= top or top < 1:
        raise ValueError(f"need Milnor dimensions through degree {top}")
    if dims[top - 1] != dims[top]:
        raise NotStabilizedError(
            f"dim M(f)_{top - 1} = {dims[top - 1]} != dim M(f)_{top} = {dims[top]}; f is not reduced"
        )
    tau = dims[top]
    st = top
    while st > 0 and dims[st - 1] == tau:
        st -= 1
    return st, tau


def defect_table(dims: Sequence[int], d: int, tau: int) -> tuple[list[int], int]:
    """n(f)_k for k = 0..3d-6 from dim M(f)_k + dim M(f)_{T-k} - dim M(f_F)_k - tau, and nu(C)."""
    T = 3 * d - 6
    if T < 0:
        raise ValueError("defect table needs d >= 2")
    fermat = fermat_dims(d, T)
    table = [dims[k] + dims[T - k] - fermat[k] - tau for k in range(T + 1)]
    if any(v < 0 for v in table):
        raise InternalError(f"negative entry in defect table {table}")
    mid = -(-T // 2)
    if any(table[k] > table[k + 1] for k in range(mid)) or any(
        table[k] < table[k + 1] for k in range(mid, T)
    ):
        raise InternalError(f"defect table {table} is not unimodal around {mid}")
    if d % 2 and table != table[::-1]:
        raise InternalError(f"defect table {table} is not self-dual for odd d")
    return table, table[mid]


@dataclass(frozen=True)
class JacobianProfile:
    d: int
    milnor_dims: tuple[int, ...]
    fermat_dims: tuple[int, ...]
    r: int
    defect_table: tuple[int, ...]
    nu: int
    st: int
    tau_alg: int

    @property
    def T(self) -> int:
        return 3 * self.d - 6

    @property
    def reg(self) -> int:
        """Castelnuovo-Mumford regularity of M(f): st for free curves, st - 1 otherwise."""
        return self.st if self.nu == 0 else self.st - 1


def profile(f: GradedPoly) -> JacobianProfile:
    d = f.degree
    if d < 2:
        raise ValueError("Jacobian profile needs degree >= 2")
    top = 3 * d - 5
    dims = hilbert_milnor(f, top)
    st, tau = stability(dims, d)
    r = mdr_from_dims(dims, d)
    table, nu = defect_table(dims, d, tau)
    return JacobianProfile(
        d=d,
        milnor_dims=tuple(dims),
        fermat_dims=tuple(fermat_dims(d, top)),
        r=r,
        defect_table=tuple(table),
        nu=nu,
        st=st,
        tau_alg=tau,
    )


# ---------------------------------------------------------------------------


def nu_from_mdr(d: int, r: int, tau: int) -> int:
    """Freeness defect from (d, mdr, tau); both branches are checked where they overlap."""
    values = []
    if 2 * r < d:
        values.append((d - 1) ** 2 - r * (d - 1 - r) - tau)
    if 2 * r >= d - 2:
        values.append(-(-3 * (d - 1) ** 2 // 4) - tau)
    if len(set(values)) != 1:
        raise InternalError(f"the two mdr formulas disagree for d={d}, r={r}: {values}")
    return values[0]


@dataclass(frozen=True)
class FreenessClassification:
    status: str  # FREE, NEARLY_FREE or OTHER
    exponents: tuple[int, int] | None
    splitting_type: tuple[int, int]
    nu_thmN: int


def classify(d: int, r: int, tau: int, nu: int) -> FreenessClassification:
    if r < 1:
        raise ValueError("classification needs mdr >= 1")
    nu_thm = nu_from_mdr(d, r, tau)
    if nu_thm != nu:
        raise InternalError(f"nu from defect table ({nu}) != nu from mdr formula ({nu_thm})")
    status = "FREE" if nu == 0 else "NEARLY_FREE" if nu == 1 else "OTHER"
    exponents = None
    if status == "FREE":
        if tau != (d - 1) ** 2 - r * (d - 1 - r):
            raise InternalError(f"free curve with exponents ({r},{d - 1 - r}) but tau = {tau}")
        exponents = (r, d - 1 - r)
    # s (d-1-s) = (d-1)^2 - tau - nu
    prod = (d - 1) ** 2 - tau - nu
    disc = (d - 1) ** 2 - 4 * prod
    root = isqrt(disc) if disc >= 0 else -1
    if root < 0 or root * root != disc or (d - 1 - root) % 2:
        raise InternalError(f"no integer splitting type for d={d}, tau={tau}, nu={nu}")
    s = (d - 1 - root) // 2
    return FreenessClassification(status, exponents, (s, d - 1 - s), nu_thm)


@dataclass(frozen=True)
class VanishingReport:
    checked: bool
    holds: bool
    failures: tuple[str, ...]
    st_bound: int
    nodal_equality: bool  # st == 2d - 4


def hs_vanishing_check(prof: JacobianProfile, rational_components: bool) -> VanishingReport:
    """For curves with rational components: n(f)_k = 0 for k <= d-3 or k >= 2d-3, st <= 2d-4."""
    d = prof.d
    bound = 2 * d - 4
    failures = []
    if rational_components:
        for k, v in enumerate(prof.defect_table):
            if v and (k <= d - 3 or k >= 2 * d - 3):
                failures.append(f"n(f)_{k} = {v}")
        if prof.st > bound:
            failures.append(f"st = {prof.st} > {bound}")
    return VanishingReport(rational_components, not failures, tuple(failures), bound, prof.st == bound)
