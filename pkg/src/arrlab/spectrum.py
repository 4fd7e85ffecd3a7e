"""Combinatorial spectrum of a line arrangement and the middle-degree Walther bound nu'."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .arrangement import LatticeSummary
from .errors import InternalError, NotEssentialError

__all__ = [
    "NuPrimeResult",
    "SpectrumTable",
    "binom2",
    "full_spectrum",
    "middle_multiplicity",
    "multiplicity_triple",
    "nu_prime",
]

EXACT = "EXACT"
LOWER_BOUND = "LOWER_BOUND"
USER_SUPPLIED = "USER_SUPPLIED"


def binom2(n: int) -> int:
    """n(n-1)/2 for every integer n, so binom2(-1) == 1."""
    return n * (n - 1) // 2


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def multiplicity_triple(e: int, d: int, nu: Mapping[int, int]) -> tuple[int, int, int]:
    """(m_a, m_{a+1}, m_{a+2}) for a = e/d."""
    if not 1 <= e <= d:
        raise ValueError(f"e must lie in [1, {d}], got {e}")
    m0 = binom2(e - 1)
    m1 = (e - 1) * (d - e - 1)
    m2 = binom2(d - e - 1) - (1 if e == d else 0)
    for j, count in nu.items():
        if not count:
            continue
        c = _ceil_div(e * j, d)
        m0 -= count * binom2(c - 1)
        m1 -= count * (c - 1) * (j - c)
        m2 -= count * binom2(j - c)
    return m0, m1, m2


@dataclass(frozen=True)
class SpectrumTable:
    d: int
    entries: Mapping[Fraction, int]  # alpha -> m_alpha for alpha = e/d + {0, 1, 2}, zeros kept

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def polynomial_terms(self) -> list[tuple[Fraction, int]]:
        return [(a, m) for a, m in sorted(self.entries.items()) if m]


def full_spectrum(s: LatticeSummary) -> SpectrumTable:
    if not s.essential:
        raise NotEssentialError("spectrum formulas need an essential arrangement")
    d = s.d
    entries: dict[Fraction, int] = {}
    for e in range(1, d + 1):
        base = Fraction(e, d)
        for shift, m in enumerate(multiplicity_triple(e, d, s.nu)):
            entries[base + shift] = m
    table = SpectrumTable(d, dict(sorted(entries.items())))
    expected = d * s.chi_complement - 1
    if table.total != expected:
        raise InternalError(f"spectrum sums to {table.total}, expected d*chi(U) - 1 = {expected}")
    return table


def middle_multiplicity(s: LatticeSummary) -> int:
    """m_{3/2} for even d, m_{a+1} with a = floor(d/2)/d for odd d."""
    return multiplicity_triple(s.d // 2, s.d, s.nu)[1]


@dataclass(frozen=True)
class NuPrimeResult:
    value: int
    exactness: str  # EXACT, LOWER_BOUND or USER_SUPPLIED
    h1_used: int

    @property
    def is_exact(self) -> bool:
        return self.exactness == EXACT


def nu_prime(s: LatticeSummary, h1_override: int | None = None) -> NuPrimeResult:
    """Walther's middle-range bound nu'(C) from the lattice.

    For even d the value depends on h1 = dim H^1(F)_{-1}. Without an override
    h1 = 0 is used; that is exact when m(C) <= 3 or m(C) = d - 1 (both have
    vanishing -1 eigenspace) and a lower bound otherwise.
    """
    if not s.essential:
        raise NotEssentialError("nu' is defined for essential arrangements")
    d = s.d
    even_sum = sum(c for j, c in s.nu.items() if j % 2 == 0)
    if d % 2:
        four_x = (d - 1) * (d - 3) - s.tau_comb + even_sum
        h1, exactness = 0, EXACT
    else:
        four_x = (d - 2) ** 2 - s.tau_comb + even_sum
        if h1_override is not None:
            if h1_override < 0 or h1_override % 2:
                raise ValueError("dim H^1(F)_{-1} is a nonnegative even integer")
            h1, exactness = h1_override, USER_SUPPLIED
        else:
            h1 = 0
            exactness = EXACT if (s.m_max <= 3 or s.m_max == d - 1) else LOWER_BOUND
        four_x += 2 * h1
    if four_x % 4:
        raise InternalError(f"nu' = {Fraction(four_x, 4)} is not an integer")
    value = four_x // 4
    if value < 0:
        raise InternalError(f"nu' = {value} is negative")
    return NuPrimeResult(value, exactness, h1)
