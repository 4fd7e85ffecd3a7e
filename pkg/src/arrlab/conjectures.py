"""Verdicts comparing nu(C) with nu'(C), and lattice certificates for group checks."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable, Protocol, Sequence

from .arrangement import IntersectionPoint
from .spectrum import EXACT, LOWER_BOUND, NuPrimeResult

__all__ = [
    "CONSISTENT",
    "INCONCLUSIVE",
    "VIOLATION",
    "LatticeCertificate",
    "Verdict",
    "canonical_certificate",
    "conjecture12_check",
    "conjecture3_check",
    "walther_check",
]

CONSISTENT = "CONSISTENT"
VIOLATION = "VIOLATION"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class Verdict:
    check_name: str
    status: str
    details: dict[str, Any] = field(default_factory=dict)


def _compare(nu: int, np_: NuPrimeResult) -> str:
    """'equal', 'less' or 'greater' when decided, else 'undetermined'.

    A LOWER_BOUND value b means nu' >= b.
    """
    if np_.exactness == LOWER_BOUND:
        return "less" if nu < np_.value else "undetermined"
    if nu < np_.value:
        return "less"
    return "equal" if nu == np_.value else "greater"


def walther_check(nu: int, np_: NuPrimeResult) -> Verdict:
    """nu(C) <= nu'(C) in the middle range."""
    rel = _compare(nu, np_)
    details = {"nu": nu, "nu_prime": np_.value, "exactness": np_.exactness}
    if rel == "less":
        return Verdict("walther", CONSISTENT, {**details, "relation": "strict"})
    if rel == "equal":
        return Verdict("walther", CONSISTENT, {**details, "relation": "equality"})
    if np_.exactness == LOWER_BOUND and nu == np_.value:
        # nu <= bound <= nu' is already decided, only the equality is open
        return Verdict("walther", CONSISTENT, {**details, "relation": "undetermined"})
    if rel == "greater" and np_.exactness == EXACT:
        return Verdict("walther", VIOLATION, {**details, "relation": "nu > nu_prime"})
    return Verdict("walther", INCONCLUSIVE, {**details, "relation": "undetermined"})


def conjecture3_check(nu: int, np_: NuPrimeResult, m_max: int, d: int, r: int | None = None) -> Verdict:
    """nu = nu' exactly when m(C) = d - 1 or m(C) <= 3."""
    predicted = m_max == d - 1 or m_max <= 3
    details: dict[str, Any] = {
        "d": d,
        "m_max": m_max,
        "nu": nu,
        "nu_prime": np_.value,
        "exactness": np_.exactness,
        "predicted_equality": predicted,
    }
    if r is not None:
        details["mdr"] = r
        if nu > 0:
            # case split for non-free arrangements; diagnostic only
            if r == d - m_max:
                details["case"] = "A"
            elif m_max <= r <= d - m_max - 1:
                details["case"] = "A'"
            else:
                details["case"] = "neither"
    rel = _compare(nu, np_)
    if rel == "undetermined":
        return Verdict("conjecture3", INCONCLUSIVE, details)
    observed = rel == "equal"
    details["observed_equality"] = observed
    if observed == predicted:
        return Verdict("conjecture3", CONSISTENT, details)
    if np_.exactness != EXACT:
        return Verdict("conjecture3", INCONCLUSIVE, details)
    return Verdict("conjecture3", VIOLATION, details)


# ---------------------------------------------------------------------------
# canonical form of the incidence between lines and points of multiplicity >= 3


@dataclass(frozen=True)
class LatticeCertificate:
    d: int
    encoding: str

    def __str__(self) -> str:
        return self.encoding


def _refine(colors: list, adj: list[list[int]]) -> list[int]:
    """Colour refinement; returns canonical integer colours (ranks of signatures)."""
    ranks = _rank(colors)
    n_classes = len(set(ranks))
    while True:
        sigs = [(ranks[v], tuple(sorted(ranks[u] for u in adj[v]))) for v in range(len(adj))]
        new = _rank(sigs)
        k = len(set(new))
        if k == n_classes:
            return new
        ranks, n_classes = new, k


def _rank(keys: Sequence) -> list[int]:
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def canonical_certificate(points: Iterable[IntersectionPoint], d: int) -> LatticeCertificate:
    """A labelling-independent string for the lattice.

    Lines with the same set of high points are interchangeable and are merged
    into one weighted vertex; double points follow from d and the high-point
    incidences, so they are not encoded.
    """
    high = [pt for pt in points if pt.multiplicity >= 3]
    nbrs = [frozenset(i for i, pt in enumerate(high) if line in pt.incident_lines) for line in range(d)]
    groups = sorted(Counter(nbrs).items(), key=lambda kv: sorted(kv[0]))
    n_line = len(groups)
    n_vert = n_line + len(high)
    adj: list[list[int]] = [[] for _ in range(n_vert)]
    for li, (nb, _) in enumerate(groups):
        for pi in nb:
            adj[li].append(n_line + pi)
            adj[n_line + pi].append(li)
    weight = [w for _, w in groups] + [0] * len(high)
    initial = [(0, weight[v], len(adj[v])) for v in range(n_line)]
    initial += [(1, high[v - n_line].multiplicity, len(adj[v])) for v in range(n_line, n_vert)]

    best = None

    def encode(colors: list[int]) -> tuple:
        vert = tuple(sorted((colors[v], initial[v][0], weight[v]) for v in range(n_vert)))
        edges = tuple(sorted((colors[v], colors[u]) for v in range(n_line) for u in adj[v]))
        return vert, edges

    def search(colors: list) -> None:
        nonlocal best
        colors = _refine(colors, adj)
        cells = Counter(colors)
        target = min((c for c, size in cells.items() if size > 1), default=None)
        if target is None:
            code = encode(colors)
            if best is None or code < best:
                best = code
            return
        for v in range(n_vert):
            if colors[v] == target:
                search([(colors[u], 0 if u == v else 1) for u in range(n_vert)])

    search(initial)
    vert, edges = best
    body = ";".join(
        [
            "L:" + ",".join(str(w) for _, kind, w in vert if kind == 0),
            f"P:{len(high)}",
            "E:" + ",".join(f"{a}-{b}" for a, b in edges),
        ]
    )
    return LatticeCertificate(d, f"d={d};{body}")


class _Analyzed(Protocol):
    name: str
    certificate: LatticeCertificate
    nu: int
    splitting_type: tuple[int, int]


def conjecture12_check(group: Sequence[_Analyzed]) -> Verdict:
    """Within each certificate class all members must share nu and the generic splitting type."""
    classes: dict[str, list[_Analyzed]] = {}
    for item in group:
        classes.setdefault(item.certificate.encoding, []).append(item)
    mismatches = []
    for members in classes.values():
        first = members[0]
        for other in members[1:]:
            if other.nu != first.nu or tuple(other.splitting_type) != tuple(first.splitting_type):
                mismatches.append(
                    {
                        "first": first.name,
                        "second": other.name,
                        "nu": [first.nu, other.nu],
                        "splitting_type": [list(first.splitting_type), list(other.splitting_type)],
                    }
                )
    details = {
        "classes": len(classes),
        "members": len(group),
        "class_sizes": sorted(len(m) for m in classes.values()),
        "mismatches": mismatches,
    }
    return Verdict("conjecture12", VIOLATION if mismatches else CONSISTENT, details)
