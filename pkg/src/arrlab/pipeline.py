"""One-arrangement analysis: lattice, Jacobian profile, spectrum, nu' and verdicts, plus the report format."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import catalog
from .arrangement import Arrangement, HirzebruchResult, LatticeSummary, hirzebruch_check, parse
from .conjectures import (
    CONSISTENT,
    INCONCLUSIVE,
    VIOLATION,
    LatticeCertificate,
    Verdict,
    canonical_certificate,
    conjecture3_check,
    walther_check,
)
from .errors import ArrlabError, InternalError, NotEssentialError, ParseError
from .jacobian import FreenessClassification, JacobianProfile, VanishingReport, classify, hs_vanishing_check, profile
from .spectrum import NuPrimeResult, SpectrumTable, full_spectrum, middle_multiplicity, nu_prime

__all__ = ["Analysis", "analyze", "load_source", "render", "to_report"]


@dataclass
class Analysis:
    name: str
    arrangement: Arrangement
    lattice: LatticeSummary | None
    jacobian: JacobianProfile
    freeness: FreenessClassification
    vanishing: VanishingReport
    spectrum: SpectrumTable | None = None
    nu_prime: NuPrimeResult | None = None
    hirzebruch: HirzebruchResult | None = None
    certificate: LatticeCertificate | None = None
    verdicts: list[Verdict] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def d(self) -> int:
        return self.arrangement.d

    @property
    def nu(self) -> int:
        return self.jacobian.nu

    @property
    def splitting_type(self) -> tuple[int, int]:
        return self.freeness.splitting_type

    def has_violation(self) -> bool:
        return any(v.status == VIOLATION for v in self.verdicts)


def load_source(source: str) -> Arrangement:
    """A catalog spec (``catalog:family:params``) or the path of an input JSON file."""
    if source.startswith("catalog:"):
        return catalog.build(source)
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {source}: {exc}") from exc
    return parse(text, name=source)


def analyze(
    arr: Arrangement,
    h1: int | None = None,
    rational: bool = False,
    skip_spectrum: bool = False,
) -> Analysis:
    timings: dict[str, float] = {}
    clock = time.perf_counter()

    def lap(key: str) -> None:
        nonlocal clock
        now = time.perf_counter()
        timings[key] = now - clock
        clock = now

    lat = None
    if arr.has_lines:
        lat = arr.lattice_summary()
        if not lat.essential:
            raise NotEssentialError(f"all {lat.d} lines pass through one point")
    elif arr.declared_lattice is not None:
        lat = arr.declared_lattice
    lap("lattice")

    prof = profile(arr.poly)
    if prof.r == 0:
        raise NotEssentialError("mdr(f) = 0: the curve is a pencil of lines")
    if lat is not None and arr.has_lines and lat.tau_comb != prof.tau_alg:
        raise InternalError(f"tau from lattice {lat.tau_comb} != tau from Milnor algebra {prof.tau_alg}")
    freeness = classify(prof.d, prof.r, prof.tau_alg, prof.nu)
    vanishing = hs_vanishing_check(prof, arr.has_lines or arr.rational_components or rational)
    lap("jacobian")

    result = Analysis(arr.name, arr, lat, prof, freeness, vanishing, timings=timings)

    if lat is not None and lat.d >= 3:
        if not lat.essential:
            raise NotEssentialError("declared lattice has a point through all lines")
        h1_value = h1 if h1 is not None else arr.h1_minus
        if not skip_spectrum:
            result.spectrum = full_spectrum(lat)
        np_ = nu_prime(lat, h1_value)
        mid = Fraction(np_.h1_used, 2) + middle_multiplicity(lat)
        if mid != np_.value:
            raise InternalError(f"nu' closed form {np_.value} != spectrum route {mid}")
        result.nu_prime = np_
        result.hirzebruch = hirzebruch_check(lat)
        result.verdicts.append(walther_check(prof.nu, np_))
        result.verdicts.append(conjecture3_check(prof.nu, np_, lat.m_max, lat.d, prof.r))
        h = result.hirzebruch
        result.verdicts.append(
            Verdict(
                "hirzebruch",
                CONSISTENT if h.holds else VIOLATION,
                {"applicable": h.applicable, "slack": h.slack},
            )
        )
    if arr.has_lines:
        result.certificate = canonical_certificate(arr.points(), arr.d)
    lap("spectrum")

    result.verdicts.append(
        Verdict(
            "hs_vanishing",
            INCONCLUSIVE if not vanishing.checked else CONSISTENT if vanishing.holds else VIOLATION,
            {
                "rational_components": vanishing.checked,
                "failures": list(vanishing.failures),
                "st": prof.st,
                "st_bound": vanishing.st_bound,
                "st_equals_bound": vanishing.nodal_equality,
            },
        )
    )
    result.verdicts.sort(key=lambda v: v.check_name)
    return result


# ---------------------------------------------------------------------------
# report


def _s(value: Any) -> Any:
    """Render every number as a string, recursively."""
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, dict):
        return {str(k): _s(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_s(v) for v in value]
    return value


def to_report(a: Analysis, timings: bool = False) -> dict:
    prof, fr = a.jacobian, a.freeness
    rep: dict[str, Any] = {
        "input": a.name,
        "d": a.d,
        "cyclotomic_order": a.arrangement.ctx.order,
        "jacobian": {
            "milnor_dims": list(prof.milnor_dims),
            "fermat_dims": list(prof.fermat_dims),
            "r": prof.r,
            "defect_table": list(prof.defect_table),
            "nu": prof.nu,
            "st": prof.st,
            "reg": prof.reg,
            "tau_alg": prof.tau_alg,
        },
        "freeness": {
            "status": fr.status,
            "exponents": list(fr.exponents) if fr.exponents else None,
            "splitting_type": list(fr.splitting_type),
        },
        "lattice": None,
        "spectrum": None,
        "nu_prime": None,
        "verdicts": [{"check": v.check_name, "status": v.status, "details": v.details} for v in a.verdicts],
    }
    if a.lattice is not None:
        lat = a.lattice
        rep["lattice"] = {
            "nu": lat.nu_vector(),
            "tau_comb": lat.tau_comb,
            "m_max": lat.m_max,
            "type_tag": lat.type_tag,
            "chi_complement": lat.chi_complement,
            "essential": lat.essential,
            "certificate": a.certificate.encoding if a.certificate else None,
            "declared": not a.arrangement.has_lines,
        }
    if a.spectrum is not None:
        expected = a.d * a.lattice.chi_complement - 1
        rep["spectrum"] = {
            "entries": {str(alpha): m for alpha, m in a.spectrum.entries.items()},
            "sum_check": {"sum": a.spectrum.total, "expected": expected, "holds": a.spectrum.total == expected},
        }
    if a.nu_prime is not None:
        rep["nu_prime"] = {
            "value": a.nu_prime.value,
            "exactness": a.nu_prime.exactness,
            "h1_used": a.nu_prime.h1_used,
        }
    if timings:
        rep["timings"] = dict(a.timings)
    return _s(rep)


def error_report(name: str, exc: ArrlabError) -> dict:
    return {"input": name, "error": {"code": exc.code, "message": str(exc)}}


def render(report: dict, compact: bool = False) -> str:
    if compact:
        return json.dumps(report, sort_keys=True, separators=(",", ":"))
    return json.dumps(report, sort_keys=True, indent=2)
