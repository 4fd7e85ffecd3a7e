from __future__ import annotations

import random
from dataclasses import dataclass

import pytest

from arrlab import catalog
from arrlab.arrangement import Arrangement
from arrlab.conjectures import (
    CONSISTENT,
    INCONCLUSIVE,
    VIOLATION,
    LatticeCertificate,
    canonical_certificate,
    conjecture12_check,
    conjecture3_check,
    walther_check,
)
from arrlab.jacobian import classify, profile
from arrlab.polyring import LinearForm
from arrlab.scalars import cyclotomic_context
from arrlab.spectrum import EXACT, LOWER_BOUND, USER_SUPPLIED, NuPrimeResult

Q = cyclotomic_context(1)


def _np(value, exactness=EXACT, h1=0):
    return NuPrimeResult(value, exactness, h1)


def test_walther_examples():
    v = walther_check(1, _np(2))
    assert (v.status, v.details["relation"]) == (CONSISTENT, "strict")
    v = walther_check(0, _np(0))
    assert (v.status, v.details["relation"]) == (CONSISTENT, "equality")
    assert walther_check(3, _np(2, LOWER_BOUND)).status == INCONCLUSIVE
    assert walther_check(3, _np(2)).status == VIOLATION
    assert walther_check(1, _np(3, LOWER_BOUND)).details["relation"] == "strict"
    assert walther_check(3, _np(3, LOWER_BOUND)).status == CONSISTENT
    assert walther_check(3, _np(2, USER_SUPPLIED, 2)).status == INCONCLUSIVE


def test_conjecture3_examples():
    assert conjecture3_check(0, _np(0), 3, 6).status == CONSISTENT
    assert conjecture3_check(1, _np(2), 5, 7).status == CONSISTENT
    assert conjecture3_check(0, _np(0), 5, 6).status == CONSISTENT
    assert conjecture3_check(1, _np(1), 5, 7).status == VIOLATION
    assert conjecture3_check(1, _np(2), 3, 7).status == VIOLATION
    assert conjecture3_check(1, _np(1, LOWER_BOUND), 6, 8).status == INCONCLUSIVE
    assert conjecture3_check(1, _np(3, LOWER_BOUND), 6, 8).status == CONSISTENT


def test_conjecture3_case_label():
    v = conjecture3_check(1, _np(2), 5, 7, r=2)
    assert v.details["case"] == "A"
    assert "case" not in conjecture3_check(0, _np(0), 3, 6, r=2).details


def _cert(arr: Arrangement) -> LatticeCertificate:
    return canonical_certificate(arr.points(), arr.d)


def _relabeled(arr: Arrangement, rng: random.Random) -> Arrangement:
    lines = list(arr.lines)
    rng.shuffle(lines)
    scaled = []
    for ln in lines:
        k = rng.randint(1, 9)
        scaled.append(LinearForm(arr.ctx, tuple(c * k for c in ln.coeffs)))
    return Arrangement.from_lines(arr.ctx, scaled)


def test_certificate_examples():
    tri = catalog.build("catalog:generic:3")
    perm = Arrangement.from_lines(Q, [tri.lines[2], tri.lines[0], tri.lines[1]])
    assert _cert(tri) == _cert(perm)
    assert _cert(catalog.generic(4)) != _cert(catalog.pencil_plus(4, 3))
    a = catalog.lhat(3, 3)
    b = a.transformed([[1, 2, 0], [0, 1, 3], [1, 0, 1]])
    assert _cert(a) == _cert(b)


@pytest.mark.parametrize(
    "spec",
    ["catalog:L:7:4", "catalog:lhat:3:5", "catalog:monomial:3", "catalog:generic:6", "catalog:lhat:4:4"],
)
def test_certificate_invariant_under_relabeling(spec):
    arr = catalog.build(spec)
    rng = random.Random(spec)
    ref = _cert(arr)
    for _ in range(10):
        assert _cert(_relabeled(arr, rng)) == ref


def test_certificate_separates_lattices():
    specs = catalog.catalog_suite(max_d=9)
    certs = {}
    for spec in specs:
        arr = catalog.build(spec)
        certs.setdefault(_cert(arr).encoding, []).append(spec)
    assert all(len(v) == 1 for v in certs.values()), certs


@dataclass
class _Item:
    name: str
    certificate: LatticeCertificate
    nu: int
    splitting_type: tuple[int, int]


def _item(name, arr):
    prof = profile(arr.poly)
    fr = classify(prof.d, prof.r, prof.tau_alg, prof.nu)
    return _Item(name, _cert(arr), prof.nu, fr.splitting_type)


def test_conjecture12_examples():
    g1 = _item("a", catalog.generic(4))
    g2 = _item("b", catalog.generic(4, (2, 3, 5, 7)))
    v = conjecture12_check([g1, g2])
    assert v.status == CONSISTENT and v.details["classes"] == 1 and g1.nu == g2.nu == 1
    v = conjecture12_check([_item("g5", catalog.generic(5)), _item("l53", catalog.pencil_plus(5, 3))])
    assert v.status == CONSISTENT and v.details["classes"] == 2
    a = catalog.lhat(3, 4)
    l1, l2 = _item("l1", a), _item("l2", a.transformed([[1, 2, 0], [0, 1, 3], [1, 0, 1]]))
    assert l1.splitting_type == l2.splitting_type == (2, 3)
    assert conjecture12_check([l1, l2]).status == CONSISTENT


def test_conjecture12_reports_mismatch():
    g = _item("a", catalog.generic(4))
    fake = _Item("b", g.certificate, 2, g.splitting_type)
    v = conjecture12_check([g, fake])
    assert v.status == VIOLATION
    assert v.details["mismatches"][0]["first"] == "a"
    assert conjecture12_check([]).status == CONSISTENT
