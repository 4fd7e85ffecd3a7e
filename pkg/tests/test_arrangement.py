from __future__ import annotations

import json
from fractions import Fraction

import pytest

from arrlab import catalog
from arrlab.arrangement import (
    Arrangement,
    detect_type,
    hirzebruch_check,
    parse,
    summary_from_nu,
    to_document,
)
from arrlab.errors import NonReducedError, ParseError
from arrlab.polyring import LinearForm
from arrlab.scalars import cyclotomic_context

Q = cyclotomic_context(1)
MATRIX = [[1, 2, 0], [0, 1, 3], [1, 0, 1]]


def test_parse_triangle():
    arr = parse({"cyclotomic_order": 1, "lines": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]})
    s = arr.lattice_summary()
    assert arr.d == 3
    assert dict(s.nu) == {2: 3}
    assert (s.tau_comb, s.m_max, s.chi_curve, s.chi_complement) == (3, 2, 3, 0)
    assert s.type_tag == "GENERIC"


def test_parse_text_and_round_trip():
    arr = catalog.lhat(3, 4)
    doc = to_document(arr)
    again = parse(json.dumps(doc))
    assert dict(again.lattice_summary().nu) == dict(arr.lattice_summary().nu)
    assert again.poly == arr.poly


def test_parse_monomial_cubed_with_declared_lattice():
    doc = {
        "cyclotomic_order": 3,
        "lines": [["1", w, "0"] for w in ("-1", "-z", "-z^2")]
        + [["1", "0", w] for w in ("-1", "-z", "-z^2")]
        + [["0", "1", w] for w in ("-1", "-z", "-z^2")],
        "lattice": {"nu": {"3": 12}},
    }
    arr = parse(doc)
    assert dict(arr.lattice_summary().nu) == {3: 12}
    doc["lattice"] = {"nu": {"2": 36}}
    with pytest.raises(ParseError):
        parse(doc)


@pytest.mark.parametrize(
    "doc",
    [
        "not json",
        "[]",
        {"cyclotomic_order": 0, "lines": [["1", "0", "0"]]},
        {"lines": [["1", "0"]]},
        {"lines": [["0", "0", "0"]]},
        {"lines": [["1", "0", "0"]], "polynomial": {"degree": 1, "terms": []}},
        {},
        {"polynomial": {"degree": 2, "terms": [{"m": [1, 0, 0], "c": "1"}]}},
        {"polynomial": {"degree": 1, "terms": [{"m": [1, 0, 0], "c": "1"}, {"m": [1, 0, 0], "c": "-1"}]}},
        {"lines": [["w", "0", "0"]]},
        {"polynomial": {"degree": 3, "terms": [{"m": [3, 0, 0], "c": "1"}]}, "lattice": {"nu": {"2": 2}}},
    ],
)
def test_parse_errors(doc):
    with pytest.raises(ParseError):
        parse(doc)


def test_duplicate_lines_are_non_reduced():
    with pytest.raises(NonReducedError):
        parse({"lines": [["1", "0", "0"], ["2", "0", "0"], ["0", "0", "1"]]})


def test_polynomial_duplicate_monomials_are_summed():
    arr = parse({"polynomial": {"degree": 1, "terms": [{"m": [1, 0, 0], "c": "1"}, {"m": [1, 0, 0], "c": "2"}]}})
    assert arr.poly.terms == {(1, 0, 0): Q.scalar(3)}


@pytest.mark.parametrize(
    "arr, nu, tau",
    [
        (catalog.pencil_plus(7, 5), {2: 11, 5: 1}, 27),
        (catalog.generic(5), {2: 10}, 10),
        (catalog.monomial(3), {3: 12}, 48),
        (catalog.lhat(3, 3), {2: 4, 3: 2}, 12),
    ],
)
def test_lattice_examples(arr, nu, tau):
    s = arr.lattice_summary()
    assert dict(s.nu) == nu
    assert s.tau_comb == tau


def test_summary_examples():
    s = summary_from_nu(7, {2: 11, 5: 1})
    assert s.type_tag == "L(7,5)"
    assert s.chi_complement == 3 - (14 - 11 - 4)
    with pytest.raises(ParseError):
        summary_from_nu(4, {2: 5})


@pytest.mark.parametrize(
    "spec, tag",
    [
        ("catalog:generic:6", "GENERIC"),
        ("catalog:L:8:5", "L(8,5)"),
        ("catalog:lhat:3:5", "LHAT(3,5)"),
        ("catalog:monomial:3", "DOUBLE_TRIPLE_ONLY"),
        ("catalog:pencil:4", "PENCIL"),
    ],
)
def test_detect_type(spec, tag):
    arr = catalog.build(spec)
    assert arr.lattice_summary().type_tag == tag
    assert detect_type(arr.points(), arr.lattice_summary()) == tag


def test_hirzebruch():
    h = hirzebruch_check(catalog.monomial(3).lattice_summary())
    assert h.applicable and h.holds and h.slack == 0
    h = hirzebruch_check(catalog.generic(5).lattice_summary())
    assert h.applicable and h.slack == 5
    h = hirzebruch_check(catalog.pencil_plus(5, 4).lattice_summary())
    assert not h.applicable and h.holds
    h = hirzebruch_check(summary_from_nu(7, {2: 3, 3: 6}))
    assert h.slack == Fraction(1, 2)


@pytest.mark.parametrize("spec", ["catalog:generic:5", "catalog:L:6:4", "catalog:lhat:3:4"])
def test_lattice_invariant_under_coordinate_change(spec):
    arr = catalog.build(spec)
    moved = arr.transformed(MATRIX)
    a, b = arr.lattice_summary(), moved.lattice_summary()
    assert dict(a.nu) == dict(b.nu)
    assert a.chi_complement == b.chi_complement
    assert a.type_tag == b.type_tag


def test_from_lines_needs_lines():
    with pytest.raises(ParseError):
        Arrangement.from_lines(Q, [])
    with pytest.raises(NonReducedError):
        Arrangement.from_lines(Q, [LinearForm(Q, (1, 1, 0)), LinearForm(Q, (-3, -3, 0))])
