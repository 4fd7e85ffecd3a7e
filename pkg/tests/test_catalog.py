from __future__ import annotations

import pytest

from arrlab import catalog
from arrlab.arrangement import parse, to_document
from arrlab.errors import ParseError


@pytest.mark.parametrize("spec", catalog.catalog_suite(max_d=10))
def test_constructor_matches_family(spec):
    family, params = catalog.parse_spec(spec)
    arr = catalog.build(spec)
    s = arr.lattice_summary()
    assert dict(s.nu) == {j: c for j, c in catalog.expected_nu(family, *params).items() if c}
    assert s.type_tag == catalog.expected_type(family, *params)
    assert s.essential


@pytest.mark.parametrize("spec", ["catalog:generic:5", "catalog:lhat:3:4", "catalog:monomial:3", "catalog:L:6:4"])
def test_document_round_trip(spec):
    arr = catalog.build(spec)
    again = parse(to_document(arr))
    assert again.poly == arr.poly
    assert again.ctx is arr.ctx
    assert to_document(again) == to_document(arr)


def test_parse_spec():
    assert catalog.parse_spec("catalog:L:7:5") == ("L", (7, 5))
    assert catalog.parse_spec("LHAT:3:3") == ("lhat", (3, 3))
    for bad in ["catalog:nope:3", "catalog:generic", "catalog:generic:x", "catalog:L:7", ""]:
        with pytest.raises(ParseError):
            catalog.build(bad)
    for bad in ["catalog:L:5:5", "catalog:generic:2", "catalog:lhat:4:3", "catalog:monomial:1"]:
        with pytest.raises(ParseError):
            catalog.build(bad)


def test_pencil_is_not_essential():
    assert not catalog.pencil(5).lattice_summary().essential


def test_generic_with_parameters():
    arr = catalog.generic(4, (2, 3, 5, 7))
    assert dict(arr.lattice_summary().nu) == {2: 6}
    with pytest.raises(ValueError):
        catalog.generic(4, (1, 1, 2, 3))


def test_suite_contents():
    suite = catalog.catalog_suite(max_d=10)
    assert len(suite) == len(set(suite))
    assert "catalog:monomial:3" in suite and "catalog:lhat:3:8" in suite
    assert "catalog:lhat:4:8" not in suite
