import pytest

from planalg.qarith import RatFunc, quantum_int, rf_sum
from planalg.tldiag import Element, e_matching
from planalg.jw import jones_wenzl
from planalg.otl import OrElement, iota, lift, or_close_trace
from planalg.karoubi import (
    NO_CERTIFICATE,
    IdempotentObject,
    SumCertificate,
    all_signatures,
    check_direct_sum_hypotheses,
    closure_value,
    decompose_jw,
    find_isomorphism,
    hom_basis,
)


def iota_obj(s):
    return IdempotentObject.make(iota(s))


def e1_obj():
    return IdempotentObject.make(
        lift(
            Element.from_matching(e_matching(2, 0)).scale(
                RatFunc(1, quantum_int(2))
            )
        )
    )


def test_make_rejects_non_idempotent():
    with pytest.raises(ValueError):
        IdempotentObject.make(lift(Element.from_matching(e_matching(2, 0))))


def test_hom_dimensions_between_vertical_objects():
    # End of each vertical-strand object is one dimensional; morphisms
    # exist only between signatures with equal up-minus-down count
    assert len(hom_basis(iota_obj("^"), iota_obj("^"))) == 1
    assert len(hom_basis(iota_obj("^"), iota_obj("v"))) == 0
    assert len(hom_basis(iota_obj("^v"), iota_obj("^v"))) == 1
    assert len(hom_basis(iota_obj("^v"), iota_obj("v^"))) == 1
    assert len(hom_basis(iota_obj("^^"), iota_obj("^v"))) == 0


def test_end_dimension_of_lifted_projector():
    # matches the sum of hom dimensions over its n+1 summands
    p2 = IdempotentObject.make(lift(jones_wenzl(2).element))
    assert len(hom_basis(p2, p2)) == 3


def test_direct_sum_hypotheses_for_identity():
    id2 = IdempotentObject.make(lift(Element.identity(2)))
    p2 = IdempotentObject.make(lift(jones_wenzl(2).element))
    assert check_direct_sum_hypotheses(id2, [p2, e1_obj()])
    assert not check_direct_sum_hypotheses(id2, [p2, p2])


def test_identity_splits_as_projector_plus_bubble():
    id2 = IdempotentObject.make(lift(Element.identity(2)))
    p2 = IdempotentObject.make(lift(jones_wenzl(2).element))
    cert = find_isomorphism(id2, [p2, e1_obj()])
    assert cert is not NO_CERTIFICATE
    assert cert.validate()
    text = cert.serialize()
    assert text.splitlines()[-1] == "VERIFIED n=2 summands=2"


def test_no_certificate_is_a_value():
    p2 = IdempotentObject.make(lift(jones_wenzl(2).element))
    out = find_isomorphism(p2, [iota_obj("^^"), iota_obj("^v"), iota_obj("v^")])
    assert out is NO_CERTIFICATE


def test_tampered_certificate_fails_validation():
    id2 = IdempotentObject.make(lift(Element.identity(2)))
    p2 = IdempotentObject.make(lift(jones_wenzl(2).element))
    cert = find_isomorphism(id2, [p2, e1_obj()])
    bad = SumCertificate(
        cert.p, cert.summands, [u + u for u in cert.u], list(cert.v)
    )
    assert not bad.validate()


def test_all_signatures_order():
    assert all_signatures(1) == ["^", "v"]
    assert all_signatures(2) == ["^^", "^v", "v^", "vv"]


def test_closure_values():
    assert closure_value("^^") == RatFunc(quantum_int(1)) * closure_value("^^")
    total = rf_sum((closure_value(s), 1) for s in ("^^", "^v", "vv"))
    assert total == RatFunc(quantum_int(3))


def test_decompose_jw_small():
    for n in (1, 2, 3):
        sigs, cert = decompose_jw(n)
        assert len(sigs) == n + 1
        assert cert.validate()
        total = rf_sum((closure_value(s), 1) for s in sigs)
        assert total == RatFunc(quantum_int(n + 1))


def test_decompose_jw_signatures_recorded():
    sigs, cert = decompose_jw(2)
    assert sigs == ["^^", "^v", "vv"]
    assert "signatures=^^,^v,vv" in cert.serialize(signatures=sigs)


def test_decompose_domain():
    with pytest.raises(ValueError):
        decompose_jw(0)
    with pytest.raises(ValueError):
        decompose_jw(5)
