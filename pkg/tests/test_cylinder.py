from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from polarcyl import cylinder as cy
from polarcyl.cylinder import (AffineCoeff, CertificateError, Component, CylinderCertificate,
                               MemberComponent, ParametricCertificate, ParametricComponent,
                               PencilDescription)
from polarcyl.formats import certificate_from_json, load_json, pencil_from_json
from polarcyl.picard import enumerate_minus_one_classes, make_lattice

from conftest import FIXTURES


def fixture(name):
    return load_json(FIXTURES / f"{name}.json")


def test_degree_five_certificate_and_difference():
    cert = certificate_from_json(fixture("ex10_degree5"))
    assert cy.verify_certificate(cert).valid
    bumped = cert.with_coeff("E1", Fraction(1, 2) + Fraction(1, 1000))
    v = cy.verify_certificate(bumped)
    assert not v.valid
    assert v.difference == Fraction(1, 1000) * cert.lattice.E(1)
    assert not cy.coefficient_bounds_check(cert)


def test_certificate_errors():
    lat = make_lattice(1)
    with pytest.raises(CertificateError):
        CylinderCertificate(lat, (Component("a", lat.L, 1), Component("a", lat.E(1), 1)))
    with pytest.raises(CertificateError):
        CylinderCertificate(lat, (Component("a", lat.L, 0),))


def test_scaling_preserves_validity():
    cert = certificate_from_json(fixture("ex11_degree5"))
    assert cy.verify_certificate(cert.scaled(3)).valid


def test_count_audit():
    lat = make_lattice(6)
    lines = enumerate_minus_one_classes(lat)
    cert = CylinderCertificate(lat, tuple(Component(f"c{i}", c, Fraction(1, 9)) for i, c in enumerate(lines)))
    assert cy.verify_certificate(cert).valid
    audit = cy.component_count_audit(cert)
    assert (audit.at_least_seven, audit.exactly_eight, audit.full_rank) == ("pass", "fail", "pass")
    small = certificate_from_json(fixture("ex10_degree5"))
    assert cy.component_count_audit(small).exactly_eight == "n/a"


def cuco(n):
    lat = make_lattice(n)
    comps = [ParametricComponent("C1", lat.cls(2, *[-1] * n), AffineCoeff(1, 1)),
             ParametricComponent("l", lat.L, AffineCoeff(1, -2))]
    comps += [ParametricComponent(f"E{i}", lat.E(i), AffineCoeff(0, 1)) for i in range(1, n + 1)]
    return ParametricCertificate(lat, tuple(comps))


@pytest.mark.parametrize("n", range(1, 6))
def test_conic_family_interval(n):
    fam = cuco(n)
    assert fam.holds_identically()
    iv = cy.epsilon_interval(fam)
    assert (iv.lo, iv.hi) == (0, Fraction(1, 2))
    assert cy.epsilon_interval(fam, require_upper_bound=True) is None


def test_family_must_hold_identically():
    lat = make_lattice(1)
    fam = ParametricCertificate(lat, (ParametricComponent("L", lat.L, AffineCoeff(3, 1)),))
    assert not fam.holds_identically()
    with pytest.raises(CertificateError):
        cy.epsilon_interval(fam)


def test_plane_family_interval():
    lat = make_lattice(0)
    fam = ParametricCertificate(lat, (ParametricComponent("C1", 2 * lat.L, AffineCoeff(Fraction(3, 2), -1)),
                                      ParametricComponent("C2", 5 * lat.L, AffineCoeff(0, Fraction(2, 5)))))
    iv = cy.epsilon_interval(fam)
    assert (iv.lo, iv.hi) == (0, Fraction(3, 2))
    unit = cy.epsilon_interval(fam, require_upper_bound=True)
    assert (unit.lo, unit.hi) == (Fraction(1, 2), Fraction(3, 2))


def test_anticanonical_multiples():
    lat = make_lattice(4)
    assert cy.anticanonical_multiple(lat, -2 * lat.K) == 2
    assert cy.anticanonical_multiple(lat, lat.L) is None
    p = PencilDescription(lat, lat.L, ((MemberComponent("a", lat.L),),))
    assert cy.pencil_not_pluri_anticanonical(p)
    p = PencilDescription(lat, -3 * lat.K, ((MemberComponent("a", -3 * lat.K),),))
    assert not cy.pencil_not_pluri_anticanonical(p)


def test_pencil_consistency_reports_differences():
    doc = fixture("ex10_degree5")
    lat = make_lattice(doc["n"])
    p = pencil_from_json(lat, doc["pencil"])
    assert cy.pencil_member_consistency(p).valid
    doc["pencil"]["members"][0] = doc["pencil"]["members"][0][:2]
    bad = cy.pencil_member_consistency(pencil_from_json(lat, doc["pencil"]))
    assert not bad.valid and any(not d.is_zero() for d in bad.differences)


def test_cubic_audit_on_transplanted_sextic_pencil():
    doc = fixture("ex11_cubic_transplant")
    cert = certificate_from_json(doc)
    p = pencil_from_json(cert.lattice, doc["pencil"])
    audit = cy.cubic_pencil_audit(p, cert)
    assert audit.status("8") == "fail"
    assert audit.status("3b") == "fail"
    assert audit.status("3a") == "pass"
    for cond in ("2", "4-disjoint", "7"):
        assert audit.status(cond) == "untested"
    assert not audit.passed


def test_cubic_audit_single_member_fails_3a():
    lat = make_lattice(6)
    anti = -lat.K
    member = (MemberComponent("T", lat.L), MemberComponent("Q", 2 * lat.L - lat.sum_E()))
    p = PencilDescription(lat, anti, (member,), {"T": True, "Q": True})
    cert = CylinderCertificate(lat, (Component("T", lat.L, 1), Component("Q", 2 * lat.L - lat.sum_E(), 1)))
    audit = cy.cubic_pencil_audit(p, cert)
    assert audit.status("3a") == "fail"
    assert audit.status("5") == "untested"
    assert audit.status("6") == "fail"


def test_cubic_audit_needs_degree_three():
    doc = fixture("ex10_degree5")
    cert = certificate_from_json(doc)
    with pytest.raises(CertificateError):
        cy.cubic_pencil_audit(pencil_from_json(cert.lattice, doc["pencil"]), cert)


def test_common_components_of_pencils():
    doc = fixture("mli_pencils")
    lat = make_lattice(doc["n"])
    supports = {p["name"]: cy.pencil_support(pencil_from_json(lat, p)) for p in doc["pencils"]}
    for group in doc["expect"]["common"]:
        got = cy.ml_common_components([supports[n] for n in group["pencils"]])
        assert got == set(group["components"])
    with pytest.raises(ValueError):
        cy.ml_common_components([])


def test_conic_pencil_support_recovers_joining_lines():
    lat = make_lattice(4)
    basis = [lat.E(i) for i in range(1, 5)]
    comps = cy.conic_pencil_support(lat, basis, ((0, 1), (2, 3)))
    assert comps[0] == lat.L - lat.E(1) - lat.E(2)
    assert comps[3] == lat.L - lat.E(3) - lat.E(4)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 5), st.integers(-50, 50), st.integers(1, 50))
def test_single_coefficient_perturbations_fail(idx, num, den):
    delta = Fraction(num, den)
    cert = certificate_from_json(fixture("ex10_degree5"))
    comp = cert.components[idx]
    if delta == 0 or comp.coeff + delta <= 0:
        return
    v = cy.verify_certificate(cert.with_coeff(comp.name, comp.coeff + delta))
    assert not v.valid
    assert v.difference == delta * comp.cls


def test_synthetic_cubic_pencil_passes_every_numeric_condition():
    doc = fixture("cubic_synthetic")
    cert = certificate_from_json(doc)
    p = pencil_from_json(cert.lattice, doc["pencil"])
    audit = cy.cubic_pencil_audit(p, cert)
    for r in audit.results:
        expected = "untested" if r.condition in ("2", "4-disjoint", "7") else "pass"
        assert r.status == expected, r
    count = cy.component_count_audit(cert)
    assert (count.count, count.rank, count.exactly_eight, count.full_rank) == (8, 7, "pass", "pass")
