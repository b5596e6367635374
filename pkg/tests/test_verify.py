import json

import pytest

from galcas.algebra import Gen, Z, generators
from galcas.casimir import build_catalog, build_script_L, build_script_M, quartic_casimir
from galcas.errors import DomainError
from galcas.rational import Q
from galcas.uea import UEAElement, embed, set_central_charge
from galcas.verify import check_eq4, check_eq8, check_rotation_relations, check_sl2_relations, check_z_limit, is_central
from helpers import make_spec

SCHR = make_spec("1/2", 1)


def bump_one_coefficient(x: UEAElement, skip_central_only=True) -> UEAElement:
    """Add 1 to the coefficient of the first monomial that is not a pure power of Z."""
    terms = x.terms
    for mono in sorted(terms, key=lambda m: (len(m), m)):
        if skip_central_only and all(g == Z for g in mono):
            continue
        terms[mono] += 1
        return UEAElement(terms)
    raise AssertionError("no mutable monomial")


class TestIsCentral:
    def test_z_and_unit(self):
        assert is_central(embed(Z), SCHR).central
        assert is_central(UEAElement({(): 3}), SCHR).central

    def test_generator_not_central(self):
        rep = is_central(embed(Gen.L(0)), SCHR)
        assert not rep.central
        assert [g for g, _ in rep.witnesses] == [Gen.L(-1), Gen.L(1), Gen.C("-1/2", 1), Gen.C("1/2", 1)]
        assert all(r for _, r in rep.witnesses)

    def test_order_respected(self):
        order = list(reversed(generators(SCHR)))
        rep = is_central(embed(Gen.L(0)), SCHR, order)
        assert [g for g, _ in rep.witnesses] == [Gen.C("1/2", 1), Gen.C("-1/2", 1), Gen.L(1), Gen.L(-1)]
        assert rep.central == is_central(embed(Gen.L(0)), SCHR).central

    def test_methods_agree(self):
        s = make_spec("3/2", 2)
        for x in (quartic_casimir(s), build_script_M(1, 2, s), build_script_L(0, s)):
            a, b = is_central(x, s), is_central(x, s, method="product")
            assert a.central == b.central
            assert [(g, r) for g, r in a.witnesses] == [(g, r) for g, r in b.witnesses]

    def test_report_json(self):
        data = is_central(embed(Gen.L(0)), SCHR).to_json()
        json.dumps(data)
        assert data["central"] is False
        assert data["witnesses"][0]["generator"] == "L-1"


class TestRelations:
    @pytest.mark.parametrize("l, d", [("1/2", 1), ("1/2", 2), ("1", 2), ("3/2", 2)])
    def test_sl2_relations(self, l, d):
        rep = check_sl2_relations(make_spec(l, d))
        assert rep.ok, rep.failures()
        families = {"[L'_n, C]", "[L'_n, L'_m]", "[L_n, L'_m]"} | ({"[L'_n, M]"} if d >= 2 else set())
        assert set(rep.relations) == families

    @pytest.mark.parametrize("l, d", [("1/2", 2), ("1", 2), ("1/2", 3), ("3/2", 3)])
    def test_rotation_relations(self, l, d):
        rep = check_rotation_relations(make_spec(l, d))
        assert rep.ok, rep.failures()
        assert set(rep.relations) == {"[C, M']", "[L_n, M']", "[M, M']"}

    def test_rotation_relations_need_d2(self):
        with pytest.raises(DomainError):
            check_eq8(SCHR)

    def test_needs_extension(self):
        with pytest.raises(DomainError):
            check_eq4(make_spec("1/2", 1, extended=False))


    def test_contract_names(self):
        assert check_eq4 is check_sl2_relations and check_eq8 is check_rotation_relations


class TestMutation:
    @pytest.mark.parametrize("l, d", [("1/2", 1), ("3/2", 2), ("1", 2)])
    def test_script_L0(self, l, d):
        s = make_spec(l, d)
        bad = bump_one_coefficient(build_script_L(0, s))
        rep = check_eq4(s, {0: bad})
        assert not rep.ok and rep.failures()[0][2]
        assert not is_central(bad, s).central

    @pytest.mark.parametrize("l, d", [("1/2", 2), ("1", 2), ("3/2", 3)])
    def test_script_M12(self, l, d):
        s = make_spec(l, d)
        bad = bump_one_coefficient(build_script_M(1, 2, s))
        rep = check_eq8(s, {(1, 2): bad})
        assert not rep.ok and rep.failures()[0][2]

    def test_quartic_mutation_detected(self):
        q = quartic_casimir(SCHR)
        rep = is_central(bump_one_coefficient(q), SCHR)
        assert not rep.central and rep.witnesses[0][1]

    def test_pure_z_shift_stays_central(self):
        q = quartic_casimir(SCHR)
        shifted = q + UEAElement({(Z, Z): 1})
        assert is_central(shifted, SCHR).central


class TestZLimit:
    def test_schroedinger_quartic_vanishes(self):
        rep = check_z_limit(SCHR)
        assert rep.ok
        assert rep.degenerate == ["quartic"]
        assert rep.surviving == 0

    @pytest.mark.parametrize("l, d", [("3/2", 1), ("1/2", 3), ("1", 2), ("3/2", 2)])
    def test_limits_central(self, l, d):
        s = make_spec(l, d)
        rep = check_z_limit(s)
        assert rep.ok
        assert len(rep.entries) == build_catalog(s).size

    def test_limit_of_quartic_is_vector_only(self):
        s = make_spec("3/2", 1)
        _, limit, _ = check_z_limit(s).entries[0]
        assert limit
        assert all(g.kind == 3 for g in limit.generators_used())
        assert limit.degree() == 4

    def test_extra_elements(self):
        rep = check_z_limit(SCHR, extra=[("L0", embed(Gen.L(0)))])
        assert not rep.ok
        assert rep.entries[-1][0] == "L0"
        json.dumps(rep.to_json())

    def test_needs_extension(self):
        with pytest.raises(DomainError):
            check_z_limit(make_spec("1/2", 1, extended=False))

    def test_limit_value(self):
        s = make_spec("3/2", 1)
        q = quartic_casimir(s)
        assert set_central_charge(q, Q(0), s) == check_z_limit(s).entries[0][1]
