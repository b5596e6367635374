import itertools
import json
from fractions import Fraction

import pytest

from galcas.algebra import (
    AlgebraSpec,
    Eta,
    Gen,
    HalfInt,
    LieCombo,
    Z,
    bracket,
    default_grid,
    dimension,
    generators,
    jacobi_check,
)
from galcas.errors import ConfigurationError, DomainError

HALF = HalfInt(1)


def spec(l, d, extended=True, eta=None):
    return AlgebraSpec(HalfInt.parse(l), d, extended, eta)


class TestHalfInt:
    @pytest.mark.parametrize("text, twice", [("1/2", 1), ("3/2", 3), ("1", 2), ("-5/2", -5), ("0", 0), ("4/2", 4)])
    def test_parse(self, text, twice):
        assert HalfInt.parse(text).twice == twice

    @pytest.mark.parametrize("text", ["0.5", "1/3", "abc", "", "1e1"])
    def test_rejects_inexact(self, text):
        with pytest.raises(ConfigurationError):
            HalfInt.parse(text)

    def test_arithmetic(self):
        a, b = HalfInt.parse("3/2"), HalfInt.parse("1/2")
        assert a + b == HalfInt(4) and (a + b).is_integer
        assert a - b == HalfInt(2)
        assert -a == HalfInt(-3)
        assert a + 1 == HalfInt(5)
        assert b < a
        assert str(a) == "3/2" and str(a + b) == "2"
        assert a.as_rational() == Fraction(3, 2)


class TestSpec:
    def test_eta_derived(self):
        assert spec("1/2", 3).eta is Eta.SYMMETRIC
        assert spec("1", 2).eta is Eta.SYMPLECTIC
        assert spec("3/2", 2).eta is Eta.SYMMETRIC

    @pytest.mark.parametrize("l, d", [("1", 1), ("1", 3), ("2", 4)])
    def test_integer_l_extended_needs_d2(self, l, d):
        with pytest.raises(ConfigurationError):
            spec(l, d)

    def test_integer_l_centerless_any_d(self):
        assert dimension(spec("1", 3, extended=False)) == 3 + 6 + 6

    @pytest.mark.parametrize("l, d", [("0", 1), ("1/2", 0), ("-1/2", 2)])
    def test_invalid(self, l, d):
        with pytest.raises(ConfigurationError):
            spec(l, d)

    def test_json_round_trip(self):
        s = spec("3/2", 4)
        data = s.to_json()
        assert data == {"l": "3/2", "d": 4, "extended": True}
        assert "eta" not in data
        assert AlgebraSpec.from_json(json.dumps(data)) == s

    def test_symplectic_needs_d2(self):
        with pytest.raises(ConfigurationError):
            spec("3/2", 3, eta=Eta.SYMPLECTIC)


class TestGenerators:
    def test_schroedinger_basis(self):
        gens = generators(spec("1/2", 1))
        assert gens == [Z, Gen.L(-1), Gen.L(0), Gen.L(1), Gen.C("-1/2", 1), Gen.C("1/2", 1)]

    def test_lengths(self):
        assert len(generators(spec("1/2", 3))) == 13
        assert len(generators(spec("1", 2))) == 11

    def test_pbw_order(self):
        gens = generators(spec("3/2", 3))
        assert gens == sorted(gens)
        ms = [g for g in gens if g.kind == 2]
        assert [(g.a, g.b) for g in ms] == [(1, 2), (1, 3), (2, 3)]
        cs = [(g.alpha, g.b) for g in gens if g.kind == 3]
        assert cs == sorted(cs)

    @pytest.mark.parametrize("s", default_grid(True, env=None) + default_grid(False, env=None), ids=str)
    def test_length_matches_dimension(self, s):
        gens = generators(s)
        assert len(gens) == len(set(gens)) == dimension(s)

    def test_tags_round_trip(self):
        for g in generators(spec("5/2", 3)):
            assert Gen.from_tag(g.tag) == g
        assert Gen.C("1/2", 3).tag == "C:1/2:3"
        assert Gen.M(1, 2).tag == "M:1:2"
        assert Gen.L(-1).tag == "L-1"
        with pytest.raises(DomainError):
            Gen.from_tag("X:1")


class TestDimension:
    def test_formula(self):
        assert dimension(spec("1/2", 3)) == 13
        assert dimension(spec("1/2", 1, extended=False)) == 5

    def test_l52_d1_centerless(self):
        # 3 + 1 + 5 by the formula; enumeration agrees
        s = spec("5/2", 1, extended=False)
        assert dimension(s) == 9
        assert len(generators(s)) == 9


class TestBracket:
    def test_sl2(self):
        s = spec("1/2", 1)
        assert bracket(Gen.L(-1), Gen.L(1), s) == LieCombo({Gen.L(0): 2})
        assert bracket(Gen.L(-1), Gen.L(0), s) == LieCombo({Gen.L(-1): 1})
        assert bracket(Gen.L(0), Gen.L(1), s) == LieCombo({Gen.L(1): 1})

    def test_central_charge(self):
        s = spec("1/2", 1)
        assert bracket(Gen.C("-1/2", 1), Gen.C("1/2", 1), s) == LieCombo({Z: 1})
        assert bracket(Gen.C("1/2", 1), Gen.C("-1/2", 1), s) == LieCombo({Z: -1})

    def test_central_charge_factorials(self):
        # (-1)^(alpha+l) (alpha+l)! (beta+l)!, l = 5/2, alpha = 3/2, beta = -3/2
        s = spec("5/2", 1)
        assert bracket(Gen.C("3/2", 1), Gen.C("-3/2", 1), s)[Z] == (-1) ** 4 * 24 * 1
        assert bracket(Gen.C("1/2", 1), Gen.C("-1/2", 1), s)[Z] == (-1) ** 3 * 6 * 2

    def test_symplectic(self):
        s = spec("1", 2)
        assert bracket(Gen.C("-1", 1), Gen.C("1", 2), s) == LieCombo({Z: 1 * 1 * 2})
        assert bracket(Gen.C("-1", 2), Gen.C("1", 1), s) == LieCombo({Z: -2})
        assert not bracket(Gen.C("-1", 1), Gen.C("1", 1), s)

    def test_rotation_action(self):
        s = spec("3/2", 3)
        for t in range(-3, 4, 2):
            alpha = HalfInt(t)
            assert bracket(Gen.M(1, 2), Gen.C(alpha, 1), s) == LieCombo({Gen.C(alpha, 2): 1})
            assert bracket(Gen.M(1, 2), Gen.C(alpha, 2), s) == LieCombo({Gen.C(alpha, 1): -1})
            assert not bracket(Gen.M(1, 2), Gen.C(alpha, 3), s)

    def test_rotations(self):
        s = spec("1/2", 3)
        assert bracket(Gen.M(1, 2), Gen.M(2, 3), s) == LieCombo({Gen.M(1, 3): -1})
        assert bracket(Gen.M(1, 2), Gen.M(1, 3), s) == LieCombo({Gen.M(2, 3): 1})

    def test_l_on_c(self):
        s = spec("3/2", 1)
        # (alpha - l n) C^(alpha + n)
        assert bracket(Gen.L(1), Gen.C("-3/2", 1), s) == LieCombo({Gen.C("-1/2", 1): -3})
        assert bracket(Gen.L(-1), Gen.C("3/2", 1), s) == LieCombo({Gen.C("1/2", 1): 3})
        assert bracket(Gen.L(0), Gen.C("1/2", 1), s) == LieCombo({Gen.C("1/2", 1): Fraction(1, 2)})
        # boundary terms vanish
        assert not bracket(Gen.L(1), Gen.C("3/2", 1), s)
        assert not bracket(Gen.L(-1), Gen.C("-3/2", 1), s)

    def test_z_central(self):
        s = spec("1/2", 1)
        assert not bracket(Z, Gen.L(0), s)
        for g in generators(s):
            assert not bracket(Z, g, s)
            assert not bracket(g, Z, s)

    def test_centerless_cc_zero(self):
        s = spec("1/2", 1, extended=False)
        assert not bracket(Gen.C("-1/2", 1), Gen.C("1/2", 1), s)

    def test_invalid_generator(self):
        s = spec("1/2", 1)
        with pytest.raises(DomainError):
            bracket(Gen.C("3/2", 1), Gen.L(0), s)
        with pytest.raises(DomainError):
            bracket(Z, Gen.L(0), spec("1/2", 1, extended=False))
        with pytest.raises(DomainError):
            bracket(Gen.M(1, 2), Gen.L(0), s)

    @pytest.mark.parametrize("s", default_grid(True, env=None)[:8] + default_grid(False, env=None)[:4], ids=str)
    def test_antisymmetry_and_degenerate_rule(self, s):
        for a, b in itertools.product(generators(s), repeat=2):
            assert bracket(a, b, s) + bracket(b, a, s) == LieCombo()
            if a.kind == 3 and b.kind == 3 and a.a + b.a != 0:
                assert not bracket(a, b, s)


class TestJacobi:
    def test_schroedinger(self):
        report = jacobi_check(spec("1/2", 1))
        assert report.ok and report.triples == 20

    def test_symplectic_ok(self):
        assert jacobi_check(spec("1", 2)).ok

    def test_symmetric_eta_integer_l_fails(self):
        report = jacobi_check(spec("1", 2, eta=Eta.SYMMETRIC))
        assert not report.ok
        a, b, c, residual = report.violations[0]
        assert residual
        assert set(residual) == {Z}

    def test_report_json(self):
        data = jacobi_check(spec("1", 2, eta=Eta.SYMMETRIC)).to_json()
        assert data["ok"] is False and data["violations"]
        json.dumps(data)
